#include "dsm/corpus.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace dsm {

char pos_char(Pos p) {
  switch (p) {
    case Pos::N: return 'N';
    case Pos::V: return 'V';
    case Pos::J: return 'J';
    case Pos::O: return 'O';
  }
  return '?';
}

std::optional<Pos> pos_from_char(char c) {
  switch (c) {
    case 'N': case 'n': return Pos::N;
    case 'V': case 'v': return Pos::V;
    case 'J': case 'j': return Pos::J;
    case 'O': case 'o': return Pos::O;
    default: return std::nullopt;
  }
}

TagMap TagMap::defaults() {
  TagMap m;
  m.add("NN", Pos::N);  // NN, NNS, NNP, NNPS
  m.add("NP", Pos::N);  // TreeTagger proper nouns
  m.add("VB", Pos::V);  // Penn verbs
  m.add("VV", Pos::V);  // TreeTagger lexical verbs
  m.add("VH", Pos::V);  // TreeTagger have-verbs
  m.add("JJ", Pos::J);  // JJ, JJR, JJS
  return m;
}

TagMap TagMap::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open tag map: " + path);
  TagMap m;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= line.size())
      throw Error(ErrorKind::Parse, "tag map " + path + " line " +
                                        std::to_string(lineno) +
                                        ": expected `prefix=CLASS`");
    std::string prefix = line.substr(0, eq);
    std::string cls = line.substr(eq + 1);
    auto pos = cls.size() == 1 ? pos_from_char(cls[0]) : std::nullopt;
    if (!pos)
      throw Error(ErrorKind::Parse, "tag map " + path + " line " +
                                        std::to_string(lineno) +
                                        ": class must be one of N,V,J,O");
    m.add(std::move(prefix), *pos);
  }
  return m;
}

void TagMap::add(std::string prefix, Pos pos) {
  prefixes_.emplace_back(std::move(prefix), pos);
  std::stable_sort(prefixes_.begin(), prefixes_.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
}

Pos TagMap::classify(std::string_view tag) const {
  for (const auto& [prefix, pos] : prefixes_) {
    if (tag.substr(0, prefix.size()) == prefix) return pos;
  }
  return Pos::O;
}

std::optional<Token> parse_token(std::string_view raw, const TagMap& tagmap) {
  auto sep = raw.rfind('_');
  if (sep == std::string_view::npos || sep == 0 || sep + 1 >= raw.size())
    return std::nullopt;
  Token t;
  t.lemma.reserve(sep);
  for (char c : raw.substr(0, sep))
    t.lemma.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(c))));
  t.pos = tagmap.classify(raw.substr(sep + 1));
  return t;
}

Sentence content_filter(const Sentence& s) {
  Sentence out;
  out.reserve(s.size());
  for (const auto& t : s)
    if (t.pos != Pos::O) out.push_back(t);
  return out;
}

// gzFile reads plain files transparently, so one code path covers both.
struct SentenceReader::Impl {
  gzFile file = nullptr;
  std::string path;
  const TagMap* tagmap = nullptr;
  std::string line;
  uint64_t malformed = 0;
  uint64_t lines = 0;
  uint64_t tokens = 0;
  bool eof = false;

  bool read_line() {
    line.clear();
    char buf[4096];
    bool got_any = false;
    for (;;) {
      if (gzgets(file, buf, sizeof(buf)) == nullptr) {
        int errnum = 0;
        const char* msg = gzerror(file, &errnum);
        if (errnum != Z_OK && errnum != Z_STREAM_END)
          throw Error(ErrorKind::Io, "error reading " + path + ": " + msg);
        eof = true;
        return got_any;
      }
      got_any = true;
      line += buf;
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
      }
      // long line, keep reading
    }
  }
};

SentenceReader::SentenceReader(const std::string& path, const TagMap& tagmap)
    : impl_(std::make_unique<Impl>()) {
  impl_->file = gzopen(path.c_str(), "rb");
  if (impl_->file == nullptr)
    throw Error(ErrorKind::Io, "cannot open corpus file: " + path);
  impl_->path = path;
  impl_->tagmap = &tagmap;
}

SentenceReader::~SentenceReader() {
  if (impl_ && impl_->file) gzclose(impl_->file);
}

SentenceReader::SentenceReader(SentenceReader&&) noexcept = default;
SentenceReader& SentenceReader::operator=(SentenceReader&&) noexcept = default;

bool SentenceReader::next(Sentence& out) {
  out.clear();
  if (impl_->eof) return false;
  if (!impl_->read_line()) return false;
  ++impl_->lines;
  std::string_view rest(impl_->line);
  while (!rest.empty()) {
    auto ws = rest.find_first_of(" \t");
    std::string_view tok = rest.substr(0, ws);
    rest = ws == std::string_view::npos ? std::string_view{}
                                        : rest.substr(ws + 1);
    if (tok.empty()) continue;
    ++impl_->tokens;
    if (auto t = parse_token(tok, *impl_->tagmap))
      out.push_back(std::move(*t));
    else
      ++impl_->malformed;
  }
  return true;
}

uint64_t SentenceReader::malformed_tokens() const { return impl_->malformed; }
uint64_t SentenceReader::lines_read() const { return impl_->lines; }
uint64_t SentenceReader::tokens_read() const { return impl_->tokens; }

}  // namespace dsm
