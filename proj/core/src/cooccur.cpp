#include "dsm/cooccur.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <queue>
#include <random>

namespace dsm {

const char* window_mode_name(WindowMode m) {
  return m == WindowMode::Filtered ? "filtered" : "surface";
}

WindowMode window_mode_from_name(std::string_view name) {
  if (name == "filtered") return WindowMode::Filtered;
  if (name == "surface") return WindowMode::Surface;
  throw Error(ErrorKind::Config,
              "unknown window mode: " + std::string(name) +
                  " (expected filtered|surface)");
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Raw: return "raw";
    case Scheme::Ppmi: return "ppmi";
    case Scheme::Lmi: return "lmi";
  }
  return "?";
}

Scheme scheme_from_name(std::string_view name) {
  if (name == "raw") return Scheme::Raw;
  if (name == "ppmi") return Scheme::Ppmi;
  if (name == "lmi") return Scheme::Lmi;
  throw Error(ErrorKind::Config,
              "unknown weighting scheme: " + std::string(name) +
                  " (expected raw|ppmi|lmi)");
}

void CountMatrix::validate() const {
  uint64_t sum = 0;
  for (uint64_t v : counts.values) sum += v;
  uint64_t row_sum = 0;
  for (uint64_t v : row_marginals) row_sum += v;
  uint64_t col_sum = 0;
  for (uint64_t v : col_marginals) col_sum += v;
  if (sum != total || row_sum != total || col_sum != total)
    throw Error(ErrorKind::Corrupt,
                "inconsistent marginals: entries=" + std::to_string(sum) +
                    " rows=" + std::to_string(row_sum) +
                    " cols=" + std::to_string(col_sum) +
                    " D=" + std::to_string(total));
}

void VocabBuilder::add(const Sentence& s) {
  total_tokens_ += s.size();
  for (const auto& t : s) {
    if (t.pos == Pos::O) continue;
    ++content_tokens_;
    WordId id = vocab_.add(t.lemma, t.pos);
    vocab_.add_freq(id, 1);
  }
}

Vocabulary VocabBuilder::finish(uint64_t min_context_freq) {
  vocab_.apply_context_threshold(min_context_freq);
  return std::move(vocab_);
}

namespace {

std::string make_run_path(const std::string& dir_opt) {
  namespace fs = std::filesystem;
  fs::path dir = dir_opt.empty() ? fs::temp_directory_path()
                                 : fs::path(dir_opt);
  static std::mt19937_64 rng{std::random_device{}()};
  for (int attempt = 0; attempt < 64; ++attempt) {
    fs::path p = dir / ("dsmkit-run-" + std::to_string(rng()) + ".tmp");
    if (!fs::exists(p)) return p.string();
  }
  throw Error(ErrorKind::Io, "cannot create unique run file in " +
                                 dir.string());
}

struct RunRecord {
  uint64_t key;
  uint64_t count;
};

}  // namespace

CooccurrenceCounter::CooccurrenceCounter(const Vocabulary& vocab,
                                         CooccurOptions opts)
    : vocab_(vocab), opts_(std::move(opts)) {
  if (opts_.window < 1)
    throw Error(ErrorKind::Config, "window must be >= 1, got " +
                                       std::to_string(opts_.window));
  if (opts_.target_mask && opts_.target_mask->size() != vocab.size())
    throw Error(ErrorKind::Config, "target mask size does not match vocabulary");
}

CooccurrenceCounter::~CooccurrenceCounter() {
  for (const auto& f : run_files_) std::remove(f.c_str());
}

void CooccurrenceCounter::bump(WordId target, WordId context) {
  uint64_t key = (uint64_t{target} << 32) | context;
  if (++acc_[key] == 1 && acc_.size() >= opts_.flush_threshold) flush_run();
}

void CooccurrenceCounter::add(const Sentence& s) {
  ++sentences_;
  seq_.clear();
  for (const auto& t : s) {
    if (t.pos == Pos::O) {
      if (opts_.window_over == WindowMode::Surface) seq_.push_back(kNoWord);
      continue;
    }
    seq_.push_back(vocab_.find(t.lemma, t.pos));
  }

  const int64_t n = static_cast<int64_t>(seq_.size());
  const int64_t w = opts_.window;
  for (int64_t i = 0; i < n; ++i) {
    WordId target = seq_[i];
    if (target == kNoWord) continue;
    if (opts_.target_mask && !(*opts_.target_mask)[target]) continue;
    int64_t lo = std::max<int64_t>(0, i - w);
    int64_t hi = std::min<int64_t>(n - 1, i + w);
    for (int64_t j = lo; j <= hi; ++j) {
      if (j == i) continue;
      WordId ctx = seq_[j];
      if (ctx == kNoWord || !vocab_.context_eligible(ctx)) continue;
      bump(target, ctx);
    }
  }
}

void CooccurrenceCounter::flush_run() {
  std::vector<RunRecord> records;
  records.reserve(acc_.size());
  for (auto [key, count] : acc_) records.push_back({key, count});
  acc_.clear();
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.key < b.key; });

  std::string path = make_run_path(opts_.tmp_dir);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open run file: " + path);
  out.write(reinterpret_cast<const char*>(records.data()),
            static_cast<std::streamsize>(records.size() * sizeof(RunRecord)));
  if (!out) throw Error(ErrorKind::Io, "cannot write run file: " + path);
  run_files_.push_back(std::move(path));
}

CountMatrix CooccurrenceCounter::finish() {
  if (finished_)
    throw Error(ErrorKind::Config, "CooccurrenceCounter::finish called twice");
  finished_ = true;

  // Final in-memory accumulation becomes one more sorted run.
  std::vector<RunRecord> tail;
  tail.reserve(acc_.size());
  for (auto [key, count] : acc_) tail.push_back({key, count});
  acc_.clear();
  std::sort(tail.begin(), tail.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.key < b.key; });

  struct RunStream {
    std::ifstream file;
    RunRecord head{};
    bool alive = false;
    bool advance() {
      alive = static_cast<bool>(
          file.read(reinterpret_cast<char*>(&head), sizeof(RunRecord)));
      return alive;
    }
  };

  std::vector<RunStream> streams(run_files_.size());
  for (size_t i = 0; i < run_files_.size(); ++i) {
    streams[i].file.open(run_files_[i], std::ios::binary);
    if (!streams[i].file)
      throw Error(ErrorKind::Io, "cannot reopen run file: " + run_files_[i]);
    streams[i].advance();
  }

  size_t tail_pos = 0;
  auto tail_alive = [&] { return tail_pos < tail.size(); };

  CountMatrix m;
  const uint64_t n = vocab_.size();
  m.counts.n_rows = n;
  m.counts.n_cols = n;
  m.row_marginals.assign(n, 0);
  m.col_marginals.assign(n, 0);
  m.counts.row_ptr.assign(n + 1, 0);

  uint64_t prev_key = 0;
  bool have_prev = false;
  uint64_t pending = 0;

  auto emit = [&](uint64_t key, uint64_t count) {
    uint32_t row = static_cast<uint32_t>(key >> 32);
    uint32_t col = static_cast<uint32_t>(key & 0xffffffffu);
    m.counts.col_idx.push_back(col);
    m.counts.values.push_back(count);
    m.counts.row_ptr[row + 1]++;
    m.row_marginals[row] += count;
    m.col_marginals[col] += count;
    m.total += count;
  };

  // K-way merge in ascending key order; equal keys sum.
  for (;;) {
    uint64_t best = 0;
    int best_src = -1;  // -1 none, -2 tail, >=0 stream index
    if (tail_alive()) {
      best = tail[tail_pos].key;
      best_src = -2;
    }
    for (size_t i = 0; i < streams.size(); ++i) {
      if (streams[i].alive &&
          (best_src == -1 || streams[i].head.key < best)) {
        best = streams[i].head.key;
        best_src = static_cast<int>(i);
      }
    }
    if (best_src == -1) break;

    uint64_t count;
    if (best_src == -2) {
      count = tail[tail_pos++].count;
    } else {
      count = streams[best_src].head.count;
      streams[best_src].advance();
    }

    if (have_prev && best == prev_key) {
      pending += count;
    } else {
      if (have_prev) emit(prev_key, pending);
      prev_key = best;
      pending = count;
      have_prev = true;
    }
  }
  if (have_prev) emit(prev_key, pending);

  for (uint64_t r = 0; r < n; ++r)
    m.counts.row_ptr[r + 1] += m.counts.row_ptr[r];

  for (const auto& f : run_files_) std::remove(f.c_str());
  run_files_.clear();
  return m;
}

Vocabulary build_vocab(const std::vector<std::string>& corpus_paths,
                       const TagMap& tagmap, uint64_t min_context_freq,
                       CorpusStats* stats) {
  VocabBuilder builder;
  Sentence s;
  for (const auto& path : corpus_paths) {
    SentenceReader reader(path, tagmap);
    while (reader.next(s)) builder.add(s);
    if (stats) {
      stats->sentences += reader.lines_read();
      stats->malformed_tokens += reader.malformed_tokens();
    }
  }
  if (stats) {
    stats->total_tokens = builder.total_tokens();
    stats->content_tokens = builder.content_tokens();
  }
  return builder.finish(min_context_freq);
}

CountMatrix count_cooccurrences(const std::vector<std::string>& corpus_paths,
                               const TagMap& tagmap, const Vocabulary& vocab,
                               const CooccurOptions& opts) {
  CooccurrenceCounter counter(vocab, opts);
  Sentence s;
  for (const auto& path : corpus_paths) {
    SentenceReader reader(path, tagmap);
    while (reader.next(s)) counter.add(s);
  }
  return counter.finish();
}

std::vector<uint8_t> load_target_mask(const std::string& path,
                                      const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open targets file: " + path);
  std::vector<uint8_t> mask(vocab.size(), 0);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t");
    std::string_view word(line.data() + b, e - b + 1);

    auto mark = [&](std::string_view lemma, Pos pos) {
      WordId id = vocab.find(lemma, pos);
      if (id != kNoWord) mask[id] = 1;
    };

    auto sep = word.rfind('_');
    std::optional<Pos> pos;
    if (sep != std::string_view::npos && sep + 2 == word.size())
      pos = pos_from_char(word[sep + 1]);
    if (pos) {
      mark(word.substr(0, sep), *pos);
    } else {
      // bare lemma: any content class
      mark(word, Pos::N);
      mark(word, Pos::V);
      mark(word, Pos::J);
    }
  }
  return mask;
}

}  // namespace dsm
