#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsm/error.hpp"

namespace dsm {

// Coarse part-of-speech classes. Content words are N, V and J; everything
// else collapses to O and is dropped by the content filter.
enum class Pos : uint8_t { N = 0, V = 1, J = 2, O = 3 };

char pos_char(Pos p);
std::optional<Pos> pos_from_char(char c);

struct Token {
  std::string lemma;  // lowercased, non-empty, no whitespace
  Pos pos = Pos::O;

  bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;

// Maps source tagset tags (Penn, TreeTagger, ...) onto the coarse classes
// by longest matching prefix. Tags with no matching prefix are O.
class TagMap {
 public:
  // NN*/NP* -> N, VB*/VV*/VH* -> V, JJ* -> J.
  static TagMap defaults();

  // One `prefix=CLASS` entry per line, `#` comments allowed.
  static TagMap from_file(const std::string& path);

  void add(std::string prefix, Pos pos);
  Pos classify(std::string_view tag) const;

 private:
  std::vector<std::pair<std::string, Pos>> prefixes_;  // sorted, longest first
};

// Parses a `lemma_TAG` token; the last underscore separates lemma from tag.
// The lemma is lowercased. Returns nothing for malformed tokens (missing
// separator, empty lemma or empty tag).
std::optional<Token> parse_token(std::string_view raw, const TagMap& tagmap);

// Keeps N/V/J tokens, order preserved. Idempotent.
Sentence content_filter(const Sentence& s);

// Streams sentences from a corpus file, one sentence per line, tokens
// whitespace-separated. Accepts plain text or gzip (detected by content).
// Memory use is one line at a time. Malformed tokens are skipped and
// counted, never fatal.
class SentenceReader {
 public:
  SentenceReader(const std::string& path, const TagMap& tagmap);
  ~SentenceReader();
  SentenceReader(SentenceReader&&) noexcept;
  SentenceReader& operator=(SentenceReader&&) noexcept;
  SentenceReader(const SentenceReader&) = delete;
  SentenceReader& operator=(const SentenceReader&) = delete;

  // Fills `out` with the next sentence (possibly empty for a blank line).
  // Returns false at end of file.
  bool next(Sentence& out);

  uint64_t malformed_tokens() const;
  uint64_t lines_read() const;
  uint64_t tokens_read() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dsm
