#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsm/corpus.hpp"
#include "dsm/sparse.hpp"
#include "dsm/vocab.hpp"

namespace dsm {

// Whether window offsets are measured over the content-filtered token
// sequence (non-content words do not consume slots) or the surface sequence.
enum class WindowMode : uint8_t { Filtered = 0, Surface = 1 };

const char* window_mode_name(WindowMode m);
WindowMode window_mode_from_name(std::string_view name);

// First corpus pass: collects content-word frequencies.
class VocabBuilder {
 public:
  void add(const Sentence& s);

  // Freezes the vocabulary and marks words with freq > min_context_freq as
  // context-eligible. An empty corpus yields an empty vocabulary.
  Vocabulary finish(uint64_t min_context_freq);

  uint64_t total_tokens() const { return total_tokens_; }
  uint64_t content_tokens() const { return content_tokens_; }

 private:
  Vocabulary vocab_;
  uint64_t total_tokens_ = 0;
  uint64_t content_tokens_ = 0;
};

struct CooccurOptions {
  uint32_t window = 2;                       // half-width, tokens per side
  WindowMode window_over = WindowMode::Filtered;
  std::optional<std::vector<uint8_t>> target_mask;  // size |V|; empty = all
  // Accumulator entries before spilling a sorted run to disk. The default
  // keeps desk-scale runs fully in memory.
  uint64_t flush_threshold = uint64_t{1} << 22;
  std::string tmp_dir;  // empty = std::filesystem::temp_directory_path()
};

// Second corpus pass: symmetric sliding-window pair counting. Pairs are
// accumulated in a hash map that spills to sorted runs; finish() merges the
// runs into a CSR matrix, so peak memory tracks the accumulator size rather
// than the corpus.
class CooccurrenceCounter {
 public:
  CooccurrenceCounter(const Vocabulary& vocab, CooccurOptions opts);
  ~CooccurrenceCounter();

  void add(const Sentence& s);
  CountMatrix finish();

  uint64_t sentences_seen() const { return sentences_; }

 private:
  void bump(WordId target, WordId context);
  void flush_run();

  const Vocabulary& vocab_;
  CooccurOptions opts_;
  std::unordered_map<uint64_t, uint64_t> acc_;
  std::vector<std::string> run_files_;
  std::vector<WordId> seq_;  // scratch: ids of the current sentence
  uint64_t sentences_ = 0;
  bool finished_ = false;
};

// Convenience single-call wrappers over the two passes.

struct CorpusStats {
  uint64_t sentences = 0;
  uint64_t total_tokens = 0;
  uint64_t content_tokens = 0;
  uint64_t malformed_tokens = 0;
};

Vocabulary build_vocab(const std::vector<std::string>& corpus_paths,
                       const TagMap& tagmap, uint64_t min_context_freq,
                       CorpusStats* stats = nullptr);

CountMatrix count_cooccurrences(const std::vector<std::string>& corpus_paths,
                                const TagMap& tagmap, const Vocabulary& vocab,
                                const CooccurOptions& opts);

// Parses a targets file (one word per line, `lemma_P` with a coarse tag, or
// a bare lemma meaning all of N/V/J) into a mask over the vocabulary.
// Unknown words are ignored: they cannot receive counts anyway.
std::vector<uint8_t> load_target_mask(const std::string& path,
                                      const Vocabulary& vocab);

}  // namespace dsm
