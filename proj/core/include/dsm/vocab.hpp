#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dsm/corpus.hpp"

namespace dsm {

using WordId = uint32_t;
inline constexpr WordId kNoWord = static_cast<WordId>(-1);

// Bidirectional (lemma, pos) <-> dense id map with corpus frequencies and a
// context-eligibility flag. Ids are assigned in first-encounter order, so
// building from the same corpus always yields the same vocabulary.
class Vocabulary {
 public:
  WordId add(std::string_view lemma, Pos pos);  // get-or-insert, freq untouched
  WordId find(std::string_view lemma, Pos pos) const;  // kNoWord if absent

  size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  const std::string& lemma(WordId id) const { return words_[id].lemma; }
  Pos pos(WordId id) const { return words_[id].pos; }
  uint64_t freq(WordId id) const { return words_[id].freq; }
  bool context_eligible(WordId id) const { return words_[id].eligible; }

  void add_freq(WordId id, uint64_t n) { words_[id].freq += n; }
  void set_freq(WordId id, uint64_t n) { words_[id].freq = n; }
  void set_context_eligible(WordId id, bool e) { words_[id].eligible = e; }

  // Marks every word with freq > min_context_freq as context-eligible.
  void apply_context_threshold(uint64_t min_context_freq);

  // Display form `lemma_P`, e.g. "dog_N".
  std::string word(WordId id) const;

 private:
  struct Entry {
    std::string lemma;
    Pos pos;
    uint64_t freq = 0;
    bool eligible = false;
  };

  static std::string key(std::string_view lemma, Pos pos);

  std::vector<Entry> words_;
  std::unordered_map<std::string, WordId> index_;
};

}  // namespace dsm
