#include "dsm/vocab.hpp"

namespace dsm {

std::string Vocabulary::key(std::string_view lemma, Pos pos) {
  // Lemmas never contain whitespace, so '\t' cannot collide.
  std::string k;
  k.reserve(lemma.size() + 2);
  k.append(lemma);
  k.push_back('\t');
  k.push_back(pos_char(pos));
  return k;
}

WordId Vocabulary::add(std::string_view lemma, Pos pos) {
  auto [it, inserted] =
      index_.try_emplace(key(lemma, pos), static_cast<WordId>(words_.size()));
  if (inserted) words_.push_back(Entry{std::string(lemma), pos, 0, false});
  return it->second;
}

WordId Vocabulary::find(std::string_view lemma, Pos pos) const {
  auto it = index_.find(key(lemma, pos));
  return it == index_.end() ? kNoWord : it->second;
}

void Vocabulary::apply_context_threshold(uint64_t min_context_freq) {
  for (auto& e : words_) e.eligible = e.freq > min_context_freq;
}

std::string Vocabulary::word(WordId id) const {
  const Entry& e = words_[id];
  std::string w = e.lemma;
  w.push_back('_');
  w.push_back(pos_char(e.pos));
  return w;
}

}  // namespace dsm
