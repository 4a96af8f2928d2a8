#include <doctest.h>

#include <algorithm>
#include <random>

#include "dsm/cooccur.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace dsm;

namespace {

Sentence nouns(std::initializer_list<const char*> lemmas) {
  Sentence s;
  for (const char* l : lemmas) s.push_back({l, Pos::N});
  return s;
}

// Vocabulary + counter over in-memory sentences, everything context-eligible
// unless a threshold says otherwise.
CountMatrix count_sentences(const std::vector<Sentence>& sentences,
                            uint32_t window, Vocabulary* out_vocab = nullptr,
                            uint64_t min_context_freq = 0,
                            CooccurOptions extra = {}) {
  VocabBuilder vb;
  for (const auto& s : sentences) vb.add(s);
  Vocabulary vocab = vb.finish(min_context_freq);
  extra.window = window;
  CooccurrenceCounter counter(vocab, extra);
  for (const auto& s : sentences) counter.add(s);
  CountMatrix m = counter.finish();
  if (out_vocab) *out_vocab = std::move(vocab);
  return m;
}

uint64_t entry(const CountMatrix& m, const Vocabulary& v, const char* w,
               const char* c) {
  WordId wi = v.find(w, Pos::N);
  WordId ci = v.find(c, Pos::N);
  REQUIRE(wi != kNoWord);
  REQUIRE(ci != kNoWord);
  auto cols = m.counts.row_cols(wi);
  auto vals = m.counts.row_values(wi);
  for (size_t i = 0; i < cols.size(); ++i)
    if (cols[i] == ci) return vals[i];
  return 0;
}

}  // namespace

TEST_SUITE_BEGIN("cooccur");

TEST_CASE("build_vocab marks context eligibility by threshold") {
  std::vector<Sentence> corpus;
  for (int i = 0; i < 150; ++i) corpus.push_back(nouns({"dog"}));
  for (int i = 0; i < 3; ++i) corpus.push_back(nouns({"axolotl"}));

  VocabBuilder vb;
  for (const auto& s : corpus) vb.add(s);
  Vocabulary vocab = vb.finish(100);

  WordId dog = vocab.find("dog", Pos::N);
  WordId axolotl = vocab.find("axolotl", Pos::N);
  REQUIRE(dog != kNoWord);
  REQUIRE(axolotl != kNoWord);
  CHECK(vocab.freq(dog) == 150);
  CHECK(vocab.context_eligible(dog));
  CHECK(vocab.freq(axolotl) == 3);
  CHECK_FALSE(vocab.context_eligible(axolotl));  // present, just not a context
}

TEST_CASE("threshold zero makes every content word context-eligible") {
  VocabBuilder vb;
  vb.add(nouns({"a", "b"}));
  Vocabulary vocab = vb.finish(0);
  for (WordId id = 0; id < vocab.size(); ++id)
    CHECK(vocab.context_eligible(id));
}

TEST_CASE("empty corpus yields an empty vocabulary") {
  VocabBuilder vb;
  Vocabulary vocab = vb.finish(100);
  CHECK(vocab.empty());
}

TEST_CASE("non-content words never enter the vocabulary") {
  VocabBuilder vb;
  vb.add({{"the", Pos::O}, {"dog", Pos::N}});
  Vocabulary vocab = vb.finish(0);
  CHECK(vocab.size() == 1);
  CHECK(vocab.find("the", Pos::O) == kNoWord);
}

TEST_CASE("window 2 over three words counts every ordered pair") {
  Vocabulary vocab;
  CountMatrix m = count_sentences({nouns({"a", "b", "c"})}, 2, &vocab);
  CHECK(m.total == 6);
  CHECK(m.counts.nnz() == 6);
  for (const char* w : {"a", "b", "c"})
    for (const char* c : {"a", "b", "c"})
      CHECK(entry(m, vocab, w, c) == (strcmp(w, c) == 0 ? 0u : 1u));
  m.validate();
}

TEST_CASE("window 1 over three words counts adjacent pairs only") {
  Vocabulary vocab;
  CountMatrix m = count_sentences({nouns({"a", "b", "c"})}, 1, &vocab);
  CHECK(m.total == 4);
  CHECK(entry(m, vocab, "a", "b") == 1);
  CHECK(entry(m, vocab, "b", "a") == 1);
  CHECK(entry(m, vocab, "b", "c") == 1);
  CHECK(entry(m, vocab, "c", "b") == 1);
  CHECK(entry(m, vocab, "a", "c") == 0);
}

TEST_CASE("a single-token sentence produces no pairs") {
  CountMatrix m = count_sentences({nouns({"solo"})}, 5);
  CHECK(m.counts.nnz() == 0);
  CHECK(m.total == 0);
}

TEST_CASE("sentence boundaries block co-occurrence") {
  Vocabulary vocab;
  CountMatrix m =
      count_sentences({nouns({"a", "b"}), nouns({"c", "d"})}, 5, &vocab);
  CHECK(entry(m, vocab, "b", "c") == 0);
  CHECK(entry(m, vocab, "a", "b") == 1);
  CHECK(entry(m, vocab, "c", "d") == 1);
}

TEST_CASE("distance zero is excluded but repeated lemmas still count") {
  Vocabulary vocab;
  CountMatrix m = count_sentences({nouns({"echo", "echo"})}, 2, &vocab);
  // two positions of the same lemma: each sees the other
  CHECK(entry(m, vocab, "echo", "echo") == 2);
}

TEST_CASE("window is measured over the filtered sequence by default") {
  // surface: dog . . cat (distance 3); filtered: dog cat (distance 1)
  Sentence s = {{"dog", Pos::N},
                {"the", Pos::O},
                {"of", Pos::O},
                {"cat", Pos::N}};
  Vocabulary vocab;
  CountMatrix filtered = count_sentences({s}, 2, &vocab);
  CHECK(entry(filtered, vocab, "dog", "cat") == 1);

  CooccurOptions surface_opts;
  surface_opts.window_over = WindowMode::Surface;
  Vocabulary vocab2;
  CountMatrix surface = count_sentences({s}, 2, &vocab2, 0, surface_opts);
  CHECK(entry(surface, vocab2, "dog", "cat") == 0);  // O-words consume slots
}

TEST_CASE("symmetric window gives a symmetric matrix on eligible text") {
  std::mt19937 rng(7);
  std::vector<Sentence> corpus;
  for (int i = 0; i < 50; ++i) {
    Sentence s;
    int len = 1 + static_cast<int>(rng() % 12);
    for (int j = 0; j < len; ++j)
      s.push_back({"w" + std::to_string(rng() % 20), Pos::N});
    corpus.push_back(s);
  }
  Vocabulary vocab;
  CountMatrix m = count_sentences(corpus, 3, &vocab);
  m.validate();
  for (WordId r = 0; r < vocab.size(); ++r) {
    auto cols = m.counts.row_cols(r);
    auto vals = m.counts.row_values(r);
    for (size_t i = 0; i < cols.size(); ++i) {
      // count(w,c) == count(c,w)
      auto rc = m.counts.row_cols(cols[i]);
      auto rv = m.counts.row_values(cols[i]);
      auto it = std::lower_bound(rc.begin(), rc.end(), r);
      REQUIRE(it != rc.end());
      CHECK(rv[it - rc.begin()] == vals[i]);
    }
  }
  // D is twice the number of unordered co-occurring position pairs
  CHECK(m.total % 2 == 0);
}

TEST_CASE("counts match the brute-force window enumeration") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Sentence> corpus;
    int n_sent = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n_sent; ++i) {
      Sentence s;
      int len = static_cast<int>(rng() % 10);
      for (int j = 0; j < len; ++j)
        s.push_back({"w" + std::to_string(rng() % 8), Pos::N});
      corpus.push_back(s);
    }
    uint32_t window = 1 + static_cast<uint32_t>(rng() % 4);
    uint64_t threshold = rng() % 3;  // some words lose context eligibility

    Vocabulary vocab;
    CountMatrix m = count_sentences(corpus, window, &vocab, threshold);
    m.validate();

    std::vector<std::vector<uint32_t>> sequences;
    for (const auto& s : corpus) {
      std::vector<uint32_t> seq;
      for (const auto& t : s) seq.push_back(vocab.find(t.lemma, t.pos));
      sequences.push_back(seq);
    }
    std::vector<uint8_t> eligible(vocab.size()), all(vocab.size(), 1);
    for (WordId id = 0; id < vocab.size(); ++id)
      eligible[id] = vocab.context_eligible(id);
    auto expected =
        oracle::naive_window_counts(sequences, window, eligible, all);

    uint64_t expected_total = 0;
    for (auto& [pair, count] : expected) {
      expected_total += count;
      CHECK(entry(m, vocab, vocab.lemma(pair.first).c_str(),
                  vocab.lemma(pair.second).c_str()) == count);
    }
    CHECK(m.total == expected_total);
    CHECK(m.counts.nnz() == expected.size());
  }
}

TEST_CASE("sentence order does not change the matrix") {
  std::vector<Sentence> corpus = {nouns({"a", "b", "c"}), nouns({"b", "d"}),
                                  nouns({"d", "a", "a"})};
  Vocabulary vocab;
  CountMatrix m1 = count_sentences(corpus, 2, &vocab);

  std::vector<Sentence> shuffled = {corpus[2], corpus[0], corpus[1]};
  VocabBuilder vb;
  for (const auto& s : corpus) vb.add(s);  // same vocab (same ids)
  Vocabulary vocab_same = vb.finish(0);
  CooccurrenceCounter counter(vocab_same, {.window = 2});
  for (const auto& s : shuffled) counter.add(s);
  CountMatrix m2 = counter.finish();

  CHECK(m1.counts == m2.counts);
  CHECK(m1.total == m2.total);
}

TEST_CASE("target restriction keeps only the requested rows") {
  VocabBuilder vb;
  Sentence s = nouns({"a", "b", "c"});
  vb.add(s);
  Vocabulary vocab = vb.finish(0);

  CooccurOptions opts;
  opts.window = 2;
  std::vector<uint8_t> mask(vocab.size(), 0);
  mask[vocab.find("a", Pos::N)] = 1;
  opts.target_mask = mask;

  CooccurrenceCounter counter(vocab, opts);
  counter.add(s);
  CountMatrix m = counter.finish();
  CHECK(m.total == 2);  // only a->b, a->c
  WordId b = vocab.find("b", Pos::N);
  CHECK(m.counts.row_cols(b).empty());
}

TEST_CASE("spilled runs merge to the same matrix as in-memory counting") {
  std::mt19937 rng(123);
  std::vector<Sentence> corpus;
  for (int i = 0; i < 60; ++i) {
    Sentence s;
    for (int j = 0; j < 8; ++j)
      s.push_back({"w" + std::to_string(rng() % 25), Pos::N});
    corpus.push_back(s);
  }
  VocabBuilder vb;
  for (const auto& s : corpus) vb.add(s);
  Vocabulary vocab = vb.finish(0);

  testutil::TempDir dir;
  CooccurOptions spill;
  spill.window = 2;
  spill.flush_threshold = 16;  // force many tiny runs
  spill.tmp_dir = dir.path().string();

  CooccurrenceCounter c1(vocab, spill);
  CooccurrenceCounter c2(vocab, {.window = 2});
  for (const auto& s : corpus) {
    c1.add(s);
    c2.add(s);
  }
  CountMatrix spilled = c1.finish();
  CountMatrix in_memory = c2.finish();
  CHECK(spilled == in_memory);
}

TEST_CASE("window below one is a configuration error") {
  Vocabulary vocab;
  CHECK_THROWS_AS(CooccurrenceCounter(vocab, {.window = 0}), Error);
}

TEST_CASE("unknown content words occupy window slots but never count") {
  // vocabulary built from a different corpus than the one being counted
  VocabBuilder vb;
  vb.add(nouns({"a", "b"}));
  Vocabulary vocab = vb.finish(0);

  CooccurrenceCounter counter(vocab, {.window = 1});
  counter.add(nouns({"a", "mystery", "b"}));  // mystery not in vocab
  CountMatrix m = counter.finish();
  CHECK(m.total == 0);  // a and b are 2 apart in the filtered sequence
}

TEST_SUITE_END();
