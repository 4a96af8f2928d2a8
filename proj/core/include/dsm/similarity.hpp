#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dsm/model.hpp"

namespace dsm {

enum class Measure : uint8_t { Cosine = 0, Apsyn = 1 };

const char* measure_name(Measure m);
Measure measure_from_name(std::string_view name);

struct SimParams {
  uint32_t apsyn_n = 500;  // top-N contexts entering the intersection
};

// Plain vector cosine: dot(a,b) / (|a| * |b|), in [-1, 1]. Zero vectors
// have no direction, so their similarity is an error, not 0.
double cosine(std::span<const double> a, std::span<const double> b);

// Per-target context ranking used by APSyn: contexts sorted by descending
// weight, ties broken by ascending context id, truncated to n_max. Ranks
// are implicit: contexts[i] has rank i + 1.
struct RankedContextList {
  WordId target = kNoWord;
  uint32_t n_max = 0;
  std::vector<uint32_t> contexts;

  size_t size() const { return contexts.size(); }
};

RankedContextList build_ranked_list(std::span<const uint32_t> cols,
                                    std::span<const double> weights,
                                    uint32_t n_max);

// Sum over the shared top-n contexts of 1 / mean(rank1, rank2).
// Bounded by the harmonic number H_n; 0 when the top-n lists are disjoint.
double apsyn(const RankedContextList& l1, const RankedContextList& l2,
             uint32_t n);

struct Neighbor {
  WordId id = kNoWord;
  double score = 0.0;

  bool operator==(const Neighbor&) const = default;
};

// Read-only scoring facade over a loaded model. Precomputes row norms (and,
// for sparse models, the APSyn context rankings) once; all queries are then
// pure and safe to run concurrently.
class SimilarityIndex {
 public:
  // The model must outlive the index. ranked_n_max bounds the APSyn N that
  // can later be requested; pass 0 to skip ranking (cosine-only use).
  explicit SimilarityIndex(const WeightedModel& model,
                           uint32_t ranked_n_max = 1000);
  explicit SimilarityIndex(const DenseModel& model);

  // Resolves (lemma, pos); throws OovError when absent from the vocabulary.
  WordId require(std::string_view lemma, Pos pos) const;

  // False for words whose row carries no signal (empty row / zero vector).
  bool scorable(WordId id) const;

  double pair_similarity(WordId w1, WordId w2, Measure measure,
                         const SimParams& params = {}) const;

  // Exact brute-force top-k, descending score, ties by ascending word id;
  // the query itself is excluded. Only scorable words are candidates.
  std::vector<Neighbor> nearest_neighbors(WordId query, uint32_t top_k,
                                          Measure measure,
                                          const SimParams& params = {}) const;

  const Vocabulary& vocab() const { return *vocab_; }
  const RankedContextList& ranked(WordId id) const { return ranked_[id]; }
  uint32_t ranked_n_max() const { return ranked_n_max_; }

 private:
  double sparse_cosine(WordId a, WordId b) const;
  double dense_cosine(WordId a, WordId b) const;
  std::vector<double> apsyn_scores_against_all(WordId query,
                                               uint32_t n) const;

  const WeightedModel* sparse_ = nullptr;
  const DenseModel* dense_ = nullptr;
  const Vocabulary* vocab_ = nullptr;
  std::vector<double> row_norms_;
  std::vector<RankedContextList> ranked_;
  uint32_t ranked_n_max_ = 0;
};

}  // namespace dsm
