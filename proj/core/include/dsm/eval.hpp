#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsm/similarity.hpp"

namespace dsm {

enum class DatasetFormat : uint8_t { Ws353 = 0, Men = 1, Simlex = 2 };

const char* dataset_format_name(DatasetFormat f);
DatasetFormat dataset_format_from_name(std::string_view name);

struct EvalPair {
  std::string word1;
  std::string word2;
  std::optional<Pos> pos1;
  std::optional<Pos> pos2;
  double gold = 0.0;
};

struct EvalDataset {
  std::string name;
  std::vector<EvalPair> pairs;
};

// Loads one of the three published benchmark formats (see README for one
// example line each). A leading header line is tolerated; any other
// malformed row is a parse error carrying its line number. Datasets with
// fewer than 2 pairs are rejected.
EvalDataset load_dataset(const std::string& path, DatasetFormat format);

// The similarity/relatedness splits share the WordSim-353 row format.
EvalDataset load_subset(const std::string& path);

// Spearman rank correlation: Pearson over average ranks (tied values get
// the mean of their rank range). Constant input has no defined correlation.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct EvalOptions {
  std::string pos_order = "nvj";  // backoff for words without a POS tag
  bool oov_zero = false;          // score unresolvable pairs 0 instead of skipping
};

// Picks the vocabulary entry for a dataset word: the tagged POS when given,
// otherwise the first hit along pos_order. kNoWord when nothing matches.
WordId resolve_word(const Vocabulary& vocab, std::string_view lemma,
                    std::optional<Pos> pos, const std::string& pos_order);

struct PairOutcome {
  const EvalPair* pair = nullptr;
  std::string resolved1;  // "lemma_P" actually scored; empty when OOV
  std::string resolved2;
  double score = 0.0;
  bool skipped = false;
};

struct EvalResult {
  double rho = 0.0;
  uint64_t n_scored = 0;
  uint64_t n_skipped = 0;
  std::vector<PairOutcome> per_pair;  // dataset order
};

// Scores every pair and correlates with gold. Pairs whose words cannot be
// resolved (or have no usable vector) are skipped and counted, or scored 0
// under oov_zero. Fewer than 2 scorable pairs is an evaluation error.
EvalResult evaluate(const SimilarityIndex& index, const EvalDataset& dataset,
                    Measure measure, const SimParams& params = {},
                    const EvalOptions& opts = {});

// CSV: word1,word2,gold,score,skipped,resolved1,resolved2
void write_eval_csv(std::ostream& out, const EvalResult& result);

}  // namespace dsm
