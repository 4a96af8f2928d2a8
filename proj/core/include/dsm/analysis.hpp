#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dsm/eval.hpp"
#include "dsm/similarity.hpp"

namespace dsm {

// Corpus-frequency ranks: rank 1 is the most frequent word, ties broken by
// ascending word id. A bijection onto 1..|V|; index by word id.
std::vector<uint32_t> frequency_ranks(const Vocabulary& vocab);

struct HubnessQuery {
  std::string lemma;
  std::optional<Pos> pos;  // resolved via pos backoff when absent
};

struct HubnessPoint {
  WordId query = kNoWord;
  uint32_t nn_rank = 0;     // 1..K
  WordId neighbor = kNoWord;
  uint32_t freq_rank = 0;   // neighbor's rank in the frequency list
  double score = 0.0;
};

struct HubnessBin {
  uint32_t nn_rank = 0;
  double mean_freq_rank = 0.0;
  uint64_t n = 0;  // queries contributing a neighbor at this rank
};

struct HubnessProfile {
  Measure measure = Measure::Cosine;
  uint32_t k = 0;                    // neighbors requested per query
  std::vector<HubnessPoint> points;  // query-major, nn_rank ascending
  std::vector<HubnessBin> summary;   // one bin per nn_rank
  uint64_t queries_scored = 0;
  uint64_t queries_skipped = 0;      // OOV or unscorable
};

// For every resolvable query, collects its top-K neighbors and each
// neighbor's corpus-frequency rank. Errors out when no query resolves.
HubnessProfile hubness_profile(const SimilarityIndex& index,
                               const std::vector<HubnessQuery>& queries,
                               uint32_t k, Measure measure,
                               const SimParams& params = {},
                               const std::string& pos_order = "nvj");

// One query file word per line: `lemma_P` or a bare lemma.
std::vector<HubnessQuery> load_queries(const std::string& path);

// CSV: query,nn_rank,neighbor,freq_rank,score
void write_hubness_csv(std::ostream& out, const HubnessProfile& profile,
                       const Vocabulary& vocab);
// CSV: nn_rank,mean_freq_rank,n
void write_hubness_summary_csv(std::ostream& out,
                               const HubnessProfile& profile);

}  // namespace dsm
