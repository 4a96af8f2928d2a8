#include "dsm/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

namespace dsm {

std::vector<uint32_t> frequency_ranks(const Vocabulary& vocab) {
  if (vocab.empty())
    throw Error(ErrorKind::Config, "frequency ranks of an empty vocabulary");
  std::vector<WordId> order(vocab.size());
  std::iota(order.begin(), order.end(), WordId{0});
  std::sort(order.begin(), order.end(), [&](WordId a, WordId b) {
    if (vocab.freq(a) != vocab.freq(b)) return vocab.freq(a) > vocab.freq(b);
    return a < b;
  });
  std::vector<uint32_t> ranks(vocab.size());
  for (uint32_t r = 0; r < order.size(); ++r) ranks[order[r]] = r + 1;
  return ranks;
}

HubnessProfile hubness_profile(const SimilarityIndex& index,
                               const std::vector<HubnessQuery>& queries,
                               uint32_t k, Measure measure,
                               const SimParams& params,
                               const std::string& pos_order) {
  if (k < 1) throw Error(ErrorKind::Config, "K must be >= 1");
  if (queries.empty())
    throw Error(ErrorKind::Config, "hubness profile needs at least one query");

  const Vocabulary& vocab = index.vocab();
  std::vector<uint32_t> freq_rank = frequency_ranks(vocab);

  HubnessProfile profile;
  profile.measure = measure;
  profile.k = k;

  std::vector<double> bin_sum(k, 0.0);
  std::vector<uint64_t> bin_n(k, 0);

  for (const HubnessQuery& q : queries) {
    WordId id = resolve_word(vocab, q.lemma, q.pos, pos_order);
    if (id == kNoWord || !index.scorable(id)) {
      ++profile.queries_skipped;
      continue;
    }
    ++profile.queries_scored;
    auto neighbors = index.nearest_neighbors(id, k, measure, params);
    for (uint32_t r = 0; r < neighbors.size(); ++r) {
      const Neighbor& nb = neighbors[r];
      profile.points.push_back(
          {id, r + 1, nb.id, freq_rank[nb.id], nb.score});
      bin_sum[r] += freq_rank[nb.id];
      bin_n[r] += 1;
    }
  }

  if (profile.queries_scored == 0)
    throw Error(ErrorKind::Eval, "no hubness query resolved to a scorable "
                                 "model word");

  for (uint32_t r = 0; r < k; ++r) {
    if (bin_n[r] == 0) continue;
    profile.summary.push_back(
        {r + 1, bin_sum[r] / static_cast<double>(bin_n[r]), bin_n[r]});
  }
  return profile;
}

std::vector<HubnessQuery> load_queries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open query file: " + path);
  std::vector<HubnessQuery> queries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t");
    std::string word = line.substr(b, e - b + 1);
    auto sep = word.rfind('_');
    if (sep != std::string::npos && sep + 2 == word.size()) {
      if (auto pos = pos_from_char(word[sep + 1])) {
        queries.push_back({word.substr(0, sep), *pos});
        continue;
      }
    }
    queries.push_back({std::move(word), std::nullopt});
  }
  return queries;
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void write_hubness_csv(std::ostream& out, const HubnessProfile& profile,
                       const Vocabulary& vocab) {
  out << "query,nn_rank,neighbor,freq_rank,score\n";
  for (const HubnessPoint& p : profile.points) {
    out << vocab.word(p.query) << ',' << p.nn_rank << ','
        << vocab.word(p.neighbor) << ',' << p.freq_rank << ','
        << fmt_double(p.score) << '\n';
  }
}

void write_hubness_summary_csv(std::ostream& out,
                               const HubnessProfile& profile) {
  out << "nn_rank,mean_freq_rank,n\n";
  for (const HubnessBin& b : profile.summary)
    out << b.nn_rank << ',' << fmt_double(b.mean_freq_rank) << ',' << b.n
        << '\n';
}

}  // namespace dsm
