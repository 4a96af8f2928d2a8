#include "dsm/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace dsm {

const char* measure_name(Measure m) {
  return m == Measure::Cosine ? "cosine" : "apsyn";
}

Measure measure_from_name(std::string_view name) {
  if (name == "cosine") return Measure::Cosine;
  if (name == "apsyn") return Measure::Apsyn;
  throw Error(ErrorKind::Config, "unknown measure: " + std::string(name) +
                                     " (expected cosine|apsyn)");
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::Config,
                "cosine requires equal dimensionality: " +
                    std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0)
    throw Error(ErrorKind::Eval, "cosine is undefined for a zero vector");
  double v = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(v, -1.0, 1.0);
}

RankedContextList build_ranked_list(std::span<const uint32_t> cols,
                                    std::span<const double> weights,
                                    uint32_t n_max) {
  if (n_max < 1)
    throw Error(ErrorKind::Config, "ranked list length must be >= 1");
  struct Entry {
    double weight;
    uint32_t col;
  };
  std::vector<Entry> entries;
  entries.reserve(cols.size());
  for (size_t i = 0; i < cols.size(); ++i)
    if (weights[i] > 0.0) entries.push_back({weights[i], cols[i]});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.col < b.col;
  });
  if (entries.size() > n_max) entries.resize(n_max);

  RankedContextList list;
  list.n_max = n_max;
  list.contexts.reserve(entries.size());
  for (const Entry& e : entries) list.contexts.push_back(e.col);
  return list;
}

double apsyn(const RankedContextList& l1, const RankedContextList& l2,
             uint32_t n) {
  if (n < 1) throw Error(ErrorKind::Config, "APSyn N must be >= 1");
  if (n > l1.n_max || n > l2.n_max)
    throw Error(ErrorKind::Config,
                "APSyn N=" + std::to_string(n) +
                    " exceeds the retained list length (lists were truncated "
                    "to " +
                    std::to_string(std::min(l1.n_max, l2.n_max)) + ")");
  const size_t n1 = std::min<size_t>(n, l1.contexts.size());
  const size_t n2 = std::min<size_t>(n, l2.contexts.size());
  std::unordered_map<uint32_t, uint32_t> rank1;
  rank1.reserve(n1);
  for (size_t i = 0; i < n1; ++i) rank1.emplace(l1.contexts[i], i + 1);
  double sum = 0.0;
  for (size_t j = 0; j < n2; ++j) {
    auto it = rank1.find(l2.contexts[j]);
    if (it == rank1.end()) continue;
    // 1 / ((rank1 + rank2) / 2)
    sum += 2.0 / static_cast<double>(it->second + j + 1);
  }
  return sum;
}

SimilarityIndex::SimilarityIndex(const WeightedModel& model,
                                 uint32_t ranked_n_max)
    : sparse_(&model), vocab_(&model.vocab), ranked_n_max_(ranked_n_max) {
  const auto& m = model.matrix.weights;
  row_norms_.assign(m.n_rows, 0.0);
  for (uint64_t r = 0; r < m.n_rows; ++r) {
    double acc = 0.0;
    for (double v : m.row_values(r)) acc += v * v;
    row_norms_[r] = std::sqrt(acc);
  }
  if (ranked_n_max_ > 0) {
    ranked_.resize(m.n_rows);
    for (uint64_t r = 0; r < m.n_rows; ++r) {
      ranked_[r] = build_ranked_list(m.row_cols(r), m.row_values(r),
                                     ranked_n_max_);
      ranked_[r].target = static_cast<WordId>(r);
    }
  }
}

SimilarityIndex::SimilarityIndex(const DenseModel& model)
    : dense_(&model), vocab_(&model.vocab) {
  row_norms_.assign(model.vocab.size(), 0.0);
  for (WordId id = 0; id < model.vocab.size(); ++id) {
    double acc = 0.0;
    for (double v : model.row(id)) acc += v * v;
    row_norms_[id] = std::sqrt(acc);
  }
}

WordId SimilarityIndex::require(std::string_view lemma, Pos pos) const {
  WordId id = vocab_->find(lemma, pos);
  if (id == kNoWord) {
    std::string word(lemma);
    word.push_back('_');
    word.push_back(pos_char(pos));
    throw OovError(word);
  }
  return id;
}

bool SimilarityIndex::scorable(WordId id) const {
  return id < row_norms_.size() && row_norms_[id] > 0.0;
}

double SimilarityIndex::sparse_cosine(WordId a, WordId b) const {
  const auto& m = sparse_->matrix.weights;
  auto ca = m.row_cols(a), cb = m.row_cols(b);
  auto va = m.row_values(a), vb = m.row_values(b);
  double dot = 0.0;
  size_t i = 0, j = 0;
  while (i < ca.size() && j < cb.size()) {
    if (ca[i] < cb[j]) {
      ++i;
    } else if (ca[i] > cb[j]) {
      ++j;
    } else {
      dot += va[i] * vb[j];
      ++i;
      ++j;
    }
  }
  return std::clamp(dot / (row_norms_[a] * row_norms_[b]), -1.0, 1.0);
}

double SimilarityIndex::dense_cosine(WordId a, WordId b) const {
  auto ra = dense_->row(a), rb = dense_->row(b);
  double dot = 0.0;
  for (size_t i = 0; i < ra.size(); ++i) dot += ra[i] * rb[i];
  return std::clamp(dot / (row_norms_[a] * row_norms_[b]), -1.0, 1.0);
}

double SimilarityIndex::pair_similarity(WordId w1, WordId w2, Measure measure,
                                        const SimParams& params) const {
  if (w1 >= vocab_->size() || w2 >= vocab_->size())
    throw Error(ErrorKind::Config, "word id out of range");
  switch (measure) {
    case Measure::Cosine:
      if (!scorable(w1) || !scorable(w2))
        throw Error(ErrorKind::Eval,
                    "cosine is undefined for a zero vector: " +
                        vocab_->word(scorable(w1) ? w2 : w1));
      return sparse_ ? sparse_cosine(w1, w2) : dense_cosine(w1, w2);
    case Measure::Apsyn: {
      if (!sparse_ || ranked_.empty())
        throw Error(ErrorKind::Config,
                    "APSyn requires a sparse weighted model with ranked "
                    "context lists");
      return apsyn(ranked_[w1], ranked_[w2], params.apsyn_n);
    }
  }
  throw Error(ErrorKind::Config, "unknown measure");
}

// APSyn against every other target via an inverted context index: for each
// of the query's top-n contexts, walk the targets that also retain that
// context in their own top-n.
std::vector<double> SimilarityIndex::apsyn_scores_against_all(
    WordId query, uint32_t n) const {
  std::vector<double> scores(vocab_->size(), 0.0);
  // context -> (target, rank) over all targets' top-n entries
  std::unordered_map<uint32_t, std::vector<std::pair<WordId, uint32_t>>> index;
  for (WordId t = 0; t < ranked_.size(); ++t) {
    const auto& ctxs = ranked_[t].contexts;
    const size_t len = std::min<size_t>(n, ctxs.size());
    for (size_t i = 0; i < len; ++i)
      index[ctxs[i]].emplace_back(t, static_cast<uint32_t>(i + 1));
  }
  const auto& qctx = ranked_[query].contexts;
  const size_t qlen = std::min<size_t>(n, qctx.size());
  for (size_t i = 0; i < qlen; ++i) {
    auto it = index.find(qctx[i]);
    if (it == index.end()) continue;
    for (auto [target, rank] : it->second)
      scores[target] += 2.0 / static_cast<double>(i + 1 + rank);
  }
  return scores;
}

std::vector<Neighbor> SimilarityIndex::nearest_neighbors(
    WordId query, uint32_t top_k, Measure measure,
    const SimParams& params) const {
  if (top_k < 1) throw Error(ErrorKind::Config, "top_k must be >= 1");
  if (query >= vocab_->size())
    throw Error(ErrorKind::Config, "word id out of range");
  if (!scorable(query))
    throw OovError(vocab_->word(query));

  std::vector<Neighbor> candidates;
  if (measure == Measure::Cosine) {
    if (sparse_) {
      // scatter the query row once, then each candidate dot is O(nnz(row))
      const auto& m = sparse_->matrix.weights;
      std::vector<double> q(m.n_cols, 0.0);
      auto qc = m.row_cols(query);
      auto qv = m.row_values(query);
      for (size_t i = 0; i < qc.size(); ++i) q[qc[i]] = qv[i];
      for (WordId c = 0; c < m.n_rows; ++c) {
        if (c == query || !scorable(c)) continue;
        auto cc = m.row_cols(c);
        auto cv = m.row_values(c);
        double dot = 0.0;
        for (size_t i = 0; i < cc.size(); ++i) dot += cv[i] * q[cc[i]];
        candidates.push_back(
            {c, std::clamp(dot / (row_norms_[query] * row_norms_[c]), -1.0,
                           1.0)});
      }
    } else {
      for (WordId c = 0; c < vocab_->size(); ++c) {
        if (c == query || !scorable(c)) continue;
        candidates.push_back({c, dense_cosine(query, c)});
      }
    }
  } else {
    if (!sparse_ || ranked_.empty())
      throw Error(ErrorKind::Config,
                  "APSyn requires a sparse weighted model with ranked "
                  "context lists");
    if (params.apsyn_n > ranked_n_max_)
      throw Error(ErrorKind::Config,
                  "APSyn N exceeds the retained list length");
    std::vector<double> scores =
        apsyn_scores_against_all(query, params.apsyn_n);
    for (WordId c = 0; c < vocab_->size(); ++c) {
      if (c == query || !scorable(c)) continue;
      candidates.push_back({c, scores[c]});
    }
  }

  auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  };
  if (candidates.size() > top_k) {
    std::partial_sort(candidates.begin(), candidates.begin() + top_k,
                      candidates.end(), better);
    candidates.resize(top_k);
  } else {
    std::sort(candidates.begin(), candidates.end(), better);
  }
  return candidates;
}

}  // namespace dsm
