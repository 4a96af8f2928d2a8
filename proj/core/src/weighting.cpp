#include "dsm/weighting.hpp"

#include <cmath>

namespace dsm {

double pmi(uint64_t count, uint64_t row_marginal, uint64_t col_marginal,
           uint64_t total) {
  if (count == 0)
    throw Error(ErrorKind::Config, "PMI of an unseen pair is undefined");
  if (row_marginal < count || col_marginal < count || total < count)
    throw Error(ErrorKind::Config, "PMI marginals smaller than the count");
  return std::log((static_cast<double>(count) * static_cast<double>(total)) /
                  (static_cast<double>(row_marginal) *
                   static_cast<double>(col_marginal)));
}

namespace {

// Shared scan: recomputes each entry's weight and drops non-positive
// results. weight(count, pmi) decides the scheme.
template <typename WeightFn>
WeightedMatrix transform(const CountMatrix& m, Scheme scheme, WeightFn weight) {
  m.validate();
  WeightedMatrix out;
  out.scheme = scheme;
  out.row_marginals = m.row_marginals;
  out.col_marginals = m.col_marginals;
  out.total = m.total;
  out.weights.n_rows = m.counts.n_rows;
  out.weights.n_cols = m.counts.n_cols;
  out.weights.row_ptr.assign(m.counts.n_rows + 1, 0);
  out.weights.col_idx.reserve(m.counts.nnz());
  out.weights.values.reserve(m.counts.nnz());
  for (uint64_t r = 0; r < m.counts.n_rows; ++r) {
    for (uint64_t i = m.counts.row_ptr[r]; i < m.counts.row_ptr[r + 1]; ++i) {
      uint32_t c = m.counts.col_idx[i];
      uint64_t count = m.counts.values[i];
      double v = weight(count, r, c);
      if (v > 0.0) {
        out.weights.col_idx.push_back(c);
        out.weights.values.push_back(v);
        out.weights.row_ptr[r + 1]++;
      }
    }
  }
  for (uint64_t r = 0; r < m.counts.n_rows; ++r)
    out.weights.row_ptr[r + 1] += out.weights.row_ptr[r];
  out.weights.col_idx.shrink_to_fit();
  out.weights.values.shrink_to_fit();
  return out;
}

}  // namespace

WeightedMatrix apply_ppmi(const CountMatrix& m) {
  return transform(m, Scheme::Ppmi, [&](uint64_t count, uint64_t r, uint32_t c) {
    return pmi(count, m.row_marginals[r], m.col_marginals[c], m.total);
  });
}

WeightedMatrix apply_lmi(const CountMatrix& m) {
  return transform(m, Scheme::Lmi, [&](uint64_t count, uint64_t r, uint32_t c) {
    double p = pmi(count, m.row_marginals[r], m.col_marginals[c], m.total);
    return p > 0.0 ? static_cast<double>(count) * p : 0.0;
  });
}

WeightedMatrix apply_raw(const CountMatrix& m) {
  return transform(m, Scheme::Raw, [](uint64_t count, uint64_t, uint32_t) {
    return static_cast<double>(count);
  });
}

WeightedMatrix apply_scheme(const CountMatrix& m, Scheme scheme) {
  switch (scheme) {
    case Scheme::Raw: return apply_raw(m);
    case Scheme::Ppmi: return apply_ppmi(m);
    case Scheme::Lmi: return apply_lmi(m);
  }
  throw Error(ErrorKind::Config, "unknown weighting scheme");
}

}  // namespace dsm
