#pragma once

#include "dsm/sparse.hpp"

namespace dsm {

// Pointwise mutual information of an observed pair, natural log:
// log(count * D / (row_marginal * col_marginal)). Callers must not ask for
// the PMI of an unseen pair (count >= 1).
double pmi(uint64_t count, uint64_t row_marginal, uint64_t col_marginal,
           uint64_t total);

// max(PMI, 0) per entry; entries with PMI <= 0 are dropped from storage, so
// the output support never grows and every stored value is positive.
WeightedMatrix apply_ppmi(const CountMatrix& m);

// count * max(PMI, 0) per entry; zero results dropped. Same support as PPMI.
WeightedMatrix apply_lmi(const CountMatrix& m);

// Counts carried over as-is (the unweighted baseline).
WeightedMatrix apply_raw(const CountMatrix& m);

WeightedMatrix apply_scheme(const CountMatrix& m, Scheme scheme);

}  // namespace dsm
