#pragma once

#include <cstdint>

#include "dsm/model.hpp"
#include "dsm/sparse.hpp"

namespace dsm {

struct SvdOptions {
  uint32_t k = 300;
  double eigen_weight = 1.0;  // exponent p applied as Sigma^p, in {0, 0.5, 1}
  uint64_t seed = 0;
  // Randomized path parameters. Power iterations continue past the minimum
  // until the singular value estimates stabilize (or max is hit).
  uint32_t oversampling = 10;
  uint32_t power_iterations = 4;
  uint32_t max_power_iterations = 40;
  // Matrices with both dimensions below the cutoff use an exact dense SVD.
  uint64_t dense_cutoff = 1000;
};

// Top-k factorization A ~ U diag(sigma) V^T. Factors are row-major, sigma
// descending. Rows/columns of A that hold no entries come back as zero rows
// in U/V.
struct SvdResult {
  uint64_t n_rows = 0;
  uint64_t n_cols = 0;
  uint32_t k = 0;
  std::vector<double> left;    // n_rows x k
  std::vector<double> sigma;   // k
  std::vector<double> right;   // n_cols x k
};

// Deterministic given (matrix, options): same seed, same bits.
SvdResult compute_truncated_svd(const CsrMatrix<double>& m,
                                const SvdOptions& opts);

// Row embeddings U_k * Sigma_k^p over the model vocabulary.
DenseModel truncated_svd(const WeightedModel& m, const SvdOptions& opts);

}  // namespace dsm
