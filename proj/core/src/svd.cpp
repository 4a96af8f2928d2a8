#include "dsm/svd.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace dsm {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Sparse matrix restricted to its nonempty rows and columns. Keeps the
// dense factors of the randomized method sized by the support, not by the
// full vocabulary.
struct CompactCsr {
  std::vector<uint64_t> row_ptr;
  std::vector<uint32_t> col_idx;
  std::vector<double> values;
  std::vector<uint64_t> row_ids;  // compact row -> original row
  std::vector<uint64_t> col_ids;  // compact col -> original col
  uint64_t n_rows = 0;
  uint64_t n_cols = 0;

  static CompactCsr build(const CsrMatrix<double>& m) {
    CompactCsr c;
    std::vector<uint32_t> col_map(m.n_cols, static_cast<uint32_t>(-1));
    for (uint32_t col : m.col_idx)
      if (col_map[col] == static_cast<uint32_t>(-1)) col_map[col] = 0;
    for (uint64_t j = 0; j < m.n_cols; ++j)
      if (col_map[j] == 0) {
        col_map[j] = static_cast<uint32_t>(c.col_ids.size());
        c.col_ids.push_back(j);
      }
    c.n_cols = c.col_ids.size();

    c.row_ptr.push_back(0);
    for (uint64_t r = 0; r < m.n_rows; ++r) {
      if (m.row_ptr[r] == m.row_ptr[r + 1]) continue;
      c.row_ids.push_back(r);
      for (uint64_t i = m.row_ptr[r]; i < m.row_ptr[r + 1]; ++i) {
        c.col_idx.push_back(col_map[m.col_idx[i]]);
        c.values.push_back(m.values[i]);
      }
      c.row_ptr.push_back(c.col_idx.size());
    }
    c.n_rows = c.row_ids.size();
    return c;
  }

  // Y = A * X, X is n_cols x l
  MatrixXd multiply(const MatrixXd& x) const {
    MatrixXd y = MatrixXd::Zero(static_cast<Eigen::Index>(n_rows), x.cols());
    for (uint64_t r = 0; r < n_rows; ++r)
      for (uint64_t i = row_ptr[r]; i < row_ptr[r + 1]; ++i)
        y.row(static_cast<Eigen::Index>(r)) +=
            values[i] * x.row(col_idx[i]);
    return y;
  }

  // Z = A^T * X, X is n_rows x l
  MatrixXd multiply_transposed(const MatrixXd& x) const {
    MatrixXd z = MatrixXd::Zero(static_cast<Eigen::Index>(n_cols), x.cols());
    for (uint64_t r = 0; r < n_rows; ++r)
      for (uint64_t i = row_ptr[r]; i < row_ptr[r + 1]; ++i)
        z.row(col_idx[i]) += values[i] * x.row(static_cast<Eigen::Index>(r));
    return z;
  }
};

// Seeded standard normals via Box-Muller; avoids std::normal_distribution,
// whose output sequence is implementation-defined.
class GaussianSource {
 public:
  explicit GaussianSource(uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = to_unit(rng_());
    } while (u1 <= 0.0);
    u2 = to_unit(rng_());
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
  }

 private:
  static double to_unit(uint64_t v) {
    return static_cast<double>(v >> 11) * 0x1.0p-53;
  }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

MatrixXd thin_q(const MatrixXd& y) {
  Eigen::HouseholderQR<MatrixXd> qr(y);
  MatrixXd q = qr.householderQ() *
               MatrixXd::Identity(y.rows(), std::min(y.rows(), y.cols()));
  return q;
}

struct DenseFactors {
  MatrixXd u;
  VectorXd sigma;
  MatrixXd v;
};

DenseFactors dense_svd(const MatrixXd& a, uint32_t k) {
  Eigen::BDCSVD<MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  DenseFactors f;
  f.u = svd.matrixU().leftCols(k);
  f.sigma = svd.singularValues().head(k);
  f.v = svd.matrixV().leftCols(k);
  return f;
}

DenseFactors randomized_svd(const CompactCsr& a, uint32_t k,
                            const SvdOptions& opts) {
  const uint64_t min_dim = std::min(a.n_rows, a.n_cols);
  const uint32_t l = static_cast<uint32_t>(
      std::min<uint64_t>(k + opts.oversampling, min_dim));

  GaussianSource gauss(opts.seed);
  MatrixXd omega(static_cast<Eigen::Index>(a.n_cols), l);
  for (Eigen::Index i = 0; i < omega.rows(); ++i)
    for (Eigen::Index j = 0; j < omega.cols(); ++j) omega(i, j) = gauss.next();

  MatrixXd q = thin_q(a.multiply(omega));

  // Power iterations with re-orthonormalization; continue past the minimum
  // until the Ritz values settle.
  VectorXd prev_sigma;
  uint32_t iter = 0;
  for (; iter < opts.max_power_iterations; ++iter) {
    q = thin_q(a.multiply(thin_q(a.multiply_transposed(q))));
    if (iter + 1 < opts.power_iterations) continue;
    MatrixXd b = a.multiply_transposed(q).transpose();  // l x n_cols
    Eigen::BDCSVD<MatrixXd> probe(b);
    VectorXd s = probe.singularValues().head(k);
    if (prev_sigma.size() == k) {
      double worst = 0.0;
      for (uint32_t i = 0; i < k; ++i) {
        double denom = std::max(std::abs(prev_sigma[i]), 1e-300);
        worst = std::max(worst, std::abs(s[i] - prev_sigma[i]) / denom);
      }
      if (worst <= 1e-10) {
        prev_sigma = s;
        break;
      }
    }
    prev_sigma = s;
  }

  MatrixXd b = a.multiply_transposed(q).transpose();  // l x n_cols
  Eigen::BDCSVD<MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const uint32_t kk = std::min<uint32_t>(k, l);
  DenseFactors f;
  f.u = q * svd.matrixU().leftCols(kk);
  f.sigma = svd.singularValues().head(kk);
  f.v = svd.matrixV().leftCols(kk);
  return f;
}

}  // namespace

SvdResult compute_truncated_svd(const CsrMatrix<double>& m,
                                const SvdOptions& opts) {
  const uint64_t min_dim = std::min(m.n_rows, m.n_cols);
  if (opts.k < 1 || opts.k > min_dim)
    throw Error(ErrorKind::Config,
                "k must be in [1, min(rows, cols)]: k=" +
                    std::to_string(opts.k) + ", min dim " +
                    std::to_string(min_dim));
  if (m.nnz() == 0)
    throw Error(ErrorKind::Config, "cannot factorize an empty matrix");

  SvdResult out;
  out.n_rows = m.n_rows;
  out.n_cols = m.n_cols;
  out.k = opts.k;
  out.left.assign(m.n_rows * opts.k, 0.0);
  out.sigma.assign(opts.k, 0.0);
  out.right.assign(m.n_cols * opts.k, 0.0);

  if (m.n_rows <= opts.dense_cutoff && m.n_cols <= opts.dense_cutoff) {
    MatrixXd a = MatrixXd::Zero(static_cast<Eigen::Index>(m.n_rows),
                                static_cast<Eigen::Index>(m.n_cols));
    for (uint64_t r = 0; r < m.n_rows; ++r)
      for (uint64_t i = m.row_ptr[r]; i < m.row_ptr[r + 1]; ++i)
        a(static_cast<Eigen::Index>(r), m.col_idx[i]) = m.values[i];
    DenseFactors f = dense_svd(a, opts.k);
    for (uint64_t r = 0; r < m.n_rows; ++r)
      for (uint32_t j = 0; j < opts.k; ++j)
        out.left[r * opts.k + j] = f.u(static_cast<Eigen::Index>(r), j);
    for (uint32_t j = 0; j < opts.k; ++j) out.sigma[j] = f.sigma[j];
    for (uint64_t c = 0; c < m.n_cols; ++c)
      for (uint32_t j = 0; j < opts.k; ++j)
        out.right[c * opts.k + j] = f.v(static_cast<Eigen::Index>(c), j);
    return out;
  }

  CompactCsr compact = CompactCsr::build(m);
  DenseFactors f = randomized_svd(compact, opts.k, opts);
  const uint32_t kk = static_cast<uint32_t>(f.sigma.size());
  for (uint64_t r = 0; r < compact.n_rows; ++r)
    for (uint32_t j = 0; j < kk; ++j)
      out.left[compact.row_ids[r] * opts.k + j] =
          f.u(static_cast<Eigen::Index>(r), j);
  for (uint32_t j = 0; j < kk; ++j) out.sigma[j] = f.sigma[j];
  for (uint64_t c = 0; c < compact.n_cols; ++c)
    for (uint32_t j = 0; j < kk; ++j)
      out.right[compact.col_ids[c] * opts.k + j] =
          f.v(static_cast<Eigen::Index>(c), j);
  return out;
}

DenseModel truncated_svd(const WeightedModel& m, const SvdOptions& opts) {
  SvdResult f = compute_truncated_svd(m.matrix.weights, opts);

  DenseModel dense;
  dense.vocab = m.vocab;
  dense.k = opts.k;
  dense.eigen_weight = opts.eigen_weight;
  dense.seed = opts.seed;
  dense.source_scheme = m.matrix.scheme;
  dense.singular_values = f.sigma;
  dense.vectors.assign(f.left.size(), 0.0);

  std::vector<double> scale(opts.k);
  for (uint32_t j = 0; j < opts.k; ++j)
    scale[j] = std::pow(f.sigma[j], opts.eigen_weight);
  for (uint64_t r = 0; r < f.n_rows; ++r)
    for (uint32_t j = 0; j < opts.k; ++j)
      dense.vectors[r * opts.k + j] = f.left[r * opts.k + j] * scale[j];

  dense.meta = m.meta;
  dense.meta.k = opts.k;
  dense.meta.eigen_weight = opts.eigen_weight;
  dense.meta.seed = opts.seed;
  return dense;
}

}  // namespace dsm
