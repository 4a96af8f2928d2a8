// Independent reference implementations the tests check the library
// against. Everything here is deliberately naive: dense storage, O(n^2)
// scans, textbook algorithms, no shared code with the implementation path.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using DenseMatrix = std::vector<std::vector<double>>;

// Singular values via one-sided Jacobi rotations on the columns.
// Plenty accurate for the small dense matrices used in tests.
inline std::vector<double> jacobi_singular_values(DenseMatrix a) {
  const size_t m = a.size();
  const size_t n = m == 0 ? 0 : a[0].size();
  // work on the transpose when there are more columns than rows; the
  // singular values are the same
  if (n > m) {
    DenseMatrix t(n, std::vector<double>(m));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < n; ++j) t[j][i] = a[i][j];
    return jacobi_singular_values(std::move(t));
  }

  auto col_dot = [&](size_t p, size_t q) {
    double s = 0.0;
    for (size_t i = 0; i < m; ++i) s += a[i][p] * a[i][q];
    return s;
  };

  const double eps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (size_t p = 0; p + 1 < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        double app = col_dot(p, p);
        double aqq = col_dot(q, q);
        double apq = col_dot(p, q);
        if (std::abs(apq) <= eps * std::sqrt(app * aqq)) continue;
        off += std::abs(apq);
        double zeta = (aqq - app) / (2.0 * apq);
        double t = (zeta >= 0 ? 1.0 : -1.0) /
                   (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (size_t i = 0; i < m; ++i) {
          double vp = a[i][p], vq = a[i][q];
          a[i][p] = c * vp - s * vq;
          a[i][q] = s * vp + c * vq;
        }
      }
    }
    if (off == 0.0) break;
  }

  std::vector<double> sigma(n);
  for (size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(col_dot(j, j));
  std::sort(sigma.rbegin(), sigma.rend());
  return sigma;
}

// PPMI/LMI straight from the probability definition: p(w,c) = n/D compared
// against p(w) * p(c). Dense scan over every cell.
struct WeightedCell {
  size_t row, col;
  double value;
};

inline std::vector<WeightedCell> naive_ppmi(
    const std::vector<std::vector<uint64_t>>& counts, bool lmi = false) {
  double total = 0.0;
  std::vector<double> row_sum(counts.size(), 0.0);
  std::vector<double> col_sum(counts.empty() ? 0 : counts[0].size(), 0.0);
  for (size_t r = 0; r < counts.size(); ++r)
    for (size_t c = 0; c < counts[r].size(); ++c) {
      total += static_cast<double>(counts[r][c]);
      row_sum[r] += static_cast<double>(counts[r][c]);
      col_sum[c] += static_cast<double>(counts[r][c]);
    }
  std::vector<WeightedCell> out;
  for (size_t r = 0; r < counts.size(); ++r)
    for (size_t c = 0; c < counts[r].size(); ++c) {
      if (counts[r][c] == 0) continue;
      double p_wc = static_cast<double>(counts[r][c]) / total;
      double p_w = row_sum[r] / total;
      double p_c = col_sum[c] / total;
      double pmi = std::log(p_wc / (p_w * p_c));
      double v = std::max(pmi, 0.0);
      if (lmi) v *= static_cast<double>(counts[r][c]);
      if (v > 0.0) out.push_back({r, c, v});
    }
  return out;
}

// Average ranks by counting (rank = #smaller + (#equal + 1) / 2), then the
// Pearson correlation of the rank vectors, all by direct summation.
inline double naive_spearman(const std::vector<double>& xs,
                             const std::vector<double>& ys) {
  const size_t n = xs.size();
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<double> r(n);
    for (size_t i = 0; i < n; ++i) {
      size_t less = 0, equal = 0;
      for (size_t j = 0; j < n; ++j) {
        if (v[j] < v[i]) ++less;
        if (v[j] == v[i]) ++equal;
      }
      r[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    return r;
  };
  std::vector<double> rx = ranks(xs), ry = ranks(ys);
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    cov += (rx[i] - mx) * (ry[i] - my);
    vx += (rx[i] - mx) * (rx[i] - mx);
    vy += (ry[i] - my) * (ry[i] - my);
  }
  return cov / (std::sqrt(vx) * std::sqrt(vy));
}

// APSyn by materializing both top-N lists and summing the definition term
// by term.
using SparseRow = std::vector<std::pair<uint32_t, double>>;  // (context, weight)

inline std::vector<uint32_t> naive_top_n(SparseRow row, size_t n) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<uint32_t> top;
  for (size_t i = 0; i < row.size() && i < n; ++i)
    if (row[i].second > 0.0) top.push_back(row[i].first);
  return top;
}

inline double naive_apsyn(const SparseRow& r1, const SparseRow& r2, size_t n) {
  std::vector<uint32_t> t1 = naive_top_n(r1, n);
  std::vector<uint32_t> t2 = naive_top_n(r2, n);
  double sum = 0.0;
  for (size_t i = 0; i < t1.size(); ++i) {
    for (size_t j = 0; j < t2.size(); ++j) {
      if (t1[i] == t2[j]) {
        double rank1 = static_cast<double>(i + 1);
        double rank2 = static_cast<double>(j + 1);
        sum += 1.0 / ((rank1 + rank2) / 2.0);
      }
    }
  }
  return sum;
}

// Window co-occurrence counts by enumerating every position pair.
// Sequences hold word ids; kNone marks a slot that cannot count.
inline constexpr uint32_t kNone = static_cast<uint32_t>(-1);

inline std::map<std::pair<uint32_t, uint32_t>, uint64_t> naive_window_counts(
    const std::vector<std::vector<uint32_t>>& sequences, int64_t window,
    const std::vector<uint8_t>& context_eligible,
    const std::vector<uint8_t>& is_target) {
  std::map<std::pair<uint32_t, uint32_t>, uint64_t> counts;
  for (const auto& seq : sequences) {
    const int64_t n = static_cast<int64_t>(seq.size());
    for (int64_t i = 0; i < n; ++i) {
      if (seq[i] == kNone || !is_target[seq[i]]) continue;
      for (int64_t j = 0; j < n; ++j) {
        if (j == i || std::llabs(j - i) > window) continue;
        if (seq[j] == kNone || !context_eligible[seq[j]]) continue;
        counts[{seq[i], seq[j]}]++;
      }
    }
  }
  return counts;
}

inline double harmonic(uint64_t n) {
  double h = 0.0;
  for (uint64_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

}  // namespace oracle
