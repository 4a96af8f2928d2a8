#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsm/error.hpp"

namespace dsm {

// Compressed sparse row matrix. Columns are strictly increasing within each
// row and explicit zeros are never stored.
template <typename T>
struct CsrMatrix {
  uint64_t n_rows = 0;
  uint64_t n_cols = 0;
  std::vector<uint64_t> row_ptr;  // size n_rows + 1
  std::vector<uint32_t> col_idx;  // size nnz
  std::vector<T> values;          // size nnz

  uint64_t nnz() const { return values.size(); }

  std::span<const uint32_t> row_cols(uint64_t r) const {
    return {col_idx.data() + row_ptr[r],
            static_cast<size_t>(row_ptr[r + 1] - row_ptr[r])};
  }
  std::span<const T> row_values(uint64_t r) const {
    return {values.data() + row_ptr[r],
            static_cast<size_t>(row_ptr[r + 1] - row_ptr[r])};
  }

  bool operator==(const CsrMatrix&) const = default;
};

enum class Scheme : uint8_t { Raw = 0, Ppmi = 1, Lmi = 2 };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(std::string_view name);

// Raw target x context co-occurrence counts plus the marginals the
// association measures need: row_marginals[w] = |w|, col_marginals[c] = |c|,
// total = D. Rows and columns are both indexed by vocabulary id.
struct CountMatrix {
  CsrMatrix<uint64_t> counts;
  std::vector<uint64_t> row_marginals;
  std::vector<uint64_t> col_marginals;
  uint64_t total = 0;

  // Checks total == sum(entries) == sum(row_marginals) == sum(col_marginals).
  void validate() const;

  bool operator==(const CountMatrix&) const = default;
};

// Counts after a weighting scheme was applied. Keeps the raw count marginals
// so provenance survives the transform; `weights` holds the scores.
struct WeightedMatrix {
  CsrMatrix<double> weights;
  std::vector<uint64_t> row_marginals;
  std::vector<uint64_t> col_marginals;
  uint64_t total = 0;
  Scheme scheme = Scheme::Raw;

  bool operator==(const WeightedMatrix&) const = default;
};

}  // namespace dsm
