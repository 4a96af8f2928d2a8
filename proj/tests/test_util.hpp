#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "dsm/cooccur.hpp"
#include "dsm/sparse.hpp"
#include "dsm/vocab.hpp"

namespace testutil {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() /
            ("dsmkit-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr interleaved
};

// Runs the installed CLI binary; DSMKIT_CLI_PATH comes from the build.
inline CommandResult run_cli(const std::string& args) {
  std::string cmd = std::string(DSMKIT_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  CommandResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.output.append(buf.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Builds a CountMatrix directly from a dense grid of counts; marginals and
// total derived the obvious way.
inline dsm::CountMatrix count_matrix_from_dense(
    const std::vector<std::vector<uint64_t>>& grid) {
  dsm::CountMatrix m;
  const uint64_t rows = grid.size();
  const uint64_t cols = rows == 0 ? 0 : grid[0].size();
  m.counts.n_rows = rows;
  m.counts.n_cols = cols;
  m.row_marginals.assign(rows, 0);
  m.col_marginals.assign(cols, 0);
  m.counts.row_ptr.assign(rows + 1, 0);
  for (uint64_t r = 0; r < rows; ++r) {
    for (uint64_t c = 0; c < cols; ++c) {
      uint64_t v = grid[r][c];
      if (v == 0) continue;
      m.counts.col_idx.push_back(static_cast<uint32_t>(c));
      m.counts.values.push_back(v);
      m.counts.row_ptr[r + 1]++;
      m.row_marginals[r] += v;
      m.col_marginals[c] += v;
      m.total += v;
    }
  }
  for (uint64_t r = 0; r < rows; ++r)
    m.counts.row_ptr[r + 1] += m.counts.row_ptr[r];
  return m;
}

// A weighted matrix whose rows are the given dense vectors (zeros skipped),
// with a vocabulary w0..w{n-1} of nouns. Marginals are filled with 1s; they
// are irrelevant for similarity tests.
inline dsm::WeightedModel weighted_model_from_rows(
    const std::vector<std::vector<double>>& rows,
    dsm::Scheme scheme = dsm::Scheme::Ppmi) {
  dsm::WeightedModel model;
  const uint64_t n = rows.size();
  const uint64_t cols = n == 0 ? 0 : rows[0].size();
  for (uint64_t i = 0; i < n; ++i)
    model.vocab.add("w" + std::to_string(i), dsm::Pos::N);
  auto& m = model.matrix.weights;
  m.n_rows = n;
  m.n_cols = std::max(n, cols);  // ids must index both rows and columns
  m.row_ptr.assign(n + 1, 0);
  for (uint64_t r = 0; r < n; ++r) {
    for (uint64_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] == 0.0) continue;
      m.col_idx.push_back(static_cast<uint32_t>(c));
      m.values.push_back(rows[r][c]);
      m.row_ptr[r + 1]++;
    }
  }
  for (uint64_t r = 0; r < n; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  model.matrix.row_marginals.assign(n, 1);
  model.matrix.col_marginals.assign(m.n_cols, 1);
  model.matrix.total = n;
  model.matrix.scheme = scheme;
  return model;
}

}  // namespace testutil
