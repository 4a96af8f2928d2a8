#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>

#include "dsm/sparse.hpp"
#include "dsm/vocab.hpp"

namespace dsm {

// Metadata carried by every model container. Fields that do not apply to a
// given kind stay at their defaults. `extra` holds free-form provenance
// (corpus paths, tool version) that round-trips untouched.
struct ModelMeta {
  uint32_t window = 0;
  std::string window_over = "filtered";
  uint64_t min_context_freq = 0;
  uint64_t corpus_tokens = 0;
  uint64_t corpus_sentences = 0;
  uint64_t malformed_tokens = 0;
  std::string fingerprint;
  std::string parent_fingerprint;
  // dense models only
  uint32_t k = 0;
  double eigen_weight = 1.0;
  uint64_t seed = 0;
  std::map<std::string, std::string> extra;

  bool operator==(const ModelMeta&) const = default;
};

struct CountModel {
  Vocabulary vocab;
  CountMatrix matrix;
  ModelMeta meta;
};

struct WeightedModel {
  Vocabulary vocab;
  WeightedMatrix matrix;
  ModelMeta meta;

  Scheme scheme() const { return matrix.scheme; }
};

// Dense k-dimensional row embeddings, one row per vocabulary id. Rows of
// words outside the SVD input support are zero vectors.
struct DenseModel {
  Vocabulary vocab;
  uint32_t k = 0;
  double eigen_weight = 1.0;  // exponent p in U * Sigma^p
  uint64_t seed = 0;
  Scheme source_scheme = Scheme::Raw;
  std::vector<double> singular_values;  // size k, descending
  std::vector<double> vectors;          // |V| x k, row-major
  ModelMeta meta;

  std::span<const double> row(WordId id) const {
    return {vectors.data() + static_cast<size_t>(id) * k, k};
  }
};

using Model = std::variant<CountModel, WeightedModel, DenseModel>;

const Vocabulary& model_vocab(const Model& m);
const ModelMeta& model_meta(const Model& m);

}  // namespace dsm
