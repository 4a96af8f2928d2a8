#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dsm/model.hpp"

namespace dsm {

// Effective settings of one pipeline invocation. Validation pins the ranges
// the toolkit supports; the canonical key=value rendering feeds the
// fingerprint embedded in every output file.
struct PipelineConfig {
  std::vector<std::string> corpus;
  uint32_t window = 2;               // one of 2, 3, 5
  uint64_t min_context_freq = 100;
  std::string window_over = "filtered";  // filtered|surface
  std::string scheme = "ppmi";           // raw|ppmi|lmi
  uint32_t k = 300;
  double eigen_weight = 1.0;  // one of 0, 0.5, 1
  uint64_t seed = 42;
  uint32_t apsyn_n = 500;  // within [100, 1000]
  std::string measure = "cosine";  // cosine|apsyn
  std::string targets;   // targets file, empty = all words
  std::string tagmap;    // tag map file, empty = built-in defaults
  std::string pos_order = "nvj";
  std::string oov_policy = "skip";  // skip|zero

  void validate() const;  // throws Error(Config) on out-of-range values
};

// 64-bit FNV-1a, the stable hash behind config fingerprints.
uint64_t fnv1a64(std::string_view data);

// Canonical text: `key=value` lines sorted by key, then hashed to 16 hex
// chars. Key order at the call site never matters.
std::string fingerprint(const std::map<std::string, std::string>& kv);

// Stage fingerprints chain: each one hashes the stage inputs plus the
// parent stage's fingerprint.
std::string build_fingerprint(const PipelineConfig& c);
std::string weight_fingerprint(const std::string& parent, Scheme scheme);
std::string svd_fingerprint(const std::string& parent, uint32_t k,
                            double eigen_weight, uint64_t seed);

// Rejects a model file whose recorded settings contradict what the current
// invocation asked for. `explicit_keys` lists the settings the user set on
// the command line (only those are compared).
void check_meta_consistency(const ModelMeta& meta, const PipelineConfig& c,
                            const std::vector<std::string>& explicit_keys);

}  // namespace dsm
