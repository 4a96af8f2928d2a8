#pragma once

#include <string>

#include "dsm/model.hpp"

namespace dsm {

// Binary model container (see docs/FORMAT.md for the byte layout). The
// contract is round-trip identity: load(save(m)) == m, including marginals
// and metadata. Corrupt or truncated files fail with the byte offset of the
// first bad read.

void save_model(const CountModel& m, const std::string& path);
void save_model(const WeightedModel& m, const std::string& path);
void save_model(const DenseModel& m, const std::string& path);

enum class ModelKind : uint8_t { Counts = 0, Weighted = 1, Dense = 2 };

// Peeks at the header without loading the payload.
ModelKind probe_model_kind(const std::string& path);

Model load_model(const std::string& path);

CountModel load_count_model(const std::string& path);
WeightedModel load_weighted_model(const std::string& path);
DenseModel load_dense_model(const std::string& path);

}  // namespace dsm
