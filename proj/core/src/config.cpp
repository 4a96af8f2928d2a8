#include "dsm/config.hpp"

#include <algorithm>
#include <cstdio>

#include "dsm/cooccur.hpp"
#include "dsm/similarity.hpp"

namespace dsm {

void PipelineConfig::validate() const {
  if (window != 2 && window != 3 && window != 5)
    throw Error(ErrorKind::Config,
                "window must be one of 2, 3, 5 (got " +
                    std::to_string(window) + ")");
  window_mode_from_name(window_over);
  scheme_from_name(scheme);
  measure_from_name(measure);
  if (k < 1)
    throw Error(ErrorKind::Config, "k must be >= 1");
  if (eigen_weight != 0.0 && eigen_weight != 0.5 && eigen_weight != 1.0)
    throw Error(ErrorKind::Config,
                "eigen weight must be one of 0, 0.5, 1");
  if (apsyn_n < 100 || apsyn_n > 1000)
    throw Error(ErrorKind::Config,
                "apsyn-n must lie in [100, 1000] (got " +
                    std::to_string(apsyn_n) + ")");
  if (pos_order.empty() || pos_order.size() > 3 ||
      pos_order.find_first_not_of("nvj") != std::string::npos)
    throw Error(ErrorKind::Config,
                "pos-order must be a non-empty combination of n, v, j");
  if (oov_policy != "skip" && oov_policy != "zero")
    throw Error(ErrorKind::Config, "oov-policy must be skip or zero");
}

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fingerprint(const std::map<std::string, std::string>& kv) {
  std::string canonical;
  for (const auto& [key, value] : kv) {
    canonical += key;
    canonical += '=';
    canonical += value;
    canonical += '\n';
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return buf;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(';');
    out += parts[i];
  }
  return out;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string build_fingerprint(const PipelineConfig& c) {
  return fingerprint({
      {"stage", "build"},
      {"corpus", join(c.corpus)},
      {"window", std::to_string(c.window)},
      {"min_context_freq", std::to_string(c.min_context_freq)},
      {"window_over", c.window_over},
      {"targets", c.targets},
      {"tagmap", c.tagmap},
  });
}

std::string weight_fingerprint(const std::string& parent, Scheme scheme) {
  return fingerprint({
      {"stage", "weight"},
      {"parent", parent},
      {"scheme", scheme_name(scheme)},
  });
}

std::string svd_fingerprint(const std::string& parent, uint32_t k,
                            double eigen_weight, uint64_t seed) {
  return fingerprint({
      {"stage", "svd"},
      {"parent", parent},
      {"k", std::to_string(k)},
      {"eigen_weight", fmt_double(eigen_weight)},
      {"seed", std::to_string(seed)},
  });
}

void check_meta_consistency(const ModelMeta& meta, const PipelineConfig& c,
                            const std::vector<std::string>& explicit_keys) {
  auto given = [&](const char* key) {
    return std::find(explicit_keys.begin(), explicit_keys.end(), key) !=
           explicit_keys.end();
  };
  auto mismatch = [](const std::string& key, const std::string& want,
                     const std::string& have) {
    throw Error(ErrorKind::Config,
                "configured " + key + "=" + want +
                    " does not match the model file (" + key + "=" + have +
                    "); refusing to mix pipeline stages");
  };
  if (given("window") && meta.window != 0 && c.window != meta.window)
    mismatch("window", std::to_string(c.window), std::to_string(meta.window));
  if (given("window-over") && c.window_over != meta.window_over)
    mismatch("window-over", c.window_over, meta.window_over);
  if (given("min-context-freq") && c.min_context_freq != meta.min_context_freq)
    mismatch("min-context-freq", std::to_string(c.min_context_freq),
             std::to_string(meta.min_context_freq));
  if (given("k") && meta.k != 0 && c.k != meta.k)
    mismatch("k", std::to_string(c.k), std::to_string(meta.k));
  if (given("seed") && meta.k != 0 && c.seed != meta.seed)
    mismatch("seed", std::to_string(c.seed), std::to_string(meta.seed));
}

}  // namespace dsm
