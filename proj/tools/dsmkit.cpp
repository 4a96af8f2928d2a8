// dsmkit command line: build / weight / svd / sim / neighbors / eval /
// hubness subcommands wiring the pipeline end to end. Every command is a
// pure function of its input files and configuration; reruns write
// byte-identical outputs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dsm/analysis.hpp"
#include "dsm/config.hpp"
#include "dsm/cooccur.hpp"
#include "dsm/eval.hpp"
#include "dsm/io.hpp"
#include "dsm/similarity.hpp"
#include "dsm/svd.hpp"
#include "dsm/weighting.hpp"

namespace {

using dsm::Error;
using dsm::ErrorKind;

struct CliState {
  dsm::PipelineConfig cfg;
  std::vector<std::string> explicit_keys;  // options the user actually set
};

// `lemma_P` with a coarse tag, or a bare lemma resolved via pos backoff.
std::pair<std::string, std::optional<dsm::Pos>> parse_word_arg(
    std::string word) {
  for (char& c : word)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto sep = word.rfind('_');
  if (sep != std::string::npos && sep + 2 == word.size()) {
    if (auto pos = dsm::pos_from_char(word[sep + 1]))
      return {word.substr(0, sep), *pos};
  }
  return {word, std::nullopt};
}

dsm::TagMap make_tagmap(const dsm::PipelineConfig& cfg) {
  return cfg.tagmap.empty() ? dsm::TagMap::defaults()
                            : dsm::TagMap::from_file(cfg.tagmap);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open for writing: " + path);
  return out;
}

// Loads any model file and presents it for scoring. Count models are scored
// on their raw counts. Ranked lists are built only when APSyn may run.
struct LoadedModel {
  std::optional<dsm::WeightedModel> weighted;
  std::optional<dsm::DenseModel> dense;
  std::optional<dsm::SimilarityIndex> index;

  const dsm::ModelMeta& meta() const {
    return weighted ? weighted->meta : dense->meta;
  }
  const dsm::Vocabulary& vocab() const {
    return weighted ? weighted->vocab : dense->vocab;
  }
};

LoadedModel load_for_scoring(const std::string& path, dsm::Measure measure,
                             uint32_t apsyn_n) {
  LoadedModel lm;
  switch (dsm::probe_model_kind(path)) {
    case dsm::ModelKind::Counts: {
      dsm::CountModel counts = dsm::load_count_model(path);
      dsm::WeightedModel w;
      w.vocab = std::move(counts.vocab);
      w.matrix = dsm::apply_raw(counts.matrix);
      w.meta = std::move(counts.meta);
      lm.weighted = std::move(w);
      break;
    }
    case dsm::ModelKind::Weighted:
      lm.weighted = dsm::load_weighted_model(path);
      break;
    case dsm::ModelKind::Dense:
      lm.dense = dsm::load_dense_model(path);
      break;
  }
  if (lm.weighted) {
    uint32_t n_max = measure == dsm::Measure::Apsyn ? apsyn_n : 0;
    lm.index.emplace(*lm.weighted, n_max);
  } else {
    if (measure == dsm::Measure::Apsyn)
      throw Error(ErrorKind::Config,
                  "APSyn operates on sparse weighted models, not on dense "
                  "reduced ones");
    lm.index.emplace(*lm.dense);
  }
  return lm;
}

int cmd_build(const CliState& st, const std::string& output) {
  const auto& cfg = st.cfg;
  dsm::TagMap tagmap = make_tagmap(cfg);
  if (cfg.corpus.empty())
    throw Error(ErrorKind::Config, "build needs at least one --corpus file");

  dsm::CorpusStats stats;
  dsm::Vocabulary vocab =
      dsm::build_vocab(cfg.corpus, tagmap, cfg.min_context_freq, &stats);

  dsm::CooccurOptions opts;
  opts.window = cfg.window;
  opts.window_over = dsm::window_mode_from_name(cfg.window_over);
  if (!cfg.targets.empty())
    opts.target_mask = dsm::load_target_mask(cfg.targets, vocab);

  dsm::CountModel model;
  model.matrix = dsm::count_cooccurrences(cfg.corpus, tagmap, vocab, opts);
  model.vocab = std::move(vocab);
  model.meta.window = cfg.window;
  model.meta.window_over = cfg.window_over;
  model.meta.min_context_freq = cfg.min_context_freq;
  model.meta.corpus_tokens = stats.total_tokens;
  model.meta.corpus_sentences = stats.sentences;
  model.meta.malformed_tokens = stats.malformed_tokens;
  model.meta.fingerprint = dsm::build_fingerprint(cfg);
  model.meta.extra["corpus"] = [&] {
    std::string joined;
    for (const auto& p : cfg.corpus) {
      if (!joined.empty()) joined += ";";
      joined += p;
    }
    return joined;
  }();
  if (!cfg.targets.empty()) model.meta.extra["targets"] = cfg.targets;
  if (!cfg.tagmap.empty()) model.meta.extra["tagmap"] = cfg.tagmap;

  dsm::save_model(model, output);
  std::cout << "built " << output << ": vocabulary "
            << model.vocab.size() << ", entries " << model.matrix.counts.nnz()
            << ", pair mass " << model.matrix.total << ", sentences "
            << stats.sentences << ", tokens " << stats.total_tokens
            << " (malformed " << stats.malformed_tokens << ")\n";
  return 0;
}

int cmd_weight(const CliState& st, const std::string& input,
               const std::string& output) {
  dsm::CountModel counts = dsm::load_count_model(input);
  dsm::check_meta_consistency(counts.meta, st.cfg, st.explicit_keys);
  dsm::Scheme scheme = dsm::scheme_from_name(st.cfg.scheme);

  dsm::WeightedModel model;
  model.matrix = dsm::apply_scheme(counts.matrix, scheme);
  model.vocab = std::move(counts.vocab);
  model.meta = counts.meta;
  model.meta.parent_fingerprint = counts.meta.fingerprint;
  model.meta.fingerprint =
      dsm::weight_fingerprint(counts.meta.fingerprint, scheme);

  dsm::save_model(model, output);
  std::cout << "weighted " << output << " (" << dsm::scheme_name(scheme)
            << "): kept " << model.matrix.weights.nnz() << " of "
            << counts.matrix.counts.nnz() << " entries\n";
  return 0;
}

int cmd_svd(const CliState& st, const std::string& input,
            const std::string& output) {
  if (dsm::probe_model_kind(input) == dsm::ModelKind::Counts)
    throw Error(ErrorKind::Config,
                input + " holds raw counts; run `dsmkit weight` first "
                        "(use --scheme raw for unweighted SVD)");
  dsm::WeightedModel weighted = dsm::load_weighted_model(input);
  dsm::check_meta_consistency(weighted.meta, st.cfg, st.explicit_keys);

  dsm::SvdOptions opts;
  opts.k = st.cfg.k;
  opts.eigen_weight = st.cfg.eigen_weight;
  opts.seed = st.cfg.seed;
  dsm::DenseModel dense = dsm::truncated_svd(weighted, opts);
  dense.meta.parent_fingerprint = weighted.meta.fingerprint;
  dense.meta.fingerprint = dsm::svd_fingerprint(
      weighted.meta.fingerprint, opts.k, opts.eigen_weight, opts.seed);

  dsm::save_model(dense, output);
  std::cout << "reduced " << output << ": k " << dense.k << ", sigma[0] "
            << (dense.singular_values.empty() ? 0.0
                                              : dense.singular_values.front())
            << "\n";
  return 0;
}

int cmd_sim(const CliState& st, const std::string& model_path,
            const std::string& word1, const std::string& word2) {
  dsm::Measure measure = dsm::measure_from_name(st.cfg.measure);
  LoadedModel lm = load_for_scoring(model_path, measure, st.cfg.apsyn_n);
  dsm::check_meta_consistency(lm.meta(), st.cfg, st.explicit_keys);

  auto [l1, p1] = parse_word_arg(word1);
  auto [l2, p2] = parse_word_arg(word2);
  const dsm::Vocabulary& vocab = lm.vocab();
  dsm::WordId id1 = dsm::resolve_word(vocab, l1, p1, st.cfg.pos_order);
  dsm::WordId id2 = dsm::resolve_word(vocab, l2, p2, st.cfg.pos_order);
  if (id1 == dsm::kNoWord) throw dsm::OovError(word1);
  if (id2 == dsm::kNoWord) throw dsm::OovError(word2);

  dsm::SimParams params{st.cfg.apsyn_n};
  double score = lm.index->pair_similarity(id1, id2, measure, params);
  std::printf("%.6f\n", score);
  return 0;
}

int cmd_neighbors(const CliState& st, const std::string& model_path,
                  const std::string& word, uint32_t top_k,
                  const std::string& output) {
  dsm::Measure measure = dsm::measure_from_name(st.cfg.measure);
  LoadedModel lm = load_for_scoring(model_path, measure, st.cfg.apsyn_n);
  dsm::check_meta_consistency(lm.meta(), st.cfg, st.explicit_keys);

  auto [lemma, pos] = parse_word_arg(word);
  dsm::WordId id =
      dsm::resolve_word(lm.vocab(), lemma, pos, st.cfg.pos_order);
  if (id == dsm::kNoWord) throw dsm::OovError(word);

  auto neighbors =
      lm.index->nearest_neighbors(id, top_k, measure, {st.cfg.apsyn_n});
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!output.empty()) {
    file = open_out(output);
    out = &file;
  }
  *out << "rank,word,score\n";
  char buf[32];
  for (size_t i = 0; i < neighbors.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.10g", neighbors[i].score);
    *out << i + 1 << ',' << lm.vocab().word(neighbors[i].id) << ',' << buf
         << '\n';
  }
  return 0;
}

int cmd_eval(const CliState& st, const std::string& model_path,
             const std::string& dataset_path, const std::string& format,
             const std::string& csv_path, const std::string& json_path) {
  dsm::Measure measure = dsm::measure_from_name(st.cfg.measure);
  LoadedModel lm = load_for_scoring(model_path, measure, st.cfg.apsyn_n);
  dsm::check_meta_consistency(lm.meta(), st.cfg, st.explicit_keys);

  dsm::EvalDataset dataset =
      dsm::load_dataset(dataset_path, dsm::dataset_format_from_name(format));
  dsm::EvalOptions opts;
  opts.pos_order = st.cfg.pos_order;
  opts.oov_zero = st.cfg.oov_policy == "zero";
  dsm::EvalResult result =
      dsm::evaluate(*lm.index, dataset, measure, {st.cfg.apsyn_n}, opts);

  if (!csv_path.empty()) {
    auto out = open_out(csv_path);
    dsm::write_eval_csv(out, result);
  }
  if (!json_path.empty()) {
    nlohmann::json j;
    j["dataset"] = dataset_path;
    j["format"] = format;
    j["measure"] = st.cfg.measure;
    if (measure == dsm::Measure::Apsyn) j["apsyn_n"] = st.cfg.apsyn_n;
    j["rho"] = result.rho;
    j["n_pairs"] = dataset.pairs.size();
    j["n_scored"] = result.n_scored;
    j["n_skipped"] = result.n_skipped;
    j["coverage"] = static_cast<double>(result.n_scored) /
                    static_cast<double>(dataset.pairs.size());
    j["model_fingerprint"] = lm.meta().fingerprint;
    j["oov_policy"] = st.cfg.oov_policy;
    j["pos_order"] = st.cfg.pos_order;
    auto out = open_out(json_path);
    out << j.dump(2) << '\n';
  }
  std::printf("rho=%.6f scored=%llu skipped=%llu\n", result.rho,
              static_cast<unsigned long long>(result.n_scored),
              static_cast<unsigned long long>(result.n_skipped));
  return 0;
}

int cmd_hubness(const CliState& st, const std::string& model_path,
                const std::string& query_path, uint32_t k,
                const std::string& output, const std::string& summary_path) {
  dsm::Measure measure = dsm::measure_from_name(st.cfg.measure);
  LoadedModel lm = load_for_scoring(model_path, measure, st.cfg.apsyn_n);
  dsm::check_meta_consistency(lm.meta(), st.cfg, st.explicit_keys);

  auto queries = dsm::load_queries(query_path);
  dsm::HubnessProfile profile = dsm::hubness_profile(
      *lm.index, queries, k, measure, {st.cfg.apsyn_n}, st.cfg.pos_order);

  {
    auto out = open_out(output);
    dsm::write_hubness_csv(out, profile, lm.vocab());
  }
  if (!summary_path.empty()) {
    auto out = open_out(summary_path);
    dsm::write_hubness_summary_csv(out, profile);
  }
  std::printf("queries=%llu skipped=%llu points=%llu\n",
              static_cast<unsigned long long>(profile.queries_scored),
              static_cast<unsigned long long>(profile.queries_skipped),
              static_cast<unsigned long long>(profile.points.size()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliState st;
  CLI::App app{"dsmkit: count-based distributional semantic model toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // pipeline options are global, subcommands take paths
  app.set_config("--config", "", "flat key=value configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("--window", st.cfg.window,
                 "window half-width in tokens (2, 3 or 5)")
      ->each([&](const std::string&) { st.explicit_keys.push_back("window"); });
  app.add_option("--min-context-freq", st.cfg.min_context_freq,
                 "contexts must occur more often than this")
      ->each([&](const std::string&) {
        st.explicit_keys.push_back("min-context-freq");
      });
  app.add_option("--window-over", st.cfg.window_over,
                 "count windows over the filtered|surface token sequence")
      ->each([&](const std::string&) {
        st.explicit_keys.push_back("window-over");
      });
  app.add_option("--scheme", st.cfg.scheme, "weighting scheme raw|ppmi|lmi")
      ->each([&](const std::string&) { st.explicit_keys.push_back("scheme"); });
  app.add_option("--k", st.cfg.k, "latent dimensions for svd")
      ->each([&](const std::string&) { st.explicit_keys.push_back("k"); });
  app.add_option("--eigen-weight", st.cfg.eigen_weight,
                 "exponent p applied to the singular values (0, 0.5 or 1)")
      ->each([&](const std::string&) {
        st.explicit_keys.push_back("eigen-weight");
      });
  app.add_option("--seed", st.cfg.seed, "random seed for svd")
      ->each([&](const std::string&) { st.explicit_keys.push_back("seed"); });
  app.add_option("--apsyn-n", st.cfg.apsyn_n,
                 "top-N contexts for apsyn (100..1000)")
      ->each(
          [&](const std::string&) { st.explicit_keys.push_back("apsyn-n"); });
  app.add_option("--measure", st.cfg.measure, "similarity measure cosine|apsyn")
      ->each(
          [&](const std::string&) { st.explicit_keys.push_back("measure"); });
  app.add_option("--targets", st.cfg.targets,
                 "restrict matrix rows to the words in this file")
      ->each(
          [&](const std::string&) { st.explicit_keys.push_back("targets"); });
  app.add_option("--tagmap", st.cfg.tagmap,
                 "tag map file (prefix=CLASS lines); default covers "
                 "Penn/TreeTagger")
      ->each([&](const std::string&) { st.explicit_keys.push_back("tagmap"); });
  app.add_option("--pos-order", st.cfg.pos_order,
                 "POS backoff for untagged words, e.g. nvj")
      ->each([&](const std::string&) {
        st.explicit_keys.push_back("pos-order");
      });
  app.add_option("--oov-policy", st.cfg.oov_policy,
                 "skip (default) or zero out-of-vocabulary pairs")
      ->each([&](const std::string&) {
        st.explicit_keys.push_back("oov-policy");
      });

  // build
  auto* build = app.add_subcommand("build", "count co-occurrences");
  std::string output;
  build->add_option("--corpus", st.cfg.corpus,
                    "corpus file(s), plain or gzip")
      ->required();
  build->add_option("--output,-o", output, "count model file")->required();

  // weight
  auto* weight = app.add_subcommand("weight", "apply a weighting scheme");
  std::string weight_in;
  weight->add_option("--model", weight_in, "count model file")->required();
  weight->add_option("--output,-o", output, "weighted model file")->required();

  // svd
  auto* svd = app.add_subcommand("svd", "truncated svd reduction");
  std::string svd_in;
  svd->add_option("--model", svd_in, "weighted model file")->required();
  svd->add_option("--output,-o", output, "dense model file")->required();

  // sim
  auto* sim = app.add_subcommand("sim", "score one word pair");
  std::string sim_model, word1, word2;
  sim->add_option("--model", sim_model, "model file")->required();
  sim->add_option("word1", word1, "first word (lemma or lemma_P)")->required();
  sim->add_option("word2", word2, "second word")->required();

  // neighbors
  auto* neighbors = app.add_subcommand("neighbors", "top-k nearest neighbors");
  std::string nb_model, nb_word, nb_out;
  uint32_t top_k = 10;
  neighbors->add_option("--model", nb_model, "model file")->required();
  neighbors->add_option("word", nb_word, "query word")->required();
  neighbors->add_option("--top-k", top_k, "neighbors to return");
  neighbors->add_option("--output,-o", nb_out, "CSV output (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "benchmark evaluation");
  std::string eval_model, eval_dataset, eval_format = "ws353";
  std::string eval_csv, eval_json;
  eval->add_option("--model", eval_model, "model file")->required();
  eval->add_option("--dataset", eval_dataset, "dataset file")->required();
  eval->add_option("--format", eval_format, "dataset format ws353|men|simlex");
  eval->add_option("--output-csv", eval_csv, "per-pair scores CSV");
  eval->add_option("--output-json", eval_json, "summary JSON");

  // hubness
  auto* hubness = app.add_subcommand("hubness", "nearest-neighbor frequency "
                                                "profile");
  std::string hub_model, hub_queries, hub_out, hub_summary;
  uint32_t hub_k = 1000;
  hubness->add_option("--model", hub_model, "model file")->required();
  hubness->add_option("--queries", hub_queries, "query word file")->required();
  hubness->add_option("--neighbors,-K", hub_k, "neighbors per query");
  hubness->add_option("--output,-o", hub_out, "points CSV")->required();
  hubness->add_option("--summary", hub_summary, "per-rank mean CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    st.cfg.validate();
    if (build->parsed()) return cmd_build(st, output);
    if (weight->parsed()) return cmd_weight(st, weight_in, output);
    if (svd->parsed()) return cmd_svd(st, svd_in, output);
    if (sim->parsed()) return cmd_sim(st, sim_model, word1, word2);
    if (neighbors->parsed())
      return cmd_neighbors(st, nb_model, nb_word, top_k, nb_out);
    if (eval->parsed())
      return cmd_eval(st, eval_model, eval_dataset, eval_format, eval_csv,
                      eval_json);
    if (hubness->parsed())
      return cmd_hubness(st, hub_model, hub_queries, hub_k, hub_out,
                         hub_summary);
    std::cerr << "no subcommand given\n";
    return 1;
  } catch (const dsm::OovError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Eval ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
