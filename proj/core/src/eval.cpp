#include "dsm/eval.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dsm {

const char* dataset_format_name(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::Ws353: return "ws353";
    case DatasetFormat::Men: return "men";
    case DatasetFormat::Simlex: return "simlex";
  }
  return "?";
}

DatasetFormat dataset_format_from_name(std::string_view name) {
  if (name == "ws353") return DatasetFormat::Ws353;
  if (name == "men") return DatasetFormat::Men;
  if (name == "simlex") return DatasetFormat::Simlex;
  throw Error(ErrorKind::Config, "unknown dataset format: " +
                                     std::string(name) +
                                     " (expected ws353|men|simlex)");
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) fields.push_back(std::move(f));
  return fields;
}

std::optional<double> parse_gold(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

std::string lowercased(std::string s) {
  for (char& c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

[[noreturn]] void parse_fail(const std::string& path, size_t lineno,
                             const std::string& what) {
  throw Error(ErrorKind::Parse,
              path + " line " + std::to_string(lineno) + ": " + what);
}

// MEN lemma form tags words as `lemma-n|-v|-j`.
std::pair<std::string, std::optional<Pos>> split_men_word(std::string word) {
  if (word.size() > 2 && word[word.size() - 2] == '-') {
    switch (word.back()) {
      case 'n': return {word.substr(0, word.size() - 2), Pos::N};
      case 'v': return {word.substr(0, word.size() - 2), Pos::V};
      case 'j': return {word.substr(0, word.size() - 2), Pos::J};
      default: break;
    }
  }
  return {std::move(word), std::nullopt};
}

std::optional<Pos> simlex_pos(const std::string& tag) {
  if (tag.size() != 1) return std::nullopt;
  switch (std::toupper(static_cast<unsigned char>(tag[0]))) {
    case 'N': return Pos::N;
    case 'V': return Pos::V;
    case 'A': return Pos::J;  // the published file tags adjectives A
    case 'J': return Pos::J;
    default: return std::nullopt;
  }
}

}  // namespace

EvalDataset load_dataset(const std::string& path, DatasetFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open dataset: " + path);

  EvalDataset ds;
  ds.name = path;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fields = split_ws(line);

    EvalPair pair;
    switch (format) {
      case DatasetFormat::Ws353:
      case DatasetFormat::Men: {
        if (fields.size() != 3) {
          if (lineno == 1) continue;  // header
          parse_fail(path, lineno, "expected `word1 word2 score`, got " +
                                       std::to_string(fields.size()) +
                                       " fields");
        }
        auto gold = parse_gold(fields[2]);
        if (!gold) {
          if (lineno == 1) continue;
          parse_fail(path, lineno, "score is not a number: " + fields[2]);
        }
        if (format == DatasetFormat::Men) {
          auto [w1, p1] = split_men_word(lowercased(fields[0]));
          auto [w2, p2] = split_men_word(lowercased(fields[1]));
          pair = {std::move(w1), std::move(w2), p1, p2, *gold};
        } else {
          pair = {lowercased(fields[0]), lowercased(fields[1]), std::nullopt,
                  std::nullopt, *gold};
        }
        break;
      }
      case DatasetFormat::Simlex: {
        if (fields.size() < 4) {
          if (lineno == 1) continue;
          parse_fail(path, lineno,
                     "expected `word1 word2 POS score ...`, got " +
                         std::to_string(fields.size()) + " fields");
        }
        auto gold = parse_gold(fields[3]);
        auto pos = simlex_pos(fields[2]);
        if (!gold || !pos) {
          if (lineno == 1) continue;
          if (!pos) parse_fail(path, lineno, "bad POS tag: " + fields[2]);
          parse_fail(path, lineno, "score is not a number: " + fields[3]);
        }
        pair = {lowercased(fields[0]), lowercased(fields[1]), pos, pos, *gold};
        break;
      }
    }
    ds.pairs.push_back(std::move(pair));
  }
  if (ds.pairs.size() < 2)
    throw Error(ErrorKind::Eval, path + ": dataset has " +
                                     std::to_string(ds.pairs.size()) +
                                     " pairs, need at least 2");
  return ds;
}

EvalDataset load_subset(const std::string& path) {
  return load_dataset(path, DatasetFormat::Ws353);
}

namespace {

// Average ranks, 1-based; tied values share the mean of their rank range.
std::vector<double> average_ranks(std::span<const double> xs) {
  const size_t n = xs.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t t = i; t <= j; ++t) ranks[order[t]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw Error(ErrorKind::Eval, "spearman requires equal-length inputs");
  if (xs.size() < 2)
    throw Error(ErrorKind::Eval, "spearman requires at least 2 observations");

  std::vector<double> rx = average_ranks(xs);
  std::vector<double> ry = average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  double mean = (n + 1.0) / 2.0;
  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double dx = rx[i] - mean;
    double dy = ry[i] - mean;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0)
    throw Error(ErrorKind::Eval,
                "spearman is undefined for a constant input list");
  return cov / (std::sqrt(var_x) * std::sqrt(var_y));
}

WordId resolve_word(const Vocabulary& vocab, std::string_view lemma,
                    std::optional<Pos> pos, const std::string& pos_order) {
  if (pos) return vocab.find(lemma, *pos);
  for (char c : pos_order) {
    auto p = pos_from_char(c);
    if (!p || *p == Pos::O)
      throw Error(ErrorKind::Config,
                  "pos backoff order must use letters n, v, j: " + pos_order);
    WordId id = vocab.find(lemma, *p);
    if (id != kNoWord) return id;
  }
  return kNoWord;
}

EvalResult evaluate(const SimilarityIndex& index, const EvalDataset& dataset,
                    Measure measure, const SimParams& params,
                    const EvalOptions& opts) {
  const Vocabulary& vocab = index.vocab();
  EvalResult result;
  result.per_pair.reserve(dataset.pairs.size());

  std::vector<double> gold, scores;
  for (const EvalPair& pair : dataset.pairs) {
    PairOutcome out;
    out.pair = &pair;
    WordId id1 = resolve_word(vocab, pair.word1, pair.pos1, opts.pos_order);
    WordId id2 = resolve_word(vocab, pair.word2, pair.pos2, opts.pos_order);
    bool usable = id1 != kNoWord && id2 != kNoWord && index.scorable(id1) &&
                  index.scorable(id2);
    if (id1 != kNoWord) out.resolved1 = vocab.word(id1);
    if (id2 != kNoWord) out.resolved2 = vocab.word(id2);
    if (usable) {
      out.score = index.pair_similarity(id1, id2, measure, params);
      ++result.n_scored;
      gold.push_back(pair.gold);
      scores.push_back(out.score);
    } else if (opts.oov_zero) {
      out.score = 0.0;
      ++result.n_scored;
      gold.push_back(pair.gold);
      scores.push_back(0.0);
    } else {
      out.skipped = true;
      ++result.n_skipped;
    }
    result.per_pair.push_back(std::move(out));
  }

  if (gold.size() < 2)
    throw Error(ErrorKind::Eval,
                "evaluation needs at least 2 scorable pairs, got " +
                    std::to_string(gold.size()) + " (model coverage too low)");
  result.rho = spearman(gold, scores);
  return result;
}

namespace {

// Quote a CSV field only when it needs it.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += "\"\"";
    else q.push_back(c);
  }
  q.push_back('"');
  return q;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void write_eval_csv(std::ostream& out, const EvalResult& result) {
  out << "word1,word2,gold,score,skipped,resolved1,resolved2\n";
  for (const PairOutcome& p : result.per_pair) {
    out << csv_field(p.pair->word1) << ',' << csv_field(p.pair->word2) << ','
        << fmt_double(p.pair->gold) << ','
        << (p.skipped ? "" : fmt_double(p.score)) << ','
        << (p.skipped ? 1 : 0) << ',' << csv_field(p.resolved1) << ','
        << csv_field(p.resolved2) << '\n';
  }
}

}  // namespace dsm
