#include "dsm/io.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace dsm {

namespace {

constexpr char kMagic[4] = {'D', 'S', 'M', 'K'};
constexpr uint32_t kFormatVersion = 1;

// All integers are little-endian; this writer assumes a little-endian host.
class Writer {
 public:
  explicit Writer(const std::string& path)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error(ErrorKind::Io, "cannot open for writing: " + path);
  }

  void raw(const void* data, size_t len) {
    out_.write(static_cast<const char*>(data),
               static_cast<std::streamsize>(len));
    if (!out_) throw Error(ErrorKind::Io, "write failed: " + path_);
    crc_ = crc32(crc_, static_cast<const Bytef*>(data),
                 static_cast<uInt>(len));
    offset_ += len;
  }

  template <typename T>
  void num(T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    raw(&v, sizeof(T));
  }

  void str(const std::string& s) {
    if (s.size() > UINT32_MAX)
      throw Error(ErrorKind::Io, "string too long for container");
    num<uint32_t>(static_cast<uint32_t>(s.size()));
    raw(s.data(), s.size());
  }

  template <typename T>
  void vec(const std::vector<T>& v) {
    raw(v.data(), v.size() * sizeof(T));
  }

  void finish_crc() {
    uint32_t c = static_cast<uint32_t>(crc_);
    out_.write(reinterpret_cast<const char*>(&c), sizeof(c));
    out_.flush();
    if (!out_) throw Error(ErrorKind::Io, "write failed: " + path_);
  }

 private:
  std::string path_;
  std::ofstream out_;
  uLong crc_ = crc32(0L, Z_NULL, 0);
  uint64_t offset_ = 0;
};

class Reader {
 public:
  explicit Reader(const std::string& path)
      : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw Error(ErrorKind::Io, "cannot open for reading: " + path);
    in_.seekg(0, std::ios::end);
    file_size_ = static_cast<uint64_t>(in_.tellg());
    in_.seekg(0);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Corrupt, path_ + ": " + what + " at offset " +
                                        std::to_string(offset_));
  }

  void raw(void* data, size_t len) {
    if (offset_ + len + sizeof(uint32_t) > file_size_)
      fail("truncated file (need " + std::to_string(len) + " bytes)");
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(len));
    if (!in_) fail("read failed");
    crc_ = crc32(crc_, static_cast<const Bytef*>(data),
                 static_cast<uInt>(len));
    offset_ += len;
  }

  template <typename T>
  T num() {
    T v;
    raw(&v, sizeof(T));
    return v;
  }

  std::string str(size_t max_len = 1 << 30) {
    uint32_t len = num<uint32_t>();
    if (len > max_len) fail("string length " + std::to_string(len) +
                            " exceeds limit");
    std::string s(len, '\0');
    raw(s.data(), len);
    return s;
  }

  template <typename T>
  void vec(std::vector<T>& v, uint64_t count) {
    // sanity bound so a corrupt count fails cleanly instead of allocating
    if (count > file_size_ / sizeof(T))
      fail("element count " + std::to_string(count) + " exceeds file size");
    v.resize(count);
    raw(v.data(), count * sizeof(T));
  }

  void check_crc() {
    uint32_t computed = static_cast<uint32_t>(crc_);
    if (offset_ + sizeof(uint32_t) > file_size_) fail("missing checksum");
    uint32_t stored;
    in_.read(reinterpret_cast<char*>(&stored), sizeof(stored));
    if (!in_) fail("read failed");
    offset_ += sizeof(stored);
    if (stored != computed)
      fail("checksum mismatch (stored " + std::to_string(stored) +
           ", computed " + std::to_string(computed) + ")");
    if (offset_ != file_size_) fail("trailing bytes after checksum");
  }

  uint64_t offset() const { return offset_; }

 private:
  std::string path_;
  std::ifstream in_;
  uint64_t file_size_ = 0;
  uint64_t offset_ = 0;
  uLong crc_ = crc32(0L, Z_NULL, 0);
};

nlohmann::json meta_to_json(const ModelMeta& m) {
  nlohmann::json j;
  j["window"] = m.window;
  j["window_over"] = m.window_over;
  j["min_context_freq"] = m.min_context_freq;
  j["corpus_tokens"] = m.corpus_tokens;
  j["corpus_sentences"] = m.corpus_sentences;
  j["malformed_tokens"] = m.malformed_tokens;
  j["fingerprint"] = m.fingerprint;
  j["parent_fingerprint"] = m.parent_fingerprint;
  j["k"] = m.k;
  j["eigen_weight"] = m.eigen_weight;
  j["seed"] = m.seed;
  j["extra"] = m.extra;
  return j;
}

ModelMeta meta_from_json(const nlohmann::json& j) {
  ModelMeta m;
  m.window = j.value("window", 0u);
  m.window_over = j.value("window_over", "filtered");
  m.min_context_freq = j.value("min_context_freq", uint64_t{0});
  m.corpus_tokens = j.value("corpus_tokens", uint64_t{0});
  m.corpus_sentences = j.value("corpus_sentences", uint64_t{0});
  m.malformed_tokens = j.value("malformed_tokens", uint64_t{0});
  m.fingerprint = j.value("fingerprint", "");
  m.parent_fingerprint = j.value("parent_fingerprint", "");
  m.k = j.value("k", 0u);
  m.eigen_weight = j.value("eigen_weight", 1.0);
  m.seed = j.value("seed", uint64_t{0});
  if (j.contains("extra"))
    m.extra = j.at("extra").get<std::map<std::string, std::string>>();
  return m;
}

void write_header(Writer& w, ModelKind kind, Scheme scheme,
                  const ModelMeta& meta) {
  w.raw(kMagic, sizeof(kMagic));
  w.num<uint32_t>(kFormatVersion);
  w.num<uint8_t>(static_cast<uint8_t>(kind));
  w.num<uint8_t>(static_cast<uint8_t>(scheme));
  w.num<uint16_t>(0);  // reserved
  w.str(meta_to_json(meta).dump());
}

struct Header {
  ModelKind kind;
  Scheme scheme;
  ModelMeta meta;
};

Header read_header(Reader& r) {
  char magic[4];
  r.raw(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    r.fail("bad magic (not a dsmkit model file)");
  uint32_t version = r.num<uint32_t>();
  if (version != kFormatVersion)
    r.fail("unsupported format version " + std::to_string(version));
  uint8_t kind = r.num<uint8_t>();
  if (kind > 2) r.fail("unknown model kind " + std::to_string(kind));
  uint8_t scheme = r.num<uint8_t>();
  if (scheme > 2) r.fail("unknown scheme " + std::to_string(scheme));
  r.num<uint16_t>();  // reserved
  Header h;
  h.kind = static_cast<ModelKind>(kind);
  h.scheme = static_cast<Scheme>(scheme);
  std::string meta_text = r.str();
  nlohmann::json j = nlohmann::json::parse(meta_text, nullptr, false);
  if (j.is_discarded()) r.fail("unparseable metadata block");
  h.meta = meta_from_json(j);
  return h;
}

void write_vocab(Writer& w, const Vocabulary& v) {
  w.num<uint64_t>(v.size());
  for (WordId id = 0; id < v.size(); ++id) {
    const std::string& lemma = v.lemma(id);
    if (lemma.size() > UINT16_MAX)
      throw Error(ErrorKind::Io, "lemma too long: " + lemma.substr(0, 32));
    w.num<uint16_t>(static_cast<uint16_t>(lemma.size()));
    w.raw(lemma.data(), lemma.size());
    w.num<uint8_t>(static_cast<uint8_t>(pos_char(v.pos(id))));
    w.num<uint8_t>(v.context_eligible(id) ? 1 : 0);
    w.num<uint64_t>(v.freq(id));
  }
}

Vocabulary read_vocab(Reader& r) {
  uint64_t n = r.num<uint64_t>();
  Vocabulary v;
  std::string lemma;
  for (uint64_t i = 0; i < n; ++i) {
    uint16_t len = r.num<uint16_t>();
    lemma.resize(len);
    r.raw(lemma.data(), len);
    auto pos = pos_from_char(static_cast<char>(r.num<uint8_t>()));
    if (!pos) r.fail("bad part-of-speech byte in vocabulary entry " +
                     std::to_string(i));
    uint8_t flags = r.num<uint8_t>();
    uint64_t freq = r.num<uint64_t>();
    WordId id = v.add(lemma, *pos);
    if (id != i) r.fail("duplicate vocabulary entry " + lemma);
    v.set_freq(id, freq);
    v.set_context_eligible(id, flags & 1);
  }
  return v;
}

template <typename T>
void write_csr(Writer& w, const CsrMatrix<T>& m,
               const std::vector<uint64_t>& row_marg,
               const std::vector<uint64_t>& col_marg, uint64_t total) {
  w.num<uint64_t>(m.n_rows);
  w.num<uint64_t>(m.n_cols);
  w.num<uint64_t>(m.nnz());
  w.vec(m.row_ptr);
  w.vec(m.col_idx);
  w.vec(m.values);
  w.vec(row_marg);
  w.vec(col_marg);
  w.num<uint64_t>(total);
}

template <typename T>
void read_csr(Reader& r, CsrMatrix<T>& m, std::vector<uint64_t>& row_marg,
              std::vector<uint64_t>& col_marg, uint64_t& total,
              uint64_t expect_rows) {
  m.n_rows = r.num<uint64_t>();
  m.n_cols = r.num<uint64_t>();
  if (m.n_rows != expect_rows || m.n_cols != expect_rows)
    r.fail("matrix shape does not match vocabulary size");
  uint64_t nnz = r.num<uint64_t>();
  r.vec(m.row_ptr, m.n_rows + 1);
  if (m.row_ptr.empty() || m.row_ptr.front() != 0 || m.row_ptr.back() != nnz)
    r.fail("bad row pointer array");
  for (uint64_t i = 0; i < m.n_rows; ++i)
    if (m.row_ptr[i] > m.row_ptr[i + 1]) r.fail("row pointers not monotone");
  r.vec(m.col_idx, nnz);
  for (uint32_t c : m.col_idx)
    if (c >= m.n_cols) r.fail("column index out of range");
  r.vec(m.values, nnz);
  r.vec(row_marg, m.n_rows);
  r.vec(col_marg, m.n_cols);
  total = r.num<uint64_t>();
}

}  // namespace

void save_model(const CountModel& m, const std::string& path) {
  Writer w(path);
  write_header(w, ModelKind::Counts, Scheme::Raw, m.meta);
  write_vocab(w, m.vocab);
  write_csr(w, m.matrix.counts, m.matrix.row_marginals, m.matrix.col_marginals,
            m.matrix.total);
  w.finish_crc();
}

void save_model(const WeightedModel& m, const std::string& path) {
  Writer w(path);
  write_header(w, ModelKind::Weighted, m.matrix.scheme, m.meta);
  write_vocab(w, m.vocab);
  write_csr(w, m.matrix.weights, m.matrix.row_marginals,
            m.matrix.col_marginals, m.matrix.total);
  w.finish_crc();
}

void save_model(const DenseModel& m, const std::string& path) {
  Writer w(path);
  write_header(w, ModelKind::Dense, m.source_scheme, m.meta);
  write_vocab(w, m.vocab);
  w.num<uint64_t>(m.vocab.size());
  w.num<uint32_t>(m.k);
  w.num<double>(m.eigen_weight);
  w.num<uint64_t>(m.seed);
  w.vec(m.singular_values);
  w.vec(m.vectors);
  w.finish_crc();
}

ModelKind probe_model_kind(const std::string& path) {
  Reader r(path);
  return read_header(r).kind;
}

CountModel load_count_model(const std::string& path) {
  Reader r(path);
  Header h = read_header(r);
  if (h.kind != ModelKind::Counts)
    throw Error(ErrorKind::Config, path + " is not a count model");
  CountModel m;
  m.meta = std::move(h.meta);
  m.vocab = read_vocab(r);
  read_csr(r, m.matrix.counts, m.matrix.row_marginals, m.matrix.col_marginals,
           m.matrix.total, m.vocab.size());
  r.check_crc();
  m.matrix.validate();
  return m;
}

WeightedModel load_weighted_model(const std::string& path) {
  Reader r(path);
  Header h = read_header(r);
  if (h.kind != ModelKind::Weighted)
    throw Error(ErrorKind::Config, path + " is not a weighted model");
  WeightedModel m;
  m.meta = std::move(h.meta);
  m.matrix.scheme = h.scheme;
  m.vocab = read_vocab(r);
  read_csr(r, m.matrix.weights, m.matrix.row_marginals, m.matrix.col_marginals,
           m.matrix.total, m.vocab.size());
  r.check_crc();
  return m;
}

DenseModel load_dense_model(const std::string& path) {
  Reader r(path);
  Header h = read_header(r);
  if (h.kind != ModelKind::Dense)
    throw Error(ErrorKind::Config, path + " is not a dense model");
  DenseModel m;
  m.meta = std::move(h.meta);
  m.source_scheme = h.scheme;
  m.vocab = read_vocab(r);
  uint64_t n_rows = r.num<uint64_t>();
  if (n_rows != m.vocab.size())
    r.fail("vector row count does not match vocabulary size");
  m.k = r.num<uint32_t>();
  m.eigen_weight = r.num<double>();
  m.seed = r.num<uint64_t>();
  r.vec(m.singular_values, m.k);
  r.vec(m.vectors, n_rows * m.k);
  r.check_crc();
  return m;
}

Model load_model(const std::string& path) {
  switch (probe_model_kind(path)) {
    case ModelKind::Counts: return load_count_model(path);
    case ModelKind::Weighted: return load_weighted_model(path);
    case ModelKind::Dense: return load_dense_model(path);
  }
  throw Error(ErrorKind::Corrupt, path + ": unknown model kind");
}

const Vocabulary& model_vocab(const Model& m) {
  return std::visit([](const auto& x) -> const Vocabulary& { return x.vocab; },
                    m);
}

const ModelMeta& model_meta(const Model& m) {
  return std::visit([](const auto& x) -> const ModelMeta& { return x.meta; },
                    m);
}

}  // namespace dsm
