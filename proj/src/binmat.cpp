#include "bind/binmat.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "bind/kernels.hpp"

namespace bind {

namespace {

std::size_t words_for(std::size_t n) {
  return (n + BinaryMatrix::kWordBits - 1) / BinaryMatrix::kWordBits;
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

}  // namespace

BinaryMatrix::BinaryMatrix(std::size_t m, std::size_t n,
                           std::vector<std::uint64_t> bits)
    : m_(m), n_(n), wpr_(words_for(n)), bits_(std::move(bits)) {
  rebuild_caches();
}

void BinaryMatrix::rebuild_caches() {
  row_sums_.assign(m_, 0);
  col_sums_.assign(n_, 0);
  ones_ = 0;
  for (std::size_t i = 0; i < m_; ++i) {
    const std::uint32_t rs =
        static_cast<std::uint32_t>(kernels::popcount(row_words(i)));
    row_sums_[i] = rs;
    ones_ += rs;
    for_each_one_in_row(i, [this](std::size_t j) { ++col_sums_[j]; });
  }
}

BinaryMatrix BinaryMatrix::transposed() const {
  MatrixBuilder b(n_, m_);
  for (std::size_t i = 0; i < m_; ++i)
    for_each_one_in_row(i, [&](std::size_t j) { b.set(j, i); });
  return std::move(b).build();
}

BinaryMatrix BinaryMatrix::from_words(std::size_t m, std::size_t n,
                                      std::vector<std::uint64_t> words) {
  if (words.size() != m * words_for(n))
    fail("from_words: word count does not match dimensions");
  return BinaryMatrix(m, n, std::move(words));
}

MatrixBuilder::MatrixBuilder(std::size_t m, std::size_t n)
    : m_(m), n_(n), wpr_(words_for(n)), bits_(m * wpr_, 0) {
  if (m == 0 || n == 0) fail("matrix dimensions must be positive");
}

BinaryMatrix MatrixBuilder::build() && {
  return BinaryMatrix(m_, n_, std::move(bits_));
}

BinaryMatrix hadamard_mask(const BinaryMatrix& x,
                           std::span<const std::uint8_t> row_ind,
                           std::span<const std::uint8_t> col_ind) {
  if (row_ind.size() != x.rows() || col_ind.size() != x.cols())
    fail("hadamard_mask: indicator length mismatch");

  const std::size_t wpr = x.words_per_row();
  std::vector<std::uint64_t> col_mask(wpr, 0);
  for (std::size_t j = 0; j < x.cols(); ++j)
    if (col_ind[j])
      col_mask[j / BinaryMatrix::kWordBits] |= std::uint64_t{1}
                                               << (j % BinaryMatrix::kWordBits);

  std::vector<std::uint64_t> out(x.rows() * wpr, 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (!row_ind[i]) continue;
    kernels::and_words(x.row_words(i), col_mask, {out.data() + i * wpr, wpr});
  }
  return BinaryMatrix(x.rows(), x.cols(), std::move(out));
}

CompactResult compact_nonempty(const BinaryMatrix& x) {
  CompactResult res;
  for (std::size_t i = 0; i < x.rows(); ++i)
    if (x.row_sums()[i] > 0) res.row_map.push_back(i);
  for (std::size_t j = 0; j < x.cols(); ++j)
    if (x.col_sums()[j] > 0) res.col_map.push_back(j);
  if (res.row_map.empty() || res.col_map.empty()) {
    res.row_map.clear();
    res.col_map.clear();
    return res;  // fully empty matrix compacts to nothing
  }
  std::vector<std::size_t> col_new(x.cols(), 0);
  for (std::size_t c = 0; c < res.col_map.size(); ++c)
    col_new[res.col_map[c]] = c;
  MatrixBuilder b(res.row_map.size(), res.col_map.size());
  for (std::size_t r = 0; r < res.row_map.size(); ++r)
    x.for_each_one_in_row(res.row_map[r],
                          [&](std::size_t j) { b.set(r, col_new[j]); });
  res.matrix = std::move(b).build();
  return res;
}

// --- parsing ----------------------------------------------------------------

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

LoadResult load_dense01(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    lines.push_back(line);
  }
  if (lines.empty()) fail("dense01: empty input");
  const std::size_t n = lines.front().size();
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (lines[i].size() != n)
      fail("dense01: ragged line " + std::to_string(i + 1) + " (expected " +
           std::to_string(n) + " characters, got " +
           std::to_string(lines[i].size()) + ")");
  MatrixBuilder b(lines.size(), n);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const char c = lines[i][j];
      if (c == '1')
        b.set(i, j);
      else if (c != '0')
        fail(std::string("dense01: invalid character '") + c + "' at row " +
             std::to_string(i + 1));
    }
  }
  LoadResult res;
  res.matrix = std::move(b).build();
  return res;
}

LoadResult load_triplets(std::istream& in) {
  std::size_t m = 0, n = 0, nnz = 0;
  if (!(in >> m >> n >> nnz)) fail("triplets: missing or malformed header");
  if (m == 0 || n == 0) fail("triplets: dimensions must be positive");
  MatrixBuilder b(m, n);
  LoadResult res;
  for (std::size_t t = 0; t < nnz; ++t) {
    std::size_t i = 0, j = 0;
    if (!(in >> i >> j))
      fail("triplets: expected " + std::to_string(nnz) + " entries, got " +
           std::to_string(t));
    if (i < 1 || i > m || j < 1 || j > n)
      fail("triplets: index (" + std::to_string(i) + "," + std::to_string(j) +
           ") out of range for " + std::to_string(m) + "x" + std::to_string(n));
    if (b.get(i - 1, j - 1))
      ++res.duplicate_entries;
    else
      b.set(i - 1, j - 1);
  }
  res.matrix = std::move(b).build();
  return res;
}

LoadResult load_ratings(std::istream& in) {
  struct Entry {
    std::size_t row, col;
  };
  std::vector<Entry> entries;
  std::unordered_map<std::string, std::size_t> row_index, col_index;
  LoadResult res;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    if (c1 == std::string::npos)
      fail("ratings_csv: line " + std::to_string(line_no) +
           " has no comma separator");
    std::size_t c2 = line.find(',', c1 + 1);
    if (c2 == std::string::npos) c2 = line.size();
    const std::string user = line.substr(0, c1);
    const std::string item = line.substr(c1 + 1, c2 - c1 - 1);
    if (user.empty() || item.empty())
      fail("ratings_csv: empty user or item id on line " +
           std::to_string(line_no));
    auto [rit, rnew] = row_index.try_emplace(user, res.row_ids.size());
    if (rnew) res.row_ids.push_back(user);
    auto [cit, cnew] = col_index.try_emplace(item, res.col_ids.size());
    if (cnew) res.col_ids.push_back(item);
    entries.push_back({rit->second, cit->second});
  }
  if (entries.empty()) fail("ratings_csv: empty input");

  MatrixBuilder b(res.row_ids.size(), res.col_ids.size());
  for (const Entry& e : entries) {
    if (b.get(e.row, e.col))
      ++res.duplicate_entries;
    else
      b.set(e.row, e.col);
  }
  res.matrix = std::move(b).build();
  return res;
}

}  // namespace

LoadResult load_matrix(std::istream& in, MatrixFormat format) {
  switch (format) {
    case MatrixFormat::dense01:
      return load_dense01(in);
    case MatrixFormat::triplets:
      return load_triplets(in);
    case MatrixFormat::ratings_csv:
      return load_ratings(in);
  }
  fail("unknown matrix format");
}

LoadResult load_matrix_text(const std::string& text, MatrixFormat format) {
  std::istringstream in(text);
  return load_matrix(in, format);
}

LoadResult load_matrix_file(const std::filesystem::path& path,
                            MatrixFormat format) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  return load_matrix(in, format);
}

std::string save_matrix(const BinaryMatrix& x, MatrixFormat format,
                        std::span<const std::string> row_ids,
                        std::span<const std::string> col_ids) {
  std::ostringstream out;
  switch (format) {
    case MatrixFormat::dense01: {
      std::string line(x.cols(), '0');
      for (std::size_t i = 0; i < x.rows(); ++i) {
        std::fill(line.begin(), line.end(), '0');
        x.for_each_one_in_row(i, [&](std::size_t j) { line[j] = '1'; });
        out << line << '\n';
      }
      break;
    }
    case MatrixFormat::triplets: {
      out << x.rows() << ' ' << x.cols() << ' ' << x.ones() << '\n';
      for (std::size_t i = 0; i < x.rows(); ++i)
        x.for_each_one_in_row(
            i, [&](std::size_t j) { out << i + 1 << ' ' << j + 1 << '\n'; });
      break;
    }
    case MatrixFormat::ratings_csv: {
      // Ids default to the dense indices. Reloading reproduces the same
      // bits whenever the ids appear in row-major first-appearance order;
      // otherwise the returned id maps carry the permutation.
      for (std::size_t i = 0; i < x.rows(); ++i)
        x.for_each_one_in_row(i, [&](std::size_t j) {
          if (i < row_ids.size())
            out << row_ids[i];
          else
            out << 'u' << i;
          out << ',';
          if (j < col_ids.size())
            out << col_ids[j];
          else
            out << 'i' << j;
          out << '\n';
        });
      break;
    }
  }
  return out.str();
}

void save_matrix_file(const BinaryMatrix& x, const std::filesystem::path& path,
                      MatrixFormat format, std::span<const std::string> row_ids,
                      std::span<const std::string> col_ids) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path.string());
  out << save_matrix(x, format, row_ids, col_ids);
}

MatrixFormat parse_format(const std::string& name) {
  if (name == "dense01") return MatrixFormat::dense01;
  if (name == "triplets") return MatrixFormat::triplets;
  if (name == "ratings_csv" || name == "ratings") return MatrixFormat::ratings_csv;
  fail("unknown format '" + name + "' (expected dense01, triplets or ratings_csv)");
}

}  // namespace bind
