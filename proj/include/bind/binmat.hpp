#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bind {

/// Dense bit-packed binary matrix with cached row/column sums.
///
/// Immutable after construction (build one with MatrixBuilder or the load
/// functions); safe to read from any number of threads. Rows are packed
/// little-endian into 64-bit words, one word stripe per row; bits past the
/// column count are always zero.
class BinaryMatrix {
 public:
  static constexpr std::size_t kWordBits = 64;

  BinaryMatrix() = default;

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * wpr_ + j / kWordBits] >> (j % kWordBits)) & 1u;
  }

  /// Total number of 1s.
  std::uint64_t ones() const { return ones_; }

  std::span<const std::uint32_t> row_sums() const { return row_sums_; }
  std::span<const std::uint32_t> col_sums() const { return col_sums_; }

  std::span<const std::uint64_t> row_words(std::size_t i) const {
    return {bits_.data() + i * wpr_, wpr_};
  }
  std::span<const std::uint64_t> words() const { return bits_; }

  /// Visit the column index of every 1 in row i, ascending.
  template <typename F>
  void for_each_one_in_row(std::size_t i, F&& f) const {
    const std::uint64_t* w = bits_.data() + i * wpr_;
    for (std::size_t word = 0; word < wpr_; ++word) {
      std::uint64_t v = w[word];
      while (v != 0) {
        const unsigned bit = static_cast<unsigned>(__builtin_ctzll(v));
        f(word * kWordBits + bit);
        v &= v - 1;
      }
    }
  }

  BinaryMatrix transposed() const;

  /// Adopt pre-packed row-major words (bits past the column count must be
  /// zero). Used for word-level composition of matrices of equal shape.
  static BinaryMatrix from_words(std::size_t m, std::size_t n,
                                 std::vector<std::uint64_t> words);

  bool operator==(const BinaryMatrix& other) const {
    return m_ == other.m_ && n_ == other.n_ && bits_ == other.bits_;
  }

 private:
  friend class MatrixBuilder;
  friend BinaryMatrix hadamard_mask(const BinaryMatrix&,
                                    std::span<const std::uint8_t>,
                                    std::span<const std::uint8_t>);

  BinaryMatrix(std::size_t m, std::size_t n, std::vector<std::uint64_t> bits);

  void rebuild_caches();

  std::size_t m_ = 0, n_ = 0, wpr_ = 0;
  std::uint64_t ones_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> row_sums_, col_sums_;
};

/// Mutable staging area for constructing a BinaryMatrix.
class MatrixBuilder {
 public:
  MatrixBuilder(std::size_t m, std::size_t n);

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void set(std::size_t i, std::size_t j, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (j % BinaryMatrix::kWordBits);
    if (value)
      bits_[i * wpr_ + j / BinaryMatrix::kWordBits] |= mask;
    else
      bits_[i * wpr_ + j / BinaryMatrix::kWordBits] &= ~mask;
  }

  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * wpr_ + j / BinaryMatrix::kWordBits] >>
            (j % BinaryMatrix::kWordBits)) &
           1u;
  }

  void flip(std::size_t i, std::size_t j) {
    bits_[i * wpr_ + j / BinaryMatrix::kWordBits] ^=
        std::uint64_t{1} << (j % BinaryMatrix::kWordBits);
  }

  /// Freeze into an immutable matrix; the builder is consumed.
  BinaryMatrix build() &&;

 private:
  std::size_t m_, n_, wpr_;
  std::vector<std::uint64_t> bits_;
};

/// Elementwise product X ∘ (row_ind · col_indᵀ): keeps X[i][j] only where
/// both indicators are 1. Dimensions are preserved.
BinaryMatrix hadamard_mask(const BinaryMatrix& x,
                           std::span<const std::uint8_t> row_ind,
                           std::span<const std::uint8_t> col_ind);

/// Drop all-zero rows/columns; maps give the original index of each kept line.
struct CompactResult {
  BinaryMatrix matrix;
  std::vector<std::size_t> row_map, col_map;
};
CompactResult compact_nonempty(const BinaryMatrix& x);

// ---------------------------------------------------------------------------
// File formats. All are UTF-8 text:
//   dense01     — one line of '0'/'1' characters per row, equal lengths.
//   triplets    — header "m n nnz", then nnz lines "i j" with 1-based indices.
//   ratings_csv — "user,item[,anything...]" rows; any (user,item) appearance
//                 becomes a 1. Users/items get dense 0-based indices in order
//                 of first appearance; the id maps are returned alongside.
// ---------------------------------------------------------------------------

enum class MatrixFormat { dense01, triplets, ratings_csv };

struct LoadResult {
  BinaryMatrix matrix;
  std::vector<std::string> row_ids;  // ratings_csv only
  std::vector<std::string> col_ids;  // ratings_csv only
  std::size_t duplicate_entries = 0;
};

LoadResult load_matrix(std::istream& in, MatrixFormat format);
LoadResult load_matrix_text(const std::string& text, MatrixFormat format);
LoadResult load_matrix_file(const std::filesystem::path& path, MatrixFormat format);

std::string save_matrix(const BinaryMatrix& x, MatrixFormat format,
                        std::span<const std::string> row_ids = {},
                        std::span<const std::string> col_ids = {});
void save_matrix_file(const BinaryMatrix& x, const std::filesystem::path& path,
                      MatrixFormat format,
                      std::span<const std::string> row_ids = {},
                      std::span<const std::string> col_ids = {});

MatrixFormat parse_format(const std::string& name);

}  // namespace bind
