#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "chaincx/error.hpp"

namespace chaincx {

using index_t = std::int64_t;
using DenseVector = std::vector<double>;

/// Entries with |value| at or below this threshold are dropped from the
/// results of multiply() and add(). Exact integer cancellation always lands
/// at 0.0 and is removed; the small slack absorbs float cancellation noise
/// so that "structurally zero" products come out structurally empty.
inline constexpr double kProductDropTolerance = 1e-14;

struct Entry {
  index_t row = 0;
  index_t col = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse matrix in coordinate form. Invariants, preserved by every
/// operation in this header:
///   - entries are sorted lexicographically by (row, col),
///   - no duplicate positions,
///   - no entry stores the value 0.0.
/// A row-compressed view is built on demand inside the products instead of
/// being stored; at desk scale rebuilding it is cheaper than keeping two
/// representations synchronized.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// All-zero matrix of the given shape.
  SparseMatrix(index_t rows, index_t cols);

  /// Builds from unordered entries. Throws Error(validation) on duplicate
  /// positions or out-of-range indices; entries with value exactly 0.0 are
  /// dropped.
  static SparseMatrix from_entries(index_t rows, index_t cols,
                                   std::vector<Entry> entries);

  index_t rows() const noexcept { return rows_; }
  index_t cols() const noexcept { return cols_; }
  index_t nnz() const noexcept { return static_cast<index_t>(entries_.size()); }

  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Value at (row, col); 0.0 where no entry is stored.
  double at(index_t row, index_t col) const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  index_t rows_ = 0;
  index_t cols_ = 0;
  std::vector<Entry> entries_;
};

SparseMatrix identity(index_t n);

SparseMatrix transpose(const SparseMatrix& a);

/// a * b. Entries with |value| <= kProductDropTolerance are dropped.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// a + scale * b, same drop rule as multiply().
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b,
                 double scale = 1.0);

SparseMatrix scale(const SparseMatrix& a, double factor);

DenseVector mat_vec(const SparseMatrix& a, const DenseVector& x);

SparseMatrix elementwise_abs(const SparseMatrix& a);
DenseVector elementwise_abs(const DenseVector& v);

/// Signum with a dead zone: -1 below -eps, +1 above +eps, 0 in between
/// (boundary values +-eps map to 0). eps must be positive.
double sgn(double value, double eps);
DenseVector elementwise_sgn(const DenseVector& v, double eps);
SparseMatrix elementwise_sgn(const SparseMatrix& a, double eps);

/// Assembles a block matrix. row_sizes/col_sizes give the band heights and
/// widths; blocks maps (band_row, band_col) to the block, and absent slots
/// are zero. Block shapes must match their slots.
SparseMatrix block_compose(
    const std::map<std::pair<int, int>, SparseMatrix>& blocks,
    const std::vector<index_t>& row_sizes,
    const std::vector<index_t>& col_sizes);

/// Copies the half-open index window [row_begin, row_end) x [col_begin,
/// col_end) into a new matrix.
SparseMatrix submatrix(const SparseMatrix& a, index_t row_begin,
                       index_t row_end, index_t col_begin, index_t col_end);

/// Largest |a_ij - b_ij| over the union of stored positions. Shapes must
/// match.
double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b);

/// Largest stored |value|; 0.0 for an empty matrix.
double max_abs(const SparseMatrix& a);

}  // namespace chaincx
