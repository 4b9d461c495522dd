#include "chaincx/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chaincx {

namespace {

bool entry_order(const Entry& a, const Entry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

void require_shape_nonnegative(index_t rows, index_t cols) {
  if (rows < 0 || cols < 0) {
    fail(ErrorKind::validation, "matrix shape must be nonnegative, got " +
                                    std::to_string(rows) + "x" +
                                    std::to_string(cols));
  }
}

/// Row pointers for the canonical entry array: ptr[i]..ptr[i+1] is the
/// half-open entry range of row i. This is the on-demand compressed view;
/// entries are already row-major sorted so one counting pass suffices.
std::vector<index_t> row_pointers(const SparseMatrix& a) {
  std::vector<index_t> ptr(static_cast<std::size_t>(a.rows()) + 1, 0);
  for (const Entry& e : a.entries()) ++ptr[static_cast<std::size_t>(e.row) + 1];
  for (std::size_t i = 1; i < ptr.size(); ++i) ptr[i] += ptr[i - 1];
  return ptr;
}

}  // namespace

SparseMatrix::SparseMatrix(index_t rows, index_t cols)
    : rows_(rows), cols_(cols) {
  require_shape_nonnegative(rows, cols);
}

SparseMatrix SparseMatrix::from_entries(index_t rows, index_t cols,
                                        std::vector<Entry> entries) {
  require_shape_nonnegative(rows, cols);
  std::sort(entries.begin(), entries.end(), entry_order);
  SparseMatrix m(rows, cols);
  m.entries_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      fail(ErrorKind::validation,
           "entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
               ") outside " + std::to_string(rows) + "x" +
               std::to_string(cols) + " matrix");
    }
    if (i > 0 && e.row == entries[i - 1].row && e.col == entries[i - 1].col) {
      fail(ErrorKind::validation,
           "duplicate matrix entry at (" + std::to_string(e.row) + ", " +
               std::to_string(e.col) + ")");
    }
    if (e.value != 0.0) m.entries_.push_back(e);
  }
  return m;
}

double SparseMatrix::at(index_t row, index_t col) const {
  const Entry probe{row, col, 0.0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe,
                             entry_order);
  if (it != entries_.end() && it->row == row && it->col == col)
    return it->value;
  return 0.0;
}

SparseMatrix identity(index_t n) {
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) entries.push_back({i, i, 1.0});
  return SparseMatrix::from_entries(n, n, std::move(entries));
}

SparseMatrix transpose(const SparseMatrix& a) {
  std::vector<Entry> entries;
  entries.reserve(a.entries().size());
  for (const Entry& e : a.entries()) entries.push_back({e.col, e.row, e.value});
  return SparseMatrix::from_entries(a.cols(), a.rows(), std::move(entries));
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) {
    fail(ErrorKind::algorithm,
         "cannot multiply " + std::to_string(a.rows()) + "x" +
             std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
             "x" + std::to_string(b.cols()));
  }
  const std::vector<index_t> a_ptr = row_pointers(a);
  const std::vector<index_t> b_ptr = row_pointers(b);

  std::vector<Entry> out;
  std::vector<double> acc(static_cast<std::size_t>(b.cols()), 0.0);
  std::vector<index_t> touched;
  for (index_t i = 0; i < a.rows(); ++i) {
    touched.clear();
    for (index_t ai = a_ptr[static_cast<std::size_t>(i)];
         ai < a_ptr[static_cast<std::size_t>(i) + 1]; ++ai) {
      const Entry& ae = a.entries()[static_cast<std::size_t>(ai)];
      for (index_t bi = b_ptr[static_cast<std::size_t>(ae.col)];
           bi < b_ptr[static_cast<std::size_t>(ae.col) + 1]; ++bi) {
        const Entry& be = b.entries()[static_cast<std::size_t>(bi)];
        if (acc[static_cast<std::size_t>(be.col)] == 0.0 &&
            std::find(touched.begin(), touched.end(), be.col) == touched.end())
          touched.push_back(be.col);
        acc[static_cast<std::size_t>(be.col)] += ae.value * be.value;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (index_t c : touched) {
      const double v = acc[static_cast<std::size_t>(c)];
      acc[static_cast<std::size_t>(c)] = 0.0;
      if (std::abs(v) > kProductDropTolerance) out.push_back({i, c, v});
    }
  }
  return SparseMatrix::from_entries(a.rows(), b.cols(), std::move(out));
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double scale) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorKind::algorithm,
         "cannot add " + std::to_string(a.rows()) + "x" +
             std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
             "x" + std::to_string(b.cols()));
  }
  std::vector<Entry> out;
  std::size_t ia = 0;
  std::size_t ib = 0;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  auto push = [&out](index_t r, index_t c, double v) {
    if (std::abs(v) > kProductDropTolerance) out.push_back({r, c, v});
  };
  while (ia < ea.size() || ib < eb.size()) {
    if (ib == eb.size() ||
        (ia < ea.size() && entry_order(ea[ia], eb[ib]))) {
      push(ea[ia].row, ea[ia].col, ea[ia].value);
      ++ia;
    } else if (ia == ea.size() || entry_order(eb[ib], ea[ia])) {
      push(eb[ib].row, eb[ib].col, scale * eb[ib].value);
      ++ib;
    } else {
      push(ea[ia].row, ea[ia].col, ea[ia].value + scale * eb[ib].value);
      ++ia;
      ++ib;
    }
  }
  return SparseMatrix::from_entries(a.rows(), a.cols(), std::move(out));
}

SparseMatrix scale(const SparseMatrix& a, double factor) {
  std::vector<Entry> out;
  out.reserve(a.entries().size());
  for (const Entry& e : a.entries()) {
    const double v = factor * e.value;
    if (v != 0.0) out.push_back({e.row, e.col, v});
  }
  return SparseMatrix::from_entries(a.rows(), a.cols(), std::move(out));
}

DenseVector mat_vec(const SparseMatrix& a, const DenseVector& x) {
  if (static_cast<index_t>(x.size()) != a.cols()) {
    fail(ErrorKind::algorithm,
         "vector length " + std::to_string(x.size()) +
             " does not match matrix with " + std::to_string(a.cols()) +
             " columns");
  }
  DenseVector y(static_cast<std::size_t>(a.rows()), 0.0);
  for (const Entry& e : a.entries())
    y[static_cast<std::size_t>(e.row)] +=
        e.value * x[static_cast<std::size_t>(e.col)];
  return y;
}

SparseMatrix elementwise_abs(const SparseMatrix& a) {
  std::vector<Entry> out;
  out.reserve(a.entries().size());
  for (const Entry& e : a.entries())
    out.push_back({e.row, e.col, std::abs(e.value)});
  return SparseMatrix::from_entries(a.rows(), a.cols(), std::move(out));
}

DenseVector elementwise_abs(const DenseVector& v) {
  DenseVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::abs(v[i]);
  return out;
}

double sgn(double value, double eps) {
  if (!(eps > 0.0)) {
    fail(ErrorKind::algorithm, "sgn dead-zone width must be positive");
  }
  if (value > eps) return 1.0;
  if (value < -eps) return -1.0;
  return 0.0;
}

DenseVector elementwise_sgn(const DenseVector& v, double eps) {
  DenseVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = sgn(v[i], eps);
  return out;
}

SparseMatrix elementwise_sgn(const SparseMatrix& a, double eps) {
  std::vector<Entry> out;
  out.reserve(a.entries().size());
  for (const Entry& e : a.entries()) {
    const double v = sgn(e.value, eps);
    if (v != 0.0) out.push_back({e.row, e.col, v});
  }
  return SparseMatrix::from_entries(a.rows(), a.cols(), std::move(out));
}

SparseMatrix block_compose(
    const std::map<std::pair<int, int>, SparseMatrix>& blocks,
    const std::vector<index_t>& row_sizes,
    const std::vector<index_t>& col_sizes) {
  std::vector<index_t> row_off(row_sizes.size() + 1, 0);
  for (std::size_t i = 0; i < row_sizes.size(); ++i) {
    if (row_sizes[i] < 0)
      fail(ErrorKind::validation, "negative block row size");
    row_off[i + 1] = row_off[i] + row_sizes[i];
  }
  std::vector<index_t> col_off(col_sizes.size() + 1, 0);
  for (std::size_t j = 0; j < col_sizes.size(); ++j) {
    if (col_sizes[j] < 0)
      fail(ErrorKind::validation, "negative block column size");
    col_off[j + 1] = col_off[j] + col_sizes[j];
  }

  std::vector<Entry> out;
  for (const auto& [slot, block] : blocks) {
    const auto [bi, bj] = slot;
    if (bi < 0 || static_cast<std::size_t>(bi) >= row_sizes.size() ||
        bj < 0 || static_cast<std::size_t>(bj) >= col_sizes.size()) {
      fail(ErrorKind::validation,
           "block slot (" + std::to_string(bi) + ", " + std::to_string(bj) +
               ") outside the band grid");
    }
    if (block.rows() != row_sizes[static_cast<std::size_t>(bi)] ||
        block.cols() != col_sizes[static_cast<std::size_t>(bj)]) {
      fail(ErrorKind::validation,
           "block at (" + std::to_string(bi) + ", " + std::to_string(bj) +
               ") is " + std::to_string(block.rows()) + "x" +
               std::to_string(block.cols()) + ", slot wants " +
               std::to_string(row_sizes[static_cast<std::size_t>(bi)]) + "x" +
               std::to_string(col_sizes[static_cast<std::size_t>(bj)]));
    }
    for (const Entry& e : block.entries()) {
      out.push_back({e.row + row_off[static_cast<std::size_t>(bi)],
                     e.col + col_off[static_cast<std::size_t>(bj)], e.value});
    }
  }
  return SparseMatrix::from_entries(row_off.back(), col_off.back(),
                                    std::move(out));
}

SparseMatrix submatrix(const SparseMatrix& a, index_t row_begin,
                       index_t row_end, index_t col_begin, index_t col_end) {
  if (row_begin < 0 || row_end < row_begin || row_end > a.rows() ||
      col_begin < 0 || col_end < col_begin || col_end > a.cols()) {
    fail(ErrorKind::algorithm, "submatrix window outside matrix");
  }
  std::vector<Entry> out;
  for (const Entry& e : a.entries()) {
    if (e.row >= row_begin && e.row < row_end && e.col >= col_begin &&
        e.col < col_end)
      out.push_back({e.row - row_begin, e.col - col_begin, e.value});
  }
  return SparseMatrix::from_entries(row_end - row_begin, col_end - col_begin,
                                    std::move(out));
}

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorKind::algorithm, "max_abs_diff needs matching shapes, got " +
                                   std::to_string(a.rows()) + "x" +
                                   std::to_string(a.cols()) + " vs " +
                                   std::to_string(b.rows()) + "x" +
                                   std::to_string(b.cols()));
  }
  double worst = 0.0;
  std::size_t ia = 0;
  std::size_t ib = 0;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  while (ia < ea.size() || ib < eb.size()) {
    double d = 0.0;
    if (ib == eb.size() || (ia < ea.size() && entry_order(ea[ia], eb[ib]))) {
      d = std::abs(ea[ia++].value);
    } else if (ia == ea.size() || entry_order(eb[ib], ea[ia])) {
      d = std::abs(eb[ib++].value);
    } else {
      d = std::abs(ea[ia++].value - eb[ib++].value);
    }
    worst = std::max(worst, d);
  }
  return worst;
}

double max_abs(const SparseMatrix& a) {
  double worst = 0.0;
  for (const Entry& e : a.entries()) worst = std::max(worst, std::abs(e.value));
  return worst;
}

}  // namespace chaincx
