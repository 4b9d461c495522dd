#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "chaincx/complex.hpp"
#include "chaincx/hasse.hpp"

namespace chaincx {

/// Everything a topology-preserving make operator needs: split the
/// (p+1)-cell `target` into two fragments separated by one new p-cell.
///
/// Ordinal bookkeeping (1-based): the KEEP fragment retains ordinal
/// `target` and the measure share size_split * mu; the NEW fragment is
/// appended at ordinal k_{p+1} + 1 with the complementary share; the new
/// p-cell is appended at ordinal k_p + 1. The KEEP fragment references the
/// new p-cell with sign +1, the NEW fragment with -1, and both fragments
/// inherit the target's signs inside every enclosing (p+2)-cell.
struct SplitDescriptor {
  int p = 0;
  index_t target = 0;

  /// Disjoint lists of p-cell ordinals covering exactly the faces of
  /// `target`; both sides must be nonempty.
  std::vector<index_t> keep_side;
  std::vector<index_t> new_side;

  /// Signed (p-1)-cell ordinals forming the boundary of the new p-cell.
  /// Must be empty when p == 0 and nonempty otherwise.
  std::vector<std::pair<index_t, int>> new_cell_boundary;

  /// Measure share kept by the split cell, strictly inside (0, 1).
  double size_split = 0.5;

  /// Measure of the new p-cell; forced to 1 when p == 0.
  double new_cell_size = 1.0;

  /// Coordinates of the new vertex. Required exactly when p == 0 and the
  /// complex carries geometry; must be absent otherwise.
  std::optional<std::vector<double>> new_vertex;
};

/// Appends the column `delta * coeffs` to `delta`; coeffs has one entry per
/// column of delta. The workhorse for expressing a new cell's coboundary as
/// a combination of existing ones.
SparseMatrix add_column(const SparseMatrix& delta, const DenseVector& coeffs);

/// Appends the row `coeffs^T * delta`; coeffs has one entry per row of
/// delta.
SparseMatrix add_row(const SparseMatrix& delta, const DenseVector& coeffs);

/// Three-term row/column split: sum of s[i] * delta * t[i]. All s[i] must
/// share one shape, likewise all t[i], and the products must be defined.
SparseMatrix split_row_column(const SparseMatrix& delta,
                              const std::array<SparseMatrix, 3>& s,
                              const std::array<SparseMatrix, 3>& t);

/// Applies the make operator to the complex. Validates the descriptor,
/// performs the split, and runs validate() on the result; on any failure it
/// throws Error(algorithm) and the input complex is left untouched.
CellComplex make(const CellComplex& k, const SplitDescriptor& desc);

/// Applies the same make operator directly to an assembled Hasse matrix by
/// transforming only the affected blocks, never reassembling from scratch.
/// `h` must be the Hasse matrix of `k`. Returns the transformed matrix
/// together with the refined complex; the matrix agrees with
/// assemble_hasse(make(k, desc)) entrywise up to rounding.
std::pair<HasseMatrix, CellComplex> hasse_make(const HasseMatrix& h,
                                               const CellComplex& k,
                                               const SplitDescriptor& desc);

}  // namespace chaincx
