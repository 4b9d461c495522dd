#pragma once

#include <cstdint>
#include <vector>

#include "chaincx/complex.hpp"

namespace chaincx {

/// Block-bidiagonal matrix collecting every measured coboundary of a
/// complex in one operator. Row bands run over the odd dimensions in
/// ascending order, column bands over the even ones. The band at row i
/// (cells of dimension 2i+1) holds [delta_{2i}] in column band i and
/// transpose([delta_{2i+1}]) in column band i+1; all other blocks are zero.
///
/// Offsets are prefix sums in the CSR style: row_offsets[i] is where band i
/// starts and the final element is the total row count, so a matrix with
/// bands k1, k3 has row_offsets {0, k1, k1+k3}. Same for columns over k0,
/// k2, ... The column total minus the row total is the Euler
/// characteristic.
struct HasseMatrix {
  SparseMatrix matrix;
  std::vector<index_t> row_offsets{0};
  std::vector<index_t> col_offsets{0};
  int dimension = 0;

  friend bool operator==(const HasseMatrix&, const HasseMatrix&) = default;
};

HasseMatrix assemble_hasse(const CellComplex& k);

/// The same operator read against the dual complex: the transpose, with the
/// row and column offset lists exchanged.
HasseMatrix dual_hasse(const HasseMatrix& h);

/// Copy of the block at (row_band, col_band).
SparseMatrix hasse_block(const HasseMatrix& h, int row_band, int col_band);

std::int64_t euler_characteristic(const HasseMatrix& h);
std::int64_t euler_characteristic(const CellComplex& k);

/// Inclusion-exclusion: chi(M union N) from the parts and their
/// intersection.
std::int64_t euler_union(std::int64_t chi_m, std::int64_t chi_n,
                         std::int64_t chi_intersection);

/// chi(M x N) = chi(M) * chi(N).
std::int64_t euler_product(std::int64_t chi_m, std::int64_t chi_n);

}  // namespace chaincx
