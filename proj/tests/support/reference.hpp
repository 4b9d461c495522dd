#pragma once

// Hand-computed reference matrices for the unit-triangle refinement
// walkthrough and the two-rectangle Hasse assembly. Every matrix here was
// worked out by hand from the cell pictures, independently of the library
// code, so the tests pin behaviour rather than echo it.

#include <array>

#include "chaincx/sparse.hpp"
#include "support/dense.hpp"

namespace chaincx::testing::reference {

/// [delta_0] of the unit triangle: rows are edges, columns vertices.
Dense triangle_delta0();

/// [delta_1] of the unit triangle: one face row.
Dense triangle_delta1();

/// Row/column surgery families for bisecting the hypotenuse (a vertex
/// split): [delta_0] 3x3 -> 4x4.
std::array<SparseMatrix, 3> vertex_split_s();
std::array<SparseMatrix, 3> vertex_split_t();

/// [delta_0] after the vertex split.
Dense refined_delta0();

/// Column refinement sending the 1x3 [delta_1] to 1x4 after the vertex
/// split, and its result.
Dense vertex_split_column_matrix();
Dense refined_delta1();

/// Row-combination coefficients appending the median row to the refined
/// [delta_0], and the row they produce.
DenseVector median_row_coefficients();
DenseVector median_row();

/// Surgery families for cutting the face along the median (an edge
/// split): [delta_1] 1x4 -> 2x5.
std::array<SparseMatrix, 3> edge_split_s();
std::array<SparseMatrix, 3> edge_split_t();

/// [delta_1] after both refinement steps.
Dense twice_refined_delta1();

/// [delta_0] after both refinement steps.
Dense twice_refined_delta0();

/// The 7x8 Hasse matrix of rects.cx (two stacked rectangles): dense form
/// plus the band offsets.
Dense rects_hasse();
inline constexpr std::array<index_t, 2> rects_hasse_row_offsets{0, 7};
inline constexpr std::array<index_t, 3> rects_hasse_col_offsets{0, 6, 8};

}  // namespace chaincx::testing::reference
