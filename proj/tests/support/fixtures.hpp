#pragma once

// Fixture loading plus programmatic builders for the complexes the unit
// tests exercise repeatedly.

#include <string>

#include "chaincx/complex.hpp"
#include "chaincx/euler.hpp"

namespace chaincx::testing {

/// Absolute path of a file in the fixture directory.
std::string fixture_path(const std::string& name);

CellComplex load_fixture(const std::string& name);

/// The unit right triangle (3 vertices, 3 edges, 1 face) with exact edge
/// lengths and area; identical to triangle.cx but built in code.
CellComplex unit_triangle();

/// Vertex split bisecting the triangle's hypotenuse (edge 1).
SplitDescriptor triangle_vertex_split();

/// Edge split cutting the refined triangle's face along the median from
/// the new midpoint to the opposite corner. Valid after
/// triangle_vertex_split() has been applied.
SplitDescriptor triangle_edge_split();

}  // namespace chaincx::testing
