#include "support/fixtures.hpp"

#include <cmath>

#include "chaincx/io.hpp"

#ifndef CHAINCX_FIXTURE_DIR
#error "CHAINCX_FIXTURE_DIR must point at the fixture directory"
#endif

namespace chaincx::testing {

std::string fixture_path(const std::string& name) {
  return std::string(CHAINCX_FIXTURE_DIR) + "/" + name;
}

CellComplex load_fixture(const std::string& name) {
  return load_complex(fixture_path(name));
}

CellComplex unit_triangle() {
  const double root2 = std::sqrt(2.0);
  const SparseMatrix b1 = SparseMatrix::from_entries(
      3, 3,
      {{0, 0, -1.0}, {2, 0, 1.0}, {0, 1, -1.0}, {1, 1, 1.0}, {1, 2, -1.0},
       {2, 2, 1.0}});
  const SparseMatrix b2 =
      SparseMatrix::from_entries(3, 1, {{0, 0, -1.0}, {1, 0, 1.0}, {2, 0, 1.0}});
  VertexGeometry geometry;
  geometry.ambient = 2;
  geometry.coords = {0.0, 1.0, 0.0, 0.0, 1.0, 0.0};
  return CellComplex(2, {3, 3, 1}, {{1.0, 1.0, 1.0}, {root2, 1.0, 1.0}, {0.5}},
                     {b1, b2}, geometry);
}

SplitDescriptor triangle_vertex_split() {
  SplitDescriptor desc;
  desc.p = 0;
  desc.target = 1;
  desc.keep_side = {1};
  desc.new_side = {3};
  desc.size_split = 0.5;
  desc.new_vertex = std::vector<double>{0.5, 0.5};
  return desc;
}

SplitDescriptor triangle_edge_split() {
  SplitDescriptor desc;
  desc.p = 1;
  desc.target = 1;
  desc.keep_side = {1, 2};
  desc.new_side = {4, 3};
  desc.new_cell_boundary = {{2, -1}, {4, 1}};
  desc.size_split = 0.5;
  desc.new_cell_size = std::sqrt(2.0) / 2.0;
  return desc;
}

}  // namespace chaincx::testing
