#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "chaincx/error.hpp"
#include "chaincx/euler.hpp"
#include "chaincx/hasse.hpp"
#include "support/dense.hpp"
#include "support/fixtures.hpp"
#include "support/random_refinement.hpp"
#include "support/reference.hpp"

using namespace chaincx;
using namespace chaincx::testing;

namespace {
constexpr double kTolerance = 1e-12;
}

TEST_CASE("add_column appends the prescribed combination of columns",
          "[euler]") {
  // The literal operation: append delta * c as one extra column.
  const SparseMatrix delta = to_sparse(reference::refined_delta0());
  const DenseVector c = {1.0, 0.0, -0.5, 0.0};
  const SparseMatrix wider = add_column(delta, c);
  REQUIRE(wider.cols() == delta.cols() + 1);
  REQUIRE(wider.rows() == delta.rows());
  CHECK(submatrix(wider, 0, wider.rows(), 0, delta.cols()) == delta);
  const DenseVector expected = mat_vec(delta, c);
  for (index_t r = 0; r < wider.rows(); ++r) {
    CHECK(wider.at(r, delta.cols()) == expected[static_cast<std::size_t>(r)]);
  }
}

TEST_CASE("column refinement carries the face row across a vertex split",
          "[euler]") {
  // After bisecting the hypotenuse, the face coboundary picks up the new
  // edge via the measure-share column matrix.
  const SparseMatrix product =
      multiply(to_sparse(reference::triangle_delta1()),
               to_sparse(reference::vertex_split_column_matrix()));
  CHECK(dense_max_diff(to_dense(product), reference::refined_delta1()) <=
        kTolerance);
}

TEST_CASE("add_row appends the prescribed combination of rows", "[euler]") {
  const SparseMatrix taller =
      add_row(to_sparse(reference::refined_delta0()),
              reference::median_row_coefficients());
  REQUIRE(taller.rows() == 5);
  CHECK(dense_max_diff(to_dense(taller), reference::twice_refined_delta0()) <=
        kTolerance);
  // The appended row is the median's measured coboundary row.
  for (index_t c = 0; c < 4; ++c) {
    CHECK(std::abs(taller.at(4, c) -
                   reference::median_row()[static_cast<std::size_t>(c)]) <=
          kTolerance);
  }
}

TEST_CASE("row/column surgery reproduces both reference refinements",
          "[euler]") {
  SECTION("vertex split acting on [delta_0]") {
    const SparseMatrix result =
        split_row_column(to_sparse(reference::triangle_delta0()),
                         reference::vertex_split_s(),
                         reference::vertex_split_t());
    CHECK(dense_max_diff(to_dense(result), reference::refined_delta0()) <=
          kTolerance);
  }
  SECTION("edge split acting on [delta_1]") {
    const SparseMatrix result = split_row_column(
        to_sparse(reference::refined_delta1()), reference::edge_split_s(),
        reference::edge_split_t());
    CHECK(dense_max_diff(to_dense(result), reference::twice_refined_delta1()) <=
          kTolerance);
  }
  SECTION("mismatched family shapes are rejected") {
    auto s = reference::vertex_split_s();
    s[1] = SparseMatrix(2, 2);
    REQUIRE_THROWS_AS(split_row_column(to_sparse(reference::triangle_delta0()),
                                       s, reference::vertex_split_t()),
                      Error);
  }
}

TEST_CASE("make bisects the hypotenuse and then cuts along the median",
          "[euler]") {
  const CellComplex triangle = unit_triangle();
  const CellComplex once = make(triangle, triangle_vertex_split());

  REQUIRE(once.count(0) == 4);
  REQUIRE(once.count(1) == 4);
  REQUIRE(once.count(2) == 1);
  CHECK(once.sizes(1)[0] == Catch::Approx(std::sqrt(2.0) / 2).margin(1e-15));
  CHECK(once.sizes(1)[3] == Catch::Approx(std::sqrt(2.0) / 2).margin(1e-15));
  CHECK(dense_max_diff(to_dense(once.coboundary_matrix(0)),
                       reference::refined_delta0()) <= kTolerance);
  CHECK(dense_max_diff(to_dense(once.coboundary_matrix(1)),
                       reference::refined_delta1()) <= kTolerance);
  REQUIRE(once.has_geometry());
  CHECK(once.geometry().coords[6] == 0.5);
  CHECK(once.geometry().coords[7] == 0.5);

  const CellComplex twice = make(once, triangle_edge_split());
  REQUIRE(twice.count(1) == 5);
  REQUIRE(twice.count(2) == 2);
  CHECK(dense_max_diff(to_dense(twice.coboundary_matrix(0)),
                       reference::twice_refined_delta0()) <= kTolerance);
  CHECK(dense_max_diff(to_dense(twice.coboundary_matrix(1)),
                       reference::twice_refined_delta1()) <= kTolerance);
  CHECK(twice.sizes(2) == std::vector<double>{0.25, 0.25});
  CHECK(validate(twice).valid);
  CHECK(euler_characteristic(twice) == 1);
}

TEST_CASE("make rejects descriptors that break the complex", "[euler]") {
  const CellComplex triangle = unit_triangle();

  const auto kind_is_algorithm = Catch::Matchers::Predicate<Error>(
      [](const Error& e) { return e.kind() == ErrorKind::algorithm; });

  SECTION("size split outside (0, 1)") {
    SplitDescriptor desc = triangle_vertex_split();
    desc.size_split = 1.0;
    REQUIRE_THROWS_MATCHES(make(triangle, desc), Error, kind_is_algorithm);
  }
  SECTION("sides must cover the incident faces exactly") {
    SplitDescriptor desc = triangle_vertex_split();
    desc.new_side = {};
    REQUIRE_THROWS_AS(make(triangle, desc), Error);
    desc = triangle_vertex_split();
    desc.new_side = {1};  // duplicates the keep side
    REQUIRE_THROWS_AS(make(triangle, desc), Error);
    desc = triangle_vertex_split();
    desc.keep_side = {2};  // vertex 2 is not on edge 1
    REQUIRE_THROWS_AS(make(triangle, desc), Error);
  }
  SECTION("a vertex split takes no boundary, an edge split needs one") {
    SplitDescriptor desc = triangle_vertex_split();
    desc.new_cell_boundary = {{1, 1}};
    REQUIRE_THROWS_AS(make(triangle, desc), Error);

    const CellComplex once = make(triangle, triangle_vertex_split());
    SplitDescriptor edge = triangle_edge_split();
    edge.new_cell_boundary = {};
    REQUIRE_THROWS_AS(make(once, edge), Error);
  }
  SECTION("a closure-violating boundary is rejected after the fact") {
    const CellComplex once = make(triangle, triangle_vertex_split());
    SplitDescriptor edge = triangle_edge_split();
    edge.new_cell_boundary = {{2, 1}, {4, 1}};  // not minus the KEEP boundary
    REQUIRE_THROWS_MATCHES(make(once, edge), Error, kind_is_algorithm);
  }
  SECTION("the target must exist") {
    SplitDescriptor desc = triangle_vertex_split();
    desc.target = 9;
    REQUIRE_THROWS_AS(make(triangle, desc), Error);
  }
}

TEST_CASE("random refinement sequences preserve validity and chi", "[euler]") {
  std::mt19937 rng(41);
  for (const char* name : {"patch.cx", "twotets.cx", "cube.cx"}) {
    CellComplex k = load_fixture(name);
    const auto chi = euler_characteristic(k);
    for (int step = 0; step < 12; ++step) {
      const auto desc = random_descriptor(k, rng);
      REQUIRE(desc.has_value());
      const index_t cells_p = k.count(desc->p);
      const index_t cells_q = k.count(desc->p + 1);
      k = make(k, *desc);
      CHECK(k.count(desc->p) == cells_p + 1);
      CHECK(k.count(desc->p + 1) == cells_q + 1);
    }
    INFO(name);
    CHECK(validate(k).valid);
    CHECK(euler_characteristic(k) == chi);
  }
}

TEST_CASE("hasse_make tracks assemble-after-make on the triangle",
          "[euler][hasse]") {
  const CellComplex triangle = unit_triangle();
  const HasseMatrix h0 = assemble_hasse(triangle);

  const auto [h1, once] = hasse_make(h0, triangle, triangle_vertex_split());
  const HasseMatrix direct1 = assemble_hasse(once);
  CHECK(max_abs_diff(h1.matrix, direct1.matrix) <= kTolerance);
  CHECK(h1.row_offsets == direct1.row_offsets);
  CHECK(h1.col_offsets == direct1.col_offsets);
  // One row and one column per make, of an n x m Hasse matrix.
  CHECK(h1.matrix.rows() == h0.matrix.rows() + 1);
  CHECK(h1.matrix.cols() == h0.matrix.cols() + 1);

  const auto [h2, twice] = hasse_make(h1, once, triangle_edge_split());
  const HasseMatrix direct2 = assemble_hasse(twice);
  CHECK(max_abs_diff(h2.matrix, direct2.matrix) <= kTolerance);
  CHECK(euler_characteristic(h2) == euler_characteristic(h0));
}

TEST_CASE("hasse_make agrees with assemble-after-make on random refinements",
          "[euler][hasse]") {
  std::mt19937 rng(43);
  for (const char* name : {"patch.cx", "twotets.cx"}) {
    CellComplex k = load_fixture(name);
    HasseMatrix h = assemble_hasse(k);
    for (int step = 0; step < 10; ++step) {
      const auto desc = random_descriptor(k, rng);
      REQUIRE(desc.has_value());
      auto [next_h, next_k] = hasse_make(h, k, *desc);
      const HasseMatrix direct = assemble_hasse(next_k);
      INFO(name << " step " << step << " order " << desc->p);
      REQUIRE(max_abs_diff(next_h.matrix, direct.matrix) <= kTolerance);
      REQUIRE(next_h.row_offsets == direct.row_offsets);
      REQUIRE(next_h.col_offsets == direct.col_offsets);
      h = std::move(next_h);
      k = std::move(next_k);
    }
  }
}

TEST_CASE("hasse_make rejects a matrix that does not match the complex",
          "[euler][hasse]") {
  const CellComplex triangle = unit_triangle();
  const CellComplex patch = load_fixture("patch.cx");
  const HasseMatrix wrong = assemble_hasse(patch);
  REQUIRE_THROWS_AS(hasse_make(wrong, triangle, triangle_vertex_split()),
                    Error);
}
