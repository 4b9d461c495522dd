#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "chaincx/complex.hpp"
#include "chaincx/error.hpp"
#include "support/dense.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

using namespace chaincx;
using namespace chaincx::testing;

TEST_CASE("triangle boundary and coboundary match the reference matrices",
          "[complex]") {
  const CellComplex k = unit_triangle();
  // [delta_0] is the transpose of the measured boundary matrix of edges.
  CHECK(dense_max_diff(to_dense(k.coboundary_matrix(0)),
                       reference::triangle_delta0()) == 0.0);
  CHECK(dense_max_diff(to_dense(k.coboundary_matrix(1)),
                       reference::triangle_delta1()) == 0.0);
  CHECK(to_dense(k.boundary_matrix(1)) ==
        dense_transpose(reference::triangle_delta0()));

  SECTION("the fixture file encodes the same complex") {
    const CellComplex file = load_fixture("triangle.cx");
    CHECK(file.boundary_matrix(1) == k.boundary_matrix(1));
    CHECK(file.boundary_matrix(2) == k.boundary_matrix(2));
    CHECK(file.sizes(1) == k.sizes(1));
  }
}

TEST_CASE("coboundary is exactly the transposed boundary", "[complex]") {
  for (const char* name :
       {"patch.cx", "rects.cx", "triangle.cx", "twotets.cx", "cube.cx"}) {
    const CellComplex k = load_fixture(name);
    for (int p = 0; p < k.dimension(); ++p) {
      CHECK(k.coboundary_matrix(p) == transpose(k.boundary_matrix(p + 1)));
    }
  }
}

TEST_CASE("boundary of a unit chain reads off one incidence column",
          "[complex]") {
  const CellComplex k = load_fixture("patch.cx");

  const Chain face2 = unit_chain(k, 2, 2);
  const Chain b2 = boundary(face2);
  REQUIRE(b2.dimension == 1);
  CHECK(b2.coefficients ==
        DenseVector{0, -1, 0, 1, -1, 0, 0, 0, 0});

  const Chain b1 = boundary(unit_chain(k, 2, 1));
  CHECK(b1.coefficients == DenseVector{1, 1, 1, 0, 0, 1, 0, 0, 0});

  SECTION("a 0-chain has no boundary") {
    REQUIRE_THROWS_MATCHES(
        boundary(unit_chain(k, 0, 1)), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.kind() == ErrorKind::algorithm; }));
  }
  SECTION("boundary of a boundary vanishes") {
    const Chain bb = boundary(b2);
    for (double c : bb.coefficients) CHECK(c == 0.0);
  }
}

TEST_CASE("coboundary pairs as the adjoint of boundary", "[complex]") {
  const CellComplex k = load_fixture("patch.cx");
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    Cochain c{&k, 0, DenseVector(static_cast<std::size_t>(k.count(0)))};
    Chain a{&k, 1, DenseVector(static_cast<std::size_t>(k.count(1)))};
    for (double& x : c.coefficients) x = coef(rng);
    for (double& x : a.coefficients) x = coef(rng);
    CHECK(pairing(coboundary(c), a) == pairing(c, boundary(a)));
  }
}

TEST_CASE("validate accepts every fixture with zero residual", "[complex]") {
  for (const char* name : {"patch.cx", "rects.cx", "triangle.cx", "twotets.cx",
                           "cube.cx", "lshape.cx"}) {
    const ValidationReport report = validate(load_fixture(name));
    INFO(name);
    CHECK(report.valid);
    CHECK(report.max_boundary_residual == 0.0);
    CHECK(report.violations.empty());
  }
}

TEST_CASE("validate reports a broken chain-complex axiom", "[complex]") {
  // Flip one sign in a face of the two-tetrahedron fixture: the boundary
  // of that face stops being a cycle.
  const CellComplex good = load_fixture("twotets.cx");
  std::vector<Entry> entries = good.incidence(2).entries();
  entries[0].value = -entries[0].value;
  std::vector<SparseMatrix> incidence = {
      good.incidence(1),
      SparseMatrix::from_entries(good.count(1), good.count(2),
                                 std::move(entries)),
      good.incidence(3)};
  std::vector<std::vector<double>> sizes;
  std::vector<index_t> counts;
  for (int p = 0; p <= 3; ++p) {
    counts.push_back(good.count(p));
    sizes.push_back(good.sizes(p));
  }
  const CellComplex bad(3, counts, sizes, incidence);

  const ValidationReport report = validate(bad);
  CHECK_FALSE(report.valid);
  CHECK(report.max_boundary_residual > 0.0);
  REQUIRE_FALSE(report.violations.empty());
  // Violations name the offending level pair and 1-based cell indices.
  CHECK(report.violations.front().find("1") != std::string::npos);
}

TEST_CASE("construction rejects malformed data", "[complex]") {
  const SparseMatrix b1 = SparseMatrix::from_entries(
      2, 1, {{0, 0, -1.0}, {1, 0, 1.0}});

  SECTION("vertex sizes must be exactly one") {
    REQUIRE_THROWS_AS(
        CellComplex(1, {2, 1}, {{1.0, 1.5}, {1.0}}, {b1}), Error);
  }
  SECTION("sizes must be positive and finite") {
    REQUIRE_THROWS_AS(CellComplex(1, {2, 1}, {{1.0, 1.0}, {0.0}}, {b1}),
                      Error);
    REQUIRE_THROWS_AS(CellComplex(1, {2, 1}, {{1.0, 1.0}, {-2.0}}, {b1}),
                      Error);
  }
  SECTION("incidence entries must be signs") {
    const SparseMatrix fractional =
        SparseMatrix::from_entries(2, 1, {{0, 0, -0.5}, {1, 0, 1.0}});
    REQUIRE_THROWS_AS(
        CellComplex(1, {2, 1}, {{1.0, 1.0}, {1.0}}, {fractional}), Error);
  }
  SECTION("incidence shapes must match the counts") {
    REQUIRE_THROWS_AS(
        CellComplex(1, {3, 1}, {{1.0, 1.0, 1.0}, {1.0}}, {b1}), Error);
  }
  SECTION("geometry must cover every vertex") {
    VertexGeometry g;
    g.ambient = 2;
    g.coords = {0.0, 0.0};  // one vertex worth of coordinates, two needed
    REQUIRE_THROWS_AS(
        CellComplex(1, {2, 1}, {{1.0, 1.0}, {1.0}}, {b1}, g), Error);
  }
}

TEST_CASE("chain_map_check accepts identities and flags anything else",
          "[complex]") {
  const CellComplex k = load_fixture("patch.cx");
  std::vector<SparseMatrix> maps;
  for (int p = 0; p <= k.dimension(); ++p) maps.push_back(identity(k.count(p)));

  const ChainMapReport ok = chain_map_check(maps, k, k);
  CHECK(ok.commutes);
  CHECK(ok.max_residual == 0.0);

  maps[1] = scale(maps[1], 2.0);
  const ChainMapReport broken = chain_map_check(maps, k, k);
  CHECK_FALSE(broken.commutes);
  CHECK(broken.max_residual > 0.5);
}
