#include <catch2/catch_amalgamated.hpp>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "chaincx/hasse.hpp"
#include "chaincx/io.hpp"
#include "chaincx/laplace.hpp"
#include "support/fixtures.hpp"

#ifndef CHAINCX_CLI_PATH
#error "CHAINCX_CLI_PATH must point at the command line tool"
#endif

using namespace chaincx;
using namespace chaincx::testing;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace {

struct CliResult {
  int code = -1;
  std::string output;
};

/// Runs the tool with the given arguments, capturing one stream.
CliResult run_cli(const std::string& args, bool capture_stderr = false) {
  const std::string redirect =
      capture_stderr ? " 2>&1 1>/dev/null" : " 2>/dev/null";
  const std::string command =
      std::string(CHAINCX_CLI_PATH) + " " + args + redirect;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  std::array<char, 4096> buffer;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string quoted(const std::string& path) { return "'" + path + "'"; }

/// The canonical document for the triangle halved along its diagonal; the
/// split and refine commands must both produce exactly this.
const std::string kHalvedTriangle =
    "#chaincx 1\n"
    "#dim 2\n"
    "#counts 4 5 2\n"
    "#sizes 0\n"
    "1 1 1 1\n"
    "#sizes 1\n"
    "0.70710678118654757 1 1 0.70710678118654757 0.70710678118654757\n"
    "#sizes 2\n"
    "0.25 0.25\n"
    "#incidence 1\n"
    "-1 4\n"
    "-1 2\n"
    "-2 3\n"
    "3 -4\n"
    "-2 4\n"
    "#incidence 2\n"
    "-1 2 5\n"
    "3 -4 -5\n"
    "#coords 2\n"
    "0 1\n"
    "0 0\n"
    "1 0\n"
    "0.5 0.5\n";

const std::string kTriangleTrace =
    "% split trace\n"
    "% c0: -1 0 1\n"
    "% c1: 0 -1 1\n"
    "% a1: 2 1 1\n"
    "% c2: 0\n"
    "% a2: 4\n"
    "% c0': -1 0 1 0\n"
    "% c1': -1 -1 1 1 0\n"
    "% c2': -1 1\n";

}  // namespace

TEST_CASE("info summarizes a complex", "[cli]") {
  const CliResult r = run_cli("info " + quoted(fixture_path("patch.cx")));
  CHECK(r.code == 0);
  CHECK(r.output == "dimension 2\ncounts 6 9 4\neuler 1\ngeometry 2\n");
}

TEST_CASE("validate reports the residual", "[cli]") {
  const CliResult r = run_cli("validate " + quoted(fixture_path("twotets.cx")));
  CHECK(r.code == 0);
  CHECK(r.output == "valid\nmax residual 0\n");
}

TEST_CASE("euler prints the characteristic", "[cli]") {
  CHECK(run_cli("euler " + quoted(fixture_path("cube.cx"))).output == "2\n");
  CHECK(run_cli("euler " + quoted(fixture_path("twotets.cx"))).output ==
        "1\n");
}

TEST_CASE("hasse emits the assembled matrix", "[cli]") {
  const CliResult r = run_cli("hasse " + quoted(fixture_path("rects.cx")));
  REQUIRE(r.code == 0);
  std::istringstream in(r.output);
  const HasseMatrix parsed = parse_hasse(in);
  CHECK(parsed == assemble_hasse(load_fixture("rects.cx")));
}

TEST_CASE("boundary and coboundary print measured matrices", "[cli]") {
  const std::string file = quoted(fixture_path("triangle.cx"));
  const CliResult b = run_cli("boundary -p 1 " + file);
  REQUIRE(b.code == 0);
  std::istringstream bin(b.output);
  CHECK(parse_matrix(bin) == unit_triangle().boundary_matrix(1));

  const CliResult c = run_cli("coboundary -p 0 " + file);
  REQUIRE(c.code == 0);
  std::istringstream cin(c.output);
  CHECK(parse_matrix(cin) == unit_triangle().coboundary_matrix(0));
}

TEST_CASE("laplacian prints the operator with its Gram kind", "[cli]") {
  const std::string file = quoted(fixture_path("twotets.cx"));
  SECTION("trivial hierarchy") {
    const CliResult r = run_cli("laplacian -p 0 " + file);
    REQUIRE(r.code == 0);
    CHECK_THAT(r.output, StartsWith("% laplacian 0 gram trivial\n"));
    std::istringstream in(r.output);
    const CellComplex k = load_fixture("twotets.cx");
    CHECK(parse_matrix(in) ==
          laplace_derham(k, GramStructure::trivial(3), 0));
  }
  SECTION("weighted top dimension, pinned bytes") {
    const CliResult r =
        run_cli("laplacian -p 3 --gram " +
                quoted(fixture_path("twotets_gram.txt")) + " " + file);
    REQUIRE(r.code == 0);
    CHECK(r.output ==
          "% laplacian 3 gram diagonal\n"
          "2 2 4\n"
          "1 1 2\n"
          "1 2 -0.25\n"
          "2 1 -0.5\n"
          "2 2 1\n");
  }
}

TEST_CASE("split prints the trace and the refined document", "[cli]") {
  const CliResult r = run_cli("split --plane 1,-1,0 " +
                              quoted(fixture_path("triangle.cx")));
  REQUIRE(r.code == 0);
  CHECK(r.output == kTriangleTrace + kHalvedTriangle);

  // The trace lines are comments, so the whole output is a valid document.
  std::istringstream in(r.output);
  const CellComplex refined = parse_complex(in);
  CHECK(refined.count(0) == 4);
  CHECK(refined.count(1) == 5);
  CHECK(refined.count(2) == 2);

  SECTION("a wide dead zone swallows every crossing") {
    const CliResult flat = run_cli("split --plane 1,-1,0 --eps 1.5 " +
                                   quoted(fixture_path("triangle.cx")));
    CHECK(flat.code == 0);
    CHECK_THAT(flat.output, ContainsSubstring("% c0: 0 0 0\n"));
  }
}

TEST_CASE("refine replays a script to the same document", "[cli]") {
  const CliResult r =
      run_cli("refine --script " + quoted(fixture_path("triangle_refine.txt")) +
              " " + quoted(fixture_path("triangle.cx")));
  REQUIRE(r.code == 0);
  CHECK(r.output == kHalvedTriangle);
}

TEST_CASE("repeated runs are byte-identical", "[cli]") {
  for (const std::string& args :
       {"hasse " + quoted(fixture_path("twotets.cx")),
        "split --plane 0,0,1,0.25 " + quoted(fixture_path("twotets.cx")),
        "laplacian -p 1 --gram " + quoted(fixture_path("twotets_gram.txt")) +
            " " + quoted(fixture_path("twotets.cx"))}) {
    const CliResult first = run_cli(args);
    const CliResult second = run_cli(args);
    INFO(args);
    CHECK(first.code == 0);
    CHECK(first.output == second.output);
    CHECK_FALSE(first.output.empty());
  }
}

TEST_CASE("--out writes the same bytes to a file", "[cli]") {
  const std::string out_path = "cli_out_check.tmp";
  const CliResult direct =
      run_cli("hasse " + quoted(fixture_path("rects.cx")));
  const CliResult filed = run_cli("hasse -o " + out_path + " " +
                                  quoted(fixture_path("rects.cx")));
  REQUIRE(filed.code == 0);
  std::ifstream in(out_path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream contents;
  contents << in.rdbuf();
  CHECK(contents.str() == direct.output);
  std::remove(out_path.c_str());
}

TEST_CASE("failures map to distinct exit codes", "[cli]") {
  SECTION("parse failure: 2") {
    const std::string path = "cli_bad_version.cx";
    std::ofstream(path) << "#chaincx 9\n#dim 0\n#counts 1\n";
    const CliResult r = run_cli("info " + path, true);
    CHECK(r.code == 2);
    CHECK_THAT(r.output, ContainsSubstring("version tag"));
    std::remove(path.c_str());
  }
  SECTION("validation failure: 3") {
    // Structurally sound but the boundary of the face's boundary is not 0.
    const std::string path = "cli_broken_axiom.cx";
    std::ofstream(path) << "#chaincx 1\n#dim 2\n#counts 2 1 1\n"
                           "#incidence 1\n-1 2\n#incidence 2\n1\n";
    const CliResult r = run_cli("validate " + path);
    CHECK(r.code == 3);
    CHECK_THAT(r.output, StartsWith("invalid\n"));
    std::remove(path.c_str());
  }
  SECTION("algorithm failure: 4") {
    const CliResult r =
        run_cli("boundary -p 0 " + quoted(fixture_path("triangle.cx")), true);
    CHECK(r.code == 4);
    CHECK_THAT(r.output,
               ContainsSubstring("incidence is defined for dimensions 1..2"));

    const CliResult nonconvex = run_cli(
        "split --plane 1,1,2.25 " + quoted(fixture_path("lshape.cx")), true);
    CHECK(nonconvex.code == 4);
    CHECK_THAT(nonconvex.output,
               ContainsSubstring("refusing to split a non-convex cell"));
  }
  SECTION("io failure: 5") {
    const CliResult r = run_cli("info no_such_file.cx", true);
    CHECK(r.code == 5);
    CHECK_THAT(r.output, ContainsSubstring("cannot open"));
  }
}
