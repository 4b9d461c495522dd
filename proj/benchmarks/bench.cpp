#include <benchmark/benchmark.h>

#include <sstream>
#include <string>
#include <vector>

#include "chaincx/hasse.hpp"
#include "chaincx/io.hpp"
#include "chaincx/laplace.hpp"
#include "chaincx/split.hpp"

#ifndef CHAINCX_FIXTURE_DIR
#error "CHAINCX_FIXTURE_DIR must point at the fixture directory"
#endif

namespace {

using namespace chaincx;

CellComplex load(const std::string& name) {
  return load_complex(std::string(CHAINCX_FIXTURE_DIR) + "/" + name);
}

/// The cube surface cut by nine axis-aligned planes: a few hundred cells,
/// enough to separate the incremental paths from full rebuilds.
const CellComplex& subdivided_cube() {
  static const CellComplex refined = [] {
    std::vector<Hyperplane> planes;
    for (double offset : {0.25, 0.5, 0.75}) {
      planes.push_back({{0.0, 0.0, 1.0}, offset});
      planes.push_back({{1.0, 0.0, 0.0}, offset});
      planes.push_back({{0.0, 1.0, 0.0}, offset});
    }
    return iterated_split(load("cube.cx"), planes).complex;
  }();
  return refined;
}

void BM_ParseComplex(benchmark::State& state) {
  std::ostringstream out;
  emit_complex(out, load("twotets.cx"));
  const std::string document = out.str();
  for (auto _ : state) {
    std::istringstream in(document);
    CellComplex k = parse_complex(in);
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(BM_ParseComplex);

void BM_EmitComplex(benchmark::State& state) {
  const CellComplex& k = subdivided_cube();
  for (auto _ : state) {
    std::ostringstream out;
    emit_complex(out, k);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_EmitComplex);

void BM_ValidateComplex(benchmark::State& state) {
  const CellComplex& k = subdivided_cube();
  for (auto _ : state) {
    ValidationReport report = validate(k);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_ValidateComplex);

void BM_AssembleHasse(benchmark::State& state) {
  const CellComplex& k = subdivided_cube();
  for (auto _ : state) {
    HasseMatrix h = assemble_hasse(k);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_AssembleHasse);

void BM_SplitComplex(benchmark::State& state) {
  const CellComplex cube = load("cube.cx");
  const Hyperplane plane{{0.0, 0.0, 1.0}, 0.5};
  for (auto _ : state) {
    SplitResult result = split_complex(cube, plane);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_SplitComplex);

void BM_IteratedSplit(benchmark::State& state) {
  const CellComplex rects = load("rects.cx");
  const std::vector<Hyperplane> planes{{{1.0, 0.0}, 1.0},
                                       {{1.0, 0.0}, 2.0},
                                       {{1.0, 0.0}, 3.0},
                                       {{0.0, 1.0}, 0.5},
                                       {{0.0, 1.0}, 2.0}};
  for (auto _ : state) {
    SplitResult result = iterated_split(rects, planes);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_IteratedSplit);

void BM_RefineDirect(benchmark::State& state) {
  const CellComplex triangle = load("triangle.cx");
  const std::vector<SplitDescriptor> steps =
      load_script(std::string(CHAINCX_FIXTURE_DIR) + "/triangle_refine.txt");
  for (auto _ : state) {
    CellComplex once = make(triangle, steps[0]);
    CellComplex twice = make(once, steps[1]);
    HasseMatrix h = assemble_hasse(twice);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_RefineDirect);

void BM_RefineHasse(benchmark::State& state) {
  const CellComplex triangle = load("triangle.cx");
  const std::vector<SplitDescriptor> steps =
      load_script(std::string(CHAINCX_FIXTURE_DIR) + "/triangle_refine.txt");
  const HasseMatrix h0 = assemble_hasse(triangle);
  for (auto _ : state) {
    auto once = hasse_make(h0, triangle, steps[0]);
    auto twice = hasse_make(once.first, once.second, steps[1]);
    benchmark::DoNotOptimize(twice);
  }
}
BENCHMARK(BM_RefineHasse);

void BM_LaplaceDerham(benchmark::State& state) {
  const CellComplex& k = subdivided_cube();
  const GramStructure g = GramStructure::trivial(k.dimension());
  for (auto _ : state) {
    SparseMatrix laplace = laplace_derham(k, g, 1);
    benchmark::DoNotOptimize(laplace);
  }
}
BENCHMARK(BM_LaplaceDerham);

}  // namespace

BENCHMARK_MAIN();
