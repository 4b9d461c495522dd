// chaincx: command line front end for the chain-complex library.
//
// Exit codes: 0 success, 2 input parse error, 3 validation failure,
// 4 algorithm error, 5 io error, 1 anything unexpected.

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chaincx/complex.hpp"
#include "chaincx/error.hpp"
#include "chaincx/euler.hpp"
#include "chaincx/hasse.hpp"
#include "chaincx/io.hpp"
#include "chaincx/laplace.hpp"
#include "chaincx/split.hpp"

namespace {

using namespace chaincx;

void write_output(const std::string& out_path,
                  const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty()) {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail(ErrorKind::io, "cannot open '" + out_path + "' for writing");
  writer(out);
  if (!out.flush()) fail(ErrorKind::io, "failed writing '" + out_path + "'");
}

Hyperplane parse_plane(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      fail(ErrorKind::parse, "bad plane coefficient '" + token + "'");
    }
    values.push_back(v);
  }
  if (values.size() < 2) {
    fail(ErrorKind::parse,
         "a plane needs at least one normal coefficient and the offset");
  }
  Hyperplane plane;
  plane.offset = values.back();
  values.pop_back();
  plane.normal = std::move(values);
  return plane;
}

void emit_class_line(std::ostream& out, const std::string& label,
                     const std::vector<int>& values) {
  out << "% " << label << ':';
  for (int v : values) out << ' ' << v;
  out << '\n';
}

void emit_split_trace(std::ostream& out, const SplitResult& result) {
  const Classification& c = result.classification;
  out << "% split trace\n";
  emit_class_line(out, "c0", c.initial_c[0]);
  for (std::size_t p = 1; p < c.initial_c.size(); ++p) {
    emit_class_line(out, "c" + std::to_string(p), c.initial_c[p]);
    emit_class_line(out, "a" + std::to_string(p), c.initial_a[p]);
  }
  for (std::size_t p = 0; p < c.final_c.size(); ++p) {
    emit_class_line(out, "c" + std::to_string(p) + "'", c.final_c[p]);
  }
  for (const std::string& warning : result.warnings) {
    out << "% warning: " << warning << '\n';
  }
}

const char* gram_kind_name(GramStructure::Kind kind) {
  switch (kind) {
    case GramStructure::Kind::trivial: return "trivial";
    case GramStructure::Kind::diagonal: return "diagonal";
    case GramStructure::Kind::full: return "full";
  }
  return "?";
}

int run(int argc, char** argv) {
  CLI::App app{"cell complexes as sparse chain and cochain complexes"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;
  std::string gram_path;
  std::string script_path;
  std::string plane_text;
  double eps = kDefaultSplitEps;
  int p = 0;

  auto* info = app.add_subcommand("info", "print counts and invariants");
  info->add_option("file", in_path)->required();

  auto* validate_cmd =
      app.add_subcommand("validate", "check the chain-complex axiom");
  validate_cmd->add_option("file", in_path)->required();

  auto* euler = app.add_subcommand("euler", "print the Euler characteristic");
  euler->add_option("file", in_path)->required();

  auto* hasse = app.add_subcommand("hasse", "assemble the Hasse matrix");
  hasse->add_option("file", in_path)->required();
  hasse->add_option("-o,--out", out_path, "write to a file instead of stdout");

  auto* boundary_cmd =
      app.add_subcommand("boundary", "emit a measured boundary matrix");
  boundary_cmd->add_option("file", in_path)->required();
  boundary_cmd->add_option("-p,--dimension", p, "chain dimension")->required();
  boundary_cmd->add_option("-o,--out", out_path);

  auto* coboundary_cmd =
      app.add_subcommand("coboundary", "emit a measured coboundary matrix");
  coboundary_cmd->add_option("file", in_path)->required();
  coboundary_cmd->add_option("-p,--dimension", p, "cochain dimension")
      ->required();
  coboundary_cmd->add_option("-o,--out", out_path);

  auto* laplacian_cmd =
      app.add_subcommand("laplacian", "emit a Laplace operator");
  laplacian_cmd->add_option("file", in_path)->required();
  laplacian_cmd->add_option("-p,--dimension", p, "chain dimension")
      ->required();
  laplacian_cmd->add_option("--gram", gram_path,
                            "Gram hierarchy file (default: trivial)");
  laplacian_cmd->add_option("-o,--out", out_path);

  auto* split_cmd =
      app.add_subcommand("split", "subdivide along a hyperplane");
  split_cmd->add_option("file", in_path)->required();
  split_cmd
      ->add_option("--plane", plane_text,
                   "normal coefficients and offset, comma separated")
      ->required();
  split_cmd->add_option("--eps", eps, "on-plane classification half-width");
  split_cmd->add_option("-o,--out", out_path);

  auto* refine_cmd =
      app.add_subcommand("refine", "apply a refinement script");
  refine_cmd->add_option("file", in_path)->required();
  refine_cmd->add_option("--script", script_path)->required();
  refine_cmd->add_option("-o,--out", out_path);

  CLI11_PARSE(app, argc, argv);

  if (info->parsed()) {
    const CellComplex k = load_complex(in_path);
    std::cout << "dimension " << k.dimension() << "\ncounts";
    for (int q = 0; q <= k.dimension(); ++q) std::cout << ' ' << k.count(q);
    std::cout << "\neuler " << euler_characteristic(k) << "\ngeometry ";
    if (k.has_geometry()) {
      std::cout << k.geometry().ambient << '\n';
    } else {
      std::cout << "none\n";
    }
    return 0;
  }
  if (validate_cmd->parsed()) {
    const CellComplex k = load_complex(in_path);
    const ValidationReport report = validate(k);
    std::cout << (report.valid ? "valid" : "invalid") << "\nmax residual "
              << format_value(report.max_boundary_residual) << '\n';
    for (const std::string& violation : report.violations) {
      std::cout << violation << '\n';
    }
    return report.valid ? 0 : exit_code(ErrorKind::validation);
  }
  if (euler->parsed()) {
    std::cout << euler_characteristic(load_complex(in_path)) << '\n';
    return 0;
  }
  if (hasse->parsed()) {
    const CellComplex k = load_complex(in_path);
    const HasseMatrix h = assemble_hasse(k);
    write_output(out_path, [&](std::ostream& out) { emit_hasse(out, h); });
    return 0;
  }
  if (boundary_cmd->parsed()) {
    const CellComplex k = load_complex(in_path);
    const SparseMatrix m = k.boundary_matrix(p);
    write_output(out_path, [&](std::ostream& out) { emit_matrix(out, m); });
    return 0;
  }
  if (coboundary_cmd->parsed()) {
    const CellComplex k = load_complex(in_path);
    const SparseMatrix m = k.coboundary_matrix(p);
    write_output(out_path, [&](std::ostream& out) { emit_matrix(out, m); });
    return 0;
  }
  if (laplacian_cmd->parsed()) {
    const CellComplex k = load_complex(in_path);
    const GramStructure g = gram_path.empty()
                                ? GramStructure::trivial(k.dimension())
                                : load_gram(gram_path, k);
    const SparseMatrix m = laplace_derham(k, g, p);
    write_output(out_path, [&](std::ostream& out) {
      out << "% laplacian " << p << " gram " << gram_kind_name(g.kind(p))
          << '\n';
      emit_matrix(out, m);
    });
    return 0;
  }
  if (split_cmd->parsed()) {
    const CellComplex k = load_complex(in_path);
    const SplitResult result = split_complex(k, parse_plane(plane_text), eps);
    write_output(out_path, [&](std::ostream& out) {
      emit_split_trace(out, result);
      emit_complex(out, result.complex);
    });
    return 0;
  }
  if (refine_cmd->parsed()) {
    CellComplex k = load_complex(in_path);
    for (const SplitDescriptor& desc : load_script(script_path)) {
      k = make(k, desc);
    }
    write_output(out_path, [&](std::ostream& out) { emit_complex(out, k); });
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const chaincx::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return chaincx::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
}
