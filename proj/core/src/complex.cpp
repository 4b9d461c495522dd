#include "chaincx/complex.hpp"

#include <cmath>
#include <string>

namespace chaincx {

namespace {

std::string cell_name(int p, index_t ordinal) {
  return std::to_string(p) + "-cell " + std::to_string(ordinal);
}

}  // namespace

CellComplex::CellComplex(int dimension, std::vector<index_t> counts,
                         std::vector<std::vector<double>> sizes,
                         std::vector<SparseMatrix> incidence,
                         std::optional<VertexGeometry> geometry)
    : dimension_(dimension),
      counts_(std::move(counts)),
      sizes_(std::move(sizes)),
      incidence_(std::move(incidence)),
      geometry_(std::move(geometry)) {
  if (dimension_ < 0) fail(ErrorKind::validation, "dimension must be >= 0");
  const auto d = static_cast<std::size_t>(dimension_);
  if (counts_.size() != d + 1) {
    fail(ErrorKind::validation,
         "expected " + std::to_string(d + 1) + " cell counts, got " +
             std::to_string(counts_.size()));
  }
  for (std::size_t p = 0; p <= d; ++p) {
    if (counts_[p] < 0) {
      fail(ErrorKind::validation,
           "negative cell count at dimension " + std::to_string(p));
    }
  }
  if (sizes_.size() != d + 1) {
    fail(ErrorKind::validation,
         "expected sizes for " + std::to_string(d + 1) + " dimensions, got " +
             std::to_string(sizes_.size()));
  }
  for (std::size_t p = 0; p <= d; ++p) {
    if (static_cast<index_t>(sizes_[p].size()) != counts_[p]) {
      fail(ErrorKind::validation,
           "dimension " + std::to_string(p) + " has " +
               std::to_string(counts_[p]) + " cells but " +
               std::to_string(sizes_[p].size()) + " sizes");
    }
    for (std::size_t i = 0; i < sizes_[p].size(); ++i) {
      const double mu = sizes_[p][i];
      if (!(mu > 0.0) || !std::isfinite(mu)) {
        fail(ErrorKind::validation,
             "size of " + cell_name(static_cast<int>(p),
                                    static_cast<index_t>(i) + 1) +
                 " must be a positive finite number");
      }
      if (p == 0 && mu != 1.0) {
        fail(ErrorKind::validation,
             "size of " + cell_name(0, static_cast<index_t>(i) + 1) +
                 " must be exactly 1");
      }
    }
  }
  if (incidence_.size() != d) {
    fail(ErrorKind::validation,
         "expected " + std::to_string(d) + " incidence matrices, got " +
             std::to_string(incidence_.size()));
  }
  for (std::size_t p = 1; p <= d; ++p) {
    const SparseMatrix& b = incidence_[p - 1];
    if (b.rows() != counts_[p - 1] || b.cols() != counts_[p]) {
      fail(ErrorKind::validation,
           "incidence between dimensions " + std::to_string(p - 1) + " and " +
               std::to_string(p) + " is " + std::to_string(b.rows()) + "x" +
               std::to_string(b.cols()) + ", expected " +
               std::to_string(counts_[p - 1]) + "x" +
               std::to_string(counts_[p]));
    }
    for (const Entry& e : b.entries()) {
      if (e.value != 1.0 && e.value != -1.0) {
        fail(ErrorKind::validation,
             "incidence of " + cell_name(static_cast<int>(p), e.col + 1) +
                 " on " + cell_name(static_cast<int>(p) - 1, e.row + 1) +
                 " must be +1 or -1");
      }
    }
  }
  if (geometry_) {
    if (geometry_->ambient < 1) {
      fail(ErrorKind::validation, "ambient dimension must be >= 1");
    }
    const auto expected =
        static_cast<std::size_t>(counts_[0] * geometry_->ambient);
    if (geometry_->coords.size() != expected) {
      fail(ErrorKind::validation,
           "expected " + std::to_string(expected) +
               " coordinate values, got " +
               std::to_string(geometry_->coords.size()));
    }
    for (double x : geometry_->coords) {
      if (!std::isfinite(x)) {
        fail(ErrorKind::validation, "vertex coordinates must be finite");
      }
    }
  }
}

index_t CellComplex::count(int p) const {
  if (p < 0 || p > dimension_) {
    fail(ErrorKind::algorithm,
         "no cells of dimension " + std::to_string(p) + " in a " +
             std::to_string(dimension_) + "-complex");
  }
  return counts_[static_cast<std::size_t>(p)];
}

const std::vector<double>& CellComplex::sizes(int p) const {
  count(p);  // range check
  return sizes_[static_cast<std::size_t>(p)];
}

const SparseMatrix& CellComplex::incidence(int p) const {
  if (p < 1 || p > dimension_) {
    fail(ErrorKind::algorithm,
         "incidence is defined for dimensions 1.." +
             std::to_string(dimension_) + ", got " + std::to_string(p));
  }
  return incidence_[static_cast<std::size_t>(p) - 1];
}

const VertexGeometry& CellComplex::geometry() const {
  if (!geometry_) {
    fail(ErrorKind::algorithm, "complex carries no vertex coordinates");
  }
  return *geometry_;
}

SparseMatrix CellComplex::boundary_matrix(int p) const {
  const SparseMatrix& b = incidence(p);
  const auto& face_sizes = sizes_[static_cast<std::size_t>(p) - 1];
  const auto& cell_sizes = sizes_[static_cast<std::size_t>(p)];
  std::vector<Entry> entries;
  entries.reserve(b.entries().size());
  for (const Entry& e : b.entries()) {
    entries.push_back({e.row, e.col,
                       e.value * face_sizes[static_cast<std::size_t>(e.row)] /
                           cell_sizes[static_cast<std::size_t>(e.col)]});
  }
  return SparseMatrix::from_entries(b.rows(), b.cols(), std::move(entries));
}

SparseMatrix CellComplex::coboundary_matrix(int p) const {
  if (p < 0 || p > dimension_ - 1) {
    fail(ErrorKind::algorithm,
         "coboundary is defined for dimensions 0.." +
             std::to_string(dimension_ - 1) + ", got " + std::to_string(p));
  }
  return transpose(boundary_matrix(p + 1));
}

Chain unit_chain(const CellComplex& k, int p, index_t ordinal) {
  if (ordinal < 1 || ordinal > k.count(p)) {
    fail(ErrorKind::algorithm,
         "no " + cell_name(p, ordinal) + " in the complex");
  }
  Chain c{&k, p, DenseVector(static_cast<std::size_t>(k.count(p)), 0.0)};
  c.coefficients[static_cast<std::size_t>(ordinal - 1)] = 1.0;
  return c;
}

namespace {

void require_sized(const CellComplex& k, int p, const DenseVector& coeffs,
                   const char* what) {
  if (static_cast<index_t>(coeffs.size()) != k.count(p)) {
    fail(ErrorKind::algorithm,
         std::string(what) + " has " + std::to_string(coeffs.size()) +
             " coefficients but the complex has " + std::to_string(k.count(p)) +
             " cells of dimension " + std::to_string(p));
  }
}

}  // namespace

Chain boundary(const Chain& c) {
  if (c.complex == nullptr) fail(ErrorKind::algorithm, "chain has no complex");
  if (c.dimension < 1) {
    fail(ErrorKind::algorithm, "0-chains have no boundary");
  }
  require_sized(*c.complex, c.dimension, c.coefficients, "chain");
  return Chain{c.complex, c.dimension - 1,
               mat_vec(c.complex->boundary_matrix(c.dimension),
                       c.coefficients)};
}

Cochain coboundary(const Cochain& c) {
  if (c.complex == nullptr)
    fail(ErrorKind::algorithm, "cochain has no complex");
  if (c.dimension > c.complex->dimension() - 1) {
    fail(ErrorKind::algorithm,
         "top-dimensional cochains have no coboundary");
  }
  require_sized(*c.complex, c.dimension, c.coefficients, "cochain");
  return Cochain{c.complex, c.dimension + 1,
                 mat_vec(c.complex->coboundary_matrix(c.dimension),
                         c.coefficients)};
}

double pairing(const Cochain& gamma, const Chain& c) {
  if (gamma.complex == nullptr || gamma.complex != c.complex) {
    fail(ErrorKind::algorithm, "pairing needs one shared complex");
  }
  if (gamma.dimension != c.dimension) {
    fail(ErrorKind::algorithm,
         "pairing needs matching dimensions, got " +
             std::to_string(gamma.dimension) + " and " +
             std::to_string(c.dimension));
  }
  require_sized(*gamma.complex, gamma.dimension, gamma.coefficients,
                "cochain");
  require_sized(*c.complex, c.dimension, c.coefficients, "chain");
  double sum = 0.0;
  for (std::size_t i = 0; i < c.coefficients.size(); ++i)
    sum += gamma.coefficients[i] * c.coefficients[i];
  return sum;
}

ValidationReport validate(const CellComplex& k, double tolerance) {
  ValidationReport report;
  for (int p = 2; p <= k.dimension(); ++p) {
    // Topological part: the sign matrices must compose to exact zero.
    const SparseMatrix bb = multiply(k.incidence(p - 1), k.incidence(p));
    if (bb.nnz() != 0) {
      const Entry& e = bb.entries().front();
      report.valid = false;
      report.violations.push_back(
          "signed incidence composition between dimensions " +
          std::to_string(p) + " and " + std::to_string(p - 2) +
          " is nonzero at (" + std::to_string(e.row + 1) + ", " +
          std::to_string(e.col + 1) + "): " + std::to_string(e.value));
    }
    // Measured part: size ratios may carry rounding noise.
    const SparseMatrix dd =
        multiply(k.boundary_matrix(p - 1), k.boundary_matrix(p));
    const double residual = max_abs(dd);
    report.max_boundary_residual =
        std::max(report.max_boundary_residual, residual);
    if (residual > tolerance) {
      const Entry& e = dd.entries().front();
      report.valid = false;
      report.violations.push_back(
          "measured boundary composition between dimensions " +
          std::to_string(p) + " and " + std::to_string(p - 2) +
          " exceeds tolerance at (" + std::to_string(e.row + 1) + ", " +
          std::to_string(e.col + 1) + "): " + std::to_string(residual));
    }
  }
  return report;
}

ChainMapReport chain_map_check(const std::vector<SparseMatrix>& maps,
                               const CellComplex& source,
                               const CellComplex& target, double tolerance) {
  if (source.dimension() != target.dimension()) {
    fail(ErrorKind::algorithm,
         "chain map needs complexes of equal dimension");
  }
  const int d = source.dimension();
  if (static_cast<int>(maps.size()) != d + 1) {
    fail(ErrorKind::algorithm,
         "expected " + std::to_string(d + 1) + " maps, got " +
             std::to_string(maps.size()));
  }
  for (int p = 0; p <= d; ++p) {
    const SparseMatrix& m = maps[static_cast<std::size_t>(p)];
    if (m.rows() != target.count(p) || m.cols() != source.count(p)) {
      fail(ErrorKind::algorithm,
           "map at dimension " + std::to_string(p) + " is " +
               std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
               ", expected " + std::to_string(target.count(p)) + "x" +
               std::to_string(source.count(p)));
    }
  }
  ChainMapReport report;
  for (int p = 1; p <= d; ++p) {
    const SparseMatrix lhs = multiply(target.boundary_matrix(p),
                                      maps[static_cast<std::size_t>(p)]);
    const SparseMatrix rhs = multiply(maps[static_cast<std::size_t>(p) - 1],
                                      source.boundary_matrix(p));
    report.max_residual =
        std::max(report.max_residual, max_abs_diff(lhs, rhs));
  }
  report.commutes = report.max_residual <= tolerance;
  return report;
}

}  // namespace chaincx
