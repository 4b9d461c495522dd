#include "chaincx/laplace.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace chaincx {

namespace {

/// Dense lower-triangular Cholesky factor of an SPD matrix given sparsely.
/// Fails with Error(validation) when the matrix is not positive definite.
/// Row-major, n x n; only used for full Gram blocks, which stay small.
std::vector<double> cholesky(const SparseMatrix& g) {
  const index_t n = g.rows();
  std::vector<double> a(static_cast<std::size_t>(n * n), 0.0);
  for (const Entry& e : g.entries())
    a[static_cast<std::size_t>(e.row * n + e.col)] = e.value;
  for (index_t j = 0; j < n; ++j) {
    for (index_t i = j; i < n; ++i) {
      double sum = a[static_cast<std::size_t>(i * n + j)];
      for (index_t k = 0; k < j; ++k) {
        sum -= a[static_cast<std::size_t>(i * n + k)] *
               a[static_cast<std::size_t>(j * n + k)];
      }
      if (i == j) {
        if (!(sum > 0.0)) {
          fail(ErrorKind::validation,
               "Gram matrix is not positive definite");
        }
        a[static_cast<std::size_t>(j * n + j)] = std::sqrt(sum);
      } else {
        a[static_cast<std::size_t>(i * n + j)] =
            sum / a[static_cast<std::size_t>(j * n + j)];
      }
    }
  }
  return a;
}

void cholesky_solve(const std::vector<double>& l, index_t n,
                    std::vector<double>& x) {
  for (index_t i = 0; i < n; ++i) {
    double sum = x[static_cast<std::size_t>(i)];
    for (index_t k = 0; k < i; ++k)
      sum -= l[static_cast<std::size_t>(i * n + k)] *
             x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = sum / l[static_cast<std::size_t>(i * n + i)];
  }
  for (index_t i = n - 1; i >= 0; --i) {
    double sum = x[static_cast<std::size_t>(i)];
    for (index_t k = i + 1; k < n; ++k)
      sum -= l[static_cast<std::size_t>(k * n + i)] *
             x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = sum / l[static_cast<std::size_t>(i * n + i)];
  }
}

}  // namespace

GramStructure::GramStructure(int dimension) : dimension_(dimension) {
  if (dimension < 0) {
    fail(ErrorKind::validation, "Gram hierarchy dimension must be >= 0");
  }
  kinds_.assign(static_cast<std::size_t>(dimension) + 1, Kind::trivial);
  diagonals_.resize(kinds_.size());
  fulls_.resize(kinds_.size());
}

GramStructure GramStructure::trivial(int dimension) {
  return GramStructure(dimension);
}

GramStructure::Kind GramStructure::kind(int p) const {
  if (p < 0 || p > dimension_) {
    fail(ErrorKind::algorithm,
         "no Gram matrix for dimension " + std::to_string(p));
  }
  return kinds_[static_cast<std::size_t>(p)];
}

void GramStructure::set_diagonal(int p, DenseVector weights) {
  kind(p);  // range check
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      fail(ErrorKind::validation,
           "diagonal Gram weights must be positive and finite");
    }
  }
  kinds_[static_cast<std::size_t>(p)] = Kind::diagonal;
  diagonals_[static_cast<std::size_t>(p)] = std::move(weights);
  fulls_[static_cast<std::size_t>(p)] = SparseMatrix();
}

void GramStructure::set_full(int p, SparseMatrix g) {
  kind(p);  // range check
  if (g.rows() != g.cols()) {
    fail(ErrorKind::validation, "full Gram matrix must be square");
  }
  if (max_abs_diff(g, transpose(g)) != 0.0) {
    fail(ErrorKind::validation, "full Gram matrix must be symmetric");
  }
  cholesky(g);  // positive definiteness check
  kinds_[static_cast<std::size_t>(p)] = Kind::full;
  fulls_[static_cast<std::size_t>(p)] = std::move(g);
  diagonals_[static_cast<std::size_t>(p)].clear();
}

SparseMatrix GramStructure::matrix(int p, index_t n) const {
  switch (kind(p)) {
    case Kind::trivial:
      return identity(n);
    case Kind::diagonal: {
      const DenseVector& w = diagonals_[static_cast<std::size_t>(p)];
      if (static_cast<index_t>(w.size()) != n) {
        fail(ErrorKind::validation,
             "diagonal Gram matrix for dimension " + std::to_string(p) +
                 " has " + std::to_string(w.size()) + " weights, expected " +
                 std::to_string(n));
      }
      std::vector<Entry> entries;
      for (index_t i = 0; i < n; ++i)
        entries.push_back({i, i, w[static_cast<std::size_t>(i)]});
      return SparseMatrix::from_entries(n, n, std::move(entries));
    }
    case Kind::full: {
      const SparseMatrix& g = fulls_[static_cast<std::size_t>(p)];
      if (g.rows() != n) {
        fail(ErrorKind::validation,
             "full Gram matrix for dimension " + std::to_string(p) + " is " +
                 std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
                 ", expected " + std::to_string(n) + "x" + std::to_string(n));
      }
      return g;
    }
  }
  fail(ErrorKind::algorithm, "unreachable Gram kind");
}

SparseMatrix GramStructure::apply_inverse(int p, const SparseMatrix& rhs,
                                          index_t n) const {
  if (rhs.rows() != n) {
    fail(ErrorKind::algorithm, "Gram solve shape mismatch");
  }
  switch (kind(p)) {
    case Kind::trivial:
      return rhs;
    case Kind::diagonal: {
      const DenseVector& w = diagonals_[static_cast<std::size_t>(p)];
      if (static_cast<index_t>(w.size()) != n) {
        fail(ErrorKind::validation,
             "diagonal Gram matrix for dimension " + std::to_string(p) +
                 " has the wrong length");
      }
      std::vector<Entry> entries;
      entries.reserve(rhs.entries().size());
      for (const Entry& e : rhs.entries()) {
        entries.push_back(
            {e.row, e.col, e.value / w[static_cast<std::size_t>(e.row)]});
      }
      return SparseMatrix::from_entries(rhs.rows(), rhs.cols(),
                                        std::move(entries));
    }
    case Kind::full: {
      const SparseMatrix g = matrix(p, n);
      const std::vector<double> l = cholesky(g);
      std::vector<Entry> entries;
      std::vector<double> column(static_cast<std::size_t>(n));
      for (index_t c = 0; c < rhs.cols(); ++c) {
        std::fill(column.begin(), column.end(), 0.0);
        bool any = false;
        for (const Entry& e : rhs.entries()) {
          if (e.col == c) {
            column[static_cast<std::size_t>(e.row)] = e.value;
            any = true;
          }
        }
        if (!any) continue;
        cholesky_solve(l, n, column);
        for (index_t r = 0; r < n; ++r) {
          const double v = column[static_cast<std::size_t>(r)];
          if (std::abs(v) > kProductDropTolerance)
            entries.push_back({r, c, v});
        }
      }
      return SparseMatrix::from_entries(n, rhs.cols(), std::move(entries));
    }
  }
  fail(ErrorKind::algorithm, "unreachable Gram kind");
}

SparseMatrix adjacency_plus(const CellComplex& k, int p) {
  if (p < 0 || p > k.dimension() - 1) {
    fail(ErrorKind::algorithm,
         "up adjacency is defined for dimensions 0.." +
             std::to_string(k.dimension() - 1) + ", got " + std::to_string(p));
  }
  return multiply(k.boundary_matrix(p + 1), k.coboundary_matrix(p));
}

SparseMatrix adjacency_minus(const CellComplex& k, int p) {
  if (p < 1 || p > k.dimension()) {
    fail(ErrorKind::algorithm,
         "down adjacency is defined for dimensions 1.." +
             std::to_string(k.dimension()) + ", got " + std::to_string(p));
  }
  return multiply(k.coboundary_matrix(p - 1), k.boundary_matrix(p));
}

SparseMatrix adjoint_boundary(const CellComplex& k, const GramStructure& g,
                              int p) {
  if (g.dimension() != k.dimension()) {
    fail(ErrorKind::algorithm,
         "Gram hierarchy dimension does not match the complex");
  }
  if (p < 0 || p > k.dimension() - 1) {
    fail(ErrorKind::algorithm,
         "the boundary adjoint is defined for dimensions 0.." +
             std::to_string(k.dimension() - 1) + ", got " + std::to_string(p));
  }
  if (g.kind(p) == GramStructure::Kind::trivial &&
      g.kind(p + 1) == GramStructure::Kind::trivial) {
    return transpose(k.boundary_matrix(p + 1));
  }
  const SparseMatrix weighted =
      multiply(transpose(k.boundary_matrix(p + 1)), g.matrix(p, k.count(p)));
  return g.apply_inverse(p + 1, weighted, k.count(p + 1));
}

SparseMatrix laplace_derham(const CellComplex& k, const GramStructure& g,
                            int p) {
  if (g.dimension() != k.dimension()) {
    fail(ErrorKind::algorithm,
         "Gram hierarchy dimension does not match the complex");
  }
  const int d = k.dimension();
  if (p < 0 || p > d) {
    fail(ErrorKind::algorithm,
         "Laplace operator is defined for dimensions 0.." + std::to_string(d) +
             ", got " + std::to_string(p));
  }
  const index_t n = k.count(p);

  SparseMatrix up(n, n);
  if (p < d) {
    if (g.kind(p) == GramStructure::Kind::trivial &&
        g.kind(p + 1) == GramStructure::Kind::trivial) {
      up = adjacency_plus(k, p);
    } else {
      const SparseMatrix m = k.boundary_matrix(p + 1);
      const SparseMatrix solved =
          g.apply_inverse(p + 1, transpose(m), k.count(p + 1));
      up = multiply(g.matrix(p, n), multiply(m, solved));
    }
  }

  SparseMatrix down(n, n);
  if (p > 0) {
    if (g.kind(p) == GramStructure::Kind::trivial &&
        g.kind(p - 1) == GramStructure::Kind::trivial) {
      down = adjacency_minus(k, p);
    } else {
      const SparseMatrix m = k.boundary_matrix(p);
      const SparseMatrix weighted =
          multiply(g.matrix(p - 1, k.count(p - 1)), m);
      const SparseMatrix left = multiply(transpose(m), weighted);
      // Right multiplication by G_p^{-1} via the transposed solve; G_p and
      // its inverse are symmetric.
      down = transpose(g.apply_inverse(p, transpose(left), n));
    }
  }
  return add(up, down);
}

double pairing_gram(const GramStructure& g, const Chain& a, const Chain& b) {
  if (a.complex == nullptr || a.complex != b.complex) {
    fail(ErrorKind::algorithm, "Gram pairing needs one shared complex");
  }
  if (a.dimension != b.dimension) {
    fail(ErrorKind::algorithm, "Gram pairing needs matching dimensions");
  }
  const index_t n = a.complex->count(a.dimension);
  if (static_cast<index_t>(a.coefficients.size()) != n ||
      static_cast<index_t>(b.coefficients.size()) != n) {
    fail(ErrorKind::algorithm, "Gram pairing coefficient length mismatch");
  }
  const DenseVector ga =
      mat_vec(g.matrix(a.dimension, n), a.coefficients);
  double sum = 0.0;
  for (std::size_t i = 0; i < ga.size(); ++i)
    sum += ga[i] * b.coefficients[i];
  return sum;
}

}  // namespace chaincx
