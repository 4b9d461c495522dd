#pragma once

#include <vector>

#include "chaincx/complex.hpp"

namespace chaincx {

/// Inner-product hierarchy: one symmetric positive definite Gram matrix G_p
/// per dimension. Three storage kinds keep the common cases cheap: trivial
/// (identity, the default), diagonal (positive weights), and full (an
/// explicit SPD matrix, factored dense on demand; these stay small in
/// practice).
class GramStructure {
 public:
  enum class Kind { trivial, diagonal, full };

  /// Identity inner product on every dimension 0..dimension.
  static GramStructure trivial(int dimension);

  int dimension() const noexcept { return dimension_; }
  Kind kind(int p) const;

  /// Installs a diagonal Gram matrix; weights must be positive and finite.
  void set_diagonal(int p, DenseVector weights);

  /// Installs a full Gram matrix; must be symmetric and positive definite
  /// (checked immediately by Cholesky factorization).
  void set_full(int p, SparseMatrix g);

  /// G_p as a matrix; n is the expected cell count of dimension p.
  SparseMatrix matrix(int p, index_t n) const;

  /// Solves G_p X = rhs.
  SparseMatrix apply_inverse(int p, const SparseMatrix& rhs, index_t n) const;

 private:
  explicit GramStructure(int dimension);

  int dimension_ = 0;
  std::vector<Kind> kinds_;
  std::vector<DenseVector> diagonals_;
  std::vector<SparseMatrix> fulls_;
};

/// Up adjacency A_p^+ = [d_{p+1}] [delta_p], defined for 0 <= p <= d-1.
SparseMatrix adjacency_plus(const CellComplex& k, int p);

/// Down adjacency A_p^- = [delta_{p-1}] [d_p], defined for 1 <= p <= d.
SparseMatrix adjacency_minus(const CellComplex& k, int p);

/// Adjoint of the boundary with respect to the Gram hierarchy:
/// G_{p+1}^{-1} [d_{p+1}]^T G_p, mapping p-chains to (p+1)-chains. With the
/// trivial hierarchy this is exactly transpose(boundary_matrix(p+1)).
SparseMatrix adjoint_boundary(const CellComplex& k, const GramStructure& g,
                              int p);

/// Laplace operator on p-chains,
///   [Delta_p] = G_p M_p G_{p+1}^{-1} M_p^T + M_{p-1}^T G_{p-1} M_{p-1} G_p^{-1}
/// with M_p the measured incidence between levels p and p+1. The missing
/// boundary below dimension 0 and coboundary above dimension d enter as
/// zero matrices of the right shapes, so p = 0 and p = d need no special
/// cases; with the trivial hierarchy the operator reduces to
/// A_p^+ + A_p^- exactly.
SparseMatrix laplace_derham(const CellComplex& k, const GramStructure& g,
                            int p);

/// Inner product <G_p a, b> of two p-chains on the same complex.
double pairing_gram(const GramStructure& g, const Chain& a, const Chain& b);

}  // namespace chaincx
