#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chaincx/sparse.hpp"

namespace chaincx {

/// Tolerance on the boundary-of-boundary residual used by validate(),
/// chain_map_check() and the refinement operators. The topological part of
/// the check is exact integer arithmetic; the slack only covers the measured
/// matrices, whose entries are size ratios.
inline constexpr double kBoundaryTolerance = 1e-10;

/// Dead-zone width for recovering the signed incidence structure from a
/// measured boundary matrix: sign entries are +-1 scaled by positive size
/// ratios, so anything smaller is numerical debris.
inline constexpr double kSignRecoveryEps = 1e-12;

/// Vertex coordinates, row-major: vertex i occupies
/// coords[i*ambient .. (i+1)*ambient). Optional; only hyperplane
/// subdivision and the geometric size oracles need it.
struct VertexGeometry {
  index_t ambient = 0;
  std::vector<double> coords;
};

/// A finite cell complex of dimension d, stored level by level:
/// cell counts k_p, strictly positive cell sizes (mu of every 0-cell is
/// pinned to 1), and for each p in 1..d a signed incidence matrix whose
/// column j lists the (p-1)-faces of the j-th p-cell with orientation signs
/// +-1. Cells are addressed by (dimension, ordinal) with 1-based ordinals;
/// refinement appends new cells at ordinal k_p + 1.
///
/// Construction enforces the structural invariants (shapes, sign entries,
/// size positivity); the tolerance-based boundary-of-boundary axiom is
/// checked by validate() so that a structurally sound but topologically
/// broken complex can still be loaded and reported on.
class CellComplex {
 public:
  CellComplex(int dimension, std::vector<index_t> counts,
              std::vector<std::vector<double>> sizes,
              std::vector<SparseMatrix> incidence,
              std::optional<VertexGeometry> geometry = std::nullopt);

  int dimension() const noexcept { return dimension_; }

  /// Number of p-cells, 0 <= p <= dimension().
  index_t count(int p) const;

  /// Sizes mu_p of the p-cells, ordinal order.
  const std::vector<double>& sizes(int p) const;

  /// Signed incidence between (p-1)- and p-cells, shape k_{p-1} x k_p,
  /// 1 <= p <= dimension(). Entries are exactly +-1.
  const SparseMatrix& incidence(int p) const;

  bool has_geometry() const noexcept { return geometry_.has_value(); }
  const VertexGeometry& geometry() const;

  /// Measured boundary matrix [d_p] of shape k_{p-1} x k_p: the incidence
  /// signs scaled by mu_{p-1}^i / mu_p^j. 1 <= p <= dimension().
  SparseMatrix boundary_matrix(int p) const;

  /// Measured coboundary [delta_p] = transpose([d_{p+1}]), with the exact
  /// same entry values. 0 <= p <= dimension() - 1.
  SparseMatrix coboundary_matrix(int p) const;

 private:
  int dimension_ = 0;
  std::vector<index_t> counts_;
  std::vector<std::vector<double>> sizes_;
  std::vector<SparseMatrix> incidence_;
  std::optional<VertexGeometry> geometry_;
};

/// A p-chain: one coefficient per p-cell of a fixed complex.
struct Chain {
  const CellComplex* complex = nullptr;
  int dimension = 0;
  DenseVector coefficients;
};

/// A p-cochain, the dual object; same layout, paired against chains.
struct Cochain {
  const CellComplex* complex = nullptr;
  int dimension = 0;
  DenseVector coefficients;
};

/// The unit chain of a single cell: coefficient 1 at `ordinal` (1-based).
Chain unit_chain(const CellComplex& k, int p, index_t ordinal);

/// Boundary of a p-chain, p >= 1.
Chain boundary(const Chain& c);

/// Coboundary of a p-cochain, p <= dimension - 1.
Cochain coboundary(const Cochain& c);

/// Natural pairing <gamma, c> = sum_i gamma_i c_i; both arguments must live
/// on the same complex and dimension.
double pairing(const Cochain& gamma, const Chain& c);

struct ValidationReport {
  bool valid = true;
  double max_boundary_residual = 0.0;
  std::vector<std::string> violations;
};

/// Checks the chain-complex axiom d(d(.)) = 0 on every adjacent pair of
/// levels. The signed incidence matrices must compose to exactly zero in
/// integer arithmetic; the measured matrices must compose to zero within
/// `tolerance`. Each violation names the level pair and the offending
/// matrix position.
ValidationReport validate(const CellComplex& k,
                          double tolerance = kBoundaryTolerance);

struct ChainMapReport {
  bool commutes = true;
  double max_residual = 0.0;
};

/// Checks that the family maps[p] : C_p(source) -> C_p(target), p = 0..d,
/// commutes with the measured boundaries: [d~_p] maps[p] = maps[p-1] [d_p]
/// within `tolerance` for every p.
ChainMapReport chain_map_check(const std::vector<SparseMatrix>& maps,
                               const CellComplex& source,
                               const CellComplex& target,
                               double tolerance = kBoundaryTolerance);

}  // namespace chaincx
