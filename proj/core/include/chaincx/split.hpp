#pragma once

#include <string>
#include <vector>

#include "chaincx/complex.hpp"
#include "chaincx/euler.hpp"

namespace chaincx {

/// Default dead-zone half-width for classifying vertices against a
/// hyperplane: vertices within eps of the plane count as lying on it.
inline constexpr double kDefaultSplitEps = 1e-8;

/// Affine hyperplane { x : <normal, x> = offset } in the ambient space of
/// the vertex coordinates.
struct Hyperplane {
  std::vector<double> normal;
  double offset = 0.0;
};

/// Signed distance surrogate <normal, x> - offset (not normalized).
double hyperplane_value(const Hyperplane& plane,
                        const std::vector<double>& coords,
                        std::size_t vertex);

/// Vertex classes in {-1, 0, +1}: the side of the plane, with |value| <=
/// eps collapsing to 0. Requires geometry of matching ambient dimension.
std::vector<int> classify_vertices(const CellComplex& k,
                                   const Hyperplane& plane,
                                   double eps = kDefaultSplitEps);

/// One classification sweep from dimension p-1 to p over the unsigned
/// incidence: sums[j] adds up the face classes of the j-th p-cell and
/// counts[j] the number of its off-plane faces. A p-cell straddles the
/// plane exactly when |sums[j]| != counts[j].
struct Propagation {
  std::vector<int> sums;
  std::vector<int> counts;
};

Propagation propagate_classification(const CellComplex& k, int p,
                                     const std::vector<int>& lower);

/// Classification record of one subdivision run. initial_c[p] / initial_a[p]
/// hold the straddle-scan vectors over the p-cells as they stood when
/// dimension p was scanned (sign of the sums, and the counts; a is empty at
/// p = 0). final_c[p] classifies every p-cell of the refined complex, where
/// cells produced by the run itself sit on the plane and carry class 0.
struct Classification {
  std::vector<std::vector<int>> initial_c;
  std::vector<std::vector<int>> initial_a;
  std::vector<std::vector<int>> final_c;
};

/// Chain map zeta from the input complex to its subdivision: maps[p] has
/// shape k~_p x k_p. A split cell's column carries the measure shares t and
/// 1-t at its two fragments, unsplit cells map identically, and cells
/// created by the subdivision have zero rows.
struct SubdivisionMap {
  std::vector<SparseMatrix> maps;
};

struct SplitResult {
  CellComplex complex;
  SubdivisionMap map;
  Classification classification;
  std::vector<std::string> warnings;
};

/// Subdivides every cell straddling the hyperplane, dimension by dimension,
/// through make operators, leaving a complex in which no cell crosses the
/// plane. Straddling cells are processed in ascending ordinal order, so the
/// result is deterministic. Requires vertex geometry; throws
/// Error(algorithm) naming the offending cell when a straddling cell cannot
/// be split into two pieces with a single interface cell.
SplitResult split_complex(const CellComplex& k, const Hyperplane& plane,
                          double eps = kDefaultSplitEps);

/// Applies the planes in order; subdivision maps compose by matrix product,
/// the classification reported is the final plane's, and warnings
/// accumulate.
SplitResult iterated_split(const CellComplex& k,
                           const std::vector<Hyperplane>& planes,
                           double eps = kDefaultSplitEps);

}  // namespace chaincx
