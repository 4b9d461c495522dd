#include "chaincx/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>

namespace chaincx {

double hyperplane_value(const Hyperplane& plane,
                        const std::vector<double>& coords,
                        std::size_t vertex) {
  double v = -plane.offset;
  for (std::size_t i = 0; i < plane.normal.size(); ++i)
    v += plane.normal[i] * coords[vertex * plane.normal.size() + i];
  return v;
}

std::vector<int> classify_vertices(const CellComplex& k,
                                   const Hyperplane& plane, double eps) {
  if (!k.has_geometry()) {
    fail(ErrorKind::algorithm,
         "hyperplane classification needs vertex coordinates");
  }
  const VertexGeometry& g = k.geometry();
  if (static_cast<index_t>(plane.normal.size()) != g.ambient) {
    fail(ErrorKind::algorithm,
         "hyperplane has " + std::to_string(plane.normal.size()) +
             " coefficients, ambient dimension is " +
             std::to_string(g.ambient));
  }
  std::vector<int> classes(static_cast<std::size_t>(k.count(0)));
  for (std::size_t i = 0; i < classes.size(); ++i)
    classes[i] = static_cast<int>(sgn(hyperplane_value(plane, g.coords, i),
                                      eps));
  return classes;
}

Propagation propagate_classification(const CellComplex& k, int p,
                                     const std::vector<int>& lower) {
  if (p < 1 || p > k.dimension()) {
    fail(ErrorKind::algorithm,
         "classification propagates to dimensions 1.." +
             std::to_string(k.dimension()) + ", got " + std::to_string(p));
  }
  if (static_cast<index_t>(lower.size()) != k.count(p - 1)) {
    fail(ErrorKind::algorithm,
         "expected one class per cell of dimension " + std::to_string(p - 1));
  }
  Propagation out;
  out.sums.assign(static_cast<std::size_t>(k.count(p)), 0);
  out.counts.assign(static_cast<std::size_t>(k.count(p)), 0);
  for (const Entry& e : k.incidence(p).entries()) {
    const int c = lower[static_cast<std::size_t>(e.row)];
    out.sums[static_cast<std::size_t>(e.col)] += c;
    out.counts[static_cast<std::size_t>(e.col)] += std::abs(c);
  }
  return out;
}

namespace {

std::string cell_name(int p, index_t ordinal) {
  return std::to_string(p) + "-cell " + std::to_string(ordinal);
}

int plain_sgn(int v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

std::vector<int> plain_sgn(const std::vector<int>& v) {
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = plain_sgn(v[i]);
  return out;
}

/// Signed faces of a cell, read off one incidence column.
std::vector<std::pair<index_t, double>> faces_of(const CellComplex& k, int p,
                                                 index_t ordinal) {
  std::vector<std::pair<index_t, double>> out;
  for (const Entry& e : k.incidence(p).entries()) {
    if (e.col == ordinal - 1) out.emplace_back(e.row, e.value);
  }
  return out;
}

/// Orders the vertices of a closed edge cycle, or nothing when the edges do
/// not form one simple closed loop (open chains, branching, disconnected
/// unions).
std::optional<std::vector<index_t>> walk_cycle(
    const CellComplex& k, const std::vector<index_t>& edge_ordinals) {
  std::map<index_t, std::vector<std::pair<std::size_t, index_t>>> adjacency;
  std::vector<std::pair<index_t, index_t>> endpoints;
  for (std::size_t i = 0; i < edge_ordinals.size(); ++i) {
    std::vector<index_t> ends;
    for (const auto& [row, sign] : faces_of(k, 1, edge_ordinals[i]))
      ends.push_back(row);
    if (ends.size() != 2 || ends[0] == ends[1]) return std::nullopt;
    endpoints.emplace_back(ends[0], ends[1]);
    adjacency[ends[0]].emplace_back(i, ends[1]);
    adjacency[ends[1]].emplace_back(i, ends[0]);
  }
  if (adjacency.size() != edge_ordinals.size()) return std::nullopt;
  for (const auto& [vertex, nbrs] : adjacency) {
    if (nbrs.size() != 2) return std::nullopt;
  }
  std::vector<bool> used(edge_ordinals.size(), false);
  std::vector<index_t> order;
  index_t at = endpoints.front().first;
  for (std::size_t step = 0; step < edge_ordinals.size(); ++step) {
    order.push_back(at);
    bool moved = false;
    for (const auto& [edge, other] : adjacency[at]) {
      if (!used[edge]) {
        used[edge] = true;
        at = other;
        moved = true;
        break;
      }
    }
    if (!moved) return std::nullopt;
  }
  if (at != endpoints.front().first) return std::nullopt;
  return order;
}

/// Area of a planar polygon given its vertex cycle; supports ambient
/// dimensions 2 and 3 (cross-product sum).
std::optional<double> polygon_area(const CellComplex& k,
                                   const std::vector<index_t>& cycle) {
  const VertexGeometry& g = k.geometry();
  const auto at = [&](index_t v, index_t axis) {
    return g.coords[static_cast<std::size_t>(v * g.ambient + axis)];
  };
  if (g.ambient == 2) {
    double twice = 0.0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const index_t a = cycle[i];
      const index_t b = cycle[(i + 1) % cycle.size()];
      twice += at(a, 0) * at(b, 1) - at(b, 0) * at(a, 1);
    }
    return std::abs(twice) / 2.0;
  }
  if (g.ambient == 3) {
    double sx = 0.0;
    double sy = 0.0;
    double sz = 0.0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const index_t a = cycle[i];
      const index_t b = cycle[(i + 1) % cycle.size()];
      sx += at(a, 1) * at(b, 2) - at(a, 2) * at(b, 1);
      sy += at(a, 2) * at(b, 0) - at(a, 0) * at(b, 2);
      sz += at(a, 0) * at(b, 1) - at(a, 1) * at(b, 0);
    }
    return std::sqrt(sx * sx + sy * sy + sz * sz) / 2.0;
  }
  return std::nullopt;
}

/// True when the support cells of dimension q form one connected patch
/// under the "share a (q-1)-face" relation.
bool connected_support(const CellComplex& k, int q,
                       const std::vector<index_t>& support) {
  if (support.size() <= 1) return true;
  std::vector<std::size_t> parent(support.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<index_t, std::size_t> face_owner;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (const auto& [face, sign] : faces_of(k, q, support[i])) {
      auto [it, inserted] = face_owner.emplace(face, i);
      if (!inserted) parent[find(i)] = find(it->second);
    }
  }
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < support.size(); ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

struct PassState {
  CellComplex complex;
  std::vector<std::vector<int>> classes;  // per dimension, grows with splits
  std::vector<double> vertex_values;      // plane values, 0 for new vertices
  std::vector<SparseMatrix> zeta;
  std::vector<std::string> warnings;
};

/// Builds the make descriptor for one straddling p-cell: partitions its
/// faces by side (on-plane faces go KEEP), derives the interface cell, and
/// fills in the measure data from the geometric oracles where they apply.
SplitDescriptor synthesize_descriptor(PassState& state, int p,
                                      index_t ordinal) {
  const CellComplex& w = state.complex;
  const std::vector<int>& lower = state.classes[static_cast<std::size_t>(p) - 1];

  SplitDescriptor desc;
  desc.p = p - 1;
  desc.target = ordinal;
  for (const auto& [face, sign] : faces_of(w, p, ordinal)) {
    if (lower[static_cast<std::size_t>(face)] > 0) {
      desc.new_side.push_back(face + 1);
    } else {
      desc.keep_side.push_back(face + 1);
    }
  }
  if (desc.keep_side.empty() || desc.new_side.empty()) {
    fail(ErrorKind::algorithm,
         "straddling " + cell_name(p, ordinal) +
             " has no faces on one side of the plane");
  }

  if (p == 1) {
    // Edge split: interpolate the crossing between the two endpoints. The
    // sides are told apart by classification, not by incidence sign --
    // earlier splits can leave an edge with same-sign endpoints.
    const auto faces = faces_of(w, 1, ordinal);
    index_t neg = -1;
    index_t pos = -1;
    for (const auto& [vertex, sign] : faces) {
      (lower[static_cast<std::size_t>(vertex)] < 0 ? neg : pos) = vertex;
    }
    if (faces.size() != 2 || neg < 0 || pos < 0) {
      fail(ErrorKind::algorithm,
           "straddling " + cell_name(1, ordinal) +
               " does not join one vertex on each side of the plane");
    }
    const double va = state.vertex_values[static_cast<std::size_t>(neg)];
    const double vb = state.vertex_values[static_cast<std::size_t>(pos)];
    const double t = va / (va - vb);
    const VertexGeometry& g = w.geometry();
    std::vector<double> position(static_cast<std::size_t>(g.ambient));
    for (index_t axis = 0; axis < g.ambient; ++axis) {
      const double xa =
          g.coords[static_cast<std::size_t>(neg * g.ambient + axis)];
      const double xb =
          g.coords[static_cast<std::size_t>(pos * g.ambient + axis)];
      position[static_cast<std::size_t>(axis)] = xa + t * (xb - xa);
    }
    desc.new_vertex = std::move(position);
    desc.new_cell_size = 1.0;
    // KEEP holds the negative-side endpoint, so its length share is the
    // crossing parameter measured from that endpoint.
    desc.size_split = t;
    return desc;
  }

  // Interface cell: the negated boundary of the KEEP fragment's old faces.
  std::vector<int> interface_coeffs(
      static_cast<std::size_t>(w.count(p - 2)), 0);
  const SparseMatrix& lower_incidence = w.incidence(p - 1);
  const std::set<index_t> keep(desc.keep_side.begin(), desc.keep_side.end());
  std::map<index_t, double> face_signs;
  for (const auto& [face, sign] : faces_of(w, p, ordinal))
    face_signs[face] = sign;
  for (const Entry& e : lower_incidence.entries()) {
    if (keep.count(e.col + 1) != 0) {
      interface_coeffs[static_cast<std::size_t>(e.row)] -=
          static_cast<int>(face_signs.at(e.col) * e.value);
    }
  }
  for (std::size_t i = 0; i < interface_coeffs.size(); ++i) {
    const int c = interface_coeffs[i];
    if (c > 1 || c < -1) {
      fail(ErrorKind::algorithm,
           "hyperplane section of " + cell_name(p, ordinal) +
               " is not a single " + std::to_string(p - 1) +
               "-cell; refusing to split a non-convex cell");
    }
    if (c != 0) {
      desc.new_cell_boundary.emplace_back(static_cast<index_t>(i) + 1, c);
    }
  }
  if (desc.new_cell_boundary.empty()) {
    fail(ErrorKind::algorithm,
         "hyperplane section of " + cell_name(p, ordinal) + " is empty");
  }

  if (desc.p == 1) {
    if (desc.new_cell_boundary.size() != 2) {
      fail(ErrorKind::algorithm,
           "hyperplane section of " + cell_name(p, ordinal) +
               " has " + std::to_string(desc.new_cell_boundary.size()) +
               " endpoints; refusing to split a non-convex cell");
    }
  } else {
    std::vector<index_t> support;
    for (const auto& [o, s] : desc.new_cell_boundary) support.push_back(o);
    const bool ok = desc.p == 2 ? walk_cycle(w, support).has_value()
                                : connected_support(w, desc.p - 1, support);
    if (!ok) {
      fail(ErrorKind::algorithm,
           "hyperplane section of " + cell_name(p, ordinal) +
               " is not one connected " + std::to_string(p - 1) +
               "-cell; refusing to split a non-convex cell");
    }
  }

  // Size oracles.
  desc.size_split = 0.5;
  desc.new_cell_size = 1.0;
  bool even_fallback = true;
  if (desc.p == 1) {
    const auto& [a_ord, a_sign] = desc.new_cell_boundary[0];
    const auto& [b_ord, b_sign] = desc.new_cell_boundary[1];
    const VertexGeometry& g = w.geometry();
    double len2 = 0.0;
    for (index_t axis = 0; axis < g.ambient; ++axis) {
      const double dx =
          g.coords[static_cast<std::size_t>((a_ord - 1) * g.ambient + axis)] -
          g.coords[static_cast<std::size_t>((b_ord - 1) * g.ambient + axis)];
      len2 += dx * dx;
    }
    desc.new_cell_size = std::sqrt(len2);

    // Fragment areas come from the polygon cycles of KEEP and NEW edges
    // closed by the chord. The chord does not exist yet, so each side is
    // walked as an open chain whose endpoints are the chord's; the closing
    // segment is implicit in the cyclic shoelace sum.
    auto side_area = [&](const std::vector<index_t>& side)
        -> std::optional<double> {
      std::map<index_t, std::vector<index_t>> adjacency;
      for (index_t e : side) {
        std::vector<index_t> ends;
        for (const auto& [row, sign] : faces_of(w, 1, e)) ends.push_back(row);
        if (ends.size() != 2) return std::nullopt;
        adjacency[ends[0]].push_back(ends[1]);
        adjacency[ends[1]].push_back(ends[0]);
      }
      // Chain endpoints are the chord endpoints; both must have degree 1.
      std::vector<index_t> odd;
      for (const auto& [v, nbrs] : adjacency) {
        if (nbrs.size() == 1) {
          odd.push_back(v);
        } else if (nbrs.size() != 2) {
          return std::nullopt;
        }
      }
      if (odd.size() != 2) return std::nullopt;
      std::vector<index_t> cycle;
      std::set<index_t> visited;
      index_t at = odd[0];
      while (true) {
        cycle.push_back(at);
        visited.insert(at);
        bool moved = false;
        for (index_t nb : adjacency[at]) {
          if (visited.count(nb) == 0) {
            at = nb;
            moved = true;
            break;
          }
        }
        if (!moved) break;
      }
      if (cycle.size() != adjacency.size() || cycle.back() != odd[1])
        return std::nullopt;
      return polygon_area(w, cycle);
    };
    const auto keep_area = side_area(desc.keep_side);
    const auto new_area = side_area(desc.new_side);
    if (keep_area && new_area && *keep_area + *new_area > 0.0) {
      const double share = *keep_area / (*keep_area + *new_area);
      // A share at an endpoint means a degenerate sliver; fall back to the
      // even split rather than producing a zero-measure fragment.
      if (share > 0.0 && share < 1.0) {
        desc.size_split = share;
        even_fallback = false;
      }
    }
  }
  if (even_fallback) {
    state.warnings.push_back(
        "no size oracle for the split of " + cell_name(p, ordinal) +
        "; measures divided evenly");
  }
  return desc;
}

void apply_split(PassState& state, int p, index_t ordinal) {
  const SplitDescriptor desc = synthesize_descriptor(state, p, ordinal);
  const index_t fragments_before = state.complex.count(p);
  const index_t interfaces_before = state.complex.count(p - 1);
  state.complex = make(state.complex, desc);

  // zeta at dimension p: route the split cell to its fragments with the
  // measure shares; everything else passes through.
  {
    std::vector<Entry> entries;
    for (index_t r = 0; r < fragments_before; ++r) {
      entries.push_back(
          {r, r, r == ordinal - 1 ? desc.size_split : 1.0});
    }
    entries.push_back({fragments_before, ordinal - 1, 1.0 - desc.size_split});
    const SparseMatrix expand = SparseMatrix::from_entries(
        fragments_before + 1, fragments_before, std::move(entries));
    state.zeta[static_cast<std::size_t>(p)] =
        multiply(expand, state.zeta[static_cast<std::size_t>(p)]);
  }
  // zeta at dimension p-1: the interface cell is new, so it gains a zero
  // row.
  {
    SparseMatrix& z = state.zeta[static_cast<std::size_t>(p) - 1];
    z = SparseMatrix::from_entries(interfaces_before + 1, z.cols(),
                                   std::vector<Entry>(z.entries()));
  }

  state.classes[static_cast<std::size_t>(p) - 1].push_back(0);
  if (p == 1) state.vertex_values.push_back(0.0);
}

}  // namespace

SplitResult split_complex(const CellComplex& k, const Hyperplane& plane,
                          double eps) {
  const std::vector<int> vertex_classes = classify_vertices(k, plane, eps);
  const int d = k.dimension();

  PassState state{k, {}, {}, {}, {}};
  state.classes.assign(static_cast<std::size_t>(d) + 1, {});
  state.classes[0] = vertex_classes;
  state.vertex_values.resize(static_cast<std::size_t>(k.count(0)));
  for (std::size_t i = 0; i < state.vertex_values.size(); ++i)
    state.vertex_values[i] = hyperplane_value(plane, k.geometry().coords, i);
  for (int p = 0; p <= d; ++p)
    state.zeta.push_back(identity(k.count(p)));

  Classification record;
  record.initial_c.assign(static_cast<std::size_t>(d) + 1, {});
  record.initial_a.assign(static_cast<std::size_t>(d) + 1, {});
  record.initial_c[0] = vertex_classes;

  for (int p = 1; p <= d; ++p) {
    const Propagation scan = propagate_classification(
        state.complex, p, state.classes[static_cast<std::size_t>(p) - 1]);
    record.initial_c[static_cast<std::size_t>(p)] = plain_sgn(scan.sums);
    record.initial_a[static_cast<std::size_t>(p)] = scan.counts;

    for (std::size_t i = 0; i < scan.sums.size(); ++i) {
      if (std::abs(scan.sums[i]) != scan.counts[i]) {
        apply_split(state, p, static_cast<index_t>(i) + 1);
      }
    }

    const Propagation rescan = propagate_classification(
        state.complex, p, state.classes[static_cast<std::size_t>(p) - 1]);
    state.classes[static_cast<std::size_t>(p)] = plain_sgn(rescan.sums);
  }

  record.final_c = state.classes;
  return SplitResult{std::move(state.complex),
                     SubdivisionMap{std::move(state.zeta)}, std::move(record),
                     std::move(state.warnings)};
}

SplitResult iterated_split(const CellComplex& k,
                           const std::vector<Hyperplane>& planes,
                           double eps) {
  if (planes.empty()) {
    fail(ErrorKind::algorithm, "iterated subdivision needs at least one plane");
  }
  SplitResult result = split_complex(k, planes.front(), eps);
  for (std::size_t i = 1; i < planes.size(); ++i) {
    SplitResult next = split_complex(result.complex, planes[i], eps);
    for (std::size_t p = 0; p < next.map.maps.size(); ++p) {
      next.map.maps[p] = multiply(next.map.maps[p], result.map.maps[p]);
    }
    next.warnings.insert(next.warnings.begin(), result.warnings.begin(),
                         result.warnings.end());
    result = std::move(next);
  }
  return result;
}

}  // namespace chaincx
