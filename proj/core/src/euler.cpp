#include "chaincx/euler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace chaincx {

SparseMatrix add_column(const SparseMatrix& delta, const DenseVector& coeffs) {
  const DenseVector column = mat_vec(delta, coeffs);
  std::vector<Entry> entries(delta.entries());
  for (index_t r = 0; r < delta.rows(); ++r) {
    const double v = column[static_cast<std::size_t>(r)];
    if (v != 0.0) entries.push_back({r, delta.cols(), v});
  }
  return SparseMatrix::from_entries(delta.rows(), delta.cols() + 1,
                                    std::move(entries));
}

SparseMatrix add_row(const SparseMatrix& delta, const DenseVector& coeffs) {
  const DenseVector row = mat_vec(transpose(delta), coeffs);
  std::vector<Entry> entries(delta.entries());
  for (index_t c = 0; c < delta.cols(); ++c) {
    const double v = row[static_cast<std::size_t>(c)];
    if (v != 0.0) entries.push_back({delta.rows(), c, v});
  }
  return SparseMatrix::from_entries(delta.rows() + 1, delta.cols(),
                                    std::move(entries));
}

SparseMatrix split_row_column(const SparseMatrix& delta,
                              const std::array<SparseMatrix, 3>& s,
                              const std::array<SparseMatrix, 3>& t) {
  for (int i = 1; i < 3; ++i) {
    if (s[static_cast<std::size_t>(i)].rows() != s[0].rows() ||
        s[static_cast<std::size_t>(i)].cols() != s[0].cols() ||
        t[static_cast<std::size_t>(i)].rows() != t[0].rows() ||
        t[static_cast<std::size_t>(i)].cols() != t[0].cols()) {
      fail(ErrorKind::algorithm,
           "split_row_column needs uniformly shaped transform families");
    }
  }
  SparseMatrix sum(s[0].rows(), t[0].cols());
  for (int i = 0; i < 3; ++i) {
    sum = add(sum,
              multiply(multiply(s[static_cast<std::size_t>(i)], delta),
                       t[static_cast<std::size_t>(i)]));
  }
  return sum;
}

namespace {

std::string cell_name(int p, index_t ordinal) {
  return std::to_string(p) + "-cell " + std::to_string(ordinal);
}

/// Faces of the target (p+1)-cell as 0-based row -> sign, read off the
/// signed incidence column.
std::map<index_t, double> incident_faces(const CellComplex& k,
                                         const SplitDescriptor& desc) {
  std::map<index_t, double> faces;
  for (const Entry& e : k.incidence(desc.p + 1).entries()) {
    if (e.col == desc.target - 1) faces[e.row] = e.value;
  }
  return faces;
}

void validate_descriptor(const CellComplex& k, const SplitDescriptor& desc) {
  if (desc.p < 0 || desc.p + 1 > k.dimension()) {
    fail(ErrorKind::algorithm,
         "cannot split a " + std::to_string(desc.p + 1) + "-cell in a " +
             std::to_string(k.dimension()) + "-complex");
  }
  if (desc.target < 1 || desc.target > k.count(desc.p + 1)) {
    fail(ErrorKind::algorithm,
         "no " + cell_name(desc.p + 1, desc.target) + " to split");
  }
  if (!(desc.size_split > 0.0) || !(desc.size_split < 1.0)) {
    fail(ErrorKind::algorithm,
         "size split must lie strictly inside (0, 1)");
  }
  if (desc.p > 0 &&
      (!(desc.new_cell_size > 0.0) || !std::isfinite(desc.new_cell_size))) {
    fail(ErrorKind::algorithm, "new cell size must be positive and finite");
  }

  const std::map<index_t, double> faces = incident_faces(k, desc);
  if (desc.keep_side.empty() || desc.new_side.empty()) {
    fail(ErrorKind::algorithm,
         "both sides of the split of " + cell_name(desc.p + 1, desc.target) +
             " must receive at least one face");
  }
  std::set<index_t> seen;
  for (const auto* side : {&desc.keep_side, &desc.new_side}) {
    for (index_t ordinal : *side) {
      if (faces.find(ordinal - 1) == faces.end()) {
        fail(ErrorKind::algorithm,
             cell_name(desc.p, ordinal) + " is not a face of " +
                 cell_name(desc.p + 1, desc.target));
      }
      if (!seen.insert(ordinal).second) {
        fail(ErrorKind::algorithm,
             cell_name(desc.p, ordinal) + " assigned to both sides");
      }
    }
  }
  if (seen.size() != faces.size()) {
    fail(ErrorKind::algorithm,
         "split of " + cell_name(desc.p + 1, desc.target) + " covers " +
             std::to_string(seen.size()) + " of " +
             std::to_string(faces.size()) + " faces");
  }

  if (desc.p == 0) {
    if (!desc.new_cell_boundary.empty()) {
      fail(ErrorKind::algorithm, "a new 0-cell has no boundary");
    }
    if (k.has_geometry()) {
      if (!desc.new_vertex ||
          static_cast<index_t>(desc.new_vertex->size()) !=
              k.geometry().ambient) {
        fail(ErrorKind::algorithm,
             "splitting a 1-cell of a complex with coordinates needs a new "
             "vertex position of ambient dimension " +
                 std::to_string(k.geometry().ambient));
      }
      for (double x : *desc.new_vertex) {
        if (!std::isfinite(x)) {
          fail(ErrorKind::algorithm, "new vertex position must be finite");
        }
      }
    } else if (desc.new_vertex) {
      fail(ErrorKind::algorithm,
           "complex carries no coordinates, so the descriptor must not");
    }
  } else {
    if (desc.new_vertex) {
      fail(ErrorKind::algorithm,
           "only a new 0-cell takes a vertex position");
    }
    if (desc.new_cell_boundary.empty()) {
      fail(ErrorKind::algorithm,
           "a new " + std::to_string(desc.p) + "-cell needs a boundary");
    }
    std::set<index_t> boundary_seen;
    for (const auto& [ordinal, sign] : desc.new_cell_boundary) {
      if (ordinal < 1 || ordinal > k.count(desc.p - 1)) {
        fail(ErrorKind::algorithm,
             "no " + cell_name(desc.p - 1, ordinal) +
                 " for the new cell boundary");
      }
      if (sign != 1 && sign != -1) {
        fail(ErrorKind::algorithm, "boundary signs must be +1 or -1");
      }
      if (!boundary_seen.insert(ordinal).second) {
        fail(ErrorKind::algorithm,
             cell_name(desc.p - 1, ordinal) +
                 " repeated in the new cell boundary");
      }
    }
  }
}

}  // namespace

CellComplex make(const CellComplex& k, const SplitDescriptor& desc) {
  validate_descriptor(k, desc);
  const int p = desc.p;
  const int d = k.dimension();
  const index_t h0 = desc.target - 1;
  const double t = desc.size_split;
  const std::set<index_t> new_set(desc.new_side.begin(), desc.new_side.end());

  std::vector<index_t> counts;
  std::vector<std::vector<double>> sizes;
  for (int q = 0; q <= d; ++q) {
    counts.push_back(k.count(q));
    sizes.push_back(k.sizes(q));
  }
  counts[static_cast<std::size_t>(p)] += 1;
  counts[static_cast<std::size_t>(p) + 1] += 1;
  sizes[static_cast<std::size_t>(p)].push_back(p == 0 ? 1.0
                                                      : desc.new_cell_size);
  auto& split_sizes = sizes[static_cast<std::size_t>(p) + 1];
  const double mu_target = split_sizes[static_cast<std::size_t>(h0)];
  split_sizes[static_cast<std::size_t>(h0)] = t * mu_target;
  split_sizes.push_back((1.0 - t) * mu_target);

  std::vector<SparseMatrix> incidence;
  for (int q = 1; q <= d; ++q) {
    const SparseMatrix& b = k.incidence(q);
    std::vector<Entry> entries;
    index_t rows = b.rows();
    index_t cols = b.cols();
    if (q == p) {
      // The new p-cell appends its boundary as one extra column.
      entries = b.entries();
      for (const auto& [ordinal, sign] : desc.new_cell_boundary) {
        entries.push_back({ordinal - 1, cols, static_cast<double>(sign)});
      }
      cols += 1;
    } else if (q == p + 1) {
      // Split the target column between the fragments and wire both to the
      // new p-cell, KEEP with +1 and NEW with -1.
      for (const Entry& e : b.entries()) {
        if (e.col != h0) {
          entries.push_back(e);
        } else if (new_set.count(e.row + 1) != 0) {
          entries.push_back({e.row, cols, e.value});
        } else {
          entries.push_back(e);
        }
      }
      entries.push_back({rows, h0, 1.0});
      entries.push_back({rows, cols, -1.0});
      rows += 1;
      cols += 1;
    } else if (q == p + 2) {
      // Both fragments sit in an enclosing cell exactly as the target did.
      entries = b.entries();
      for (const Entry& e : b.entries()) {
        if (e.row == h0) entries.push_back({rows, e.col, e.value});
      }
      rows += 1;
    } else {
      entries = b.entries();
    }
    incidence.push_back(
        SparseMatrix::from_entries(rows, cols, std::move(entries)));
  }

  std::optional<VertexGeometry> geometry;
  if (k.has_geometry()) {
    geometry = k.geometry();
    if (p == 0) {
      geometry->coords.insert(geometry->coords.end(),
                              desc.new_vertex->begin(),
                              desc.new_vertex->end());
    }
  }

  CellComplex result(d, std::move(counts), std::move(sizes),
                     std::move(incidence), std::move(geometry));
  const ValidationReport report = validate(result);
  if (!report.valid) {
    fail(ErrorKind::algorithm,
         "refinement of " + cell_name(p + 1, desc.target) +
             " rejected: " + report.violations.front());
  }
  return result;
}

namespace {

/// Row/column transform families realizing the measured surgery on
/// [delta_p]: row h splits into the KEEP row (in place) and the NEW row
/// (appended), and the new p-cell appends one column wired to both
/// fragments. The appended column is expressed through a reference face,
/// following the published form of these transforms.
struct SurgeryFamilies {
  std::array<SparseMatrix, 3> s;
  std::array<SparseMatrix, 3> t;
};

SurgeryFamilies build_surgery(const CellComplex& k,
                              const SplitDescriptor& desc) {
  const index_t m = k.count(desc.p + 1);
  const index_t n = k.count(desc.p);
  const index_t h0 = desc.target - 1;
  const double t = desc.size_split;
  const double mu_new = desc.p == 0 ? 1.0 : desc.new_cell_size;
  const std::map<index_t, double> faces = incident_faces(k, desc);

  SurgeryFamilies f;
  f.s[0] = SparseMatrix::from_entries(m + 1, m, {{h0, h0, 1.0}});
  f.s[1] = SparseMatrix::from_entries(m + 1, m, {{m, h0, 1.0}});
  {
    std::vector<Entry> keep_others;
    for (index_t r = 0; r < m; ++r) {
      if (r != h0) keep_others.push_back({r, r, 1.0});
    }
    f.s[2] = SparseMatrix::from_entries(m + 1, m, std::move(keep_others));
  }

  // Reference face for synthesizing the appended column: the measured entry
  // delta[h0, ref] is s_ref * mu_ref / mu_target, so one scaled copy of
  // column ref produces any multiple of mu_new / mu_target.
  const index_t ref = desc.keep_side.front() - 1;
  const double s_ref = faces.at(ref);
  const double mu_ref = k.sizes(desc.p)[static_cast<std::size_t>(ref)];

  std::vector<Entry> t1;
  for (index_t ordinal : desc.keep_side) {
    t1.push_back({ordinal - 1, ordinal - 1, 1.0 / t});
  }
  t1.push_back({ref, n, mu_new / (t * s_ref * mu_ref)});
  f.t[0] = SparseMatrix::from_entries(n, n + 1, std::move(t1));

  std::vector<Entry> t2;
  for (index_t ordinal : desc.new_side) {
    t2.push_back({ordinal - 1, ordinal - 1, 1.0 / (1.0 - t)});
  }
  t2.push_back({ref, n, -mu_new / ((1.0 - t) * s_ref * mu_ref)});
  f.t[1] = SparseMatrix::from_entries(n, n + 1, std::move(t2));

  std::vector<Entry> t3;
  for (index_t c = 0; c < n; ++c) t3.push_back({c, c, 1.0});
  f.t[2] = SparseMatrix::from_entries(n, n + 1, std::move(t3));
  return f;
}

/// Column refinement for [delta_{p+1}]: identity on the untouched
/// (p+1)-cells, with the target column split into measure shares t and
/// 1 - t for the KEEP and NEW fragments.
SparseMatrix build_column_refinement(index_t m, index_t h0, double t) {
  std::vector<Entry> entries;
  for (index_t c = 0; c < m; ++c) {
    entries.push_back({c, c, c == h0 ? t : 1.0});
  }
  entries.push_back({h0, m, 1.0 - t});
  return SparseMatrix::from_entries(m, m + 1, std::move(entries));
}

/// Measured coboundary row of the new p-cell against the old (p-1)-cells.
DenseVector new_cell_row(const CellComplex& k, const SplitDescriptor& desc) {
  DenseVector row(static_cast<std::size_t>(k.count(desc.p - 1)), 0.0);
  const double mu_new = desc.new_cell_size;
  for (const auto& [ordinal, sign] : desc.new_cell_boundary) {
    row[static_cast<std::size_t>(ordinal - 1)] =
        sign * k.sizes(desc.p - 1)[static_cast<std::size_t>(ordinal - 1)] /
        mu_new;
  }
  return row;
}

SparseMatrix append_row_values(const SparseMatrix& delta,
                               const DenseVector& row) {
  std::vector<Entry> entries(delta.entries());
  for (index_t c = 0; c < delta.cols(); ++c) {
    const double v = row[static_cast<std::size_t>(c)];
    if (v != 0.0) entries.push_back({delta.rows(), c, v});
  }
  return SparseMatrix::from_entries(delta.rows() + 1, delta.cols(),
                                    std::move(entries));
}

}  // namespace

std::pair<HasseMatrix, CellComplex> hasse_make(const HasseMatrix& h,
                                               const CellComplex& k,
                                               const SplitDescriptor& desc) {
  const int d = k.dimension();
  if (h.dimension != d) {
    fail(ErrorKind::algorithm,
         "hasse matrix dimension does not match the complex");
  }
  for (int p = 1, band = 1; p <= d; p += 2, ++band) {
    if (static_cast<std::size_t>(band) >= h.row_offsets.size() ||
        h.row_offsets[static_cast<std::size_t>(band)] -
                h.row_offsets[static_cast<std::size_t>(band) - 1] !=
            k.count(p)) {
      fail(ErrorKind::algorithm,
           "hasse matrix row bands do not match the complex");
    }
  }
  for (int p = 0, band = 1; p <= d; p += 2, ++band) {
    if (static_cast<std::size_t>(band) >= h.col_offsets.size() ||
        h.col_offsets[static_cast<std::size_t>(band)] -
                h.col_offsets[static_cast<std::size_t>(band) - 1] !=
            k.count(p)) {
      fail(ErrorKind::algorithm,
           "hasse matrix column bands do not match the complex");
    }
  }

  CellComplex refined = make(k, desc);
  const int p = desc.p;

  // Collect the current blocks: diagonal slots hold [delta_{2i}], upper
  // slots hold transpose([delta_{2i+1}]).
  std::map<std::pair<int, int>, SparseMatrix> blocks;
  for (int i = 0; 2 * i + 1 <= d; ++i) {
    blocks[{i, i}] = hasse_block(h, i, i);
    if (2 * i + 2 <= d) blocks[{i, i + 1}] = hasse_block(h, i, i + 1);
  }

  // Transform the up-to-three coboundaries an order-p make operator
  // touches. A block storing the transpose is transposed into coboundary
  // orientation, transformed, and transposed back; the surgery entries are
  // copies and single scalings, so the round trip is exact.
  auto transform_delta = [&](int q, auto&& op) {
    if (q < 0 || q + 1 > d) return;
    const bool stored_transposed = q % 2 != 0;
    const std::pair<int, int> slot =
        stored_transposed ? std::pair<int, int>{(q - 1) / 2, (q - 1) / 2 + 1}
                          : std::pair<int, int>{q / 2, q / 2};
    SparseMatrix delta =
        stored_transposed ? transpose(blocks.at(slot)) : blocks.at(slot);
    delta = op(std::move(delta));
    blocks[slot] = stored_transposed ? transpose(delta) : std::move(delta);
  };

  transform_delta(p, [&](SparseMatrix delta) {
    const SurgeryFamilies f = build_surgery(k, desc);
    return split_row_column(delta, f.s, f.t);
  });
  transform_delta(p + 1, [&](SparseMatrix delta) {
    return multiply(delta,
                    build_column_refinement(k.count(p + 1), desc.target - 1,
                                            desc.size_split));
  });
  if (p >= 1) {
    transform_delta(p - 1, [&](SparseMatrix delta) {
      return append_row_values(delta, new_cell_row(k, desc));
    });
  }

  std::vector<index_t> row_sizes;
  for (int q = 1; q <= d; q += 2) row_sizes.push_back(refined.count(q));
  std::vector<index_t> col_sizes;
  for (int q = 0; q <= d; q += 2) col_sizes.push_back(refined.count(q));

  HasseMatrix out;
  out.dimension = d;
  out.matrix = block_compose(blocks, row_sizes, col_sizes);
  out.row_offsets.assign(1, 0);
  for (index_t s : row_sizes)
    out.row_offsets.push_back(out.row_offsets.back() + s);
  out.col_offsets.assign(1, 0);
  for (index_t s : col_sizes)
    out.col_offsets.push_back(out.col_offsets.back() + s);
  return {std::move(out), std::move(refined)};
}

}  // namespace chaincx
