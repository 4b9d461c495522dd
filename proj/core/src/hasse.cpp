#include "chaincx/hasse.hpp"

#include <map>
#include <string>
#include <utility>

namespace chaincx {

HasseMatrix assemble_hasse(const CellComplex& k) {
  const int d = k.dimension();
  std::vector<index_t> row_sizes;  // k1, k3, ...
  for (int p = 1; p <= d; p += 2) row_sizes.push_back(k.count(p));
  std::vector<index_t> col_sizes;  // k0, k2, ...
  for (int p = 0; p <= d; p += 2) col_sizes.push_back(k.count(p));

  std::map<std::pair<int, int>, SparseMatrix> blocks;
  for (int i = 0; 2 * i + 1 <= d; ++i) {
    blocks[{i, i}] = k.coboundary_matrix(2 * i);
    // transpose([delta_{2i+1}]) is [d_{2i+2}], with identical entries.
    if (2 * i + 2 <= d) blocks[{i, i + 1}] = k.boundary_matrix(2 * i + 2);
  }

  HasseMatrix h;
  h.dimension = d;
  h.matrix = block_compose(blocks, row_sizes, col_sizes);
  h.row_offsets.assign(1, 0);
  for (index_t s : row_sizes) h.row_offsets.push_back(h.row_offsets.back() + s);
  h.col_offsets.assign(1, 0);
  for (index_t s : col_sizes) h.col_offsets.push_back(h.col_offsets.back() + s);
  return h;
}

HasseMatrix dual_hasse(const HasseMatrix& h) {
  HasseMatrix dual;
  dual.dimension = h.dimension;
  dual.matrix = transpose(h.matrix);
  dual.row_offsets = h.col_offsets;
  dual.col_offsets = h.row_offsets;
  return dual;
}

SparseMatrix hasse_block(const HasseMatrix& h, int row_band, int col_band) {
  if (row_band < 0 ||
      static_cast<std::size_t>(row_band) + 1 >= h.row_offsets.size()) {
    fail(ErrorKind::algorithm,
         "no row band " + std::to_string(row_band));
  }
  if (col_band < 0 ||
      static_cast<std::size_t>(col_band) + 1 >= h.col_offsets.size()) {
    fail(ErrorKind::algorithm,
         "no column band " + std::to_string(col_band));
  }
  const auto r = static_cast<std::size_t>(row_band);
  const auto c = static_cast<std::size_t>(col_band);
  return submatrix(h.matrix, h.row_offsets[r], h.row_offsets[r + 1],
                   h.col_offsets[c], h.col_offsets[c + 1]);
}

std::int64_t euler_characteristic(const HasseMatrix& h) {
  return h.col_offsets.back() - h.row_offsets.back();
}

std::int64_t euler_characteristic(const CellComplex& k) {
  std::int64_t chi = 0;
  for (int p = 0; p <= k.dimension(); ++p)
    chi += (p % 2 == 0) ? k.count(p) : -k.count(p);
  return chi;
}

std::int64_t euler_union(std::int64_t chi_m, std::int64_t chi_n,
                         std::int64_t chi_intersection) {
  return chi_m + chi_n - chi_intersection;
}

std::int64_t euler_product(std::int64_t chi_m, std::int64_t chi_n) {
  return chi_m * chi_n;
}

}  // namespace chaincx
