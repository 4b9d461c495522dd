#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chaincx/complex.hpp"
#include "chaincx/euler.hpp"
#include "chaincx/hasse.hpp"
#include "chaincx/laplace.hpp"

namespace chaincx {

/// Text formats. All of them share the same conventions: lines starting
/// with '%' are comments, blank lines are ignored, indices are 1-based, and
/// floating point values are printed with 17 significant digits so that
/// parse(emit(x)) reproduces x bit for bit. Emission is canonical, which
/// makes emit(parse(emit(x))) byte-identical to emit(x).
///
/// Complex document: a '#chaincx 1' version tag, '#dim d', '#counts k0 ..
/// kd', then one '#sizes p' line block per dimension, one '#incidence p'
/// block (k_p lines of signed face ordinals, a single 0 marking an empty
/// boundary) per dimension 1..d, and an optional '#coords ambient' block
/// with one line per vertex.
///
/// Matrix: a 'rows cols nnz' line followed by nnz 'row col value' lines in
/// row-major order.
///
/// Hasse matrix: a 'd n m' line, the row offset list, the column offset
/// list, then the matrix in the triplet format.
///
/// Gram hierarchy: '#gram p trivial', or '#gram p diagonal' followed by one
/// line of k_p weights, or '#gram p full' followed by a matrix block.
/// Unlisted dimensions stay trivial.
///
/// Refinement script: '#beta p' records, each holding 'target h', 't v',
/// 'keep ...', 'new ...' lines plus 'cell ...' and 'size v' for p >= 1 and
/// 'vertex x ...' for p = 0 with geometry.

CellComplex parse_complex(std::istream& in);
void emit_complex(std::ostream& out, const CellComplex& k);

SparseMatrix parse_matrix(std::istream& in);
void emit_matrix(std::ostream& out, const SparseMatrix& m);

HasseMatrix parse_hasse(std::istream& in);
void emit_hasse(std::ostream& out, const HasseMatrix& h);

/// Parses a Gram hierarchy and validates it against the complex it will
/// weight (dimension range and block sizes).
GramStructure parse_gram(std::istream& in, const CellComplex& k);

std::vector<SplitDescriptor> parse_script(std::istream& in);
void emit_script(std::ostream& out, const std::vector<SplitDescriptor>& steps);

/// File wrappers; failures to open or write surface as Error(io).
CellComplex load_complex(const std::string& path);
void save_complex(const std::string& path, const CellComplex& k);
GramStructure load_gram(const std::string& path, const CellComplex& k);
std::vector<SplitDescriptor> load_script(const std::string& path);

/// Decimal form of v with 17 significant digits: round-trips through
/// parsing to the identical double.
std::string format_value(double v);

}  // namespace chaincx
