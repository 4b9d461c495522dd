#include "chaincx/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace chaincx {

namespace {

/// Reads logical lines: comments ('%') and blank lines are skipped, line
/// numbers are tracked for error messages.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (pushed_) {
      line = buffer_;
      pushed_ = false;
      return true;
    }
    std::string raw;
    while (std::getline(in_, raw)) {
      ++number_;
      const std::size_t start = raw.find_first_not_of(" \t\r");
      if (start == std::string::npos || raw[start] == '%') continue;
      const std::size_t end = raw.find_last_not_of(" \t\r");
      line = raw.substr(start, end - start + 1);
      buffer_ = line;
      return true;
    }
    return false;
  }

  void push_back() { pushed_ = true; }

  [[noreturn]] void error(const std::string& message) const {
    fail(ErrorKind::parse, "line " + std::to_string(number_) + ": " + message);
  }

 private:
  std::istream& in_;
  std::string buffer_;
  int number_ = 0;
  bool pushed_ = false;
};

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) out.push_back(token);
  return out;
}

long long parse_integer(const LineReader& reader, const std::string& token) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    reader.error("expected an integer, got '" + token + "'");
  }
  return value;
}

double parse_double(const LineReader& reader, const std::string& token) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    reader.error("expected a number, got '" + token + "'");
  }
  return value;
}

std::string expect_line(LineReader& reader, const char* what) {
  std::string line;
  if (!reader.next(line)) {
    fail(ErrorKind::parse, std::string("unexpected end of input, expected ") +
                               what);
  }
  return line;
}

}  // namespace

std::string format_value(double v) {
  std::array<char, 64> buffer;
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), v,
                    std::chars_format::general, 17);
  return std::string(buffer.data(), ptr);
}

CellComplex parse_complex(std::istream& in) {
  LineReader reader(in);

  auto header = tokens_of(expect_line(reader, "'#chaincx 1'"));
  if (header.size() != 2 || header[0] != "#chaincx" || header[1] != "1") {
    reader.error("expected the version tag '#chaincx 1'");
  }
  auto dim_line = tokens_of(expect_line(reader, "'#dim d'"));
  if (dim_line.size() != 2 || dim_line[0] != "#dim") {
    reader.error("expected '#dim d'");
  }
  const long long d = parse_integer(reader, dim_line[1]);
  if (d < 0) reader.error("dimension must be >= 0");

  auto counts_line = tokens_of(expect_line(reader, "'#counts k0 .. kd'"));
  if (counts_line.empty() || counts_line[0] != "#counts") {
    reader.error("expected '#counts k0 .. kd'");
  }
  if (static_cast<long long>(counts_line.size()) != d + 2) {
    reader.error("expected " + std::to_string(d + 1) + " cell counts");
  }
  std::vector<index_t> counts;
  for (std::size_t i = 1; i < counts_line.size(); ++i) {
    const long long c = parse_integer(reader, counts_line[i]);
    if (c < 0) reader.error("cell counts must be >= 0");
    counts.push_back(c);
  }

  std::vector<std::vector<double>> sizes(static_cast<std::size_t>(d) + 1);
  for (std::size_t p = 0; p <= static_cast<std::size_t>(d); ++p) {
    sizes[p].assign(static_cast<std::size_t>(counts[p]), 1.0);
  }
  std::vector<bool> have_incidence(static_cast<std::size_t>(d) + 1, false);
  std::vector<SparseMatrix> incidence;
  for (long long p = 1; p <= d; ++p) {
    incidence.emplace_back(counts[static_cast<std::size_t>(p) - 1],
                           counts[static_cast<std::size_t>(p)]);
  }
  std::optional<VertexGeometry> geometry;

  std::string line;
  while (reader.next(line)) {
    auto header_tokens = tokens_of(line);
    const std::string& section = header_tokens[0];
    if (section == "#sizes") {
      if (header_tokens.size() != 2) reader.error("expected '#sizes p'");
      const long long p = parse_integer(reader, header_tokens[1]);
      if (p < 0 || p > d) reader.error("no dimension " + std::to_string(p));
      const index_t kp = counts[static_cast<std::size_t>(p)];
      if (kp == 0) continue;
      auto values = tokens_of(expect_line(reader, "size values"));
      if (static_cast<index_t>(values.size()) != kp) {
        reader.error("expected " + std::to_string(kp) + " sizes, got " +
                     std::to_string(values.size()));
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        sizes[static_cast<std::size_t>(p)][i] = parse_double(reader, values[i]);
      }
    } else if (section == "#incidence") {
      if (header_tokens.size() != 2) reader.error("expected '#incidence p'");
      const long long p = parse_integer(reader, header_tokens[1]);
      if (p < 1 || p > d) {
        reader.error("incidence dimension must lie in 1.." + std::to_string(d));
      }
      have_incidence[static_cast<std::size_t>(p)] = true;
      const index_t kp = counts[static_cast<std::size_t>(p)];
      const index_t faces = counts[static_cast<std::size_t>(p) - 1];
      std::vector<Entry> entries;
      for (index_t cell = 0; cell < kp; ++cell) {
        auto faces_line = tokens_of(expect_line(reader, "a face list"));
        if (faces_line.size() == 1 && faces_line[0] == "0") continue;
        for (const std::string& token : faces_line) {
          const long long signed_ordinal = parse_integer(reader, token);
          const long long ordinal =
              signed_ordinal < 0 ? -signed_ordinal : signed_ordinal;
          if (ordinal < 1 || ordinal > faces) {
            reader.error("face ordinal " + std::to_string(signed_ordinal) +
                         " outside 1.." + std::to_string(faces));
          }
          entries.push_back(
              {ordinal - 1, cell, signed_ordinal < 0 ? -1.0 : 1.0});
        }
      }
      incidence[static_cast<std::size_t>(p) - 1] =
          SparseMatrix::from_entries(faces, kp, std::move(entries));
    } else if (section == "#coords") {
      if (header_tokens.size() != 2) reader.error("expected '#coords ambient'");
      const long long ambient = parse_integer(reader, header_tokens[1]);
      if (ambient < 1) reader.error("ambient dimension must be >= 1");
      VertexGeometry g;
      g.ambient = ambient;
      for (index_t vertex = 0; vertex < counts[0]; ++vertex) {
        auto coord_line = tokens_of(expect_line(reader, "vertex coordinates"));
        if (static_cast<long long>(coord_line.size()) != ambient) {
          reader.error("expected " + std::to_string(ambient) +
                       " coordinates, got " +
                       std::to_string(coord_line.size()));
        }
        for (const std::string& token : coord_line) {
          g.coords.push_back(parse_double(reader, token));
        }
      }
      geometry = std::move(g);
    } else {
      reader.error("unknown section '" + section + "'");
    }
  }
  for (long long p = 1; p <= d; ++p) {
    if (counts[static_cast<std::size_t>(p)] > 0 &&
        !have_incidence[static_cast<std::size_t>(p)]) {
      fail(ErrorKind::parse,
           "missing '#incidence " + std::to_string(p) + "' section");
    }
  }
  return CellComplex(static_cast<int>(d), std::move(counts), std::move(sizes),
                     std::move(incidence), std::move(geometry));
}

void emit_complex(std::ostream& out, const CellComplex& k) {
  const int d = k.dimension();
  out << "#chaincx 1\n#dim " << d << "\n#counts";
  for (int p = 0; p <= d; ++p) out << ' ' << k.count(p);
  out << '\n';
  for (int p = 0; p <= d; ++p) {
    out << "#sizes " << p << '\n';
    const auto& sizes = k.sizes(p);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      out << (i == 0 ? "" : " ") << format_value(sizes[i]);
    }
    if (!sizes.empty()) out << '\n';
  }
  for (int p = 1; p <= d; ++p) {
    out << "#incidence " << p << '\n';
    const SparseMatrix& b = k.incidence(p);
    // One line per cell; entries are already (row, col) sorted, so gather
    // per column.
    std::vector<std::vector<std::pair<index_t, double>>> columns(
        static_cast<std::size_t>(b.cols()));
    for (const Entry& e : b.entries()) {
      columns[static_cast<std::size_t>(e.col)].emplace_back(e.row, e.value);
    }
    for (const auto& column : columns) {
      if (column.empty()) {
        out << "0\n";
        continue;
      }
      for (std::size_t i = 0; i < column.size(); ++i) {
        if (i > 0) out << ' ';
        out << (column[i].second < 0.0 ? -(column[i].first + 1)
                                       : column[i].first + 1);
      }
      out << '\n';
    }
  }
  if (k.has_geometry()) {
    const VertexGeometry& g = k.geometry();
    out << "#coords " << g.ambient << '\n';
    for (index_t v = 0; v < k.count(0); ++v) {
      for (index_t axis = 0; axis < g.ambient; ++axis) {
        if (axis > 0) out << ' ';
        out << format_value(
            g.coords[static_cast<std::size_t>(v * g.ambient + axis)]);
      }
      out << '\n';
    }
  }
}

namespace {

SparseMatrix parse_matrix_block(LineReader& reader) {
  auto shape = tokens_of(expect_line(reader, "'rows cols nnz'"));
  if (shape.size() != 3) reader.error("expected 'rows cols nnz'");
  const long long rows = parse_integer(reader, shape[0]);
  const long long cols = parse_integer(reader, shape[1]);
  const long long nnz = parse_integer(reader, shape[2]);
  if (rows < 0 || cols < 0 || nnz < 0) {
    reader.error("matrix header values must be >= 0");
  }
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  for (long long i = 0; i < nnz; ++i) {
    auto entry = tokens_of(expect_line(reader, "'row col value'"));
    if (entry.size() != 3) reader.error("expected 'row col value'");
    const long long r = parse_integer(reader, entry[0]);
    const long long c = parse_integer(reader, entry[1]);
    const double v = parse_double(reader, entry[2]);
    if (r < 1 || r > rows || c < 1 || c > cols) {
      reader.error("entry (" + std::to_string(r) + ", " + std::to_string(c) +
                   ") outside " + std::to_string(rows) + "x" +
                   std::to_string(cols));
    }
    entries.push_back({r - 1, c - 1, v});
  }
  return SparseMatrix::from_entries(rows, cols, std::move(entries));
}

void emit_matrix_block(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (const Entry& e : m.entries()) {
    out << e.row + 1 << ' ' << e.col + 1 << ' ' << format_value(e.value)
        << '\n';
  }
}

}  // namespace

SparseMatrix parse_matrix(std::istream& in) {
  LineReader reader(in);
  return parse_matrix_block(reader);
}

void emit_matrix(std::ostream& out, const SparseMatrix& m) {
  emit_matrix_block(out, m);
}

HasseMatrix parse_hasse(std::istream& in) {
  LineReader reader(in);
  auto header = tokens_of(expect_line(reader, "'d n m'"));
  if (header.size() != 3) reader.error("expected 'd n m'");
  HasseMatrix h;
  h.dimension = static_cast<int>(parse_integer(reader, header[0]));
  const long long n = parse_integer(reader, header[1]);
  const long long m = parse_integer(reader, header[2]);

  const auto read_offsets = [&](const char* what) {
    auto line = tokens_of(expect_line(reader, what));
    std::vector<index_t> offsets;
    for (const std::string& token : line) {
      offsets.push_back(parse_integer(reader, token));
    }
    if (offsets.empty() || offsets.front() != 0) {
      reader.error(std::string(what) + " must start at 0");
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) {
      if (offsets[i] < offsets[i - 1]) {
        reader.error(std::string(what) + " must be nondecreasing");
      }
    }
    return offsets;
  };
  h.row_offsets = read_offsets("row offsets");
  h.col_offsets = read_offsets("column offsets");
  if (h.row_offsets.back() != n || h.col_offsets.back() != m) {
    reader.error("offset totals do not match 'd n m'");
  }
  h.matrix = parse_matrix_block(reader);
  if (h.matrix.rows() != n || h.matrix.cols() != m) {
    reader.error("matrix shape does not match 'd n m'");
  }
  return h;
}

void emit_hasse(std::ostream& out, const HasseMatrix& h) {
  out << h.dimension << ' ' << h.row_offsets.back() << ' '
      << h.col_offsets.back() << '\n';
  for (std::size_t i = 0; i < h.row_offsets.size(); ++i) {
    out << (i == 0 ? "" : " ") << h.row_offsets[i];
  }
  out << '\n';
  for (std::size_t i = 0; i < h.col_offsets.size(); ++i) {
    out << (i == 0 ? "" : " ") << h.col_offsets[i];
  }
  out << '\n';
  emit_matrix_block(out, h.matrix);
}

GramStructure parse_gram(std::istream& in, const CellComplex& k) {
  LineReader reader(in);
  GramStructure g = GramStructure::trivial(k.dimension());
  std::string line;
  while (reader.next(line)) {
    auto header = tokens_of(line);
    if (header.size() != 3 || header[0] != "#gram") {
      reader.error("expected '#gram p kind'");
    }
    const long long p = parse_integer(reader, header[1]);
    if (p < 0 || p > k.dimension()) {
      reader.error("no dimension " + std::to_string(p) + " in a " +
                   std::to_string(k.dimension()) + "-complex");
    }
    const index_t n = k.count(static_cast<int>(p));
    if (header[2] == "trivial") {
      continue;
    }
    if (header[2] == "diagonal") {
      auto values = tokens_of(expect_line(reader, "diagonal weights"));
      if (static_cast<index_t>(values.size()) != n) {
        reader.error("expected " + std::to_string(n) + " weights, got " +
                     std::to_string(values.size()));
      }
      DenseVector weights;
      for (const std::string& token : values) {
        weights.push_back(parse_double(reader, token));
      }
      g.set_diagonal(static_cast<int>(p), std::move(weights));
    } else if (header[2] == "full") {
      SparseMatrix m = parse_matrix_block(reader);
      if (m.rows() != n || m.cols() != n) {
        reader.error("full Gram block must be " + std::to_string(n) + "x" +
                     std::to_string(n));
      }
      g.set_full(static_cast<int>(p), std::move(m));
    } else {
      reader.error("unknown Gram kind '" + header[2] + "'");
    }
  }
  return g;
}

std::vector<SplitDescriptor> parse_script(std::istream& in) {
  LineReader reader(in);
  std::vector<SplitDescriptor> steps;
  std::string line;
  while (reader.next(line)) {
    auto header = tokens_of(line);
    if (header.size() != 2 || header[0] != "#beta") {
      reader.error("expected '#beta p'");
    }
    SplitDescriptor desc;
    desc.p = static_cast<int>(parse_integer(reader, header[1]));
    if (desc.p < 0) reader.error("operator order must be >= 0");
    bool have_target = false;
    bool have_split = false;
    while (reader.next(line)) {
      auto record = tokens_of(line);
      const std::string& key = record[0];
      if (key == "#beta") {
        reader.push_back();
        break;
      }
      if (key == "target" && record.size() == 2) {
        desc.target = parse_integer(reader, record[1]);
        have_target = true;
      } else if (key == "t" && record.size() == 2) {
        desc.size_split = parse_double(reader, record[1]);
        have_split = true;
      } else if (key == "keep" && record.size() >= 2) {
        for (std::size_t i = 1; i < record.size(); ++i) {
          desc.keep_side.push_back(parse_integer(reader, record[i]));
        }
      } else if (key == "new" && record.size() >= 2) {
        for (std::size_t i = 1; i < record.size(); ++i) {
          desc.new_side.push_back(parse_integer(reader, record[i]));
        }
      } else if (key == "cell" && record.size() >= 2) {
        for (std::size_t i = 1; i < record.size(); ++i) {
          const long long signed_ordinal = parse_integer(reader, record[i]);
          if (signed_ordinal == 0) reader.error("cell ordinals are nonzero");
          desc.new_cell_boundary.emplace_back(
              signed_ordinal < 0 ? -signed_ordinal : signed_ordinal,
              signed_ordinal < 0 ? -1 : 1);
        }
      } else if (key == "size" && record.size() == 2) {
        desc.new_cell_size = parse_double(reader, record[1]);
      } else if (key == "vertex" && record.size() >= 2) {
        std::vector<double> position;
        for (std::size_t i = 1; i < record.size(); ++i) {
          position.push_back(parse_double(reader, record[i]));
        }
        desc.new_vertex = std::move(position);
      } else {
        reader.error("unknown record '" + key + "'");
      }
    }
    if (!have_target || !have_split || desc.keep_side.empty() ||
        desc.new_side.empty()) {
      fail(ErrorKind::parse,
           "a '#beta' record needs target, t, keep and new lines");
    }
    steps.push_back(std::move(desc));
  }
  return steps;
}

void emit_script(std::ostream& out,
                 const std::vector<SplitDescriptor>& steps) {
  for (const SplitDescriptor& desc : steps) {
    out << "#beta " << desc.p << '\n';
    out << "target " << desc.target << '\n';
    out << "t " << format_value(desc.size_split) << '\n';
    out << "keep";
    for (index_t o : desc.keep_side) out << ' ' << o;
    out << "\nnew";
    for (index_t o : desc.new_side) out << ' ' << o;
    out << '\n';
    if (desc.p >= 1) {
      out << "cell";
      for (const auto& [ordinal, sign] : desc.new_cell_boundary) {
        out << ' ' << (sign < 0 ? -ordinal : ordinal);
      }
      out << '\n';
      out << "size " << format_value(desc.new_cell_size) << '\n';
    }
    if (desc.new_vertex) {
      out << "vertex";
      for (double x : *desc.new_vertex) out << ' ' << format_value(x);
      out << '\n';
    }
  }
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

CellComplex load_complex(const std::string& path) {
  std::ifstream in = open_input(path);
  return parse_complex(in);
}

void save_complex(const std::string& path, const CellComplex& k) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
  emit_complex(out, k);
  if (!out.flush()) fail(ErrorKind::io, "failed writing '" + path + "'");
}

GramStructure load_gram(const std::string& path, const CellComplex& k) {
  std::ifstream in = open_input(path);
  return parse_gram(in, k);
}

std::vector<SplitDescriptor> load_script(const std::string& path) {
  std::ifstream in = open_input(path);
  return parse_script(in);
}

}  // namespace chaincx
