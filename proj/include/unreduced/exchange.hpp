#pragma once

// Text exchange format for filtered complexes:
//
//   phc v1 simplicial|cubical
//   dim f v0 v1 ... vk
//
// One cell per line. Simplicial cells list ascending vertex ids; cubical cells
// list Khalimsky coordinates. Blank lines and lines starting with `#` are
// ignored. The reader sorts and validates.

#include <string>
#include <string_view>

#include "core.hpp"
#include "io.hpp"

namespace unreduced {

inline std::string export_complex(const FilteredComplex& complex) {
  std::string out = "phc v1 ";
  out += to_string(complex.kind);
  out += '\n';
  for (const auto& c : complex.cells) {
    out += std::to_string(c.dim);
    out += ' ';
    out += io::format_double(c.f);
    for (auto v : c.vertices) {
      out += ' ';
      out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

inline FilteredComplex parse_complex(std::string_view text,
                                     const std::string& source = "<complex>") {
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool have_header = false;
  ComplexKind kind = ComplexKind::simplicial;
  std::vector<Cell> cells;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    auto line = io::trim(text.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start));
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (line.empty() || line.front() == '#') continue;
    auto fields = io::split_ws(line);
    if (!have_header) {
      if (fields.size() != 3 || fields[0] != "phc" || fields[1] != "v1") {
        throw ParseError(source, line_no, "expected header 'phc v1 simplicial|cubical'");
      }
      if (fields[2] == "simplicial") {
        kind = ComplexKind::simplicial;
      } else if (fields[2] == "cubical") {
        kind = ComplexKind::cubical;
      } else {
        throw ParseError(source, line_no, "unknown complex kind '" + std::string(fields[2]) + "'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() < 3) throw ParseError(source, line_no, "expected 'dim f v0 ...'");
    Cell cell;
    std::int64_t dim;
    if (!io::parse_int(fields[0], dim) || dim < 0) {
      throw ParseError(source, line_no, "bad dimension '" + std::string(fields[0]) + "'");
    }
    cell.dim = static_cast<int>(dim);
    if (!io::parse_double(fields[1], cell.f) || !std::isfinite(cell.f)) {
      throw ParseError(source, line_no, "bad filtration value '" + std::string(fields[1]) + "'");
    }
    for (std::size_t i = 2; i < fields.size(); ++i) {
      std::int64_t v;
      if (!io::parse_int(fields[i], v)) {
        throw ParseError(source, line_no, "bad vertex '" + std::string(fields[i]) + "'");
      }
      cell.vertices.push_back(v);
    }
    cell.id = static_cast<Index>(cells.size());
    if (!well_formed(cell, kind)) {
      throw ParseError(source, line_no,
                       kind == ComplexKind::simplicial
                           ? "simplex needs dim+1 strictly ascending vertices"
                           : "cube needs exactly dim odd coordinates");
    }
    cells.push_back(std::move(cell));
  }
  if (!have_header) throw ParseError(source, 0, "empty complex file");
  try {
    return sort_filtration(std::move(cells), kind);
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, std::string("invalid complex: ") + e.what());
  }
}

inline FilteredComplex import_complex(const std::string& path) {
  return parse_complex(io::read_file(path), path);
}

inline void write_complex(const std::string& path, const FilteredComplex& complex) {
  io::write_file(path, export_complex(complex));
}

}  // namespace unreduced
