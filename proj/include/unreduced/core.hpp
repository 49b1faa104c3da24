#pragma once

// Filtered cell complexes and sparse Z2 boundary matrices.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace unreduced {

using Index = std::int64_t;

enum class ComplexKind { simplicial, cubical };

inline const char* to_string(ComplexKind kind) {
  return kind == ComplexKind::simplicial ? "simplicial" : "cubical";
}

/// A simplex or cube with its filtration value.
///
/// Simplices store their vertex ids in ascending order. Cubes store
/// Khalimsky (doubled) grid coordinates: a coordinate is odd exactly when the
/// cube extends along that axis, so the number of odd coordinates is `dim`.
struct Cell {
  Index id = 0;
  int dim = 0;
  std::vector<std::int64_t> vertices;
  double f = 0.0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct FilteredComplex {
  ComplexKind kind = ComplexKind::simplicial;
  std::vector<Cell> cells;
  std::string order_key = "f,dim,lex";

  std::size_t size() const { return cells.size(); }
  int max_dim() const {
    int d = -1;
    for (const auto& c : cells) d = std::max(d, c.dim);
    return d;
  }

  friend bool operator==(const FilteredComplex&, const FilteredComplex&) = default;
};

/// Strictly ascending row indices holding a 1.
using Column = std::vector<Index>;

struct BoundaryMatrix {
  std::vector<Column> columns;
  std::vector<int> degree;

  std::size_t size() const { return columns.size(); }

  friend bool operator==(const BoundaryMatrix&, const BoundaryMatrix&) = default;
};

namespace detail {

struct VertexHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (auto x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

using CellLookup = std::unordered_map<std::vector<std::int64_t>, Index, VertexHash>;

inline thread_local std::uint64_t column_additions = 0;

}  // namespace detail

/// Number of mod-2 column additions performed on the calling thread.
inline std::uint64_t column_addition_count() { return detail::column_additions; }
inline void reset_column_addition_count() { detail::column_additions = 0; }

/// Codimension-1 faces of `cell`, as vertex/coordinate keys.
inline std::vector<std::vector<std::int64_t>> faces_of(const Cell& cell, ComplexKind kind) {
  std::vector<std::vector<std::int64_t>> out;
  if (cell.dim == 0) return out;
  if (kind == ComplexKind::simplicial) {
    out.reserve(cell.vertices.size());
    for (std::size_t drop = 0; drop < cell.vertices.size(); ++drop) {
      std::vector<std::int64_t> face;
      face.reserve(cell.vertices.size() - 1);
      for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
        if (i != drop) face.push_back(cell.vertices[i]);
      }
      out.push_back(std::move(face));
    }
  } else {
    for (std::size_t axis = 0; axis < cell.vertices.size(); ++axis) {
      if ((cell.vertices[axis] & 1) == 0) continue;
      for (int step : {-1, 1}) {
        auto face = cell.vertices;
        face[axis] += step;
        out.push_back(std::move(face));
      }
    }
  }
  return out;
}

/// True when the cell's key is consistent with its dimension.
inline bool well_formed(const Cell& cell, ComplexKind kind) {
  if (cell.dim < 0) return false;
  if (kind == ComplexKind::simplicial) {
    if (cell.vertices.size() != static_cast<std::size_t>(cell.dim) + 1) return false;
    return std::adjacent_find(cell.vertices.begin(), cell.vertices.end(),
                              std::greater_equal<>{}) == cell.vertices.end();
  }
  int odd = 0;
  for (auto c : cell.vertices) odd += static_cast<int>(c & 1);
  return !cell.vertices.empty() && odd == cell.dim;
}

enum class ViolationKind {
  malformed_cell,
  duplicate_cell,
  missing_face,
  face_after_coface,
  filtration_not_monotone,
  filtration_not_sorted
};

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::malformed_cell: return "malformed cell";
    case ViolationKind::duplicate_cell: return "duplicate cell";
    case ViolationKind::missing_face: return "missing face";
    case ViolationKind::face_after_coface: return "face after coface";
    case ViolationKind::filtration_not_monotone: return "filtration not monotone";
    case ViolationKind::filtration_not_sorted: return "filtration not sorted";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  Index cell = -1;  // position of the offending cell
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation& v) { return v.kind == kind; });
  }
};

namespace detail {

inline std::string key_string(const std::vector<std::int64_t>& key) {
  std::string s = "{";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(key[i]);
  }
  return s + "}";
}

/// Checks closure and monotonicity, optionally also face precedence.
inline ValidationReport check_cells(std::span<const Cell> cells, ComplexKind kind,
                                    bool require_order) {
  ValidationReport report;
  CellLookup lookup;
  lookup.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (!well_formed(c, kind)) {
      report.violations.push_back({ViolationKind::malformed_cell, static_cast<Index>(i),
                                   key_string(c.vertices)});
      continue;
    }
    if (!lookup.emplace(c.vertices, static_cast<Index>(i)).second) {
      report.violations.push_back({ViolationKind::duplicate_cell, static_cast<Index>(i),
                                   key_string(c.vertices)});
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (!well_formed(c, kind)) continue;
    for (const auto& face : faces_of(c, kind)) {
      auto it = lookup.find(face);
      if (it == lookup.end()) {
        report.violations.push_back({ViolationKind::missing_face, static_cast<Index>(i),
                                     key_string(face) + " of " + key_string(c.vertices)});
        continue;
      }
      const auto& fc = cells[static_cast<std::size_t>(it->second)];
      if (fc.f > c.f) {
        report.violations.push_back({ViolationKind::filtration_not_monotone,
                                     static_cast<Index>(i),
                                     key_string(face) + " f=" + std::to_string(fc.f) +
                                         " above coface f=" + std::to_string(c.f)});
      }
      if (require_order && it->second > static_cast<Index>(i)) {
        report.violations.push_back({ViolationKind::face_after_coface, static_cast<Index>(i),
                                     key_string(face) + " after " + key_string(c.vertices)});
      }
    }
    if (require_order && i > 0 && cells[i - 1].f > c.f) {
      report.violations.push_back({ViolationKind::filtration_not_sorted, static_cast<Index>(i),
                                   "f decreases at position " + std::to_string(i)});
    }
  }
  return report;
}

}  // namespace detail

/// Reports every violation of closure, monotonicity and face precedence.
inline ValidationReport validate_complex(const FilteredComplex& complex) {
  return detail::check_cells(complex.cells, complex.kind, true);
}

/// Orders cells by (f, dim, lexicographic key) and renumbers ids by position.
/// Throws std::invalid_argument when the cells are not a closed complex with a
/// monotone filtration.
inline FilteredComplex sort_filtration(std::vector<Cell> cells,
                                       ComplexKind kind = ComplexKind::simplicial) {
  auto report = detail::check_cells(cells, kind, false);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw std::invalid_argument(std::string(to_string(v.kind)) + ": " + v.detail);
  }
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.f != b.f) return a.f < b.f;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertices < b.vertices;
  });
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i].id = static_cast<Index>(i);
  return FilteredComplex{kind, std::move(cells), "f,dim,lex"};
}

/// Column j holds the positions of the codimension-1 faces of cell j.
inline BoundaryMatrix boundary_matrix(const FilteredComplex& complex) {
  detail::CellLookup lookup;
  lookup.reserve(complex.size());
  for (std::size_t i = 0; i < complex.size(); ++i) {
    lookup.emplace(complex.cells[i].vertices, static_cast<Index>(i));
  }
  BoundaryMatrix m;
  m.columns.resize(complex.size());
  m.degree.resize(complex.size());
  for (std::size_t j = 0; j < complex.size(); ++j) {
    const auto& cell = complex.cells[j];
    m.degree[j] = cell.dim;
    auto& col = m.columns[j];
    for (const auto& face : faces_of(cell, complex.kind)) {
      auto it = lookup.find(face);
      if (it == lookup.end() || it->second >= static_cast<Index>(j)) {
        throw std::runtime_error("corrupted complex: face " + detail::key_string(face) +
                                 " of cell " + std::to_string(j) + " not found before it");
      }
      col.push_back(it->second);
    }
    std::sort(col.begin(), col.end());
  }
  return m;
}

/// Mod-2 sum (symmetric difference) of two ascending index lists.
inline Column add_columns(std::span<const Index> a, std::span<const Index> b) {
  ++detail::column_additions;
  Column out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

/// target += source, reusing `scratch` as the merge buffer.
inline void add_into(Column& target, const Column& source, Column& scratch) {
  ++detail::column_additions;
  scratch.clear();
  scratch.reserve(target.size() + source.size());
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace unreduced
