#pragma once

// Persistence pairs from boundary matrices: the fully reduced diagram (FR)
// and three diagrams read straight off the unreduced matrix:
//
//   L1   (low(M_j), j)  for every nonzero column
//   NNB  (low(M_j), j)  where beta(M_j) != -1
//   AP   (low(M_j), j)  where beta(M_j) == low(M_j) != -1
//
// beta(M_j) is the smallest row z with M[z, j] = 1 such that row z is empty in
// every column left of j. Such an entry can never be cancelled by reduction.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "io.hpp"

namespace unreduced {

enum class DiagramKind { fr, nnb, ap, l1 };

inline constexpr DiagramKind kAllKinds[] = {DiagramKind::fr, DiagramKind::nnb, DiagramKind::ap,
                                            DiagramKind::l1};

inline const char* to_string(DiagramKind kind) {
  switch (kind) {
    case DiagramKind::fr: return "fr";
    case DiagramKind::nnb: return "nnb";
    case DiagramKind::ap: return "ap";
    case DiagramKind::l1: return "l1";
  }
  return "?";
}

inline std::optional<DiagramKind> parse_diagram_kind(std::string_view s) {
  for (auto k : kAllKinds) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

inline constexpr bool is_unreduced(DiagramKind kind) { return kind != DiagramKind::fr; }

struct IndexPair {
  Index birth = 0;
  Index death = 0;
  int degree = 0;

  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

struct IndexPairSet {
  DiagramKind kind = DiagramKind::fr;
  std::vector<IndexPair> pairs;    // in death-index order
  std::vector<Index> essentials;   // FR only, ascending

  friend bool operator==(const IndexPairSet&, const IndexPairSet&) = default;
};

inline void check_column(const BoundaryMatrix& m, Index j) {
  if (j < 0 || static_cast<std::size_t>(j) >= m.size()) {
    throw std::out_of_range("column " + std::to_string(j) + " out of range [0, " +
                            std::to_string(m.size()) + ")");
  }
}

/// Largest row index holding a 1, or -1 for a zero column.
inline Index low(const BoundaryMatrix& m, Index j) {
  check_column(m, j);
  const auto& col = m.columns[static_cast<std::size_t>(j)];
  return col.empty() ? -1 : col.back();
}

/// For each row, the leftmost column with a 1 in that row (-1 if none).
/// One left-to-right pass over the matrix.
inline std::vector<Index> first_occupied_column(const BoundaryMatrix& m) {
  std::vector<Index> first(m.size(), -1);
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (auto row : m.columns[j]) {
      auto& slot = first[static_cast<std::size_t>(row)];
      if (slot < 0) slot = static_cast<Index>(j);
    }
  }
  return first;
}

/// beta using a precomputed `first_occupied_column` table.
inline Index beta(const BoundaryMatrix& m, Index j, const std::vector<Index>& first_occupied) {
  check_column(m, j);
  for (auto row : m.columns[static_cast<std::size_t>(j)]) {
    if (first_occupied[static_cast<std::size_t>(row)] == j) return row;
  }
  return -1;
}

inline Index beta(const BoundaryMatrix& m, Index j) {
  return beta(m, j, first_occupied_column(m));
}

struct ReductionStats {
  std::uint64_t additions = 0;
  std::size_t peak_column_nnz = 0;
  std::size_t final_nnz = 0;
};

/// Standard left-to-right column reduction on a private copy of `m`.
inline BoundaryMatrix reduce(BoundaryMatrix m, ReductionStats* stats = nullptr) {
  // pivot[row] = column whose low is `row`
  std::vector<Index> pivot(m.size(), -1);
  Column scratch;
  ReductionStats local;
  for (std::size_t j = 0; j < m.size(); ++j) {
    auto& col = m.columns[j];
    local.peak_column_nnz = std::max(local.peak_column_nnz, col.size());
    while (!col.empty()) {
      auto owner = pivot[static_cast<std::size_t>(col.back())];
      if (owner < 0) break;
      add_into(col, m.columns[static_cast<std::size_t>(owner)], scratch);
      ++local.additions;
      local.peak_column_nnz = std::max(local.peak_column_nnz, col.size());
    }
    if (!col.empty()) pivot[static_cast<std::size_t>(col.back())] = static_cast<Index>(j);
    local.final_nnz += col.size();
  }
  if (stats) *stats = local;
  return m;
}

namespace detail {

inline IndexPairSet unreduced_pairs(const BoundaryMatrix& m, DiagramKind kind) {
  IndexPairSet out{kind, {}, {}};
  std::vector<Index> first;
  if (kind != DiagramKind::l1) first = first_occupied_column(m);
  for (std::size_t j = 0; j < m.size(); ++j) {
    const auto& col = m.columns[j];
    if (col.empty()) continue;
    const Index lo = col.back();
    const auto jj = static_cast<Index>(j);
    bool keep = true;
    if (kind == DiagramKind::nnb) {
      keep = beta(m, jj, first) != -1;
    } else if (kind == DiagramKind::ap) {
      keep = beta(m, jj, first) == lo;
    }
    if (keep) out.pairs.push_back({lo, jj, m.degree[static_cast<std::size_t>(lo)]});
  }
  return out;
}

}  // namespace detail

/// FR pairs and essentials read from an already reduced matrix.
inline IndexPairSet pairs_from_reduced(const BoundaryMatrix& reduced) {
  IndexPairSet out{DiagramKind::fr, {}, {}};
  std::vector<bool> is_low(reduced.size(), false);
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    const auto& col = reduced.columns[j];
    if (col.empty()) continue;
    auto lo = col.back();
    is_low[static_cast<std::size_t>(lo)] = true;
    out.pairs.push_back({lo, static_cast<Index>(j), reduced.degree[static_cast<std::size_t>(lo)]});
  }
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    if (reduced.columns[j].empty() && !is_low[j]) out.essentials.push_back(static_cast<Index>(j));
  }
  return out;
}

/// Pairs of the requested kind. FR reduces a private copy; the unreduced
/// kinds only read `m` and perform no column additions.
inline IndexPairSet extract_pairs(const BoundaryMatrix& m, DiagramKind kind) {
  if (kind == DiagramKind::fr) return pairs_from_reduced(reduce(m));
  return detail::unreduced_pairs(m, kind);
}

// ---------------------------------------------------------------------------
// Value diagrams

struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;
  Index birth_index = -1;
  Index death_index = -1;  // -1 for essential classes

  double persistence() const { return death - birth; }
  bool ephemeral() const { return birth == death; }

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

struct Diagram {
  std::string source;
  int degree = 0;
  std::vector<DiagramPoint> points;

  std::string key() const { return source + "/" + std::to_string(degree); }
  friend bool operator==(const Diagram&, const Diagram&) = default;
};

enum class EphemeralPolicy { keep, drop };

struct EssentialPolicy {
  enum class Mode { drop, cap };
  Mode mode = Mode::drop;
  double cap = std::numeric_limits<double>::infinity();

  static EssentialPolicy drop() { return {}; }
  static EssentialPolicy capped(double value) { return {Mode::cap, value}; }
};

/// Maps index pairs to filtration values, one diagram per degree from 0 to
/// max(complex dim - 1, 0). Essentials born in the top dimension have no
/// cofaces that could ever kill them, so they are left out even when capped.
inline std::vector<Diagram> to_value_diagrams(const IndexPairSet& pairs,
                                              const FilteredComplex& complex,
                                              EphemeralPolicy ephemeral = EphemeralPolicy::drop,
                                              EssentialPolicy essential = EssentialPolicy::drop(),
                                              const std::string& source = "complex") {
  const auto n = static_cast<Index>(complex.size());
  auto value = [&](Index i) {
    if (i < 0 || i >= n) {
      throw std::out_of_range("pair index " + std::to_string(i) + " outside complex");
    }
    return complex.cells[static_cast<std::size_t>(i)].f;
  };
  const int top = std::max(complex.max_dim() - 1, 0);
  std::vector<Diagram> out;
  for (int d = 0; d <= top; ++d) out.push_back(Diagram{source, d, {}});
  for (const auto& p : pairs.pairs) {
    DiagramPoint pt{value(p.birth), value(p.death), p.birth, p.death};
    if (ephemeral == EphemeralPolicy::drop && pt.ephemeral()) continue;
    if (p.degree < 0 || p.degree > top) {
      throw std::out_of_range("pair degree " + std::to_string(p.degree) + " out of range");
    }
    out[static_cast<std::size_t>(p.degree)].points.push_back(pt);
  }
  if (essential.mode == EssentialPolicy::Mode::cap) {
    for (auto e : pairs.essentials) {
      value(e);
      const auto& cell = complex.cells[static_cast<std::size_t>(e)];
      if (cell.dim > top) continue;
      if (essential.cap < cell.f) {
        throw std::invalid_argument("essential cap " + io::format_double(essential.cap) +
                                    " below birth value " + io::format_double(cell.f));
      }
      out[static_cast<std::size_t>(cell.dim)].points.push_back({cell.f, essential.cap, e, -1});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagram CSV
//
//   # phc-diagram kind=<kind> keys=<source>/<degree>;...
//   source,degree,birth,death,birth_index,death_index
//
// The comment line lists every diagram of the entry so empty diagrams survive
// a round trip.

inline std::string format_diagram_csv(const std::vector<Diagram>& diagrams,
                                      std::string_view kind_label) {
  std::string out = "# phc-diagram kind=";
  out += kind_label;
  out += " keys=";
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    if (i) out += ';';
    out += diagrams[i].key();
  }
  out += "\nsource,degree,birth,death,birth_index,death_index\n";
  for (const auto& d : diagrams) {
    for (const auto& p : d.points) {
      out += d.source;
      out += ',';
      out += std::to_string(d.degree);
      out += ',';
      out += io::format_double(p.birth);
      out += ',';
      out += io::format_double(p.death);
      out += ',';
      out += std::to_string(p.birth_index);
      out += ',';
      out += std::to_string(p.death_index);
      out += '\n';
    }
  }
  return out;
}

namespace detail {
inline std::pair<std::string, int> split_key(std::string_view key, const std::string& source,
                                             std::size_t line) {
  auto slash = key.rfind('/');
  std::int64_t deg;
  if (slash == std::string_view::npos || !io::parse_int(key.substr(slash + 1), deg) || deg < 0) {
    throw ParseError(source, line, "bad diagram key '" + std::string(key) + "'");
  }
  return {std::string(key.substr(0, slash)), static_cast<int>(deg)};
}
}  // namespace detail

/// Parses a diagram CSV. Without the key comment line, diagrams are created
/// for the (source, degree) combinations that occur in rows.
inline std::vector<Diagram> parse_diagram_csv(std::string_view text,
                                              const std::string& source = "<diagram>") {
  std::vector<Diagram> diagrams;
  std::map<std::pair<std::string, int>, std::size_t> slot;
  auto ensure = [&](const std::string& src, int deg) -> Diagram& {
    auto [it, inserted] = slot.emplace(std::pair{src, deg}, diagrams.size());
    if (inserted) diagrams.push_back(Diagram{src, deg, {}});
    return diagrams[it->second];
  };
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool header_seen = false;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    auto line = io::trim(text.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start));
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto pos = line.find("keys=");
      if (line.find("phc-diagram") != std::string_view::npos && pos != std::string_view::npos) {
        auto keys = line.substr(pos + 5);
        auto stop = keys.find(' ');
        if (stop != std::string_view::npos) keys = keys.substr(0, stop);
        if (!keys.empty()) {
          for (auto k : io::split(keys, ';')) {
            auto [src, deg] = detail::split_key(k, source, line_no);
            ensure(src, deg);
          }
        }
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      if (line.starts_with("source,")) continue;
    }
    auto f = io::split(line, ',');
    if (f.size() != 6) throw ParseError(source, line_no, "expected 6 fields");
    std::int64_t deg, bi, di;
    DiagramPoint p;
    if (!io::parse_int(f[1], deg) || deg < 0) throw ParseError(source, line_no, "bad degree");
    if (!io::parse_double(f[2], p.birth) || !std::isfinite(p.birth)) {
      throw ParseError(source, line_no, "bad birth value");
    }
    if (!io::parse_double(f[3], p.death) || std::isnan(p.death)) {
      throw ParseError(source, line_no, "bad death value");
    }
    if (p.death < p.birth) throw ParseError(source, line_no, "death before birth");
    if (!io::parse_int(f[4], bi) || !io::parse_int(f[5], di)) {
      throw ParseError(source, line_no, "bad index");
    }
    p.birth_index = bi;
    p.death_index = di;
    ensure(std::string(f[0]), static_cast<int>(deg)).points.push_back(p);
  }
  return diagrams;
}

}  // namespace unreduced
