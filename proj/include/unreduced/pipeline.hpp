#pragma once

// Input -> filtered complex -> diagrams -> vectors, plus stage timing.

#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "builders.hpp"
#include "core.hpp"
#include "diagrams.hpp"
#include "vectorize.hpp"

namespace unreduced {

struct FiltrationSpec {
  enum class Type { rips, sweep, lower_star, height, complex };
  Type type = Type::rips;
  std::vector<SweepDirection> sweeps;  // sweep only
  int max_dim = 2;                     // rips only
  std::optional<double> threshold;     // rips only, unset = auto
  double activity_threshold = 0.0;     // sweep only
  std::size_t axis = 2;                // height only
};

/// `rips`, `sweep` (all four directions), `sweep:NESW` subsets such as
/// `sweep:E`, `lower-star`, `height[:axis]`, `complex`.
inline FiltrationSpec parse_filtration(std::string_view text) {
  FiltrationSpec spec;
  auto colon = text.find(':');
  auto head = text.substr(0, colon);
  auto tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "rips") {
    spec.type = FiltrationSpec::Type::rips;
  } else if (head == "sweep") {
    spec.type = FiltrationSpec::Type::sweep;
    if (tail.empty()) {
      spec.sweeps.assign(std::begin(kAllSweeps), std::end(kAllSweeps));
    } else {
      for (char ch : tail) {
        auto d = parse_sweep_direction(std::string_view(&ch, 1));
        if (!d) throw std::invalid_argument("unknown sweep direction '" + std::string(1, ch) + "'");
        spec.sweeps.push_back(*d);
      }
    }
  } else if (head == "lower-star") {
    spec.type = FiltrationSpec::Type::lower_star;
  } else if (head == "height") {
    spec.type = FiltrationSpec::Type::height;
    if (!tail.empty()) {
      std::int64_t axis;
      if (!io::parse_int(tail, axis) || axis < 0) throw std::invalid_argument("bad height axis");
      spec.axis = static_cast<std::size_t>(axis);
    }
  } else if (head == "complex") {
    spec.type = FiltrationSpec::Type::complex;
  } else {
    throw std::invalid_argument("unknown filtration '" + std::string(text) + "'");
  }
  return spec;
}

struct SourcedComplex {
  std::string source;
  FilteredComplex complex;
};

inline std::vector<SourcedComplex> complexes_from_cloud(const PointCloud& cloud,
                                                        const FiltrationSpec& spec) {
  if (spec.type != FiltrationSpec::Type::rips) {
    throw std::invalid_argument("point clouds support the rips filtration only");
  }
  return {{"rips", build_rips(cloud, spec.max_dim, spec.threshold)}};
}

inline std::vector<SourcedComplex> complexes_from_image(const ImageGrid& image,
                                                        const FiltrationSpec& spec) {
  std::vector<SourcedComplex> out;
  if (spec.type == FiltrationSpec::Type::lower_star) {
    out.push_back({"lower-star", build_cubical_lower_star(image)});
  } else if (spec.type == FiltrationSpec::Type::sweep) {
    for (auto d : spec.sweeps) {
      out.push_back({std::string("sweep:") + to_char(d),
                     build_cubical_lower_star(sweep_image(image, d, spec.activity_threshold))});
    }
  } else {
    throw std::invalid_argument("images support the sweep and lower-star filtrations only");
  }
  return out;
}

struct DiagramOptions {
  EphemeralPolicy ephemeral = EphemeralPolicy::drop;
  EssentialPolicy essential = EssentialPolicy::drop();
};

using EntryDiagrams = std::map<DiagramKind, std::vector<Diagram>>;

struct PairCount {
  DiagramKind kind;
  std::string source;
  int degree;
  std::size_t pairs;   // value pairs before the ephemeral policy
  std::size_t points;  // points kept
};

/// Diagrams of every requested kind for all complexes of one entry. The
/// boundary matrix is built once per complex; FR reduces a private copy.
inline EntryDiagrams entry_diagrams(const std::vector<SourcedComplex>& complexes,
                                    const std::vector<DiagramKind>& kinds,
                                    const DiagramOptions& options,
                                    std::vector<PairCount>* counts = nullptr) {
  EntryDiagrams out;
  for (const auto& sc : complexes) {
    const auto m = boundary_matrix(sc.complex);
    for (auto kind : kinds) {
      auto pairs = extract_pairs(m, kind);
      auto diagrams = to_value_diagrams(pairs, sc.complex, options.ephemeral, options.essential,
                                        sc.source);
      if (counts) {
        for (const auto& d : diagrams) {
          std::size_t n = 0;
          for (const auto& p : pairs.pairs) n += p.degree == d.degree;
          counts->push_back({kind, sc.source, d.degree, n, d.points.size()});
        }
      }
      auto& slot = out[kind];
      slot.insert(slot.end(), diagrams.begin(), diagrams.end());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stage timing

struct StageTimes {
  double build = 0.0;
  double boundary = 0.0;
  double reduce = 0.0;
  double extract = 0.0;
  double vectorize = 0.0;

  double total() const { return build + boundary + reduce + extract + vectorize; }
};

struct BenchRecord {
  std::size_t entry = 0;
  int repeat = 0;
  DiagramKind kind = DiagramKind::fr;
  StageTimes seconds;
  std::size_t cells = 0;
  std::size_t matrix_nnz = 0;
  std::size_t pairs = 0;              // index pairs, all degrees
  std::size_t points = 0;             // value-diagram points after policies
  std::size_t column_additions = 0;
  std::size_t peak_column_nnz = 0;    // largest column seen (during reduction for FR)
  std::size_t feature_length = 0;
};

struct BenchOptions {
  std::vector<DiagramKind> kinds{std::begin(kAllKinds), std::end(kAllKinds)};
  DiagramOptions diagrams;
  VectorMethod method = VectorMethod::pi;
  /// Slot configs; keys absent here use `fallback`.
  std::map<std::string, DiagramVectorConfig> configs;
  DiagramVectorConfig fallback;
};

namespace detail {
using Clock = std::chrono::steady_clock;
inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}
}  // namespace detail

/// Runs one entry through every stage for each kind. `build` returns the
/// entry's complexes. Unreduced kinds never enter the reduction stage, so
/// their reduce time is exactly zero.
template <class BuildFn>
std::vector<BenchRecord> bench_entry(std::size_t entry, int repeat, BuildFn&& build,
                                     const BenchOptions& options) {
  using detail::Clock;
  auto t0 = Clock::now();
  std::vector<SourcedComplex> complexes = build();
  const double build_s = detail::seconds_since(t0);

  t0 = Clock::now();
  std::vector<BoundaryMatrix> matrices;
  matrices.reserve(complexes.size());
  for (const auto& sc : complexes) matrices.push_back(boundary_matrix(sc.complex));
  const double boundary_s = detail::seconds_since(t0);

  std::size_t cells = 0, nnz = 0, widest = 0;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    cells += complexes[i].complex.size();
    for (const auto& c : matrices[i].columns) {
      nnz += c.size();
      widest = std::max(widest, c.size());
    }
  }

  std::vector<BenchRecord> records;
  for (auto kind : options.kinds) {
    BenchRecord rec;
    rec.entry = entry;
    rec.repeat = repeat;
    rec.kind = kind;
    rec.cells = cells;
    rec.matrix_nnz = nnz;
    rec.seconds.build = build_s;
    rec.seconds.boundary = boundary_s;
    rec.peak_column_nnz = widest;
    const auto additions_before = column_addition_count();

    std::vector<IndexPairSet> pair_sets;
    if (kind == DiagramKind::fr) {
      std::vector<BoundaryMatrix> reduced;
      t0 = Clock::now();
      for (const auto& m : matrices) {
        ReductionStats stats;
        reduced.push_back(reduce(m, &stats));
        rec.peak_column_nnz = std::max(rec.peak_column_nnz, stats.peak_column_nnz);
      }
      rec.seconds.reduce = detail::seconds_since(t0);
      t0 = Clock::now();
      for (const auto& r : reduced) pair_sets.push_back(pairs_from_reduced(r));
      rec.seconds.extract = detail::seconds_since(t0);
    } else {
      t0 = Clock::now();
      for (const auto& m : matrices) pair_sets.push_back(extract_pairs(m, kind));
      rec.seconds.extract = detail::seconds_since(t0);
    }
    rec.column_additions = column_addition_count() - additions_before;

    t0 = Clock::now();
    std::vector<Diagram> diagrams;
    for (std::size_t i = 0; i < complexes.size(); ++i) {
      rec.pairs += pair_sets[i].pairs.size();
      auto ds = to_value_diagrams(pair_sets[i], complexes[i].complex, options.diagrams.ephemeral,
                                  options.diagrams.essential, complexes[i].source);
      for (auto& d : ds) {
        rec.points += d.points.size();
        diagrams.push_back(std::move(d));
      }
    }
    std::map<std::string, DiagramVectorConfig> configs = options.configs;
    for (const auto& d : diagrams) configs.emplace(d.key(), options.fallback);
    auto fv = vectorize_entry(diagrams, options.method, configs);
    rec.seconds.vectorize = detail::seconds_since(t0);
    rec.feature_length = fv.values.size();
    records.push_back(rec);
  }
  return records;
}

struct StageSummary {
  DiagramKind kind;
  StageTimes mean;
  StageTimes stddev;
  double mean_pairs = 0.0;
};

/// Per-kind stage totals over entries, then mean and standard deviation
/// across repeats.
inline std::vector<StageSummary> summarize(const std::vector<BenchRecord>& records, int repeats) {
  std::vector<StageSummary> out;
  std::map<DiagramKind, std::vector<StageTimes>> totals;
  std::map<DiagramKind, std::pair<double, std::size_t>> pairs;
  for (const auto& r : records) {
    auto& per_repeat = totals[r.kind];
    per_repeat.resize(static_cast<std::size_t>(std::max(repeats, 1)));
    auto& t = per_repeat[static_cast<std::size_t>(r.repeat)];
    t.build += r.seconds.build;
    t.boundary += r.seconds.boundary;
    t.reduce += r.seconds.reduce;
    t.extract += r.seconds.extract;
    t.vectorize += r.seconds.vectorize;
    pairs[r.kind].first += static_cast<double>(r.pairs);
    pairs[r.kind].second += 1;
  }
  for (auto& [kind, per_repeat] : totals) {
    StageSummary s{kind, {}, {}, pairs[kind].first / static_cast<double>(pairs[kind].second)};
    const double n = static_cast<double>(per_repeat.size());
    auto field = [](StageTimes& t, int k) -> double& {
      switch (k) {
        case 0: return t.build;
        case 1: return t.boundary;
        case 2: return t.reduce;
        case 3: return t.extract;
        default: return t.vectorize;
      }
    };
    for (int k = 0; k < 5; ++k) {
      double sum = 0.0;
      for (auto& t : per_repeat) sum += field(t, k);
      double mean = sum / n;
      double var = 0.0;
      for (auto& t : per_repeat) var += (field(t, k) - mean) * (field(t, k) - mean);
      field(s.mean, k) = mean;
      field(s.stddev, k) = per_repeat.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace unreduced
