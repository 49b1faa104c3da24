#pragma once

// Fixed-length vectorizations of persistence diagrams: persistence images,
// Adcock-Carlsson coordinates, per-entry concatenation and 32-bit clamping.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "diagrams.hpp"
#include "io.hpp"

namespace unreduced {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class PIWeight { linear, constant };

struct PIConfig {
  int resolution = 10;
  double bandwidth = 0.05;
  Interval birth_range{0.0, 1.0};
  Interval persistence_range{0.0, 1.0};
  PIWeight weight = PIWeight::linear;
  /// Normalizer of the linear weight; unset means the largest persistence
  /// in the diagram (1 for an empty diagram).
  std::optional<double> max_persistence;

  void validate() const {
    if (resolution < 1) throw std::invalid_argument("persistence image: resolution must be >= 1");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("persistence image: bandwidth must be > 0");
    if (!(birth_range.hi > birth_range.lo) || !(persistence_range.hi > persistence_range.lo)) {
      throw std::invalid_argument("persistence image: degenerate range");
    }
    if (max_persistence && !(*max_persistence > 0.0)) {
      throw std::invalid_argument("persistence image: max_persistence must be > 0");
    }
  }

  friend bool operator==(const PIConfig&, const PIConfig&) = default;
};

namespace detail {

inline void require_finite(const Diagram& d, const char* who) {
  for (const auto& p : d.points) {
    if (!std::isfinite(p.birth) || !std::isfinite(p.death)) {
      throw std::invalid_argument(std::string(who) + ": diagram " + d.key() +
                                  " has a non-finite point");
    }
  }
}

/// (birth, death) pairs in a canonical order, so sums do not depend on the
/// input order of the points.
inline std::vector<std::pair<double, double>> canonical_points(const Diagram& d) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(d.points.size());
  for (const auto& p : d.points) pts.emplace_back(p.birth, p.death);
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Gaussian mass of N(center, sigma) over each of `res` equal bins of `range`.
inline void bin_masses(double center, double sigma, const Interval& range, int res,
                       std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(res));
  const double step = range.width() / res;
  double prev = normal_cdf((range.lo - center) / sigma);
  for (int k = 0; k < res; ++k) {
    double edge = k + 1 == res ? range.hi : range.lo + step * (k + 1);
    double cur = normal_cdf((edge - center) / sigma);
    out[static_cast<std::size_t>(k)] = cur - prev;
    prev = cur;
  }
}

}  // namespace detail

/// Persistence image in birth-persistence coordinates, `resolution` x
/// `resolution` pixels stored row-major with persistence along rows
/// (index = persistence_bin * resolution + birth_bin). Each pixel holds the
/// exact Gaussian mass over its area, weighted per point.
inline std::vector<double> persistence_image(const Diagram& diagram, const PIConfig& cfg) {
  cfg.validate();
  detail::require_finite(diagram, "persistence image");
  const auto res = static_cast<std::size_t>(cfg.resolution);
  std::vector<double> image(res * res, 0.0);
  const auto pts = detail::canonical_points(diagram);

  double p_max = 1.0;
  if (cfg.max_persistence) {
    p_max = *cfg.max_persistence;
  } else if (!pts.empty()) {
    p_max = 0.0;
    for (auto [b, d] : pts) p_max = std::max(p_max, d - b);
  }

  std::vector<double> bx, py;
  for (auto [b, d] : pts) {
    const double p = d - b;
    double w = 1.0;
    if (cfg.weight == PIWeight::linear) w = p_max > 0.0 ? p / p_max : 0.0;
    if (w == 0.0) continue;
    detail::bin_masses(b, cfg.bandwidth, cfg.birth_range, cfg.resolution, bx);
    detail::bin_masses(p, cfg.bandwidth, cfg.persistence_range, cfg.resolution, py);
    for (std::size_t r = 0; r < res; ++r) {
      const double wr = w * py[r];
      if (wr == 0.0) continue;
      for (std::size_t c = 0; c < res; ++c) image[r * res + c] += wr * bx[c];
    }
  }
  return image;
}

struct ACConfig {
  /// Unset means the diagram's largest death (0 for an empty diagram).
  std::optional<double> max_death;
  friend bool operator==(const ACConfig&, const ACConfig&) = default;
};

/// Adcock-Carlsson coordinates, in order:
/// sum b(d-b), sum (dmax-d)(d-b), sum b^2 (d-b)^4, sum (dmax-d)^2 (d-b)^4.
inline std::array<double, 4> adcock_carlsson(const Diagram& diagram,
                                             std::optional<double> max_death = std::nullopt) {
  detail::require_finite(diagram, "adcock-carlsson");
  const auto pts = detail::canonical_points(diagram);
  double d_max = 0.0;
  for (auto [b, d] : pts) d_max = std::max(d_max, d);
  if (max_death) {
    for (auto [b, d] : pts) {
      if (d > *max_death) {
        throw std::invalid_argument("adcock-carlsson: d_max " + io::format_double(*max_death) +
                                    " below death " + io::format_double(d));
      }
    }
    d_max = *max_death;
  }
  std::array<double, 4> out{0.0, 0.0, 0.0, 0.0};
  for (auto [b, d] : pts) {
    const double p = d - b;
    const double p4 = p * p * p * p;
    const double tail = d_max - d;
    out[0] += b * p;
    out[1] += tail * p;
    out[2] += b * b * p4;
    out[3] += tail * tail * p4;
  }
  return out;
}

inline constexpr double kFloat32Max = static_cast<double>(std::numeric_limits<float>::max());

/// Replaces entries beyond the largest finite 32-bit float with that value,
/// keeping the sign. Returns the number of replaced entries; throws on NaN.
inline std::size_t clamp_overflow(std::span<double> values) {
  std::size_t clamped = 0;
  for (auto& v : values) {
    if (std::isnan(v)) throw std::domain_error("clamp_overflow: NaN in feature vector");
    if (std::fabs(v) > kFloat32Max) {
      v = std::copysign(kFloat32Max, v);
      ++clamped;
    }
  }
  return clamped;
}

inline std::vector<double> clamp_overflow(std::vector<double> values) {
  clamp_overflow(std::span<double>(values));
  return values;
}

enum class VectorMethod { pi, ac };

inline const char* to_string(VectorMethod m) { return m == VectorMethod::pi ? "pi" : "ac"; }

inline std::optional<VectorMethod> parse_vector_method(std::string_view s) {
  if (s == "pi") return VectorMethod::pi;
  if (s == "ac") return VectorMethod::ac;
  return std::nullopt;
}

struct DiagramVectorConfig {
  PIConfig pi;
  ACConfig ac;
  friend bool operator==(const DiagramVectorConfig&, const DiagramVectorConfig&) = default;
};

struct LayoutRecord {
  std::string source;
  int degree = 0;
  VectorMethod method = VectorMethod::pi;
  std::size_t offset = 0;
  std::size_t length = 0;

  std::string key() const { return source + "/" + std::to_string(degree); }
  friend bool operator==(const LayoutRecord&, const LayoutRecord&) = default;
};

struct FeatureVector {
  std::vector<double> values;
  std::vector<LayoutRecord> layout;
  std::size_t clamped = 0;
};

inline std::size_t vector_length(VectorMethod method, const DiagramVectorConfig& cfg) {
  if (method == VectorMethod::ac) return 4;
  return static_cast<std::size_t>(cfg.pi.resolution) * static_cast<std::size_t>(cfg.pi.resolution);
}

/// Vectorizes every diagram of one data entry with its own configuration and
/// concatenates the pieces in (source, degree) order.
inline FeatureVector vectorize_entry(const std::vector<Diagram>& diagrams, VectorMethod method,
                                     const std::map<std::string, DiagramVectorConfig>& configs) {
  std::vector<const Diagram*> order;
  order.reserve(diagrams.size());
  for (const auto& d : diagrams) order.push_back(&d);
  std::sort(order.begin(), order.end(), [](const Diagram* a, const Diagram* b) {
    return std::tie(a->source, a->degree) < std::tie(b->source, b->degree);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i - 1]->source == order[i]->source && order[i - 1]->degree == order[i]->degree) {
      throw std::invalid_argument("duplicate diagram key " + order[i]->key());
    }
  }
  FeatureVector out;
  for (const Diagram* d : order) {
    auto it = configs.find(d->key());
    if (it == configs.end()) throw std::invalid_argument("missing config for key " + d->key());
    const auto& cfg = it->second;
    LayoutRecord rec{d->source, d->degree, method, out.values.size(), vector_length(method, cfg)};
    if (method == VectorMethod::pi) {
      auto v = persistence_image(*d, cfg.pi);
      out.values.insert(out.values.end(), v.begin(), v.end());
    } else {
      auto v = adcock_carlsson(*d, cfg.ac.max_death);
      out.values.insert(out.values.end(), v.begin(), v.end());
    }
    out.layout.push_back(std::move(rec));
  }
  out.clamped = clamp_overflow(std::span<double>(out.values));
  return out;
}

// ---------------------------------------------------------------------------
// Vectorizer config file: flat key=value text with sections.
//
//   method = pi
//   keys = rips/0;rips/1
//   [default]
//   resolution = 10
//   [rips/1]
//   bandwidth = 0.1
//
// Every `[source/degree]` section and every listed key declares a diagram
// slot; per-key settings override `[default]`.

struct VectorizeConfig {
  VectorMethod method = VectorMethod::pi;
  std::map<std::string, DiagramVectorConfig> per_key;
};

namespace detail {

inline void apply_setting(DiagramVectorConfig& cfg, std::string_view name, std::string_view value,
                          const std::string& source, std::size_t line) {
  auto real = [&](double& out) {
    if (!io::parse_double(value, out) || !std::isfinite(out)) {
      throw ParseError(source, line, "bad number for " + std::string(name));
    }
  };
  auto optional_real = [&](std::optional<double>& out) {
    if (value == "auto") {
      out.reset();
      return;
    }
    double v;
    real(v);
    out = v;
  };
  if (name == "resolution") {
    std::int64_t r;
    if (!io::parse_int(value, r) || r < 1) throw ParseError(source, line, "resolution must be >= 1");
    cfg.pi.resolution = static_cast<int>(r);
  } else if (name == "bandwidth") {
    real(cfg.pi.bandwidth);
  } else if (name == "birth_min") {
    real(cfg.pi.birth_range.lo);
  } else if (name == "birth_max") {
    real(cfg.pi.birth_range.hi);
  } else if (name == "pers_min") {
    real(cfg.pi.persistence_range.lo);
  } else if (name == "pers_max") {
    real(cfg.pi.persistence_range.hi);
  } else if (name == "weight") {
    if (value == "linear") {
      cfg.pi.weight = PIWeight::linear;
    } else if (value == "constant") {
      cfg.pi.weight = PIWeight::constant;
    } else {
      throw ParseError(source, line, "weight must be linear or constant");
    }
  } else if (name == "p_max") {
    optional_real(cfg.pi.max_persistence);
  } else if (name == "d_max") {
    optional_real(cfg.ac.max_death);
  } else {
    throw ParseError(source, line, "unknown setting '" + std::string(name) + "'");
  }
}

}  // namespace detail

inline VectorizeConfig parse_vectorize_config(std::string_view text,
                                              const std::string& source = "<config>") {
  struct Pending {
    std::string name, value;
    std::size_t line;
  };
  VectorMethod method = VectorMethod::pi;
  std::vector<std::string> keys;
  std::vector<Pending> defaults;
  std::map<std::string, std::vector<Pending>> sections;
  std::string section;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    auto line = io::trim(text.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start));
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = io::trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, line_no, "unterminated section header");
      section = std::string(io::trim(line.substr(1, line.size() - 2)));
      if (section != "default") {
        detail::split_key(section, source, line_no);
        sections[section];
        keys.push_back(section);
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key = value");
    auto name = io::trim(line.substr(0, eq));
    auto value = io::trim(line.substr(eq + 1));
    if (section.empty()) {
      if (name == "method") {
        auto m = parse_vector_method(value);
        if (!m) throw ParseError(source, line_no, "method must be pi or ac");
        method = *m;
      } else if (name == "keys") {
        for (auto k : io::split(value, ';')) {
          if (k.empty()) continue;
          detail::split_key(k, source, line_no);
          keys.emplace_back(k);
        }
      } else {
        // top-level settings act as defaults
        defaults.push_back({std::string(name), std::string(value), line_no});
      }
    } else if (section == "default") {
      defaults.push_back({std::string(name), std::string(value), line_no});
    } else {
      sections[section].push_back({std::string(name), std::string(value), line_no});
    }
  }
  VectorizeConfig cfg;
  cfg.method = method;
  for (const auto& key : keys) {
    DiagramVectorConfig dc;
    for (const auto& s : defaults) detail::apply_setting(dc, s.name, s.value, source, s.line);
    for (const auto& s : sections[key]) detail::apply_setting(dc, s.name, s.value, source, s.line);
    try {
      dc.pi.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, 0, "[" + key + "] " + e.what());
    }
    cfg.per_key[key] = dc;
  }
  if (cfg.per_key.empty()) throw ParseError(source, 0, "config declares no diagram keys");
  return cfg;
}

}  // namespace unreduced
