#pragma once

// Seeded synthetic point clouds in R^3: circle, two clusters, uniform cube,
// sphere and torus at comparable diameters (about 2), with optional bounded
// random displacement.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "builders.hpp"

namespace unreduced {

enum class Shape { circle, two_clusters, uniform, sphere, torus };

inline constexpr Shape kAllShapes[] = {Shape::circle, Shape::two_clusters, Shape::uniform,
                                       Shape::sphere, Shape::torus};

inline const char* to_string(Shape s) {
  switch (s) {
    case Shape::circle: return "circle";
    case Shape::two_clusters: return "two_clusters";
    case Shape::uniform: return "uniform";
    case Shape::sphere: return "sphere";
    case Shape::torus: return "torus";
  }
  return "?";
}

inline std::optional<Shape> parse_shape(std::string_view s) {
  for (auto sh : kAllShapes) {
    if (s == to_string(sh)) return sh;
  }
  return std::nullopt;
}

namespace shape_scale {
inline constexpr double circle_radius = 1.0;
inline constexpr double sphere_radius = 1.0;
inline constexpr double torus_major = 0.7;
inline constexpr double torus_minor = 0.3;
inline constexpr double cluster_center = 0.9;
inline constexpr double cluster_sigma = 0.1;
// half-width of the uniform cube; its diagonal is 2
inline const double uniform_half_width = 1.0 / std::sqrt(3.0);
}  // namespace shape_scale

struct ShapeSpec {
  Shape shape = Shape::circle;
  std::size_t n_points = 50;
  double noise_mu = 0.0;
  std::uint64_t seed = 0;
};

/// SplitMix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return mix_seed(mix_seed(mix_seed(seed) ^ a) ^ b);
}

namespace detail {

inline std::array<double, 3> random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    std::array<double, 3> v{gauss(rng), gauss(rng), gauss(rng)};
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (n > 1e-12) return {v[0] / n, v[1] / n, v[2] / n};
  }
}

}  // namespace detail

/// Moves each point along a uniform random direction by a magnitude drawn
/// from the open interval (0, mu). mu = 0 returns the cloud unchanged.
inline PointCloud perturb(const PointCloud& cloud, double mu, std::uint64_t seed) {
  if (!(mu >= 0.0)) throw std::invalid_argument("perturb: mu must be >= 0");
  if (mu == 0.0) return cloud;
  if (cloud.dim() != 3) throw std::invalid_argument("perturb: expects points in R^3");
  std::mt19937_64 rng(mix_seed(seed));
  std::uniform_real_distribution<double> magnitude(0.0, mu);
  auto out = cloud;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto dir = detail::random_unit_vector(rng);
    double m = 0.0;
    while (m == 0.0) m = magnitude(rng);
    auto p = out[i];
    for (int k = 0; k < 3; ++k) p[static_cast<std::size_t>(k)] += m * dir[static_cast<std::size_t>(k)];
  }
  return out;
}

/// Samples `n_points` from the ideal shape, then applies `perturb` with a
/// seed derived from `spec.seed`.
inline PointCloud sample_shape(const ShapeSpec& spec) {
  if (spec.n_points < 1) throw std::invalid_argument("sample_shape: n_points must be >= 1");
  if (!(spec.noise_mu >= 0.0)) throw std::invalid_argument("sample_shape: noise must be >= 0");
  using namespace shape_scale;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> jitter(0.0, cluster_sigma);
  std::vector<double> coords;
  coords.reserve(3 * spec.n_points);
  for (std::size_t i = 0; i < spec.n_points; ++i) {
    std::array<double, 3> p{};
    switch (spec.shape) {
      case Shape::circle: {
        double t = angle(rng);
        p = {circle_radius * std::cos(t), circle_radius * std::sin(t), 0.0};
        break;
      }
      case Shape::two_clusters: {
        double cx = (i % 2 == 0) ? -cluster_center : cluster_center;
        p = {cx + jitter(rng), jitter(rng), jitter(rng)};
        break;
      }
      case Shape::uniform: {
        std::uniform_real_distribution<double> u(-uniform_half_width, uniform_half_width);
        p = {u(rng), u(rng), u(rng)};
        break;
      }
      case Shape::sphere: {
        auto d = detail::random_unit_vector(rng);
        p = {sphere_radius * d[0], sphere_radius * d[1], sphere_radius * d[2]};
        break;
      }
      case Shape::torus: {
        double t = angle(rng), s = angle(rng);
        double ring = torus_major + torus_minor * std::cos(s);
        p = {ring * std::cos(t), ring * std::sin(t), torus_minor * std::sin(s)};
        break;
      }
    }
    coords.insert(coords.end(), p.begin(), p.end());
  }
  PointCloud cloud(3, std::move(coords));
  return perturb(cloud, spec.noise_mu, derive_seed(spec.seed, 0x6e6f697365ULL));
}

struct LabeledCloud {
  int label = 0;
  Shape shape = Shape::circle;
  std::uint64_t seed = 0;
  PointCloud cloud;
};

/// per_class clouds of each shape, class-major; entry seeds derive from
/// (seed, class, index) so every entry is independent of the others.
inline std::vector<LabeledCloud> generate_shape_dataset(std::size_t per_class, double mu,
                                                        std::uint64_t seed,
                                                        std::size_t n_points = 50) {
  if (per_class < 1) throw std::invalid_argument("per_class must be >= 1");
  std::vector<LabeledCloud> out;
  out.reserve(per_class * std::size(kAllShapes));
  for (std::size_t c = 0; c < std::size(kAllShapes); ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      auto entry_seed = derive_seed(seed, c, i);
      ShapeSpec spec{kAllShapes[c], n_points, mu, entry_seed};
      out.push_back({static_cast<int>(c), kAllShapes[c], entry_seed, sample_shape(spec)});
    }
  }
  return out;
}

}  // namespace unreduced
