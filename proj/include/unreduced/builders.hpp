#pragma once

// Filtered complexes from point clouds, images and vertex-weighted graphs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"
#include "io.hpp"

namespace unreduced {

/// Points of a fixed ambient dimension, stored row-major.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0 || coords_.size() % dim_ != 0) {
      throw std::invalid_argument("point cloud coordinates do not match dimension");
    }
    for (double c : coords_) {
      if (!std::isfinite(c)) throw std::invalid_argument("point cloud has non-finite coordinate");
    }
  }

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return PointCloud();
    std::vector<double> flat;
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) {
        throw std::invalid_argument("points have different dimensions");
      }
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return PointCloud(rows.front().size(), std::move(flat));
  }

  std::size_t size() const { return dim_ ? coords_.size() / dim_ : 0; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return size() == 0; }
  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> operator[](std::size_t i) { return {coords_.data() + i * dim_, dim_}; }
  const std::vector<double>& coords() const { return coords_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Dense symmetric distance matrix.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }

  static DistanceMatrix from_cloud(const PointCloud& cloud) {
    DistanceMatrix d{cloud.size(), std::vector<double>(cloud.size() * cloud.size(), 0.0)};
    for (std::size_t i = 0; i < d.n; ++i) {
      for (std::size_t j = i + 1; j < d.n; ++j) {
        double v = euclidean_distance(cloud[i], cloud[j]);
        d.values[i * d.n + j] = v;
        d.values[j * d.n + i] = v;
      }
    }
    return d;
  }

  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    DistanceMatrix d{rows.size(), {}};
    for (const auto& r : rows) {
      if (r.size() != rows.size()) throw std::invalid_argument("distance matrix is not square");
      d.values.insert(d.values.end(), r.begin(), r.end());
    }
    return d;
  }
};

/// Vietoris-Rips filtration. Vertices get f = 0 and every simplex gets the
/// largest length among its edges. `threshold` defaults to the largest
/// pairwise distance, which keeps every simplex up to `max_dim`.
inline FilteredComplex build_rips(const DistanceMatrix& dist, int max_dim,
                                  std::optional<double> threshold = std::nullopt) {
  if (dist.n == 0) throw std::invalid_argument("rips: empty input");
  if (max_dim < 0) throw std::invalid_argument("rips: max_dim must be non-negative");
  if (dist.values.size() != dist.n * dist.n) {
    throw std::invalid_argument("rips: distance matrix size mismatch");
  }
  double max_pairwise = 0.0;
  for (std::size_t i = 0; i < dist.n; ++i) {
    if (dist(i, i) != 0.0) throw std::invalid_argument("rips: nonzero diagonal");
    for (std::size_t j = 0; j < dist.n; ++j) {
      double v = dist(i, j);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("rips: negative or non-finite distance");
      }
      if (v != dist(j, i)) throw std::invalid_argument("rips: distance matrix not symmetric");
      max_pairwise = std::max(max_pairwise, v);
    }
  }
  const double limit = threshold.value_or(max_pairwise);
  if (threshold && !(*threshold > 0.0)) throw std::invalid_argument("rips: threshold must be > 0");

  // Neighbours with a larger index, so every clique is enumerated once.
  std::vector<std::vector<std::size_t>> upper(dist.n);
  for (std::size_t i = 0; i < dist.n; ++i) {
    for (std::size_t j = i + 1; j < dist.n; ++j) {
      if (dist(i, j) <= limit) upper[i].push_back(j);
    }
  }

  std::vector<Cell> cells;
  std::vector<std::int64_t> simplex;
  auto expand = [&](auto&& self, std::vector<std::size_t> candidates, double f) -> void {
    Cell c;
    c.dim = static_cast<int>(simplex.size()) - 1;
    c.vertices = simplex;
    c.f = f;
    cells.push_back(std::move(c));
    if (static_cast<int>(simplex.size()) > max_dim) return;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
      std::size_t v = candidates[idx];
      double g = f;
      for (auto u : simplex) g = std::max(g, dist(static_cast<std::size_t>(u), v));
      std::vector<std::size_t> next;
      for (std::size_t k = idx + 1; k < candidates.size(); ++k) {
        std::size_t w = candidates[k];
        if (dist(v, w) <= limit) next.push_back(w);
      }
      simplex.push_back(static_cast<std::int64_t>(v));
      self(self, std::move(next), g);
      simplex.pop_back();
    }
  };
  for (std::size_t v = 0; v < dist.n; ++v) {
    simplex.assign(1, static_cast<std::int64_t>(v));
    expand(expand, upper[v], 0.0);
  }
  return sort_filtration(std::move(cells), ComplexKind::simplicial);
}

inline FilteredComplex build_rips(const PointCloud& cloud, int max_dim,
                                  std::optional<double> threshold = std::nullopt) {
  if (cloud.empty()) throw std::invalid_argument("rips: empty point cloud");
  return build_rips(DistanceMatrix::from_cloud(cloud), max_dim, threshold);
}

/// Grayscale or filtration-valued image, row-major.
struct ImageGrid {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> values;

  ImageGrid() = default;
  ImageGrid(std::size_t h, std::size_t w, std::vector<double> v)
      : height(h), width(w), values(std::move(v)) {
    if (values.size() != h * w) throw std::invalid_argument("image size mismatch");
  }
  ImageGrid(std::size_t h, std::size_t w, double fill) : ImageGrid(h, w, std::vector<double>(h * w, fill)) {}

  double operator()(std::size_t r, std::size_t c) const { return values[r * width + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values[r * width + c]; }

  static ImageGrid from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    std::vector<double> v;
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) throw std::invalid_argument("ragged image rows");
      v.insert(v.end(), r.begin(), r.end());
    }
    return ImageGrid(rows.size(), rows.front().size(), std::move(v));
  }

  friend bool operator==(const ImageGrid&, const ImageGrid&) = default;
};

/// Cubical complex with pixels as 2-cells. Each lower-dimensional cube takes
/// the minimum value over the pixels containing it. Cubes are keyed by
/// Khalimsky coordinates (row, col), pixel (r, c) being (2r+1, 2c+1).
inline FilteredComplex build_cubical_lower_star(const ImageGrid& grid) {
  if (grid.height == 0 || grid.width == 0) throw std::invalid_argument("cubical: empty grid");
  for (double v : grid.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("cubical: non-finite grid value");
  }
  const auto rows = static_cast<std::int64_t>(2 * grid.height + 1);
  const auto cols = static_cast<std::int64_t>(2 * grid.width + 1);
  auto pixel_range = [](std::int64_t k, std::size_t extent) {
    // pixels whose closure contains Khalimsky coordinate k along one axis
    std::int64_t lo, hi;
    if (k & 1) {
      lo = hi = (k - 1) / 2;
    } else {
      lo = k / 2 - 1;
      hi = k / 2;
    }
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(extent) - 1);
    return std::pair{lo, hi};
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(rows * cols));
  for (std::int64_t x = 0; x < rows; ++x) {
    auto [r0, r1] = pixel_range(x, grid.height);
    for (std::int64_t y = 0; y < cols; ++y) {
      auto [c0, c1] = pixel_range(y, grid.width);
      double f = std::numeric_limits<double>::infinity();
      for (auto r = r0; r <= r1; ++r) {
        for (auto c = c0; c <= c1; ++c) {
          f = std::min(f, grid(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
        }
      }
      Cell cell;
      cell.dim = static_cast<int>((x & 1) + (y & 1));
      cell.vertices = {x, y};
      cell.f = f;
      cells.push_back(std::move(cell));
    }
  }
  return sort_filtration(std::move(cells), ComplexKind::cubical);
}

/// Direction of travel of a sweep: `east` assigns 0 at the west edge and 1 at
/// the east edge.
enum class SweepDirection { north, east, south, west };

inline char to_char(SweepDirection d) {
  switch (d) {
    case SweepDirection::north: return 'N';
    case SweepDirection::east: return 'E';
    case SweepDirection::south: return 'S';
    case SweepDirection::west: return 'W';
  }
  return '?';
}

inline std::optional<SweepDirection> parse_sweep_direction(std::string_view s) {
  if (s == "N" || s == "n") return SweepDirection::north;
  if (s == "E" || s == "e") return SweepDirection::east;
  if (s == "S" || s == "s") return SweepDirection::south;
  if (s == "W" || s == "w") return SweepDirection::west;
  return std::nullopt;
}

inline constexpr SweepDirection kAllSweeps[] = {SweepDirection::north, SweepDirection::east,
                                                SweepDirection::south, SweepDirection::west};

/// Pixels brighter than `activity_threshold` get their normalized position
/// along the sweep in [0, 1]; all other pixels get 1. An axis of extent 1
/// maps active pixels to 0.
inline ImageGrid sweep_image(const ImageGrid& grid, SweepDirection direction,
                             double activity_threshold = 0.0) {
  ImageGrid out(grid.height, grid.width, 1.0);
  const bool vertical = direction == SweepDirection::north || direction == SweepDirection::south;
  const std::size_t extent = vertical ? grid.height : grid.width;
  const double denom = extent > 1 ? static_cast<double>(extent - 1) : 1.0;
  for (std::size_t r = 0; r < grid.height; ++r) {
    for (std::size_t c = 0; c < grid.width; ++c) {
      if (!(grid(r, c) > activity_threshold)) continue;
      std::size_t pos = 0;
      switch (direction) {
        case SweepDirection::south: pos = r; break;
        case SweepDirection::north: pos = grid.height - 1 - r; break;
        case SweepDirection::east: pos = c; break;
        case SweepDirection::west: pos = grid.width - 1 - c; break;
      }
      out(r, c) = static_cast<double>(pos) / denom;
    }
  }
  return out;
}

/// Graph filtered by one coordinate: vertex f is its height, edge f is the
/// larger endpoint height.
inline FilteredComplex build_height_graph(const PointCloud& points,
                                          std::span<const std::pair<std::int64_t, std::int64_t>> edges,
                                          std::size_t axis) {
  if (points.empty()) throw std::invalid_argument("height graph: no vertices");
  if (axis >= points.dim()) throw std::invalid_argument("height graph: axis out of range");
  const auto n = static_cast<std::int64_t>(points.size());
  std::vector<Cell> cells;
  cells.reserve(points.size() + edges.size());
  for (std::int64_t v = 0; v < n; ++v) {
    cells.push_back(Cell{v, 0, {v}, points[static_cast<std::size_t>(v)][axis]});
  }
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw std::invalid_argument("height graph: dangling edge (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
    }
    if (a == b) throw std::invalid_argument("height graph: self loop at " + std::to_string(a));
    auto lo = std::min(a, b), hi = std::max(a, b);
    double f = std::max(cells[static_cast<std::size_t>(a)].f, cells[static_cast<std::size_t>(b)].f);
    cells.push_back(Cell{0, 1, {lo, hi}, f});
  }
  return sort_filtration(std::move(cells), ComplexKind::simplicial);
}

// ---------------------------------------------------------------------------
// Readers

inline PointCloud read_point_cloud(const std::string& path) {
  auto rows = io::parse_numeric_csv(io::read_file(path), path);
  if (rows.empty()) throw ParseError(path, 0, "point cloud is empty");
  return PointCloud::from_rows(rows);
}

inline std::string format_point_cloud(const PointCloud& cloud) {
  std::string out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out += ',';
      out += io::format_double(p[k]);
    }
    out += '\n';
  }
  return out;
}

inline ImageGrid read_image_csv(const std::string& path) {
  auto rows = io::parse_numeric_csv(io::read_file(path), path);
  if (rows.empty()) throw ParseError(path, 0, "image is empty");
  return ImageGrid::from_rows(rows);
}

inline std::vector<std::pair<std::int64_t, std::int64_t>> read_edge_list(const std::string& path) {
  auto rows = io::parse_numeric_csv(io::read_file(path), path);
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 2 || r[0] != std::floor(r[0]) || r[1] != std::floor(r[1])) {
      throw ParseError(path, 0, "edge row " + std::to_string(i + 1) + " is not an integer pair");
    }
    edges.emplace_back(static_cast<std::int64_t>(r[0]), static_cast<std::int64_t>(r[1]));
  }
  return edges;
}

namespace detail {
inline std::uint32_t read_be32(const std::string& bytes, std::size_t offset) {
  auto b = [&](std::size_t k) { return static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + k])); };
  return (b(0) << 24) | (b(1) << 16) | (b(2) << 8) | b(3);
}
}  // namespace detail

/// IDX image set (magic 0x00000803, big-endian dimensions, unsigned bytes).
/// Reads at most `limit` images when nonzero.
inline std::vector<ImageGrid> parse_idx_images(const std::string& bytes, const std::string& source,
                                               std::size_t limit = 0) {
  if (bytes.size() < 16) throw ParseError(source, 0, "IDX file too short");
  if (detail::read_be32(bytes, 0) != 0x00000803U) throw ParseError(source, 0, "not an IDX image file");
  std::size_t count = detail::read_be32(bytes, 4);
  std::size_t h = detail::read_be32(bytes, 8);
  std::size_t w = detail::read_be32(bytes, 12);
  if (bytes.size() < 16 + count * h * w) throw ParseError(source, 0, "IDX file truncated");
  if (limit) count = std::min(count, limit);
  std::vector<ImageGrid> images;
  images.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> v(h * w);
    for (std::size_t k = 0; k < h * w; ++k) {
      v[k] = static_cast<unsigned char>(bytes[16 + i * h * w + k]);
    }
    images.emplace_back(h, w, std::move(v));
  }
  return images;
}

/// IDX label set (magic 0x00000801).
inline std::vector<int> parse_idx_labels(const std::string& bytes, const std::string& source,
                                         std::size_t limit = 0) {
  if (bytes.size() < 8) throw ParseError(source, 0, "IDX file too short");
  if (detail::read_be32(bytes, 0) != 0x00000801U) throw ParseError(source, 0, "not an IDX label file");
  std::size_t count = detail::read_be32(bytes, 4);
  if (bytes.size() < 8 + count) throw ParseError(source, 0, "IDX file truncated");
  if (limit) count = std::min(count, limit);
  std::vector<int> labels(count);
  for (std::size_t i = 0; i < count; ++i) labels[i] = static_cast<unsigned char>(bytes[8 + i]);
  return labels;
}

}  // namespace unreduced
