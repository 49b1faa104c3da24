#include <gtest/gtest.h>

#include <cmath>

#include <unreduced/synth.hpp>

using namespace unreduced;

namespace {

double diameter(const PointCloud& c) {
  double d = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) d = std::max(d, euclidean_distance(c[i], c[j]));
  }
  return d;
}

}  // namespace

TEST(SampleShape, CircleOnIdealShape) {
  auto c = sample_shape({Shape::circle, 50, 0.0, 3});
  ASSERT_EQ(c.size(), 50u);
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c[i];
    EXPECT_NEAR(p[0] * p[0] + p[1] * p[1], 1.0, 1e-12);
    EXPECT_EQ(p[2], 0.0);
  }
}

TEST(SampleShape, TorusAndSphereOnIdealShape) {
  auto t = sample_shape({Shape::torus, 50, 0.0, 4});
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto p = t[i];
    double ring = std::sqrt(p[0] * p[0] + p[1] * p[1]) - 0.7;
    EXPECT_NEAR(ring * ring + p[2] * p[2], 0.09, 1e-12);
  }
  auto s = sample_shape({Shape::sphere, 50, 0.0, 4});
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = s[i];
    EXPECT_NEAR(p[0] * p[0] + p[1] * p[1] + p[2] * p[2], 1.0, 1e-12);
  }
  auto u = sample_shape({Shape::uniform, 50, 0.0, 4});
  for (double x : u.coords()) EXPECT_LE(std::fabs(x), shape_scale::uniform_half_width);
}

TEST(SampleShape, Deterministic) {
  for (auto shape : kAllShapes) {
    ShapeSpec spec{shape, 50, 0.3, 99};
    EXPECT_EQ(sample_shape(spec), sample_shape(spec));
    spec.seed = 100;
    EXPECT_NE(sample_shape(spec), sample_shape(ShapeSpec{shape, 50, 0.3, 99}));
  }
}

TEST(SampleShape, ComparableScales) {
  // shapes with bounded support: the sample diameter approaches the ideal one
  for (auto shape : {Shape::circle, Shape::uniform, Shape::sphere, Shape::torus}) {
    double d = diameter(sample_shape({shape, 200, 0.0, 17}));
    EXPECT_GE(d, 1.4) << to_string(shape);
    EXPECT_LE(d, 2.2) << to_string(shape);
  }
  // Gaussian clusters have unbounded tails; the ideal shape is the pair of centres
  EXPECT_GE(2 * shape_scale::cluster_center, 1.4);
  EXPECT_LE(2 * shape_scale::cluster_center, 2.2);
  auto c = sample_shape({Shape::two_clusters, 400, 0.0, 17});
  double left = 0, right = 0;
  for (std::size_t i = 0; i < c.size(); ++i) (c[i][0] < 0 ? left : right) += c[i][0];
  EXPECT_NEAR((right - left) / 200.0, 2 * shape_scale::cluster_center, 0.05);
}

TEST(Perturb, ZeroNoiseIsIdentity) {
  auto c = sample_shape({Shape::sphere, 30, 0.0, 1});
  EXPECT_EQ(perturb(c, 0.0, 5), c);
}

TEST(Perturb, DisplacementBounded) {
  auto c = sample_shape({Shape::torus, 200, 0.0, 2});
  auto moved = perturb(c, 0.3, 8);
  double largest = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double d = euclidean_distance(c[i], moved[i]);
    EXPECT_GT(d, 0.0);
    EXPECT_LT(d, 0.3);
    largest = std::max(largest, d);
  }
  EXPECT_GT(largest, 0.2);
  EXPECT_EQ(perturb(c, 0.3, 8), moved);
  EXPECT_NE(perturb(c, 0.3, 9), moved);
  EXPECT_THROW(perturb(c, -0.1, 1), std::invalid_argument);
}

TEST(Perturb, DirectionsAreIsotropic) {
  // mean direction of many unit displacements is near zero
  PointCloud origin(3, std::vector<double>(3 * 4000, 0.0));
  auto moved = perturb(origin, 1.0, 3);
  double mx = 0, my = 0, mz = 0;
  for (std::size_t i = 0; i < moved.size(); ++i) {
    auto p = moved[i];
    double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    mx += p[0] / n;
    my += p[1] / n;
    mz += p[2] / n;
  }
  const double n = static_cast<double>(moved.size());
  EXPECT_LT(std::fabs(mx / n), 0.05);
  EXPECT_LT(std::fabs(my / n), 0.05);
  EXPECT_LT(std::fabs(mz / n), 0.05);
}

TEST(ShapeDataset, CountsAndBalance) {
  auto data = generate_shape_dataset(200, 0.1, 7);
  ASSERT_EQ(data.size(), 1000u);
  std::array<int, 5> per{};
  for (const auto& e : data) {
    ++per[static_cast<std::size_t>(e.label)];
    EXPECT_EQ(e.cloud.size(), 50u);
  }
  for (int n : per) EXPECT_EQ(n, 200);
  EXPECT_EQ(generate_shape_dataset(1, 0.0, 7).size(), 5u);
  EXPECT_THROW(generate_shape_dataset(0, 0.0, 7), std::invalid_argument);
}

TEST(ShapeDataset, Deterministic) {
  auto a = generate_shape_dataset(3, 0.6, 11), b = generate_shape_dataset(3, 0.6, 11);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].cloud, b[i].cloud);
    EXPECT_EQ(a[i].seed, b[i].seed);
  }
  // entries do not depend on how many siblings were generated
  auto bigger = generate_shape_dataset(5, 0.6, 11);
  EXPECT_EQ(bigger[0].cloud, a[0].cloud);
  EXPECT_EQ(bigger[5].cloud, a[3].cloud);  // first two_clusters entry
}
