// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <unreduced/unreduced.hpp>

#include "oracle/oracle.hpp"

using namespace unreduced;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

using Pairs = std::multiset<std::tuple<long, long, int>>;

Pairs as_multiset(const std::vector<IndexPair>& v) {
  Pairs out;
  for (const auto& p : v) out.insert({static_cast<long>(p.birth), static_cast<long>(p.death), p.degree});
  return out;
}

bool contained(const std::vector<IndexPair>& a, const std::vector<IndexPair>& b) {
  auto sb = as_multiset(b);
  for (const auto& t : as_multiset(a)) {
    auto it = sb.find(t);
    if (it == sb.end()) return false;
    sb.erase(it);
  }
  return true;
}

Outcome oracle_equivalence() {
  Outcome out;
  std::mt19937_64 rng(20240601);
  const auto t0 = std::chrono::steady_clock::now();
  for (int t = 0; t < 200; ++t) {
    auto c = sort_filtration(oracle::random_complex_cells(rng, 8, 3));
    auto fr = extract_pairs(boundary_matrix(c), DiagramKind::fr);
    auto want = oracle::dense_pairing(c);
    std::set<long> ess(fr.essentials.begin(), fr.essentials.end());
    if (as_multiset(fr.pairs) != want.pairs || ess != want.essentials) {
      out.fail("instance " + std::to_string(t) + " differs from the naive reduction");
      return out;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream s;
  s << "200 instances, " << secs << " s";
  out.detail = s.str();
  if (secs >= 10.0) out.fail(s.str() + " exceeds 10 s");
  return out;
}

Outcome triangle_example() {
  Outcome out;
  auto m = boundary_matrix(oracle::triangle());
  auto want = [](std::initializer_list<std::pair<long, long>> v) {
    Pairs p;
    for (auto [b, d] : v) p.insert({b, d, b < 3 ? 0 : 1});
    return p;
  };
  auto fr = extract_pairs(m, DiagramKind::fr);
  if (as_multiset(fr.pairs) != want({{1, 3}, {2, 4}, {5, 6}})) out.fail("FR pairs");
  if (fr.essentials != std::vector<Index>{0}) out.fail("FR essentials");
  if (as_multiset(extract_pairs(m, DiagramKind::l1).pairs) != want({{1, 3}, {2, 4}, {2, 5}, {5, 6}})) {
    out.fail("L1 pairs");
  }
  if (as_multiset(extract_pairs(m, DiagramKind::nnb).pairs) != want({{1, 3}, {2, 4}, {5, 6}})) {
    out.fail("NNB pairs");
  }
  if (as_multiset(extract_pairs(m, DiagramKind::ap).pairs) != want({{2, 4}})) out.fail("AP pairs");
  // cross-check against the dense oracle as well
  if (as_multiset(fr.pairs) != oracle::dense_pairing(oracle::triangle()).pairs) out.fail("oracle mismatch");
  if (out.ok) out.detail = "FR, L1, NNB, AP exact";
  return out;
}

Outcome structural_invariants() {
  Outcome out;
  std::mt19937_64 rng(777);
  const int instances = 600;
  for (int t = 0; t < instances && out.ok; ++t) {
    auto c = sort_filtration(oracle::random_complex_cells(rng, 8, 3));
    auto m = boundary_matrix(c);
    auto r = reduce(m);
    auto fr = extract_pairs(m, DiagramKind::fr);
    auto l1 = extract_pairs(m, DiagramKind::l1);
    auto nnb = extract_pairs(m, DiagramKind::nnb);
    auto ap = extract_pairs(m, DiagramKind::ap);
    const auto tag = " (instance " + std::to_string(t) + ")";
    if (!contained(ap.pairs, nnb.pairs)) out.fail("AP not in NNB" + tag);
    if (!contained(nnb.pairs, l1.pairs)) out.fail("NNB not in L1" + tag);
    if (!contained(ap.pairs, fr.pairs)) out.fail("AP not in FR" + tag);
    if (as_multiset(extract_pairs(r, DiagramKind::l1).pairs) != as_multiset(fr.pairs)) {
      out.fail("L1 of reduced matrix differs from FR" + tag);
    }
    auto first = first_occupied_column(m);
    for (Index j = 0; j < static_cast<Index>(m.size()); ++j) {
      const Index b = beta(m, j, first), lm = low(m, j), lr = low(r, j);
      if (b != -1 && !(lr != -1 && b <= lr && lr <= lm)) out.fail("beta <= low(R) <= low(M) violated" + tag);
      if (b != -1 && b == lm && lr != lm) out.fail("apparent column changed by reduction" + tag);
    }
  }
  if (out.ok) out.detail = std::to_string(instances) + " instances";
  return out;
}

Outcome rips_ephemerality() {
  Outcome out;
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::size_t checked = 0;
  for (int t = 0; t < 50 && out.ok; ++t) {
    std::vector<double> coords(20 * 3);
    for (auto& x : coords) x = u(rng);
    auto c = build_rips(PointCloud(3, coords), 2);
    auto m = boundary_matrix(c);
    for (auto kind : {DiagramKind::l1, DiagramKind::nnb, DiagramKind::ap}) {
      auto ps = extract_pairs(m, kind);
      for (const auto& p : ps.pairs) {
        const auto& death = c.cells[static_cast<std::size_t>(p.death)];
        if (death.dim < 2) continue;
        ++checked;
        if (c.cells[static_cast<std::size_t>(p.birth)].f != death.f) {
          out.fail(std::string(to_string(kind)) + " pair with non-zero persistence, cloud " + std::to_string(t));
        }
      }
      for (const auto& d : to_value_diagrams(ps, c, EphemeralPolicy::drop)) {
        if (d.degree >= 1 && !d.points.empty()) {
          out.fail(std::string(to_string(kind)) + " degree " + std::to_string(d.degree) + " not empty");
        }
      }
    }
  }
  if (out.ok) out.detail = "50 clouds, " + std::to_string(checked) + " pairs with death dim >= 2";
  return out;
}

Diagram random_diagram(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Diagram d{"rips", 0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    double b = u(rng);
    d.points.push_back({b, b + 0.8 * u(rng), static_cast<Index>(i), static_cast<Index>(n + i)});
  }
  return d;
}

double rel_diff(double a, double b, double scale) { return std::fabs(a - b) / std::max(scale, 1e-300); }

Outcome vectorizer_properties() {
  Outcome out;
  std::mt19937_64 rng(4242);

  PIConfig pi;
  for (int t = 0; t < 50; ++t) {
    auto d = random_diagram(rng, 40);
    auto base = persistence_image(d, pi);
    std::shuffle(d.points.begin(), d.points.end(), rng);
    if (persistence_image(d, pi) != base) out.fail("PI changed under permutation");
  }

  PIConfig fixed;
  fixed.max_persistence = 1.0;
  for (int t = 0; t < 50; ++t) {
    auto a = random_diagram(rng, 10), b = random_diagram(rng, 17);
    auto u = a;
    u.points.insert(u.points.end(), b.points.begin(), b.points.end());
    auto ia = persistence_image(a, fixed), ib = persistence_image(b, fixed), iu = persistence_image(u, fixed);
    double scale = *std::max_element(iu.begin(), iu.end());
    for (std::size_t k = 0; k < iu.size(); ++k) {
      if (rel_diff(iu[k], ia[k] + ib[k], scale) > 1e-9) out.fail("PI not additive");
    }
    auto va = adcock_carlsson(a, 2.0), vb = adcock_carlsson(b, 2.0), vu = adcock_carlsson(u, 2.0);
    for (int k = 0; k < 4; ++k) {
      if (rel_diff(vu[k], va[k] + vb[k], std::fabs(vu[k])) > 1e-9) out.fail("AC not additive");
    }
  }

  PIConfig wide;
  wide.bandwidth = 0.02;
  wide.resolution = 40;
  wide.birth_range = {-6 * wide.bandwidth, 1.0 + 6 * wide.bandwidth};
  wide.persistence_range = {-6 * wide.bandwidth, 0.8 + 6 * wide.bandwidth};
  for (int t = 0; t < 20; ++t) {
    auto d = random_diagram(rng, 30);
    double pmax = 0.0, weights = 0.0;
    for (const auto& p : d.points) pmax = std::max(pmax, p.persistence());
    for (const auto& p : d.points) weights += p.persistence() / pmax;
    auto img = persistence_image(d, wide);
    double mass = 0.0;
    for (double v : img) mass += v;
    if (std::fabs(mass - weights) > 0.01 * weights) out.fail("PI mass off by more than 1%");
  }

  Diagram ex{"x", 0, {{1, 3, 0, 1}, {0, 2, 2, 3}}};
  if (adcock_carlsson(ex, 3.0) != std::array<double, 4>{2, 2, 16, 16}) out.fail("AC example");

  auto clamped = clamp_overflow(std::vector<double>{1e40});
  if (clamped[0] != static_cast<double>(std::numeric_limits<float>::max())) out.fail("clamp of 1e40");

  if (out.ok) out.detail = "permutation, additivity, mass, AC example, clamp";
  return out;
}

Outcome bench_contract() {
  Outcome out;
  auto data = generate_shape_dataset(4, 0.1, 99, 30);
  FiltrationSpec spec;  // rips, max_dim 2, auto threshold
  BenchOptions options;
  std::size_t compared = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto records = bench_entry(i, 0, [&] { return complexes_from_cloud(data[i].cloud, spec); }, options);
    std::size_t fr = 0, l1 = 0;
    for (const auto& r : records) {
      if (is_unreduced(r.kind) && r.seconds.reduce != 0.0) {
        out.fail(std::string(to_string(r.kind)) + " reported reduction time on entry " + std::to_string(i));
      }
      if (is_unreduced(r.kind) && r.column_additions != 0) out.fail("unreduced kind added columns");
      if (r.kind == DiagramKind::fr) fr = r.pairs;
      if (r.kind == DiagramKind::l1) l1 = r.pairs;
    }
    if (l1 < fr) out.fail("|L1| < |FR| on entry " + std::to_string(i));
    ++compared;
  }
  if (out.ok) out.detail = std::to_string(compared) + " Rips entries";
  return out;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"triangle worked example", triangle_example},
      {"structural invariants", structural_invariants},
      {"rips ephemerality", rips_ephemerality},
      {"vectorizer properties", vectorizer_properties},
      {"bench contract", bench_contract},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s  %-26s %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
    failures += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
