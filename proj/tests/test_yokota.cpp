#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "skein/bracket.hpp"
#include "skein/errors.hpp"
#include "skein/yokota.hpp"

using namespace skein;

namespace {

void all_colorings(int edges, const Level& lvl, const std::function<void(const Coloring&)>& f) {
  auto colors = lvl.colors();
  Coloring c(edges, 0);
  std::vector<std::size_t> idx(edges, 0);
  for (;;) {
    for (int e = 0; e < edges; ++e) c[e] = colors[idx[e]];
    f(c);
    int k = 0;
    while (k < edges && ++idx[k] == colors.size()) idx[k++] = 0;
    if (k == edges) return;
  }
}

bool close(const ExtScalar& a, const ExtScalar& b, double tol, double floor = 1e-12) {
  double scale = std::max({std::abs(a.to_complex()), std::abs(b.to_complex()), floor});
  return std::abs((a - b).to_complex()) <= tol * scale;
}

PlanarGraph hex_pyramid() {
  std::vector<std::pair<double, double>> p{{0, 0}};
  std::vector<std::array<int, 2>> e;
  for (int k = 0; k < 6; ++k) {
    double a = 2 * std::numbers::pi * k / 6 + 0.1;
    p.push_back({10 * std::cos(a), 10 * std::sin(a)});
    e.push_back({0, k + 1});
  }
  for (int k = 0; k < 6; ++k) e.push_back({k + 1, (k + 1) % 6 + 1});
  return PlanarGraph::from_drawing(p, e);
}

}  // namespace

TEST_CASE("desingularization") {
  PlanarGraph tet = fixture("tetrahedron");
  Desingularization d0 = desingularize(tet);
  CHECK(d0.added_edges.empty());
  CHECK(same_with_edge_identity(d0.result, tet));

  PlanarGraph sq = fixture("square-pyramid");
  Desingularization d1 = desingularize(sq);
  CHECK(d1.added_edges.size() == 1);
  CHECK(d1.result.vertex_count() == 6);
  CHECK(validate(d1.result).euler_ok);
  for (int v = 0; v < d1.result.vertex_count(); ++v) CHECK(d1.result.degree(v) == 3);

  PlanarGraph hex = hex_pyramid();
  for (int shift = 0; shift < 6; ++shift) {
    Desingularization d = desingularize(hex, {shift});
    CHECK(d.added_edges.size() == 3);
    CHECK(d.fans.size() == 1);
    CHECK(d.fans[0].vertices.size() == 4);
    CHECK(validate(d.result).euler_ok);
    for (int v = 0; v < d.result.vertex_count(); ++v) CHECK(d.result.degree(v) == 3);
  }
  CHECK(desingularize(fixture("octahedron")).added_edges.size() == 6);
  CHECK_THROWS_AS(desingularize(fixture("triangle")), LowValence);
}

TEST_CASE("yokota examples") {
  Level r5(5);
  CHECK(yokota(fixture("vertex"), {}, r5).real() == 1.0);
  CHECK(yokota(fixture("tetrahedron"), Coloring(6, 2), r5).real() == doctest::Approx(6.854102).epsilon(1e-6));
  // Valence-1 and valence-2 rules.
  PlanarGraph stick(2, {{0, 1}}, {{0}, {1}});
  CHECK(yokota(stick, {0}, r5).real() == 1.0);
  CHECK(yokota(stick, {2}, r5).is_zero());
  Level r7(7);
  for (int c : r7.colors()) {
    double d = circle_value(c, r7);
    CHECK(yokota(fixture("circle"), {c}, r7).real() == doctest::Approx(d));
    CHECK(yokota(fixture("triangle"), {c, c, c}, r7).real() == doctest::Approx(1.0 / d));
  }
  CHECK(yokota(fixture("triangle"), {2, 2, 4}, r7).is_zero());
}

TEST_CASE("trivalent yokota is the squared bracket") {
  std::mt19937 rng(1);
  Level lvl(7);
  PlanarGraph cube = fixture("cube");
  auto colors = lvl.colors();
  int seen = 0;
  while (seen < 10) {
    Coloring c(12);
    for (auto& x : c) x = colors[rng() % colors.size()];
    ExtScalar b = bracket(cube, c, lvl);
    if (b.is_zero()) continue;
    ++seen;
    CHECK(close(yokota(cube, c, lvl), b * b, 1e-10));
  }
}

TEST_CASE("desingularization independence") {
  Level lvl(7);
  PlanarGraph sq = fixture("square-pyramid");
  int nonzero = 0;
  all_colorings(sq.edge_count(), lvl, [&](const Coloring& c) {
    YokotaOptions alt;
    alt.anchor_shift = {1};
    ExtScalar a = yokota(sq, c, lvl), b = yokota(sq, c, lvl, alt);
    CHECK(close(a, b, 1e-9));
    if (!a.is_zero()) ++nonzero;
  });
  CHECK(nonzero > 0);
  Level r5(5);
  PlanarGraph oct = fixture("octahedron");
  std::mt19937 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    Coloring c(12);
    for (auto& x : c) x = r5.colors()[rng() % 2];
    YokotaOptions alt;
    alt.anchor_shift = std::vector<int>(6, 1);
    CHECK(close(yokota(oct, c, r5), yokota(oct, c, r5, alt), 1e-9));
  }
}

TEST_CASE("doubling squares the invariant") {
  Level lvl(5);
  PlanarGraph sq = fixture("square-pyramid");
  all_colorings(sq.edge_count(), lvl, [&](const Coloring& c) {
    Doubled d = double_at(sq, 0, c);
    ExtScalar y = yokota(sq, c, lvl);
    CHECK(close(yokota(d.graph, d.coloring, lvl), y * y, 1e-9));
  });
}

TEST_CASE("vertex sums multiply") {
  Level lvl(7);
  PlanarGraph sq = fixture("square-pyramid");
  PlanarGraph tet = fixture("tetrahedron");
  std::mt19937 rng(8);
  // Base vertex 1 of the pyramid is trivalent.
  REQUIRE(sq.degree(1) == 3);
  int checked = 0;
  for (int trial = 0; trial < 5000 && checked < 15; ++trial) {
    Coloring c1(sq.edge_count()), c2(6);
    for (auto& x : c1) x = lvl.colors()[rng() % 3];
    for (auto& x : c2) x = lvl.colors()[rng() % 3];
    const auto& r1 = sq.rotation(1);
    const auto& r2 = tet.rotation(0);
    for (int k = 0; k < 3; ++k) c2[r2[(3 - k) % 3] >> 1] = c1[r1[k] >> 1];
    ExtScalar y1 = yokota(sq, c1, lvl), y2 = yokota(tet, c2, lvl);
    if (y1.is_zero() || y2.is_zero()) continue;
    ++checked;
    VertexSum s = vertex_sum(sq, 1, tet, 0);
    Coloring c(s.graph.edge_count());
    for (int e = 0; e < sq.edge_count(); ++e) c[s.edge_from_first[e]] = c1[e];
    for (int e = 0; e < 6; ++e) c[s.edge_from_second[e]] = c2[e];
    CHECK(close(yokota(s.graph, c, lvl), y1 * y2, 1e-9));
  }
  CHECK(checked > 5);
}

TEST_CASE("Kirby-colored graphs give powers of N") {
  for (int r : {5, 7}) {
    Level lvl(r);
    double n = kirby_norm(lvl);
    for (const char* name : {"theta", "tetrahedron", "prism", "square-pyramid"}) {
      PlanarGraph g = fixture(name);
      ExtScalar want = ExtScalar(n).pow(betti(g));
      CHECK(close(yokota_kirby(g, lvl), want, 1e-9));
    }
  }
  CHECK(yokota_kirby(fixture("theta"), Level(5)).real() == doctest::Approx(1.909830).epsilon(1e-6));
}

TEST_CASE("hopf pairing") {
  Level lvl(31);
  for (int i : lvl.colors())
    for (int j : lvl.colors()) {
      CHECK(hopf(i, j, lvl) == doctest::Approx(hopf(j, i, lvl)));
      CHECK(std::abs(hopf(i, j, lvl) - hopf_sine(i, j, lvl)) < 1e-12);
    }
  CHECK(hopf(0, 0, lvl) == doctest::Approx(1.0));
  for (int r : {5, 7, 9, 11, 31, 101}) {
    Level l(r);
    int c = maximizing_color(l);
    int pos = 0, neg = 0;
    for (int j : l.colors()) (hopf(c, j, l) > 0 ? pos : neg)++;
    CHECK((pos == 0 || neg == 0));
  }
}

TEST_CASE("maximizing coloring") {
  PlanarGraph tet = fixture("tetrahedron");
  CHECK(maximizing_coloring(tet, Level(5)) == Coloring(6, 2));
  CHECK(maximizing_coloring(tet, Level(7)) == Coloring(6, 2));
  CHECK(maximizing_coloring(tet, Level(9)) == Coloring(6, 4));
}

TEST_CASE("Fourier transform to the dual") {
  Level r7(7);
  PlanarGraph th = fixture("theta");
  PlanarGraph tri = dual(th);
  all_colorings(3, r7, [&](const Coloring& c) {
    CHECK(close(fourier_dual(th, r7, c), yokota(tri, c, r7), 1e-9, 1.0));
  });
  Level r5(5);
  PlanarGraph tet = fixture("tetrahedron");
  PlanarGraph tetd = dual(tet);
  CHECK(fourier_dual(tet, r5, Coloring(6, 2)).real() == doctest::Approx(6.854102).epsilon(1e-6));
  all_colorings(6, r5, [&](const Coloring& c) {
    CHECK(close(fourier_dual(tet, r5, c), yokota(tetd, c, r5), 1e-8, 1.0));
  });
  PlanarGraph cube = fixture("cube");
  PlanarGraph oct = dual(cube);
  std::mt19937 rng(2);
  for (int trial = 0; trial < 6; ++trial) {
    Coloring c(12);
    for (auto& x : c) x = r5.colors()[rng() % 2];
    CHECK(close(fourier_dual(cube, r5, c), yokota(oct, c, r5), 1e-8, 1.0));
  }
}

TEST_CASE("graph Turaev-Viro sums") {
  CHECK(tv_graph(fixture("tetrahedron"), Level(3)).real() == doctest::Approx(1.0));
  Level r5(5);
  double want = 0.0;
  all_colorings(6, r5, [&](const Coloring& c) {
    SixTuple t{c[0], c[1], c[2], c[5], c[4], c[3]};
    want += std::norm(sixj(t, r5).to_complex());
  });
  CHECK(tv_graph(fixture("tetrahedron"), r5).real() == doctest::Approx(want).epsilon(1e-10));
  YokotaOptions one, four;
  one.threads = 1;
  four.threads = 4;
  Level r7(7);
  PlanarGraph prism = fixture("prism");
  CHECK(tv_graph(prism, r7, one) == tv_graph(prism, r7, four));
  YokotaOptions tiny;
  tiny.budget = 100;
  CHECK_THROWS_AS(tv_graph(prism, r7, tiny), BudgetExceeded);
}

TEST_CASE("transform terms share a sign at the maximizing coloring") {
  PlanarGraph g = triangulate(fixture("tetrahedron"), 0);
  for (int r : {7, 11}) {
    SignReport s = constant_sign_terms(g, Level(r));
    CHECK(s.terms > 0);
    CHECK(s.constant_sign());
    CHECK(s.positive + s.negative == s.terms);
  }
  CHECK(constant_sign_terms(fixture("tetrahedron"), Level(7)).constant_sign());
}

TEST_CASE("graph and dual Turaev-Viro sums differ polynomially in r") {
  // Prism against its dual bipyramid; the square pyramid is self-dual.
  PlanarGraph p = fixture("prism");
  PlanarGraph d = dual(p);
  std::vector<double> diff, logr;
  YokotaOptions big;
  big.budget = 1000000000;
  for (int r = 5; r <= 11; r += 2) {
    Level lvl(r);
    diff.push_back(tv_graph(p, lvl, big).log_abs() - tv_graph(d, lvl, big).log_abs());
    logr.push_back(std::log(r));
  }
  // C = 2, calibrated on r <= 13 where |diff| / log r stays below 0.9.
  for (std::size_t k = 0; k < diff.size(); ++k) CHECK(std::fabs(diff[k]) <= 2.0 * logr[k]);
  // Steps in r shrink (not linear) while steps in log r stay bounded (logarithmic).
  for (std::size_t k = 2; k < diff.size(); ++k)
    CHECK(std::fabs(diff[k] - diff[k - 1]) < std::fabs(diff[k - 1] - diff[k - 2]));
  for (std::size_t k = 1; k < diff.size(); ++k)
    CHECK(std::fabs(diff[k] - diff[k - 1]) <= 2.0 * (logr[k] - logr[k - 1]));
}
