#include <functional>
#include <random>

#include "doctest.h"
#include "skein/bracket.hpp"
#include "skein/errors.hpp"

using namespace skein;

namespace {

// Tetrahedron fixture edges (0,1),(0,2),(0,3),(1,2),(1,3),(2,3) as a tuple.
SixTuple tet_tuple(const Coloring& c) { return {c[0], c[1], c[2], c[5], c[4], c[3]}; }

bool admissible_everywhere(const PlanarGraph& g, const Coloring& col, const Level& lvl) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& r = g.rotation(v);
    if (r.size() == 3 && !is_admissible_triple(col[r[0] >> 1], col[r[1] >> 1], col[r[2] >> 1], lvl)) return false;
  }
  return true;
}

Coloring random_admissible(const PlanarGraph& g, const Level& lvl, std::mt19937& rng) {
  auto colors = lvl.colors();
  for (;;) {
    Coloring c(g.edge_count());
    for (auto& x : c) x = colors[rng() % colors.size()];
    if (admissible_everywhere(g, c, lvl)) return c;
  }
}

void for_each_coloring(int edges, const Level& lvl, const std::function<void(const Coloring&)>& f) {
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

}  // namespace

TEST_CASE("tetrahedron bracket is the 6j-symbol") {
  for (int r : {5, 7}) {
    Level lvl(r);
    PlanarGraph tet = fixture("tetrahedron");
    int nonzero = 0;
    for_each_coloring(6, lvl, [&](const Coloring& c) {
      ExtScalar b = bracket(tet, c, lvl);
      ExtScalar s = sixj(tet_tuple(c), lvl);
      CHECK(rel_diff(b, s) < 1e-10);
      CHECK(rel_diff(bracket(tet.mirror(), c, lvl), b) < 1e-10);
      if (!b.is_zero()) ++nonzero;
    });
    CHECK(nonzero > 0);
  }
}

TEST_CASE("theta, circle and the empty graph") {
  Level lvl(9);
  PlanarGraph th = fixture("theta");
  for_each_coloring(3, lvl, [&](const Coloring& c) {
    double want = is_admissible_triple(c[0], c[1], c[2], lvl) ? 1.0 : 0.0;
    CHECK(std::abs(bracket(th, c, lvl).to_complex() - std::complex<double>(want)) < 1e-12);
  });
  for (int c : lvl.colors()) CHECK(bracket(fixture("circle"), {c}, lvl).real() == doctest::Approx(circle_value(c, lvl)));
  CHECK(bracket(fixture("vertex"), {}, lvl).real() == 1.0);
  // Two valence-2 vertices on a circle with mismatched colors.
  PlanarGraph two(2, {{0, 1}, {1, 0}}, {{0, 3}, {1, 2}});
  CHECK(bracket(two, {2, 2}, lvl).real() == doctest::Approx(circle_value(2, lvl)));
  CHECK(bracket(two, {2, 4}, lvl).is_zero());
}

TEST_CASE("bad input") {
  Level lvl(7);
  PlanarGraph sq = fixture("square-pyramid");
  CHECK_THROWS_AS(bracket(sq, Coloring(8, 0), lvl), NotTrivalent);
  CHECK_THROWS_AS(bracket(fixture("theta"), {2, 2}, lvl), InvalidArgument);
  CHECK_THROWS_AS(bracket(fixture("theta"), {2, 2, 3}, lvl), InvalidArgument);
  CHECK(bracket(fixture("theta"), {4, 4, 4}, lvl).is_zero());
}

TEST_CASE("reduction order does not matter") {
  std::mt19937 rng(11);
  for (const char* name : {"prism", "cube", "tetrahedron"}) {
    PlanarGraph g = fixture(name);
    for (int r : {5, 7}) {
      Level lvl(r);
      for (int trial = 0; trial < 12; ++trial) {
        Coloring c = random_admissible(g, lvl, rng);
        ExtScalar ref = bracket(g, c, lvl);
        for (std::uint64_t seed : {1ULL, 2ULL, 977ULL}) {
          BracketOptions opt;
          opt.face_order_seed = seed;
          ExtScalar b = bracket(g, c, lvl, opt);
          CHECK(std::abs((b - ref).to_complex()) <= 1e-10 * std::max(1.0, std::abs(ref.to_complex())));
        }
        CHECK(rel_diff(bracket(g.mirror(), c, lvl), ref) < 1e-10);
      }
    }
  }
}

TEST_CASE("square of the bracket") {
  std::mt19937 rng(5);
  Level lvl(7);
  PlanarGraph g = fixture("cube");
  for (int trial = 0; trial < 10; ++trial) {
    Coloring c = random_admissible(g, lvl, rng);
    ExtScalar b = bracket(g, c, lvl);
    CHECK(std::abs((b * b - bracket_squared(g, c, lvl)).to_complex()) < 1e-10);
    CHECK(std::abs(std::abs(b.to_complex()) - std::abs(bracket_real(g, c, lvl).to_complex())) < 1e-10);
  }
}

TEST_CASE("fusion of two strands on a face") {
  for (int r : {5, 7, 9}) {
    Level lvl(r);
    for (const char* name : {"theta", "tetrahedron", "prism"}) {
      PlanarGraph g = fixture(name);
      std::mt19937 rng(r);
      for (int trial = 0; trial < 4; ++trial) {
        Coloring col = random_admissible(g, lvl, rng);
        for (const auto& f : g.faces()) {
          for (std::size_t i = 0; i < f.darts.size(); ++i)
            for (std::size_t j = i + 1; j < f.darts.size(); ++j) {
              int d1 = f.darts[i], d2 = f.darts[j];
              if ((d1 >> 1) == (d2 >> 1)) continue;
              ExtScalar sum(0.0);
              for (const auto& t : fuse(g, col, d1, d2, lvl)) {
                CHECK(t.graph.faces().size() == g.faces().size() + 1);
                sum += ExtScalar(t.weight) * bracket(t.graph, t.coloring, lvl);
              }
              ExtScalar want = bracket(g, col, lvl);
              CHECK(std::abs((sum - want).to_complex()) < 1e-9 * std::max(1.0, std::abs(want.to_complex())));
            }
        }
      }
    }
  }
}

TEST_CASE("vertex sums multiply") {
  std::mt19937 rng(3);
  Level lvl(7);
  PlanarGraph tet = fixture("tetrahedron");
  PlanarGraph prism = fixture("prism");
  for (int trial = 0; trial < 20; ++trial) {
    Coloring c1 = random_admissible(tet, lvl, rng);
    Coloring c2 = random_admissible(prism, lvl, rng);
    // Match the colors at the joined vertices: v1 = 3 of tet, v2 = 0 of prism.
    const auto& r1 = tet.rotation(3);
    const auto& r2 = prism.rotation(0);
    int shift = static_cast<int>(trial % 3);
    for (int k = 0; k < 3; ++k) c2[r2[((shift - k) % 3 + 3) % 3] >> 1] = c1[r1[k] >> 1];
    if (!admissible_everywhere(prism, c2, lvl)) continue;
    VertexSum s = vertex_sum(tet, 3, prism, 0, shift);
    Coloring c(s.graph.edge_count());
    for (int e = 0; e < tet.edge_count(); ++e) c[s.edge_from_first[e]] = c1[e];
    for (int e = 0; e < prism.edge_count(); ++e) c[s.edge_from_second[e]] = c2[e];
    ExtScalar prod = bracket(tet, c1, lvl) * bracket(prism, c2, lvl);
    ExtScalar sum = bracket(s.graph, c, lvl);
    CHECK(std::abs((sum - prod).to_complex()) < 1e-9 * std::max(1.0, std::abs(prod.to_complex())));
  }
}

TEST_CASE("memoization is transparent") {
  Level lvl(7);
  PlanarGraph g = fixture("cube");
  std::mt19937 rng(9);
  Coloring c = random_admissible(g, lvl, rng);
  clear_bracket_cache();
  ExtScalar a = bracket(g, c, lvl);
  BracketOptions off;
  off.memoize = false;
  CHECK(rel_diff(a, bracket(g, c, lvl, off)) < 1e-12);
  std::uint64_t before = bracket_work_counter();
  bracket(g, c, lvl);
  CHECK(bracket_work_counter() == before);
}

TEST_CASE("Kirby-colored edges") {
  Level lvl(5);
  PlanarGraph th = fixture("theta");
  KirbyDistribution d{{true, false, false}, {0, 2, 2}};
  // Sum over the admissible i with (i, 2, 2): weights d_i.
  double want = 0.0;
  for (int i : lvl.colors())
    if (is_admissible_triple(i, 2, 2, lvl)) want += circle_value(i, lvl);
  CHECK(bracket_distribution(th, d, lvl).real() == doctest::Approx(want));
}
