#include <algorithm>
#include <map>

#include "doctest.h"
#include "skein/errors.hpp"
#include "skein/planar.hpp"

using namespace skein;

namespace {

std::vector<int> face_degrees(const PlanarGraph& g) {
  std::vector<int> out;
  for (const auto& f : g.faces()) out.push_back(f.degree());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> vertex_degrees(const PlanarGraph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v) out.push_back(g.degree(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("faces of fixtures") {
  CHECK(face_degrees(fixture("tetrahedron")) == std::vector<int>{3, 3, 3, 3});
  CHECK(fixture("theta").faces().size() == 3);
  CHECK(face_degrees(fixture("square-pyramid")) == std::vector<int>{3, 3, 3, 3, 4});
  CHECK(face_degrees(fixture("cube")) == std::vector<int>(6, 4));
  CHECK(face_degrees(fixture("octahedron")) == std::vector<int>(8, 3));
  CHECK(face_degrees(fixture("prism")) == std::vector<int>{3, 3, 4, 4, 4});
  CHECK(face_degrees(fixture("pentagonal-pyramid")) == std::vector<int>{3, 3, 3, 3, 3, 5});
  for (const auto& name : fixture_names()) {
    PlanarGraph g = fixture(name);
    CHECK(g.is_connected());
    if (g.edge_count() > 0) CHECK(g.vertex_count() - g.edge_count() + g.face_count() == 2);
    // Faces partition the darts.
    std::vector<int> count(2 * g.edge_count(), 0);
    for (const auto& f : g.faces())
      for (int d : f.darts) ++count[d];
    CHECK(std::all_of(count.begin(), count.end(), [](int c) { return c == 1; }));
  }
}

TEST_CASE("rotation systems that are not sphere embeddings are rejected") {
  // K4 with one rotation reversed has genus 1.
  PlanarGraph t = fixture("tetrahedron");
  auto rot = t.signed_rotations();
  std::reverse(rot[3].begin(), rot[3].end());
  PlanarGraph bad = PlanarGraph::from_signed(4, t.edges(), rot);
  CHECK_THROWS_AS(bad.faces(), NotPlanar);
  CHECK_FALSE(validate(bad).euler_ok);
  CHECK_THROWS_AS(PlanarGraph(2, {{0, 1}}, {{0}, {0}}), InvalidArgument);
}

TEST_CASE("duals") {
  PlanarGraph tet = fixture("tetrahedron");
  CHECK(isomorphic(dual(tet), tet));
  CHECK(isomorphic(dual(fixture("cube")), fixture("octahedron")));
  CHECK(isomorphic(dual(fixture("octahedron")), fixture("cube")));
  CHECK(isomorphic(dual(fixture("theta")), fixture("triangle")));
  CHECK(isomorphic(dual(fixture("square-pyramid")), fixture("square-pyramid")));
  CHECK_FALSE(isomorphic(fixture("cube"), fixture("octahedron")));
  for (const auto& name : fixture_names()) {
    PlanarGraph g = fixture(name);
    if (g.edge_count() == 0) continue;
    PlanarGraph d = dual(g);
    CHECK(d.edge_count() == g.edge_count());
    CHECK(d.face_count() == g.vertex_count());
    CHECK(betti(d) == g.edge_count() - g.face_count() + 1);
    CHECK(same_with_edge_identity(dual(d), g));
  }
}

TEST_CASE("betti numbers") {
  CHECK(betti(fixture("tetrahedron")) == 3);
  CHECK(betti(fixture("theta")) == 2);
  CHECK(betti(fixture("vertex")) == 0);
}

TEST_CASE("blow-up and triangulation") {
  PlanarGraph tet = fixture("tetrahedron");
  for (int v = 0; v < 4; ++v) {
    PlanarGraph b = blow_up(tet, v);
    CHECK(b.vertex_count() == 6);
    CHECK(b.edge_count() == 9);
    CHECK(betti(b) == betti(tet) + 1);
    CHECK(isomorphic(b, fixture("prism")));
    CHECK(validate(b).ok());
  }
  PlanarGraph all = tet;
  for (int v = 0; v < 4; ++v) all = blow_up(all, v);
  CHECK(all.vertex_count() == 12);
  CHECK(all.edge_count() == 18);
  CHECK(face_degrees(all) == std::vector<int>{3, 3, 3, 3, 6, 6, 6, 6});

  auto fs = tet.faces();
  for (int f = 0; f < 4; ++f) {
    PlanarGraph t = triangulate(tet, f);
    CHECK(t.vertex_count() == 5);
    CHECK(t.edge_count() == 9);
    CHECK(betti(t) - betti(tet) == 2);
    CHECK(face_degrees(t) == std::vector<int>(6, 3));
    CHECK(vertex_degrees(t) == std::vector<int>{3, 3, 4, 4, 4});
    CHECK(validate(t).ok());
    // The dual face of f is the vertex of the dual with the same index.
    CHECK(isomorphic(dual(t), blow_up(dual(tet), f)));
  }
  CHECK_THROWS_AS(blow_up(fixture("square-pyramid"), 0), NotTrivalent);
  PlanarGraph cube = fixture("cube");
  CHECK_THROWS_AS(triangulate(cube, 0), NotTriangle);
}

TEST_CASE("vertex sums") {
  PlanarGraph tet = fixture("tetrahedron");
  VertexSum s = vertex_sum(tet, 3, tet, 0);
  CHECK(s.graph.vertex_count() == 6);
  CHECK(s.graph.edge_count() == 9);
  CHECK(isomorphic(s.graph, fixture("prism")));
  PlanarGraph prism = fixture("prism");
  VertexSum a = vertex_sum(prism, 0, tet, 1);
  VertexSum b = vertex_sum(tet, 1, prism, 0);
  CHECK(isomorphic(a.graph, b.graph));
  CHECK(a.graph.vertex_count() == prism.vertex_count() + 2);
  CHECK(validate(a.graph).euler_ok);
  CHECK_THROWS_AS(vertex_sum(tet, 0, fixture("square-pyramid"), 0), NotTrivalent);
}

TEST_CASE("doubling") {
  PlanarGraph sq = fixture("square-pyramid");
  Coloring col{2, 4, 2, 4, 0, 2, 4, 6};
  Doubled d = double_at(sq, 0, col);
  CHECK(d.graph.vertex_count() == 2 * sq.vertex_count() - 2);
  CHECK(d.graph.edge_count() == 2 * sq.edge_count() - sq.degree(0));
  CHECK(validate(d.graph).euler_ok);
  for (int e = 0; e < sq.edge_count(); ++e) {
    CHECK(d.coloring[d.parts.edge_from_first[e]] == col[e]);
    CHECK(d.coloring[d.parts.edge_from_second[e]] == col[e]);
  }
  // Doubled square pyramid at the apex: two square bases joined by four edges.
  CHECK(isomorphic(d.graph, fixture("cube")));
  PlanarGraph tet = fixture("tetrahedron");
  Doubled dt = double_at(tet, 2, Coloring(6, 0));
  CHECK(isomorphic(dt.graph, vertex_sum(tet, 2, tet.mirror(), 2, 2).graph));
}

TEST_CASE("family enumeration") {
  auto m0 = family_enumerate(0);
  CHECK(m0.size() == 1);
  CHECK(isomorphic(m0[0].graph, fixture("tetrahedron")));
  auto m1 = family_enumerate(1);
  CHECK(m1.size() == 2);
  for (int m = 0; m <= 3; ++m) {
    for (const auto& f : family_enumerate(m)) {
      CHECK(f.move_count == m);
      CHECK(f.graph.edge_count() == 6 + 3 * m);
      CHECK(betti(f.graph) == 3 + f.blow_ups + 2 * f.triangulations);
      CHECK(validate(f.graph).ok());
      CHECK(same_with_edge_identity(dual(dual(f.graph)), f.graph));
      CHECK(dual(f.graph).face_count() == f.graph.vertex_count());
    }
  }
  CHECK_THROWS_AS(family_enumerate(3, 10), BudgetExceeded);
}

TEST_CASE("validation report") {
  CHECK(validate(fixture("tetrahedron")).ok());
  Diagnostics th = validate(fixture("theta"));
  CHECK_FALSE(th.simple);
  CHECK_FALSE(th.three_connected.has_value());
  // Two triangles sharing a vertex.
  PlanarGraph bow = PlanarGraph::from_drawing({{0, 0}, {-5, 3}, {-5, -3}, {5, 3}, {5, -3}},
                                              {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  Diagnostics bd = validate(bow);
  CHECK(bd.connected);
  CHECK(bd.euler_ok);
  CHECK(bd.three_connected.has_value());
  CHECK_FALSE(*bd.three_connected);
  CHECK_FALSE(bd.ok());
}

TEST_CASE("canonical codes see colors and ignore labels") {
  PlanarGraph tet = fixture("tetrahedron");
  Coloring a{2, 2, 4, 0, 2, 2};
  CHECK(tet.canonical_code(&a) == tet.mirror().canonical_code(&a));
  Coloring c{2, 2, 2, 2, 2, 4};
  CHECK(tet.canonical_code(&a) != tet.canonical_code(&c));
}

TEST_CASE("json round trip") {
  for (const auto& name : fixture_names()) {
    PlanarGraph g = fixture(name);
    Coloring col(g.edge_count(), 2);
    Coloring back;
    PlanarGraph h = from_json(to_json(g, &col), &back);
    CHECK(h.edges() == g.edges());
    CHECK(h.signed_rotations() == g.signed_rotations());
    CHECK(back == col);
  }
  CHECK_THROWS_AS(from_json("{\"vertices\": 2}"), InvalidArgument);
  CHECK(isomorphic(load_graph("cube"), fixture("cube")));
}
