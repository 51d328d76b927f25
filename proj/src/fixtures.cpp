#include <cmath>
#include <numbers>

#include "skein/errors.hpp"
#include "skein/planar.hpp"

namespace skein {

namespace {

using Points = std::vector<std::pair<double, double>>;
using Edges = std::vector<std::array<int, 2>>;

Points ring(int n, double radius, double phase) {
  Points p;
  for (int k = 0; k < n; ++k) {
    double a = phase + 2.0 * std::numbers::pi * k / n;
    p.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return p;
}

// Apex at the origin joined to a base cycle; spokes are edges 0..n-1.
PlanarGraph wheel(int n) {
  Points p{{0.0, 0.0}};
  for (auto q : ring(n, 10.0, 0.3)) p.push_back(q);
  Edges e;
  for (int k = 1; k <= n; ++k) e.push_back({0, k});
  for (int k = 1; k <= n; ++k) e.push_back({k, k % n + 1});
  return PlanarGraph::from_drawing(p, e);
}

// Two nested n-cycles joined by spokes.
PlanarGraph prism_graph(int n) {
  Points p = ring(n, 10.0, 0.3);
  for (auto q : ring(n, 4.0, 0.3)) p.push_back(q);
  Edges e;
  for (int k = 0; k < n; ++k) e.push_back({k, (k + 1) % n});
  for (int k = 0; k < n; ++k) e.push_back({n + k, n + (k + 1) % n});
  for (int k = 0; k < n; ++k) e.push_back({k, n + k});
  return PlanarGraph::from_drawing(p, e);
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"vertex", "circle", "theta", "triangle", "tetrahedron", "prism", "cube",
          "octahedron", "square-pyramid", "pentagonal-pyramid"};
}

PlanarGraph fixture(const std::string& name) {
  if (name == "vertex") return PlanarGraph(1, {}, {{}});
  if (name == "circle") return PlanarGraph(1, {{0, 0}}, {{0, 1}});
  if (name == "theta") return PlanarGraph(2, {{0, 1}, {0, 1}, {0, 1}}, {{0, 2, 4}, {5, 3, 1}});
  if (name == "triangle") return PlanarGraph::from_drawing(ring(3, 10.0, 0.3), {{0, 1}, {1, 2}, {2, 0}});
  if (name == "tetrahedron") {
    return PlanarGraph::from_drawing({{0, 10}, {-9, -5}, {9, -5}, {0, 0}},
                                     {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  }
  if (name == "prism") return prism_graph(3);
  if (name == "cube") return prism_graph(4);
  if (name == "octahedron") {
    return PlanarGraph::from_drawing(
        {{0, 10}, {-9, -5}, {9, -5}, {0, -3}, {2.6, 1.5}, {-2.6, 1.5}},
        {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {3, 1}, {3, 2}, {4, 0}, {4, 2}, {5, 0}, {5, 1}});
  }
  if (name == "square-pyramid") return wheel(4);
  if (name == "pentagonal-pyramid") return wheel(5);
  throw InvalidArgument("unknown fixture: " + name);
}

}  // namespace skein
