#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skein {

// Edge colors indexed by edge.
using Coloring = std::vector<int>;

// Darts: 2e is the end of edge e at its first endpoint, 2e + 1 the end at
// its second endpoint. Rotations list darts counterclockwise.
struct Face {
  std::vector<int> darts;
  int degree() const { return static_cast<int>(darts.size()); }
};

class PlanarGraph {
 public:
  PlanarGraph() = default;
  // rotations hold darts. Throws InvalidArgument on inconsistent input.
  PlanarGraph(int vertex_count, std::vector<std::array<int, 2>> edges, std::vector<std::vector<int>> rotations);
  // Rotations as signed edge-ends: e >= 0 is the first endpoint of edge e,
  // -(e + 1) its second endpoint.
  static PlanarGraph from_signed(int vertex_count, std::vector<std::array<int, 2>> edges,
                                 const std::vector<std::vector<int>>& signed_rotations);
  // Straight-line drawing; rotations follow the angular order.
  static PlanarGraph from_drawing(const std::vector<std::pair<double, double>>& points,
                                  std::vector<std::array<int, 2>> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::array<int, 2>& edge(int e) const { return edges_[e]; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  const std::vector<int>& rotation(int v) const { return rot_[v]; }
  std::vector<std::vector<int>> signed_rotations() const;
  int degree(int v) const { return static_cast<int>(rot_[v].size()); }
  int dart_vertex(int d) const { return edges_[d >> 1][d & 1]; }
  int next_at_vertex(int d) const;
  int prev_at_vertex(int d) const;
  // Successor of d along its face.
  int face_next(int d) const { return next_at_vertex(d ^ 1); }

  std::vector<Face> faces() const;
  // Face index of every dart, consistent with faces().
  std::vector<int> dart_faces() const;
  int face_count() const;
  bool is_connected() const;

  PlanarGraph mirror() const;

  // Code identifying the colored embedded graph up to isomorphism and
  // reflection. Requires a connected graph.
  std::vector<int> canonical_code(const Coloring* colors = nullptr) const;

 private:
  void index_positions();

  int vertex_count_ = 0;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::vector<int>> rot_;
  std::vector<int> pos_;  // slot of each dart in its rotation
};

int betti(const PlanarGraph& g);
PlanarGraph dual(const PlanarGraph& g);
bool isomorphic(const PlanarGraph& a, const PlanarGraph& b);
// True when b equals a up to renumbering vertices, with edges fixed and
// each edge keeping or reversing its orientation.
bool same_with_edge_identity(const PlanarGraph& a, const PlanarGraph& b);

PlanarGraph blow_up(const PlanarGraph& g, int v);
// face indexes faces().
PlanarGraph triangulate(const PlanarGraph& g, int face);

struct VertexSum {
  PlanarGraph graph;
  std::vector<int> edge_from_first;   // result edge for each edge of the first graph
  std::vector<int> edge_from_second;  // result edge for each edge of the second graph
};

// Dart k of v1's rotation is spliced with dart (shift - k) mod d of v2's.
VertexSum vertex_sum(const PlanarGraph& g1, int v1, const PlanarGraph& g2, int v2, int shift = 0);

struct Doubled {
  PlanarGraph graph;
  Coloring coloring;
  VertexSum parts;
};

// Vertex sum of g with its mirror image at v, splicing each edge with its copy.
Doubled double_at(const PlanarGraph& g, int v, const Coloring& col);

struct FamilyMember {
  PlanarGraph graph;
  std::string history;  // 'B' per blow-up, 'T' per triangulation
  int move_count = 0;
  int blow_ups = 0;
  int triangulations = 0;
};

std::vector<FamilyMember> family_enumerate(int m, std::size_t budget = 200000);

struct Diagnostics {
  bool connected = false;
  bool euler_ok = false;
  bool simple = false;
  std::optional<bool> three_connected;  // unset when not applicable
  std::vector<std::string> messages;
  bool ok() const { return connected && euler_ok && three_connected.value_or(false); }
};

Diagnostics validate(const PlanarGraph& g);

PlanarGraph fixture(const std::string& name);
std::vector<std::string> fixture_names();

// {"vertices": n, "edges": [[u,v],...], "rotations": [[signed edge-ends]], "colors": [...]}
std::string to_json(const PlanarGraph& g, const Coloring* colors = nullptr);
PlanarGraph from_json(const std::string& text, Coloring* colors = nullptr);
// Fixture name or path to a JSON file.
PlanarGraph load_graph(const std::string& ref, Coloring* colors = nullptr);

}  // namespace skein
