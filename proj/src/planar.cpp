#include "skein/planar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "canon.hpp"
#include "json.hpp"
#include "skein/errors.hpp"

namespace skein {

PlanarGraph::PlanarGraph(int vertex_count, std::vector<std::array<int, 2>> edges,
                         std::vector<std::vector<int>> rotations)
    : vertex_count_(vertex_count), edges_(std::move(edges)), rot_(std::move(rotations)) {
  if (vertex_count_ < 0 || static_cast<int>(rot_.size()) != vertex_count_) {
    throw InvalidArgument("rotation count does not match vertex count");
  }
  for (const auto& e : edges_) {
    for (int x : e) {
      if (x < 0 || x >= vertex_count_) throw InvalidArgument("edge endpoint out of range");
    }
  }
  std::vector<int> seen(2 * edges_.size(), 0);
  for (int v = 0; v < vertex_count_; ++v) {
    for (int d : rot_[v]) {
      if (d < 0 || d >= static_cast<int>(seen.size())) throw InvalidArgument("dart out of range");
      if (seen[d]++) throw InvalidArgument("edge-end listed twice");
      if (dart_vertex(d) != v) throw InvalidArgument("edge-end listed at the wrong vertex");
    }
  }
  for (int s : seen) {
    if (s != 1) throw InvalidArgument("edge-end missing from rotations");
  }
  index_positions();
}

void PlanarGraph::index_positions() {
  pos_.assign(2 * edges_.size(), 0);
  for (const auto& r : rot_) {
    for (std::size_t i = 0; i < r.size(); ++i) pos_[r[i]] = static_cast<int>(i);
  }
}

PlanarGraph PlanarGraph::from_signed(int vertex_count, std::vector<std::array<int, 2>> edges,
                                     const std::vector<std::vector<int>>& signed_rotations) {
  std::vector<std::vector<int>> rot;
  for (const auto& r : signed_rotations) {
    std::vector<int> darts;
    for (int s : r) darts.push_back(s >= 0 ? 2 * s : 2 * (-s - 1) + 1);
    rot.push_back(std::move(darts));
  }
  return PlanarGraph(vertex_count, std::move(edges), std::move(rot));
}

PlanarGraph PlanarGraph::from_drawing(const std::vector<std::pair<double, double>>& points,
                                      std::vector<std::array<int, 2>> edges) {
  int n = static_cast<int>(points.size());
  std::vector<std::vector<std::pair<double, int>>> around(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    auto [u, v] = edges[e];
    double ang_u = std::atan2(points[v].second - points[u].second, points[v].first - points[u].first);
    double ang_v = std::atan2(points[u].second - points[v].second, points[u].first - points[v].first);
    around[u].push_back({ang_u, 2 * e});
    around[v].push_back({ang_v, 2 * e + 1});
  }
  std::vector<std::vector<int>> rot(n);
  for (int v = 0; v < n; ++v) {
    std::sort(around[v].begin(), around[v].end());
    for (auto& [a, d] : around[v]) rot[v].push_back(d);
  }
  return PlanarGraph(n, std::move(edges), std::move(rot));
}

std::vector<std::vector<int>> PlanarGraph::signed_rotations() const {
  std::vector<std::vector<int>> out;
  for (const auto& r : rot_) {
    std::vector<int> s;
    for (int d : r) s.push_back(d & 1 ? -(d >> 1) - 1 : d >> 1);
    out.push_back(std::move(s));
  }
  return out;
}

int PlanarGraph::next_at_vertex(int d) const {
  const auto& r = rot_[dart_vertex(d)];
  return r[(pos_[d] + 1) % r.size()];
}

int PlanarGraph::prev_at_vertex(int d) const {
  const auto& r = rot_[dart_vertex(d)];
  return r[(pos_[d] + r.size() - 1) % r.size()];
}

std::vector<Face> PlanarGraph::faces() const {
  std::vector<Face> out;
  std::vector<char> done(2 * edges_.size(), 0);
  for (int d = 0; d < static_cast<int>(done.size()); ++d) {
    if (done[d]) continue;
    Face f;
    int x = d;
    do {
      done[x] = 1;
      f.darts.push_back(x);
      x = face_next(x);
    } while (x != d);
    out.push_back(std::move(f));
  }
  if (!edges_.empty() && is_connected() &&
      vertex_count_ - edge_count() + static_cast<int>(out.size()) != 2) {
    throw NotPlanar("rotation system is not a sphere embedding");
  }
  return out;
}

std::vector<int> PlanarGraph::dart_faces() const {
  std::vector<int> out(2 * edges_.size(), -1);
  auto fs = faces();
  for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
    for (int d : fs[i].darts) out[d] = i;
  }
  return out;
}

int PlanarGraph::face_count() const { return edges_.empty() ? 1 : static_cast<int>(faces().size()); }

bool PlanarGraph::is_connected() const {
  if (vertex_count_ == 0) return true;
  std::vector<std::vector<int>> adj(vertex_count_);
  for (const auto& e : edges_) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::vector<char> seen(vertex_count_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == vertex_count_;
}

PlanarGraph PlanarGraph::mirror() const {
  auto rot = rot_;
  for (auto& r : rot) std::reverse(r.begin(), r.end());
  return PlanarGraph(vertex_count_, edges_, std::move(rot));
}

std::vector<int> PlanarGraph::canonical_code(const Coloring* colors) const {
  if (edges_.empty()) return {vertex_count_};
  std::vector<int> darts(2 * edges_.size());
  for (int d = 0; d < static_cast<int>(darts.size()); ++d) darts[d] = d;
  return detail::canonical_code(
      darts, static_cast<int>(darts.size()),
      [this](int d, bool rev) { return rev ? prev_at_vertex(d) : next_at_vertex(d); },
      [colors](int d) { return colors ? (*colors)[d >> 1] : 0; });
}

int betti(const PlanarGraph& g) { return g.edge_count() - g.vertex_count() + 1; }

PlanarGraph dual(const PlanarGraph& g) {
  auto fs = g.faces();
  std::vector<int> face_of(2 * g.edge_count());
  for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
    for (int d : fs[i].darts) face_of[d] = i;
  }
  std::vector<std::array<int, 2>> edges(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) edges[e] = {face_of[2 * e], face_of[2 * e + 1]};
  std::vector<std::vector<int>> rot;
  for (auto& f : fs) rot.push_back(f.darts);
  return PlanarGraph(static_cast<int>(fs.size()), std::move(edges), std::move(rot));
}

bool isomorphic(const PlanarGraph& a, const PlanarGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return a.canonical_code() == b.canonical_code();
}

bool same_with_edge_identity(const PlanarGraph& a, const PlanarGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  // Vertex map induced by dart positions; darts of a map to darts of b with
  // the same edge, possibly flipped consistently per edge.
  int n = a.edge_count();
  for (int flip_all = 0; flip_all < 2; ++flip_all) {
    std::vector<int> vmap(a.vertex_count(), -1);
    bool ok = true;
    for (int e = 0; e < n && ok; ++e) {
      for (int s = 0; s < 2 && ok; ++s) {
        int va = a.edge(e)[s];
        int vb = b.edge(e)[s ^ flip_all];
        if (vmap[va] == -1) {
          vmap[va] = vb;
        } else if (vmap[va] != vb) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    for (int v = 0; v < a.vertex_count() && ok; ++v) {
      if (vmap[v] < 0) continue;
      const auto& ra = a.rotation(v);
      const auto& rb = b.rotation(vmap[v]);
      if (ra.size() != rb.size()) {
        ok = false;
        break;
      }
      if (ra.empty()) continue;
      auto it = std::find(rb.begin(), rb.end(), ra[0] ^ flip_all);
      if (it == rb.end()) {
        ok = false;
        break;
      }
      std::size_t off = it - rb.begin();
      for (std::size_t i = 0; i < ra.size(); ++i) {
        if (rb[(off + i) % rb.size()] != (ra[i] ^ flip_all)) ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

PlanarGraph blow_up(const PlanarGraph& g, int v) {
  if (v < 0 || v >= g.vertex_count() || g.degree(v) != 3) throw NotTrivalent("blow-up needs a trivalent vertex");
  int V = g.vertex_count(), E = g.edge_count();
  auto edges = g.edges();
  std::vector<std::vector<int>> rot;
  for (int u = 0; u < V; ++u) rot.push_back(g.rotation(u));
  const auto x = g.rotation(v);
  int w[3] = {v, V, V + 1};
  for (int k = 0; k < 3; ++k) edges[x[k] >> 1][x[k] & 1] = w[k];
  edges.push_back({w[0], w[1]});
  edges.push_back({w[1], w[2]});
  edges.push_back({w[2], w[0]});
  int t01 = E, t12 = E + 1, t20 = E + 2;
  rot[v] = {x[0], 2 * t01, 2 * t20 + 1};
  rot.push_back({x[1], 2 * t12, 2 * t01 + 1});
  rot.push_back({x[2], 2 * t20, 2 * t12 + 1});
  return PlanarGraph(V + 2, std::move(edges), std::move(rot));
}

PlanarGraph triangulate(const PlanarGraph& g, int face) {
  auto fs = g.faces();
  if (face < 0 || face >= static_cast<int>(fs.size()) || fs[face].degree() != 3) {
    throw NotTriangle("triangulation needs a triangular face");
  }
  int V = g.vertex_count(), E = g.edge_count();
  const auto& d = fs[face].darts;
  int u = g.dart_vertex(d[0]), v = g.dart_vertex(d[1]), w = g.dart_vertex(d[2]);
  auto edges = g.edges();
  std::vector<std::vector<int>> rot;
  for (int x = 0; x < V; ++x) rot.push_back(g.rotation(x));
  edges.push_back({V, u});
  edges.push_back({V, v});
  edges.push_back({V, w});
  auto insert_after = [&](int vertex, int after, int dart) {
    auto& r = rot[vertex];
    auto it = std::find(r.begin(), r.end(), after);
    r.insert(it + 1, dart);
  };
  insert_after(u, d[2] ^ 1, 2 * E + 1);
  insert_after(v, d[0] ^ 1, 2 * (E + 1) + 1);
  insert_after(w, d[1] ^ 1, 2 * (E + 2) + 1);
  rot.push_back({2 * E, 2 * (E + 2), 2 * (E + 1)});
  return PlanarGraph(V + 1, std::move(edges), std::move(rot));
}

VertexSum vertex_sum(const PlanarGraph& g1, int v1, const PlanarGraph& g2, int v2, int shift) {
  if (v1 < 0 || v1 >= g1.vertex_count() || v2 < 0 || v2 >= g2.vertex_count()) {
    throw InvalidArgument("vertex out of range");
  }
  int deg = g1.degree(v1);
  if (deg != g2.degree(v2)) throw NotTrivalent("vertex sum needs vertices of equal valence");
  for (int e = 0; e < g1.edge_count(); ++e) {
    if (g1.edge(e)[0] == v1 && g1.edge(e)[1] == v1) throw InvalidArgument("loop at summed vertex");
  }
  for (int e = 0; e < g2.edge_count(); ++e) {
    if (g2.edge(e)[0] == v2 && g2.edge(e)[1] == v2) throw InvalidArgument("loop at summed vertex");
  }
  const auto& x = g1.rotation(v1);
  const auto& y = g2.rotation(v2);

  // Vertex numbering: g1 without v1, then g2 without v2.
  std::vector<int> vmap1(g1.vertex_count()), vmap2(g2.vertex_count());
  int nv = 0;
  for (int v = 0; v < g1.vertex_count(); ++v) vmap1[v] = v == v1 ? -1 : nv++;
  for (int v = 0; v < g2.vertex_count(); ++v) vmap2[v] = v == v2 ? -1 : nv++;

  VertexSum out;
  out.edge_from_first.resize(g1.edge_count());
  out.edge_from_second.assign(g2.edge_count(), -1);
  std::vector<std::array<int, 2>> edges;
  for (int e = 0; e < g1.edge_count(); ++e) {
    out.edge_from_first[e] = e;
    edges.push_back({vmap1[g1.edge(e)[0]], vmap1[g1.edge(e)[1]]});
  }
  // Dart of g2 -> dart of the result.
  std::vector<int> dmap2(2 * g2.edge_count(), -1);
  std::vector<char> consumed(g2.edge_count(), 0);
  for (int k = 0; k < deg; ++k) {
    int dx = x[k];
    int dy = y[((shift - k) % deg + deg) % deg];
    int e1 = dx >> 1, e2 = dy >> 1;
    consumed[e2] = 1;
    out.edge_from_second[e2] = e1;
    int far2 = dy ^ 1;  // end of e2 away from v2
    edges[e1][dx & 1] = vmap2[g2.dart_vertex(far2)];
    dmap2[far2] = dx;
  }
  for (int e = 0; e < g2.edge_count(); ++e) {
    if (consumed[e]) continue;
    int ne = static_cast<int>(edges.size());
    out.edge_from_second[e] = ne;
    edges.push_back({vmap2[g2.edge(e)[0]], vmap2[g2.edge(e)[1]]});
    dmap2[2 * e] = 2 * ne;
    dmap2[2 * e + 1] = 2 * ne + 1;
  }
  std::vector<std::vector<int>> rot(nv);
  for (int v = 0; v < g1.vertex_count(); ++v) {
    if (v != v1) rot[vmap1[v]] = g1.rotation(v);
  }
  for (int v = 0; v < g2.vertex_count(); ++v) {
    if (v == v2) continue;
    for (int d : g2.rotation(v)) rot[vmap2[v]].push_back(dmap2[d]);
  }
  out.graph = PlanarGraph(nv, std::move(edges), std::move(rot));
  return out;
}

Doubled double_at(const PlanarGraph& g, int v, const Coloring& col) {
  if (static_cast<int>(col.size()) != g.edge_count()) throw InvalidArgument("coloring size mismatch");
  Doubled out;
  out.parts = vertex_sum(g, v, g.mirror(), v, g.degree(v) - 1);
  out.graph = out.parts.graph;
  out.coloring.assign(out.graph.edge_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    out.coloring[out.parts.edge_from_first[e]] = col[e];
    out.coloring[out.parts.edge_from_second[e]] = col[e];
  }
  return out;
}

std::vector<FamilyMember> family_enumerate(int m, std::size_t budget) {
  if (m < 0) throw InvalidArgument("move count must be non-negative");
  std::vector<FamilyMember> level{{fixture("tetrahedron"), "", 0, 0, 0}};
  std::size_t produced = 1;
  for (int step = 1; step <= m; ++step) {
    std::vector<FamilyMember> next;
    std::set<std::vector<int>> seen;
    for (const auto& member : level) {
      const PlanarGraph& g = member.graph;
      auto consider = [&](PlanarGraph h, char move) {
        if (++produced > budget) throw BudgetExceeded("family enumeration exceeded its budget");
        auto code = h.canonical_code();
        if (!seen.insert(code).second) return;
        FamilyMember f{std::move(h), member.history + move, step, member.blow_ups + (move == 'B'),
                       member.triangulations + (move == 'T')};
        next.push_back(std::move(f));
      };
      for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == 3) consider(blow_up(g, v), 'B');
      }
      auto fs = g.faces();
      for (int f = 0; f < static_cast<int>(fs.size()); ++f) {
        if (fs[f].degree() == 3) consider(triangulate(g, f), 'T');
      }
    }
    level = std::move(next);
  }
  return level;
}

Diagnostics validate(const PlanarGraph& g) {
  Diagnostics d;
  d.connected = g.is_connected();
  if (!d.connected) d.messages.push_back("graph is disconnected");
  try {
    int f = g.face_count();
    d.euler_ok = g.edge_count() == 0 || g.vertex_count() - g.edge_count() + f == 2;
  } catch (const NotPlanar&) {
    d.euler_ok = false;
  }
  if (!d.euler_ok) d.messages.push_back("Euler characteristic differs from 2");
  std::set<std::pair<int, int>> pairs;
  d.simple = true;
  for (const auto& e : g.edges()) {
    if (e[0] == e[1]) d.simple = false;
    auto key = std::minmax(e[0], e[1]);
    if (!pairs.insert(key).second) d.simple = false;
  }
  if (!d.simple) {
    d.messages.push_back("loops or parallel edges: 3-connectivity not applicable");
    return d;
  }
  int n = g.vertex_count();
  bool three = d.connected && n >= 4;
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (int a = 0; a < n && three; ++a) {
    for (int b = a; b < n && three; ++b) {
      std::vector<char> seen(n, 0);
      seen[a] = seen[b] = 1;
      int start = 0;
      while (start < n && seen[start]) ++start;
      std::vector<int> stack{start};
      seen[start] = 1;
      int count = (a == b ? 1 : 2) + 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
          if (!seen[w]) {
            seen[w] = 1;
            ++count;
            stack.push_back(w);
          }
        }
      }
      if (count != n) three = false;
    }
  }
  d.three_connected = three;
  if (!three) d.messages.push_back("graph is not 3-connected");
  return d;
}

std::string to_json(const PlanarGraph& g, const Coloring* colors) {
  nlohmann::json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edges();
  j["rotations"] = g.signed_rotations();
  if (colors) j["colors"] = *colors;
  return j.dump();
}

PlanarGraph from_json(const std::string& text, Coloring* colors) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    auto g = PlanarGraph::from_signed(j.at("vertices").get<int>(), j.at("edges").get<std::vector<std::array<int, 2>>>(),
                                      j.at("rotations").get<std::vector<std::vector<int>>>());
    if (colors && j.contains("colors")) *colors = j["colors"].get<Coloring>();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed graph JSON: ") + e.what());
  }
}

PlanarGraph load_graph(const std::string& ref, Coloring* colors) {
  auto names = fixture_names();
  if (std::find(names.begin(), names.end(), ref) != names.end()) return fixture(ref);
  std::ifstream in(ref);
  if (!in) throw InvalidArgument("unknown fixture or unreadable file: " + ref);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str(), colors);
}

}  // namespace skein
