#include "skein/bracket.hpp"

#include <atomic>
#include <cmath>
#include <list>
#include <mutex>
#include <random>
#include <unordered_map>

#include "canon.hpp"
#include "skein/errors.hpp"

namespace skein {

namespace {

// Working graph for the reduction. Live vertices are trivalent; dead edges
// have color -1 and dead vertices rot[v][0] == -1.
struct SkeinGraph {
  std::vector<int> col;
  std::vector<int> dv;  // vertex of each dart
  std::vector<int> ds;  // slot of each dart in its rotation
  std::vector<std::array<int, 3>> rot;

  int sigma(int d, bool rev = false) const { return rot[dv[d]][(ds[d] + (rev ? 2 : 1)) % 3]; }
  int face_next(int d) const { return sigma(d ^ 1); }
  int color(int d) const { return col[d >> 1]; }
  void place(int d, int v, int s) {
    rot[v][s] = d;
    dv[d] = v;
    ds[d] = s;
  }
  void kill_edge(int e) {
    col[e] = -1;
    dv[2 * e] = dv[2 * e + 1] = -1;
  }
  void kill_vertex(int v) { rot[v] = {-1, -1, -1}; }
  bool live_vertex(int v) const { return rot[v][0] >= 0; }
  // Darts of v other than x, in rotation order after x.
  std::pair<int, int> others(int v, int x) const {
    int s = ds[x];
    return {rot[v][(s + 1) % 3], rot[v][(s + 2) % 3]};
  }
};

struct Context {
  const Level& lvl;
  bool memoize;
  std::mt19937_64 rng;
  bool random;
};

std::atomic<std::uint64_t> g_work{0};

struct Key {
  int r;
  std::vector<int> code;
  bool operator==(const Key& o) const { return r == o.r && code == o.code; }
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(k.r);
    for (int x : k.code) h = (h ^ static_cast<std::uint64_t>(x)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

class Memo {
 public:
  bool get(const Key& k, ExtScalar& out) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(k);
    if (it == map_.end()) return false;
    order_.splice(order_.begin(), order_, it->second.second);
    out = it->second.first;
    return true;
  }
  void put(const Key& k, const ExtScalar& v) {
    std::lock_guard<std::mutex> lock(mu_);
    if (limit_ == 0 || map_.count(k)) return;
    order_.push_front(k);
    map_.emplace(k, std::make_pair(v, order_.begin()));
    while (map_.size() > limit_) {
      map_.erase(order_.back());
      order_.pop_back();
    }
  }
  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    map_.clear();
    order_.clear();
  }
  void set_limit(std::size_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    limit_ = n;
    while (map_.size() > limit_) {
      map_.erase(order_.back());
      order_.pop_back();
    }
  }

 private:
  std::mutex mu_;
  std::size_t limit_ = std::size_t{1} << 19;
  std::list<Key> order_;
  std::unordered_map<Key, std::pair<ExtScalar, std::list<Key>::iterator>, KeyHash> map_;
};

Memo& memo() {
  static Memo m;
  return m;
}

int theta_sign(int a, int b, int c, const Level& lvl) { return kl_theta_sign(a, b, c, lvl); }

ExtScalar sixj_real(const SixTuple& t, const Level& lvl) { return sixj_info(t, lvl).unitary_real; }

// Removes valence-2 vertex u whose remaining darts are x and y, joining the
// two strands. Returns false when their colors differ.
bool splice(SkeinGraph& g, int u, int x, int y, ExtScalar& factor, const Level& lvl) {
  if (g.color(x) != g.color(y)) return false;
  g.kill_vertex(u);
  if ((x ^ 1) == y) {
    factor *= ExtScalar(circle_value(g.color(x), lvl));
    g.kill_edge(x >> 1);
    return true;
  }
  int fy = y ^ 1;
  g.place(x, g.dv[fy], g.ds[fy]);
  g.kill_edge(y >> 1);
  return true;
}

// Checks vertex admissibility and removes 0-colored edges. Returns false
// when the value vanishes.
bool normalize(SkeinGraph& g, ExtScalar& factor, const Level& lvl) {
  for (std::size_t v = 0; v < g.rot.size(); ++v) {
    if (!g.live_vertex(static_cast<int>(v))) continue;
    const auto& r = g.rot[v];
    if (!is_admissible_triple(g.color(r[0]), g.color(r[1]), g.color(r[2]), lvl)) return false;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t e = 0; e < g.col.size(); ++e) {
      if (g.col[e] != 0) continue;
      int a = 2 * static_cast<int>(e), b = a + 1;
      int u = g.dv[a], w = g.dv[b];
      if (u == w) continue;
      auto [x, y] = g.others(u, a);
      auto [p, q] = g.others(w, b);
      double du = circle_value(g.color(x), lvl), dw = circle_value(g.color(p), lvl);
      factor /= ExtScalar(std::sqrt(std::fabs(du * dw)));
      g.kill_edge(static_cast<int>(e));
      if (!splice(g, u, x, y, factor, lvl)) return false;
      // Splicing u may have moved a dart into w; reread its rotation.
      auto [p2, q2] = g.others(w, b);
      g.dv[b] = -1;
      if (!splice(g, w, p2, q2, factor, lvl)) return false;
      changed = true;
    }
  }
  return true;
}

std::vector<SkeinGraph> components(const SkeinGraph& g) {
  std::vector<SkeinGraph> out;
  std::vector<int> seen(g.rot.size(), 0);
  for (std::size_t s = 0; s < g.rot.size(); ++s) {
    if (!g.live_vertex(static_cast<int>(s)) || seen[s]) continue;
    std::vector<int> verts{static_cast<int>(s)};
    seen[s] = 1;
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (int d : g.rot[verts[i]]) {
        int w = g.dv[d ^ 1];
        if (!seen[w]) {
          seen[w] = 1;
          verts.push_back(w);
        }
      }
    std::vector<int> vmap(g.rot.size(), -1), emap(g.col.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) vmap[verts[i]] = static_cast<int>(i);
    SkeinGraph c;
    c.rot.assign(verts.size(), {-1, -1, -1});
    for (int v : verts)
      for (int d : g.rot[v])
        if (emap[d >> 1] < 0) {
          emap[d >> 1] = static_cast<int>(c.col.size());
          c.col.push_back(g.col[d >> 1]);
        }
    c.dv.assign(2 * c.col.size(), -1);
    c.ds.assign(2 * c.col.size(), -1);
    for (int v : verts)
      for (int s2 = 0; s2 < 3; ++s2) {
        int d = g.rot[v][s2];
        c.place(2 * emap[d >> 1] + (d & 1), vmap[v], s2);
      }
    out.push_back(std::move(c));
  }
  return out;
}

ExtScalar eval_general(SkeinGraph g, Context& ctx);

// Rebuilds a trivalent component from its canonical code, so the reduction
// (and its rounding) depends only on the isomorphism class.
SkeinGraph from_code(const std::vector<int>& code) {
  std::vector<int> twin, color;
  for (std::size_t pos = 0; pos < code.size();) {
    int deg = code[pos++];
    for (int k = 0; k < deg; ++k) {
      twin.push_back(code[pos++]);
      color.push_back(code[pos++]);
    }
  }
  const int D = static_cast<int>(twin.size());
  SkeinGraph g;
  g.col.assign(D / 2, -1);
  g.dv.assign(D, -1);
  g.ds.assign(D, -1);
  g.rot.assign(D / 3, {-1, -1, -1});
  std::vector<int> dart(D, -1);
  int next = 0;
  for (int L = 0; L < D; ++L) {
    if (dart[L] >= 0) continue;
    dart[L] = 2 * next;
    dart[twin[L]] = 2 * next + 1;
    g.col[next++] = color[L];
  }
  for (int L = 0; L < D; ++L) g.place(dart[L], L / 3, L % 3);
  return g;
}

ExtScalar eval_connected(const SkeinGraph& input, Context& ctx) {
  const Level& lvl = ctx.lvl;
  const int E = static_cast<int>(input.col.size());
  if (E == 0) return ExtScalar(1.0);
  Key key;
  SkeinGraph canonical;
  if (ctx.memoize) {
    std::vector<int> darts(2 * E);
    for (int d = 0; d < 2 * E; ++d) darts[d] = d;
    key.r = lvl.r();
    key.code = detail::canonical_code(
        darts, 2 * E, [&](int d, bool rev) { return input.sigma(d, rev); },
        [&](int d) { return input.color(d); });
    ExtScalar hit;
    if (memo().get(key, hit)) return hit;
    canonical = from_code(key.code);
  }
  const SkeinGraph& g = ctx.memoize ? canonical : input;
  g_work.fetch_add(1, std::memory_order_relaxed);

  // Faces.
  std::vector<int> face_of(2 * E, -1);
  std::vector<std::vector<int>> faces;
  for (int d = 0; d < 2 * E; ++d) {
    if (face_of[d] >= 0) continue;
    std::vector<int> f;
    for (int x = d; face_of[x] < 0; x = g.face_next(x)) {
      face_of[x] = static_cast<int>(faces.size());
      f.push_back(x);
    }
    faces.push_back(std::move(f));
  }

  ExtScalar result(0.0);
  bool bridge = false;
  for (int e = 0; e < E; ++e)
    if (face_of[2 * e] == face_of[2 * e + 1]) bridge = true;

  if (!bridge) {
    std::size_t best = 0;
    if (ctx.random) {
      std::vector<std::size_t> small;
      for (std::size_t f = 0; f < faces.size(); ++f)
        if (faces[f].size() <= 3) small.push_back(f);
      if (small.empty()) {
        std::size_t mind = faces[0].size();
        for (const auto& f : faces) mind = std::min(mind, f.size());
        for (std::size_t f = 0; f < faces.size(); ++f)
          if (faces[f].size() <= mind + 1) small.push_back(f);
      }
      best = small[ctx.rng() % small.size()];
    } else {
      for (std::size_t f = 1; f < faces.size(); ++f)
        if (faces[f].size() < faces[best].size()) best = f;
    }
    const auto& F = faces[best];
    const std::size_t deg = F.size();

    if (deg == 2) {
      int d1 = F[0], d2 = F[1];
      int u = g.dv[d1], w = g.dv[d2];
      int xu = -1, xw = -1;
      for (int x : g.rot[u])
        if (x != d1 && x != (d2 ^ 1)) xu = x;
      for (int x : g.rot[w])
        if (x != d2 && x != (d1 ^ 1)) xw = x;
      int c = g.color(xu);
      if (c == g.color(xw)) {
        SkeinGraph h = g;
        ExtScalar coef(theta_sign(c, g.color(d1), g.color(d2), lvl) / circle_value(c, lvl));
        h.kill_edge(d1 >> 1);
        h.kill_edge(d2 >> 1);
        h.kill_vertex(w);
        h.kill_vertex(u);
        if ((xu ^ 1) == xw) {
          coef *= ExtScalar(circle_value(c, lvl));
          h.kill_edge(xu >> 1);
        } else {
          int fw = xw ^ 1;
          h.place(xu, h.dv[fw], h.ds[fw]);
          h.kill_edge(xw >> 1);
        }
        result = coef * eval_general(std::move(h), ctx);
      }
    } else if (deg == 3) {
      int d1 = F[0], d2 = F[1], d3 = F[2];
      int u = g.dv[d1], v = g.dv[d2], w = g.dv[d3];
      auto third = [&](int vert, int a, int b) {
        for (int x : g.rot[vert])
          if (x != a && x != b) return x;
        return -1;
      };
      int xu = third(u, d1, d3 ^ 1), xv = third(v, d2, d1 ^ 1), xw = third(w, d3, d2 ^ 1);
      SixTuple t{g.color(d1), g.color(d3), g.color(xu), g.color(xw), g.color(xv), g.color(d2)};
      ExtScalar s = sixj_real(t, lvl);
      if (!s.is_zero()) {
        SkeinGraph h = g;
        for (int d : {d1, d2, d3}) h.kill_edge(d >> 1);
        h.kill_vertex(v);
        h.kill_vertex(w);
        h.place(xu, u, 0);
        h.place(xw, u, 1);
        h.place(xv, u, 2);
        ExtScalar coef = s * ExtScalar(theta_sign(g.color(xu), g.color(xv), g.color(xw), lvl));
        result = coef * eval_general(std::move(h), ctx);
      }
    } else {
      int d = ctx.random ? F[ctx.rng() % deg] : F[0];
      int u = g.dv[d], w = g.dv[d ^ 1];
      int A = g.sigma(d, true), B = g.sigma(d);
      int Ed = g.sigma(d ^ 1), Fd = g.sigma(d ^ 1, true);
      int a = g.color(A), b = g.color(B), e = g.color(Ed), f = g.color(Fd), gc = g.color(d);
      for (int i : lvl.colors()) {
        if (!is_admissible_triple(a, e, i, lvl) || !is_admissible_triple(b, f, i, lvl)) continue;
        ExtScalar s = sixj_real({gc, a, b, i, f, e}, lvl);
        if (s.is_zero()) continue;
        SkeinGraph h = g;
        h.place(A, u, 0);
        h.place(Ed, u, 1);
        h.place(d, u, 2);
        h.place(Fd, w, 0);
        h.place(B, w, 1);
        h.place(d ^ 1, w, 2);
        h.col[d >> 1] = i;
        ExtScalar coef =
            s * ExtScalar(circle_value(i, lvl) * theta_sign(a, e, i, lvl) * theta_sign(b, f, i, lvl));
        result += coef * eval_general(std::move(h), ctx);
      }
    }
  }
  if (ctx.memoize) memo().put(key, result);
  return result;
}

ExtScalar eval_general(SkeinGraph g, Context& ctx) {
  ExtScalar factor(1.0);
  if (!normalize(g, factor, ctx.lvl)) return ExtScalar(0.0);
  for (const auto& c : components(g)) {
    factor *= eval_connected(c, ctx);
    if (factor.is_zero()) break;
  }
  return factor;
}

// Builds the working graph, suppressing valence-2 vertices. Returns false
// when the value vanishes; circle factors land in factor.
bool build(const PlanarGraph& pg, const Coloring& col, const Level& lvl, SkeinGraph& g, ExtScalar& factor) {
  const int E = pg.edge_count();
  if (static_cast<int>(col.size()) != E) throw InvalidArgument("coloring size does not match edge count");
  for (int c : col)
    if (!lvl.is_color(c)) throw InvalidArgument("invalid color " + std::to_string(c));
  g.col = col;
  g.dv.assign(2 * E, -1);
  g.ds.assign(2 * E, -1);
  g.rot.assign(pg.vertex_count(), {-1, -1, -1});
  std::vector<int> twos;
  for (int v = 0; v < pg.vertex_count(); ++v) {
    const auto& r = pg.rotation(v);
    int deg = static_cast<int>(r.size());
    if (deg == 0) continue;
    if (deg != 2 && deg != 3) throw NotTrivalent("vertex " + std::to_string(v) + " has valence " + std::to_string(deg));
    for (int s = 0; s < deg; ++s) g.place(r[s], v, s);
    if (deg == 2) twos.push_back(v);
  }
  for (int v : twos)
    if (!splice(g, v, g.rot[v][0], g.rot[v][1], factor, lvl)) return false;
  return true;
}

struct Evaluated {
  ExtScalar real;   // before phases
  ExtScalar phase;  // product of vertex and edge phases
  int theta_sign = 1;
};

Evaluated evaluate(const PlanarGraph& pg, const Coloring& col, const Level& lvl, const BracketOptions& opt) {
  SkeinGraph g;
  ExtScalar factor(1.0);
  Evaluated out{ExtScalar(0.0), ExtScalar(1.0), 1};
  if (!build(pg, col, lvl, g, factor)) return out;
  std::complex<double> phase(1.0, 0.0);
  for (std::size_t v = 0; v < g.rot.size(); ++v) {
    if (!g.live_vertex(static_cast<int>(v))) continue;
    int a = g.color(g.rot[v][0]), b = g.color(g.rot[v][1]), c = g.color(g.rot[v][2]);
    if (!is_admissible_triple(a, b, c, lvl)) return out;
    int th = theta_weight(a, b, c, lvl).sign();
    int s = (a + b + c) / 2;
    int fs = quantum_factorial(s - a, lvl).sign() * quantum_factorial(s - b, lvl).sign() *
             quantum_factorial(s - c, lvl).sign();
    out.theta_sign *= th;
    phase *= static_cast<double>(fs);
    if (th < 0) phase *= std::complex<double>(0.0, -1.0);
  }
  for (int c : g.col)
    if (c >= 0) phase *= static_cast<double>(quantum_factorial(c, lvl).sign());
  out.phase = ExtScalar(phase);
  Context ctx{lvl, opt.memoize && opt.face_order_seed == 0, std::mt19937_64(opt.face_order_seed),
              opt.face_order_seed != 0};
  out.real = factor * eval_general(std::move(g), ctx);
  return out;
}

}  // namespace

ExtScalar bracket_real(const PlanarGraph& g, const Coloring& col, const Level& lvl, const BracketOptions& opt) {
  return evaluate(g, col, lvl, opt).real;
}

ExtScalar bracket(const PlanarGraph& g, const Coloring& col, const Level& lvl, const BracketOptions& opt) {
  Evaluated ev = evaluate(g, col, lvl, opt);
  return ev.real * ev.phase;
}

ExtScalar bracket_squared(const PlanarGraph& g, const Coloring& col, const Level& lvl, const BracketOptions& opt) {
  Evaluated ev = evaluate(g, col, lvl, opt);
  return ev.real * ev.real * ExtScalar(static_cast<double>(ev.theta_sign));
}

ExtScalar bracket_distribution(const PlanarGraph& g, const KirbyDistribution& dist, const Level& lvl) {
  const int E = g.edge_count();
  if (static_cast<int>(dist.marked.size()) != E || static_cast<int>(dist.base.size()) != E)
    throw InvalidArgument("distribution size does not match edge count");
  std::vector<int> marked;
  for (int e = 0; e < E; ++e)
    if (dist.marked[e]) marked.push_back(e);
  const auto colors = lvl.colors();
  Coloring col = dist.base;
  std::vector<std::size_t> idx(marked.size(), 0);
  ExtScalar total(0.0);
  while (true) {
    double w = 1.0;
    for (std::size_t k = 0; k < marked.size(); ++k) {
      col[marked[k]] = colors[idx[k]];
      w *= circle_value(colors[idx[k]], lvl);
    }
    total += ExtScalar(w) * bracket(g, col, lvl);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == colors.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return total;
}

std::vector<FusionTerm> fuse(const PlanarGraph& g, const Coloring& col, int d1, int d2, const Level& lvl) {
  const int E = g.edge_count();
  if (d1 < 0 || d2 < 0 || d1 >= 2 * E || d2 >= 2 * E || (d1 >> 1) == (d2 >> 1))
    throw InvalidArgument("fusion needs darts of two different edges");
  auto df = g.dart_faces();
  if (df[d1] != df[d2]) throw InvalidArgument("fusion darts must lie on a common face");
  const int V = g.vertex_count();
  const int p = V, pp = V + 1;
  const int e1 = d1 >> 1, e2 = d2 >> 1;
  const int E1 = E, E2 = E + 1, I = E + 2;
  auto edges = g.edges();
  int b1 = g.dart_vertex(d1 ^ 1), b2 = g.dart_vertex(d2 ^ 1);
  edges[e1][(d1 ^ 1) & 1] = p;
  edges[e2][(d2 ^ 1) & 1] = pp;
  edges.push_back({pp, b1});
  edges.push_back({p, b2});
  edges.push_back({p, pp});
  std::vector<std::vector<int>> rot;
  for (int v = 0; v < V; ++v) rot.push_back(g.rotation(v));
  for (auto& x : rot[b1])
    if (x == (d1 ^ 1)) x = 2 * E1 + 1;
  for (auto& x : rot[b2])
    if (x == (d2 ^ 1)) x = 2 * E2 + 1;
  // Faces lie to the right of their darts, so p sits beside A1 and B2.
  rot.push_back({2 * I, d1 ^ 1, 2 * E2});
  rot.push_back({2 * E1, 2 * I + 1, d2 ^ 1});
  PlanarGraph h(V + 2, edges, rot);
  std::vector<FusionTerm> out;
  int a = col[e1], b = col[e2];
  for (int i : lvl.colors()) {
    if (!is_admissible_triple(a, b, i, lvl)) continue;
    Coloring c = col;
    c.push_back(a);
    c.push_back(b);
    c.push_back(i);
    out.push_back({i, circle_value(i, lvl), h, std::move(c)});
  }
  return out;
}

void set_bracket_cache_limit(std::size_t entries) { memo().set_limit(entries); }
void clear_bracket_cache() { memo().clear(); }
std::uint64_t bracket_work_counter() { return g_work.load(); }

}  // namespace skein
