#include "skein/yokota.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "skein/bracket.hpp"
#include "skein/errors.hpp"
#include "skein/parallel.hpp"

namespace skein {

namespace {

void check_coloring(const PlanarGraph& g, const Coloring& col, const Level& lvl) {
  if (static_cast<int>(col.size()) != g.edge_count()) throw InvalidArgument("coloring size does not match edge count");
  for (int c : col)
    if (!lvl.is_color(c)) throw InvalidArgument("invalid color " + std::to_string(c));
}

double pow_count(std::size_t base, std::size_t exp) {
  return std::pow(static_cast<double>(base), static_cast<double>(exp));
}

std::uint64_t budget_of(const YokotaOptions& opt) { return opt.budget ? opt.budget : default_budget(); }

struct Reduced {
  PlanarGraph graph;  // same vertex indices; removed vertices are isolated
  Coloring col;
  ExtScalar factor{1.0};
  bool zero = false;
};

// Applies the rules for valence-1 and valence-2 vertices until none remain.
// A vertex-free circle colored c contributes d_c^2.
Reduced reduce_low_valence(const PlanarGraph& g, const Coloring& col, const Level& lvl) {
  const int V = g.vertex_count(), E = g.edge_count();
  std::vector<std::vector<int>> rot(V);
  for (int v = 0; v < V; ++v) rot[v] = g.rotation(v);
  std::vector<int> dv(2 * E);
  for (int d = 0; d < 2 * E; ++d) dv[d] = g.dart_vertex(d);
  std::vector<bool> alive(E, true);
  Reduced out;
  auto erase = [&](int v, int d) { rot[v].erase(std::find(rot[v].begin(), rot[v].end(), d)); };
  for (bool changed = true; changed && !out.zero;) {
    changed = false;
    for (int v = 0; v < V && !out.zero; ++v) {
      if (rot[v].size() == 1) {
        int x = rot[v][0];
        if (col[x >> 1] != 0) {
          out.zero = true;
          break;
        }
        alive[x >> 1] = false;
        rot[v].clear();
        erase(dv[x ^ 1], x ^ 1);
        changed = true;
      } else if (rot[v].size() == 2) {
        int x = rot[v][0], y = rot[v][1];
        int c = col[x >> 1];
        if (c != col[y >> 1]) {
          out.zero = true;
          break;
        }
        double d = circle_value(c, lvl);
        out.factor /= ExtScalar(d);
        rot[v].clear();
        if ((x ^ 1) == y) {
          out.factor *= ExtScalar(d * d);
          alive[x >> 1] = false;
        } else {
          int fy = y ^ 1, w = dv[fy];
          *std::find(rot[w].begin(), rot[w].end(), fy) = x;
          dv[x] = w;
          alive[y >> 1] = false;
        }
        changed = true;
      }
    }
  }
  if (out.zero) return out;
  std::vector<int> emap(E, -1);
  std::vector<std::array<int, 2>> edges;
  for (int e = 0; e < E; ++e)
    if (alive[e]) {
      emap[e] = static_cast<int>(edges.size());
      edges.push_back({dv[2 * e], dv[2 * e + 1]});
      out.col.push_back(col[e]);
    }
  for (auto& r : rot)
    for (int& d : r) d = 2 * emap[d >> 1] + (d & 1);
  out.graph = PlanarGraph(V, edges, rot);
  return out;
}

bool trivalent(const PlanarGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != 0 && g.degree(v) != 3) return false;
  return true;
}

// Depth-first enumeration of colorings admissible at trivalent vertices.
class Enumerator {
 public:
  Enumerator(const PlanarGraph& g, const Level& lvl, const Coloring& fixed)
      : g_(g), lvl_(lvl), colors_(lvl.colors()), base_(fixed) {
    const int E = g.edge_count();
    if (static_cast<int>(fixed.size()) != E) throw InvalidArgument("coloring size does not match edge count");
    std::vector<int> pos(E, -1);
    std::vector<bool> seen(g.vertex_count(), false);
    for (int s = 0; s < g.vertex_count(); ++s) {
      if (seen[s]) continue;
      std::vector<int> queue{s};
      seen[s] = true;
      for (std::size_t i = 0; i < queue.size(); ++i)
        for (int d : g.rotation(queue[i])) {
          int e = d >> 1;
          if (fixed[e] < 0 && pos[e] < 0) {
            pos[e] = static_cast<int>(order_.size());
            order_.push_back(e);
          }
          int w = g.dart_vertex(d ^ 1);
          if (!seen[w]) {
            seen[w] = true;
            queue.push_back(w);
          }
        }
    }
    checks_.assign(order_.size() + 1, {});
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (g.degree(v) != 3) continue;
      int last = 0;
      for (int d : g.rotation(v)) last = std::max(last, pos[d >> 1] + 1);
      checks_[last].push_back(v);
    }
  }

  std::size_t free_count() const { return order_.size(); }

  // Admissible assignments of the first k free edges.
  std::vector<Coloring> prefixes(std::size_t k) const {
    std::vector<Coloring> out;
    Coloring c = base_;
    if (!ok(c, 0)) return out;
    collect(c, 0, k, out);
    return out;
  }

  void run(Coloring c, std::size_t from, const std::function<void(const Coloring&)>& f) const {
    if (from == 0 && !ok(c, 0)) return;
    dfs(c, from, f);
  }

 private:
  bool ok(const Coloring& c, std::size_t k) const {
    for (int v : checks_[k]) {
      const auto& r = g_.rotation(v);
      if (!is_admissible_triple(c[r[0] >> 1], c[r[1] >> 1], c[r[2] >> 1], lvl_)) return false;
    }
    return true;
  }
  void collect(Coloring& c, std::size_t k, std::size_t stop, std::vector<Coloring>& out) const {
    if (k == stop) {
      out.push_back(c);
      return;
    }
    for (int x : colors_) {
      c[order_[k]] = x;
      if (ok(c, k + 1)) collect(c, k + 1, stop, out);
    }
    c[order_[k]] = -1;
  }
  void dfs(Coloring& c, std::size_t k, const std::function<void(const Coloring&)>& f) const {
    if (k == order_.size()) {
      f(c);
      return;
    }
    for (int x : colors_) {
      c[order_[k]] = x;
      if (ok(c, k + 1)) dfs(c, k + 1, f);
    }
    c[order_[k]] = -1;
  }

  const PlanarGraph& g_;
  const Level& lvl_;
  std::vector<int> colors_;
  Coloring base_;
  std::vector<int> order_;
  std::vector<std::vector<int>> checks_;
};

// Shard prefix length: depends only on the problem, never on the thread count.
std::size_t shard_depth(const Enumerator& en, const Level& lvl) {
  std::size_t k = 0;
  double n = 1.0;
  while (k < en.free_count() && n < 256.0) {
    n *= lvl.color_count();
    ++k;
  }
  return k;
}

template <class R, class Leaf, class Combine>
R reduce_admissible(const PlanarGraph& g, const Level& lvl, const Coloring& fixed, int threads, Leaf leaf,
                    Combine combine, R init) {
  Enumerator en(g, lvl, fixed);
  std::size_t k = shard_depth(en, lvl);
  auto shards = en.prefixes(k);
  auto parts = parallel_map<R>(shards.size(), threads, [&](std::size_t i) {
    R acc = init;
    en.run(shards[i], k, [&](const Coloring& c) { combine(acc, leaf(c)); });
    return acc;
  });
  R total = init;
  for (const auto& p : parts) combine(total, p);
  return total;
}

}  // namespace

Desingularization desingularize(const PlanarGraph& g, const std::vector<int>& anchor_shift) {
  Desingularization out;
  out.source = g;
  const int V = g.vertex_count();
  auto edges = g.edges();
  std::vector<std::vector<int>> rot;
  for (int v = 0; v < V; ++v) {
    int d = g.degree(v);
    if (d == 1 || d == 2) throw LowValence("vertex " + std::to_string(v) + " has valence " + std::to_string(d));
    rot.push_back(g.rotation(v));
  }
  for (int v = 0; v < V; ++v) {
    const int d = g.degree(v);
    if (d < 4) continue;
    const auto& r = g.rotation(v);
    int start = static_cast<int>(std::min_element(r.begin(), r.end()) - r.begin());
    if (v < static_cast<int>(anchor_shift.size())) start += anchor_shift[v];
    std::vector<int> x(d);
    for (int k = 0; k < d; ++k) x[k] = r[((start + k) % d + d) % d];
    Desingularization::Fan fan;
    fan.vertex = v;
    fan.vertices.push_back(v);
    for (int k = 0; k < d - 3; ++k) {
      fan.vertices.push_back(static_cast<int>(rot.size()));
      rot.emplace_back();
    }
    for (int k = 0; k < d - 3; ++k) {
      int e = static_cast<int>(edges.size());
      edges.push_back({fan.vertices[k], fan.vertices[k + 1]});
      fan.edges.push_back(e);
      out.added_edges.push_back(e);
    }
    auto move_to = [&](int dart, int w) { edges[dart >> 1][dart & 1] = w; };
    // Tree vertex k takes the darts x_k (x_0 and x_1 at the first, the last
    // two at the final one), linked through the added edges.
    for (int k = 0; k < d - 2; ++k) {
      int w = fan.vertices[k];
      std::vector<int> rr;
      if (k == 0) {
        rr = {x[0], x[1], 2 * fan.edges[0]};
      } else if (k == d - 3) {
        rr = {2 * fan.edges[k - 1] + 1, x[d - 2], x[d - 1]};
      } else {
        rr = {2 * fan.edges[k - 1] + 1, x[k + 1], 2 * fan.edges[k]};
      }
      for (int dart : rr)
        if (dart < 2 * g.edge_count()) move_to(dart, w);
      rot[w] = rr;
    }
    out.fans.push_back(std::move(fan));
  }
  out.result = PlanarGraph(static_cast<int>(rot.size()), edges, rot);
  return out;
}

ExtScalar yokota(const PlanarGraph& g, const Coloring& col, const Level& lvl, const YokotaOptions& opt) {
  check_coloring(g, col, lvl);
  Reduced red = reduce_low_valence(g, col, lvl);
  if (red.zero) return ExtScalar(0.0);
  if (red.graph.edge_count() == 0) return red.factor;
  if (trivalent(red.graph)) return red.factor * bracket_squared(red.graph, red.col, lvl);
  Desingularization D = desingularize(red.graph, opt.anchor_shift);
  const std::size_t k = D.added_edges.size();
  if (pow_count(lvl.color_count(), k) > static_cast<double>(budget_of(opt)))
    throw BudgetExceeded("desingularization needs " + std::to_string(k) + " summed edges");
  Coloring fixed = red.col;
  fixed.resize(D.result.edge_count(), -1);
  ExtScalar sum(0.0);
  Enumerator en(D.result, lvl, fixed);
  en.run(fixed, 0, [&](const Coloring& c) {
    double w = 1.0;
    for (int e : D.added_edges) w *= circle_value(c[e], lvl);
    sum += ExtScalar(w) * bracket_squared(D.result, c, lvl);
  });
  return red.factor * sum;
}

namespace {

std::size_t added_edge_count(const PlanarGraph& g) {
  std::size_t k = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) > 3) k += g.degree(v) - 3;
  return k;
}

void check_sweep_budget(const PlanarGraph& g, const Level& lvl, const YokotaOptions& opt) {
  double n = pow_count(lvl.color_count(), g.edge_count() + added_edge_count(g));
  if (n > static_cast<double>(budget_of(opt)))
    throw BudgetExceeded("coloring space of " + std::to_string(n) + " exceeds the budget");
}

ExtScalar sum_leaves(const PlanarGraph& g, const Level& lvl, const std::function<ExtScalar(const Coloring&)>& f,
                     int threads) {
  return reduce_admissible<ExtScalar>(
      g, lvl, Coloring(g.edge_count(), -1), threads, f, [](ExtScalar& a, const ExtScalar& b) { a += b; },
      ExtScalar(0.0));
}

}  // namespace

ExtScalar yokota_kirby(const PlanarGraph& g, const Level& lvl, const YokotaOptions& opt) {
  check_sweep_budget(g, lvl, opt);
  return sum_leaves(
      g, lvl,
      [&](const Coloring& c) {
        double w = 1.0;
        for (int x : c) w *= circle_value(x, lvl);
        return ExtScalar(w) * yokota(g, c, lvl, opt);
      },
      opt.threads);
}

ExtScalar tv_graph(const PlanarGraph& g, const Level& lvl, const YokotaOptions& opt) {
  check_sweep_budget(g, lvl, opt);
  return sum_leaves(
      g, lvl, [&](const Coloring& c) { return yokota(g, c, lvl, opt).re().abs(); }, opt.threads);
}

double hopf(int i, int j, const Level& lvl) {
  if (!lvl.is_color(i) || !lvl.is_color(j)) throw InvalidArgument("hopf pairing needs colors");
  double s = ((i + j) % 2 == 0) ? 1.0 : -1.0;
  return s * quantum_integer(static_cast<long>(i + 1) * (j + 1), lvl);
}

double hopf_sine(int i, int j, const Level& lvl) {
  if (!lvl.is_color(i) || !lvl.is_color(j)) throw InvalidArgument("hopf pairing needs colors");
  const double w = 2.0 * std::numbers::pi / lvl.r();
  double s = ((i + j) % 2 == 0) ? 1.0 : -1.0;
  long n = (static_cast<long>(i + 1) * (j + 1)) % lvl.r();
  return s * std::sin(w * static_cast<double>(n)) / std::sin(w);
}

ExtScalar fourier_dual(const PlanarGraph& g, const Level& lvl, const Coloring& col_dual, const YokotaOptions& opt) {
  check_coloring(g, col_dual, lvl);
  check_sweep_budget(g, lvl, opt);
  ExtScalar sum = sum_leaves(
      g, lvl,
      [&](const Coloring& c) {
        double w = 1.0;
        for (std::size_t e = 0; e < c.size(); ++e) w *= hopf(c[e], col_dual[e], lvl);
        return ExtScalar(w) * yokota(g, c, lvl, opt);
      },
      opt.threads);
  return sum / ExtScalar(kirby_norm(lvl)).pow(betti(g));
}

Coloring maximizing_coloring(const PlanarGraph& g, const Level& lvl) {
  return Coloring(g.edge_count(), maximizing_color(lvl));
}

SignReport constant_sign_terms(const PlanarGraph& g, const Level& lvl, const YokotaOptions& opt) {
  PlanarGraph gd = dual(g);
  for (int v = 0; v < gd.vertex_count(); ++v)
    if (gd.degree(v) != 3) throw NotTrivalent("the dual graph must be trivalent");
  check_sweep_budget(gd, lvl, opt);
  const int c = maximizing_color(lvl);
  auto leaf = [&](const Coloring& col) {
    SignReport s;
    double h = 1.0;
    for (int x : col) h *= hopf(c, x, lvl);
    ExtScalar b = bracket_real(gd, col, lvl);
    if (b.is_zero()) return s;
    s.terms = 1;
    ExtScalar t = ExtScalar(h) * b * b;
    (t.real() > 0 ? s.positive : s.negative) = 1;
    ExtScalar u = ExtScalar(h) * bracket_squared(gd, col, lvl);
    (u.real() > 0 ? s.signed_positive : s.signed_negative) = 1;
    return s;
  };
  auto add = [](SignReport& a, const SignReport& b) {
    a.terms += b.terms;
    a.positive += b.positive;
    a.negative += b.negative;
    a.signed_positive += b.signed_positive;
    a.signed_negative += b.signed_negative;
  };
  return reduce_admissible<SignReport>(gd, lvl, Coloring(gd.edge_count(), -1), opt.threads, leaf, add, SignReport{});
}

void for_each_admissible(const PlanarGraph& g, const Level& lvl, const Coloring& fixed,
                         const std::function<void(const Coloring&)>& f) {
  Enumerator en(g, lvl, fixed);
  en.run(fixed, 0, f);
}

ExtScalar sum_admissible(const PlanarGraph& g, const Level& lvl, const Coloring& fixed,
                         const std::function<ExtScalar(const Coloring&)>& f, int threads) {
  return reduce_admissible<ExtScalar>(
      g, lvl, fixed, threads, f, [](ExtScalar& a, const ExtScalar& b) { a += b; }, ExtScalar(0.0));
}

}  // namespace skein
