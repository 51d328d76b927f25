#include "skein/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "skein/bracket.hpp"
#include "skein/cyclo.hpp"
#include "skein/qnum.hpp"
#include "skein/yokota.hpp"

namespace skein {

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kFourierTol = 1e-8;
// Values below this are treated as zero noise when comparing.
constexpr double kNoiseFloor = 1e-12;

std::string show(const Coloring& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s;
}

class Tally {
 public:
  Tally(std::string name, double tol, double floor) : floor_(floor) {
    rep_.name = std::move(name);
    rep_.tolerance = tol;
  }

  void compare(std::complex<double> a, std::complex<double> b, const std::string& where) {
    double scale = std::max({std::abs(a), std::abs(b), floor_});
    double err = std::abs(a - b) / scale;
    if (!std::isfinite(err)) err = INFINITY;
    record(err, std::abs(a) > kNoiseFloor || std::abs(b) > kNoiseFloor, where);
  }

  void compare(const ExtScalar& a, const ExtScalar& b, const std::string& where) {
    // Log-scaled comparison that survives huge magnitudes.
    double err;
    if (a.is_zero() && b.is_zero()) {
      err = 0.0;
    } else {
      double big = std::max(a.is_zero() ? -INFINITY : a.log_abs(), b.is_zero() ? -INFINITY : b.log_abs());
      big = std::max(big, std::log(floor_));
      ExtScalar d = a - b;
      err = d.is_zero() ? 0.0 : std::exp(d.log_abs() - big);
    }
    bool nz = (!a.is_zero() && a.log_abs() > std::log(kNoiseFloor)) || (!b.is_zero() && b.log_abs() > std::log(kNoiseFloor));
    record(err, nz, where);
  }

  CheckReport done() { return rep_; }

 private:
  void record(double err, bool nonzero, const std::string& where) {
    ++rep_.checks;
    if (nonzero) ++rep_.nonzero;
    rep_.max_error = std::max(rep_.max_error, err);
    if (!(err <= rep_.tolerance)) {
      if (rep_.failures == 0) rep_.first_failure = where;
      ++rep_.failures;
    }
  }

  CheckReport rep_;
  double floor_;
};

// Every assignment of colors of the level to `edges` edges, in odometer order.
void every_coloring(int edges, const Level& lvl, const std::function<void(const Coloring&)>& f) {
  auto colors = lvl.colors();
  Coloring c(edges, colors[0]);
  std::vector<std::size_t> idx(edges, 0);
  for (;;) {
    f(c);
    int k = 0;
    while (k < edges && ++idx[k] == colors.size()) {
      idx[k] = 0;
      c[k] = colors[0];
      ++k;
    }
    if (k == edges) return;
    c[k] = colors[idx[k]];
  }
}

SixTuple tet_tuple(const Coloring& c) { return {c[0], c[1], c[2], c[5], c[4], c[3]}; }

// Tetrahedron with edge 0 replaced by a strand c, a bigon (a, b), and a strand c'.
// Edge order: c, the other five tetrahedron edges, c', then a and b in two halves.
PlanarGraph bigon_tetrahedron() {
  return PlanarGraph::from_drawing({{0, 10}, {-9, -5}, {9, -5}, {0, 0}, {-3, 5}, {-6, 0}, {-3.21, 1.73}, {-5.79, 3.27}},
                                   {{0, 4}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {5, 1}, {4, 6}, {6, 5}, {4, 7}, {7, 5}});
}

void splice_colors(const PlanarGraph& g1, int v1, const Coloring& c1, const PlanarGraph& g2, int v2, Coloring& c2) {
  const auto& r1 = g1.rotation(v1);
  const auto& r2 = g2.rotation(v2);
  const int d = static_cast<int>(r1.size());
  for (int k = 0; k < d; ++k) c2[r2[(d - k) % d] >> 1] = c1[r1[k] >> 1];
}

Coloring merged(const VertexSum& s, const Coloring& c1, const Coloring& c2) {
  Coloring c(s.graph.edge_count(), 0);
  for (std::size_t e = 0; e < c1.size(); ++e) c[s.edge_from_first[e]] = c1[e];
  for (std::size_t e = 0; e < c2.size(); ++e) c[s.edge_from_second[e]] = c2[e];
  return c;
}

struct Table {
  std::vector<Coloring> colorings;
  std::vector<std::complex<double>> values;
};

// Invariant of g on every coloring admissible at its trivalent vertices.
Table invariant_table(const PlanarGraph& g, const Level& lvl) {
  Table t;
  for_each_admissible(g, lvl, Coloring(g.edge_count(), -1), [&](const Coloring& c) {
    std::complex<double> y = yokota(g, c, lvl).to_complex();
    if (y == 0.0) return;
    t.colorings.push_back(c);
    t.values.push_back(y);
  });
  return t;
}

void fourier_one_way(const PlanarGraph& g, const Table& src, const PlanarGraph& gd, const Table& dst,
                     const Level& lvl, Tally& tally, const std::string& label) {
  const auto colors = lvl.colors();
  const int top = lvl.max_color();
  std::vector<double> h((top + 1) * (top + 1), 0.0);
  for (int i : colors)
    for (int j : colors) h[i * (top + 1) + j] = hopf(i, j, lvl);
  std::map<Coloring, std::complex<double>> target;
  for (std::size_t k = 0; k < dst.colorings.size(); ++k) target[dst.colorings[k]] = dst.values[k];
  const double norm = std::pow(kirby_norm(lvl), betti(g));
  every_coloring(gd.edge_count(), lvl, [&](const Coloring& cd) {
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < src.colorings.size(); ++k) {
      const Coloring& c = src.colorings[k];
      double w = 1.0;
      for (std::size_t e = 0; e < c.size() && w != 0.0; ++e) w *= h[c[e] * (top + 1) + cd[e]];
      sum += w * src.values[k];
    }
    auto it = target.find(cd);
    std::complex<double> want = it == target.end() ? 0.0 : it->second;
    tally.compare(sum / norm, want, label + " dual coloring " + show(cd));
  });
}

std::string fmt_err(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

CheckReport verify_oracle(int r) {
  Level lvl(r);
  Tally tally("oracle r=" + std::to_string(r), 1e-10, 0.0);
  std::map<SixTuple, BigFloat> exact;
  every_coloring(6, lvl, [&](const Coloring& c) {
    SixTuple t{c[0], c[1], c[2], c[3], c[4], c[5]};
    if (!is_admissible_sixtuple(t, lvl)) return;
    SixTuple key = canonical_sixtuple(t);
    auto it = exact.find(key);
    if (it == exact.end()) it = exact.emplace(key, sixj_exact_square(key, lvl).embed_real(256)).first;
    tally.compare(sixj_info(t, lvl).square, it->second.to_ext(), "tuple " + show(c));
  });
  return tally.done();
}

CheckReport verify_theta(int r) {
  Level lvl(r);
  Tally tally("theta r=" + std::to_string(r), kIdentityTol, kNoiseFloor);
  PlanarGraph th = fixture("theta");
  every_coloring(3, lvl, [&](const Coloring& c) {
    double want = is_admissible_triple(c[0], c[1], c[2], lvl) ? 1.0 : 0.0;
    tally.compare(bracket(th, c, lvl).to_complex(), want, "colors " + show(c));
  });
  return tally.done();
}

CheckReport verify_bigon(int r) {
  Level lvl(r);
  Tally tally("bigon r=" + std::to_string(r), kIdentityTol, kNoiseFloor);
  PlanarGraph g = bigon_tetrahedron();
  PlanarGraph tet = fixture("tetrahedron");
  every_coloring(9, lvl, [&](const Coloring& x) {
    // x: six tetrahedron colors, then c', a, b.
    Coloring gc{x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7], x[7], x[8], x[8]};
    ExtScalar want(0.0);
    if (x[0] == x[6] && is_admissible_triple(x[7], x[8], x[0], lvl))
      want = bracket(tet, Coloring(x.begin(), x.begin() + 6), lvl) / ExtScalar(circle_value(x[0], lvl));
    tally.compare(bracket(g, gc, lvl), want, "colors " + show(x));
  });
  return tally.done();
}

CheckReport verify_tetrahedron(int r) {
  Level lvl(r);
  Tally tally("tetrahedron r=" + std::to_string(r), kIdentityTol, kNoiseFloor);
  PlanarGraph tet = fixture("tetrahedron");
  PlanarGraph mir = tet.mirror();
  every_coloring(6, lvl, [&](const Coloring& c) {
    ExtScalar s = sixj(tet_tuple(c), lvl);
    tally.compare(bracket(tet, c, lvl), s, "colors " + show(c));
    tally.compare(bracket(mir, c, lvl), s, "mirror colors " + show(c));
  });
  return tally.done();
}

CheckReport verify_whitehead(const PlanarGraph& g, int r) {
  Level lvl(r);
  Tally tally("whitehead r=" + std::to_string(r), kIdentityTol, kNoiseFloor);
  int maxdeg = 0;
  for (int v = 0; v < g.vertex_count(); ++v) maxdeg = std::max(maxdeg, g.degree(v));
  every_coloring(g.edge_count(), lvl, [&](const Coloring& c) {
    ExtScalar base = yokota(g, c, lvl);
    for (int s = 1; s < maxdeg; ++s) {
      YokotaOptions alt;
      alt.anchor_shift.assign(g.vertex_count(), s);
      tally.compare(yokota(g, c, lvl, alt), base, "anchor " + std::to_string(s) + " colors " + show(c));
    }
  });
  // Reduction orders on the trivalent resolution.
  Desingularization d = desingularize(g);
  for_each_admissible(d.result, lvl, Coloring(d.result.edge_count(), -1), [&](const Coloring& c) {
    ExtScalar base = bracket(d.result, c, lvl);
    for (unsigned seed : {1u, 2u, 977u}) {
      BracketOptions bo;
      bo.memoize = false;
      bo.face_order_seed = seed;
      tally.compare(bracket(d.result, c, lvl, bo), base, "seed " + std::to_string(seed) + " colors " + show(c));
    }
  });
  return tally.done();
}

CheckReport verify_doubling(const PlanarGraph& g, int v, int r) {
  Level lvl(r);
  Tally tally("doubling r=" + std::to_string(r), kIdentityTol, kNoiseFloor);
  every_coloring(g.edge_count(), lvl, [&](const Coloring& c) {
    Doubled d = double_at(g, v, c);
    ExtScalar y = yokota(g, c, lvl);
    tally.compare(yokota(d.graph, d.coloring, lvl), y * y, "colors " + show(c));
  });
  return tally.done();
}

CheckReport verify_vertex_sum(int r) {
  Level lvl(r);
  Tally tally("vertex sum r=" + std::to_string(r), kIdentityTol, kNoiseFloor);
  PlanarGraph tet = fixture("tetrahedron");
  VertexSum tt = vertex_sum(tet, 0, tet, 0);
  every_coloring(6, lvl, [&](const Coloring& c1) {
    ExtScalar y1 = yokota(tet, c1, lvl);
    Coloring c2(6, -1);
    splice_colors(tet, 0, c1, tet, 0, c2);
    for_each_admissible(tet, lvl, c2, [&](const Coloring& full) {
      ExtScalar want = y1 * yokota(tet, full, lvl);
      tally.compare(yokota(tt.graph, merged(tt, c1, full), lvl), want, "tetrahedra " + show(c1) + " | " + show(full));
    });
  });
  // The pyramid's base vertex 1 is trivalent; its apex sum is covered by doubling.
  PlanarGraph sq = fixture("square-pyramid");
  VertexSum st = vertex_sum(sq, 1, tet, 0);
  std::mt19937 rng(8);
  auto colors = lvl.colors();
  for (int trial = 0; trial < 200; ++trial) {
    Coloring c1(sq.edge_count());
    for (auto& x : c1) x = colors[rng() % colors.size()];
    Coloring c2(6, -1);
    splice_colors(sq, 1, c1, tet, 0, c2);
    for (auto& x : c2)
      if (x < 0) x = colors[rng() % colors.size()];
    ExtScalar want = yokota(sq, c1, lvl) * yokota(tet, c2, lvl);
    tally.compare(yokota(st.graph, merged(st, c1, c2), lvl), want, "pyramid " + show(c1) + " | " + show(c2));
  }
  return tally.done();
}

CheckReport verify_kirby(const PlanarGraph& g, int r) {
  Level lvl(r);
  Tally tally("kirby r=" + std::to_string(r), kIdentityTol, kNoiseFloor);
  ExtScalar want = ExtScalar(kirby_norm(lvl)).pow(betti(g));
  tally.compare(yokota_kirby(g, lvl), want, "graph with " + std::to_string(g.edge_count()) + " edges");
  return tally.done();
}

CheckReport verify_fourier(const PlanarGraph& g, int r, bool both_ways) {
  Level lvl(r);
  // Values near zero are compared on an absolute scale of one.
  Tally tally("fourier r=" + std::to_string(r), kFourierTol, 1.0);
  PlanarGraph gd = dual(g);
  Table tg = invariant_table(g, lvl);
  Table td = invariant_table(gd, lvl);
  fourier_one_way(g, tg, gd, td, lvl, tally, "forward");
  if (both_ways) fourier_one_way(gd, td, g, tg, lvl, tally, "backward");
  return tally.done();
}

CheckReport verify_n_identity(int rmax) {
  Tally tally("N identity r<=" + std::to_string(rmax), 1e-12, 0.0);
  for (int r = 3; r <= rmax; r += 2) {
    Level lvl(r);
    double s = std::sin(2.0 * std::numbers::pi / r);
    double closed = r / (4.0 * s * s);
    long double sum = 0.0L;
    for (int i : lvl.colors()) {
      long double d = circle_value(i, lvl);
      sum += d * d;
    }
    tally.compare(std::complex<double>(closed), std::complex<double>(static_cast<double>(sum)), "r=" + std::to_string(r));
  }
  return tally.done();
}

std::string format_report(const CheckReport& rep) {
  std::ostringstream os;
  os << (rep.ok() ? "pass" : "FAIL") << "  " << rep.name << "  checks=" << rep.checks << " nonzero=" << rep.nonzero
     << " max_err=" << fmt_err(rep.max_error) << " tol=" << fmt_err(rep.tolerance);
  if (rep.failures) os << " failures=" << rep.failures << " first: " << rep.first_failure;
  return os.str();
}

}  // namespace skein
