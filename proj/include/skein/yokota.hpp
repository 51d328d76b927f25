#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "skein/ext_scalar.hpp"
#include "skein/planar.hpp"
#include "skein/qnum.hpp"

namespace skein {

struct Desingularization {
  struct Fan {
    int vertex = -1;              // source vertex, kept as the first tree vertex
    std::vector<int> vertices;    // tree vertices in fan order
    std::vector<int> edges;       // added edges in fan order
  };
  PlanarGraph source;
  PlanarGraph result;
  std::vector<int> added_edges;  // indices in result; original edges keep theirs
  std::vector<Fan> fans;
};

// Fan tree at each vertex of valence >= 4, following its rotation from the
// lowest dart. anchor_shift[v], when given, rotates that starting point.
Desingularization desingularize(const PlanarGraph& g, const std::vector<int>& anchor_shift = {});

struct YokotaOptions {
  std::uint64_t budget = 0;  // 0: default_budget()
  int threads = 0;           // 0: worker_count()
  std::vector<int> anchor_shift;
};

ExtScalar yokota(const PlanarGraph& g, const Coloring& col, const Level& lvl, const YokotaOptions& opt = {});
// Sum over all colorings weighted by the circle values of the edge colors.
ExtScalar yokota_kirby(const PlanarGraph& g, const Level& lvl, const YokotaOptions& opt = {});
// Sum of |yokota| over all colorings.
ExtScalar tv_graph(const PlanarGraph& g, const Level& lvl, const YokotaOptions& opt = {});

double hopf(int i, int j, const Level& lvl);
// The same pairing through sines, kept as an independent form.
double hopf_sine(int i, int j, const Level& lvl);

// Right-hand side of the transform to the dual graph: sum over colorings of g
// of yokota(g, col) times the pairing with col_dual, over N^betti(g).
ExtScalar fourier_dual(const PlanarGraph& g, const Level& lvl, const Coloring& col_dual,
                       const YokotaOptions& opt = {});

Coloring maximizing_coloring(const PlanarGraph& g, const Level& lvl);

// Terms of the transform expressing yokota(g, c), c the maximizing coloring,
// through colorings of the trivalent dual. Counted with |bracket|^2 and with
// the signed square.
struct SignReport {
  std::uint64_t terms = 0;
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::uint64_t signed_positive = 0;
  std::uint64_t signed_negative = 0;
  bool constant_sign() const { return positive == 0 || negative == 0; }
};

SignReport constant_sign_terms(const PlanarGraph& g, const Level& lvl, const YokotaOptions& opt = {});

// Calls f on every coloring extending `fixed` (entries < 0 are free) that is
// admissible at all trivalent vertices, in a fixed order.
void for_each_admissible(const PlanarGraph& g, const Level& lvl, const Coloring& fixed,
                         const std::function<void(const Coloring&)>& f);

// Deterministic parallel sum of f over the same colorings.
ExtScalar sum_admissible(const PlanarGraph& g, const Level& lvl, const Coloring& fixed,
                         const std::function<ExtScalar(const Coloring&)>& f, int threads = 0);

}  // namespace skein
