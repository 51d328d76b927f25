#pragma once

#include <cstdint>
#include <vector>

#include "skein/ext_scalar.hpp"
#include "skein/planar.hpp"
#include "skein/qnum.hpp"

namespace skein {

struct BracketOptions {
  bool memoize = true;
  // Nonzero: pick reduction faces and edges pseudo-randomly from this seed.
  std::uint64_t face_order_seed = 0;
};

// Bracket of a colored planar graph whose vertices have valence 3 (valence-2
// vertices are suppressed; their two colors must agree).
ExtScalar bracket(const PlanarGraph& g, const Coloring& col, const Level& lvl, const BracketOptions& opt = {});

// Square of the bracket; always real.
ExtScalar bracket_squared(const PlanarGraph& g, const Coloring& col, const Level& lvl,
                          const BracketOptions& opt = {});

// Real evaluation before vertex phases are attached: |value| = |bracket|.
ExtScalar bracket_real(const PlanarGraph& g, const Coloring& col, const Level& lvl, const BracketOptions& opt = {});

// Edges with marked[e] carry the Kirby color; the rest use base[e].
struct KirbyDistribution {
  std::vector<bool> marked;
  Coloring base;
};

ExtScalar bracket_distribution(const PlanarGraph& g, const KirbyDistribution& dist, const Level& lvl);

struct FusionTerm {
  int color = 0;
  double weight = 0.0;
  PlanarGraph graph;
  Coloring coloring;
};

// Fuses the edges of darts d1 and d2, which must lie on a common face and
// belong to different edges: the bracket of g equals the weighted sum of the
// brackets of the terms.
std::vector<FusionTerm> fuse(const PlanarGraph& g, const Coloring& col, int d1, int d2, const Level& lvl);

void set_bracket_cache_limit(std::size_t entries);
void clear_bracket_cache();
// Connected components evaluated so far (cache hits excluded).
std::uint64_t bracket_work_counter();

}  // namespace skein
