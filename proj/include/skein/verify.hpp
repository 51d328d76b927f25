#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skein/planar.hpp"

namespace skein {

// Outcome of one identity check run over many inputs.
struct CheckReport {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::uint64_t nonzero = 0;  // inputs where the compared values are not both zero
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string first_failure;
  bool ok() const { return checks > 0 && failures == 0; }
};

// Floating (6j)^2 against the exact cyclotomic value, every admissible tuple.
CheckReport verify_oracle(int r);
// Theta is 1 on admissible triples and 0 otherwise, every triple.
CheckReport verify_theta(int r);
// A bigon on a tetrahedron edge collapses to delta / d_c times the tetrahedron.
CheckReport verify_bigon(int r);
// Tetrahedron bracket equals the 6j-symbol, every coloring, both mirror images.
CheckReport verify_tetrahedron(int r);
// All fan anchors and several reduction orders agree, every coloring.
CheckReport verify_whitehead(const PlanarGraph& g, int r);
// Doubling at vertex v squares the invariant, every coloring.
CheckReport verify_doubling(const PlanarGraph& g, int v, int r);
// Vertex sums of two tetrahedra (exhaustive) and of the square pyramid with a
// tetrahedron (samples) multiply.
CheckReport verify_vertex_sum(int r);
// Kirby coloring every edge gives N^betti.
CheckReport verify_kirby(const PlanarGraph& g, int r);
// Transform to the dual against the invariant of the dual, every dual coloring.
// With both_ways the dual is transformed back as well.
CheckReport verify_fourier(const PlanarGraph& g, int r, bool both_ways = false);
// r / (4 sin^2(2 pi / r)) against the sum of squared circle values.
CheckReport verify_n_identity(int rmax);

std::string format_report(const CheckReport& rep);

}  // namespace skein
