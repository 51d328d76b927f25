#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skein/hypvol.hpp"
#include "skein/planar.hpp"

namespace skein {

// Nearest even integer, ties toward zero.
int nearest_even(double x);

struct AppendixCase {
  std::string which;  // sq-ideal | sq-zero | pent-ideal | pent-zero
  int spokes = 0;
  int a = 0;          // spoke color
  int b = 0;          // rim color
  double raw_a = 0.0; // unrounded fractions of r
  double raw_b = 0.0;
  double target = 0.0;
};

std::vector<std::string> appendix_names();
AppendixCase appendix_case(const std::string& which, int r);

struct ScanOptions {
  int threads = 0;
  bool timing = true;          // false writes wall_ms as 0 for reproducible files
  std::uint64_t budget = 0;    // 0: default_budget()
};

// Odd r in [rmin, rmax] with the given step; rmin is bumped to odd and >= 3.
std::vector<int> odd_range(int rmin, int rmax, int step = 2);

ScanRecord appendix_record(const std::string& which, int r, bool timing = true);
std::vector<ScanRecord> scan_appendix(const std::string& which, const std::vector<int>& rs,
                                      const ScanOptions& opt = {});

// (2 pi / r) log|6j| on the constant maximizing tuple, or the exhaustive
// maximum when `exhaustive` is set. Target v8.
std::vector<ScanRecord> scan_sixj(const std::vector<int>& rs, bool exhaustive, const ScanOptions& opt = {});

// Graph scans with slope (pi / r) log. policy: "maximizer" (constant
// maximizing color), "tv" (sum of |yokota| over colorings) or "fixed"
// (the given coloring, which must be admissible at every r).
std::vector<ScanRecord> scan_graph(const PlanarGraph& g, const std::string& policy, const Coloring& fixed,
                                   const std::vector<int>& rs, double target, const ScanOptions& opt = {});

}  // namespace skein
