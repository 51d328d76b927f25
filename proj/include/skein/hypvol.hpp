#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skein {

// Lobachevsky function, sum of sin(2 n x) / (2 n^2).
double lobachevsky(double theta);
double v8();
// Volume of the antiprism-type polyhedron with n-gonal faces.
double antiprism_volume(int n);

struct NamedVolume {
  std::string name;
  double value = 0.0;
  double quoted = 0.0;  // published decimal approximation
  int quoted_digits = 0;
};

std::vector<NamedVolume> named_volumes();
double named_volume(const std::string& name);
// Volume of the maximal member after m moves: (m + 1) v8.
double family_max_volume(int m);

struct ScanRecord {
  int r = 0;
  std::string kind;
  std::string color_policy;
  double log_value = 0.0;  // natural log of |invariant|
  double slope = 0.0;
  double target = 0.0;
  double rel_gap = 0.0;
  double cancel_digits = 0.0;
  double wall_ms = 0.0;
  std::string note;  // not written to CSV; e.g. budget failures
};

std::string csv_header();
std::string csv_row(const ScanRecord& rec);
void write_csv(std::ostream& os, const std::vector<ScanRecord>& rows);
// Reads rows written by write_csv (columns matched by header name).
std::vector<ScanRecord> read_csv(std::istream& is);

struct Extrapolation {
  double limit = 0.0;       // a in a + b log(r) / r
  double coefficient = 0.0; // b
  double limit_stderr = 0.0;
  double residual_rms = 0.0;
  double last_slope = 0.0;
  std::size_t points = 0;
};

// Least-squares fit of slope against a + b log(r) / r. Throws IllConditioned
// for fewer than four records or a degenerate design.
Extrapolation extrapolate_limit(const std::vector<ScanRecord>& records);

}  // namespace skein
