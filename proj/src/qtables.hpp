#pragma once

#include <cstdint>
#include <vector>

#include "skein/qnum.hpp"

namespace skein::detail {

struct QTables {
  int r = 0;
  std::vector<double> qint;           // [n] for n = 0..2r+1
  std::vector<double> logfact;        // log|[n]!| for n = 0..r-1
  std::vector<std::int8_t> signfact;  // sign of [n]!
};

const QTables& tables(int r);

struct SumResult {
  int sign = 0;
  double log_abs = 0.0;
  double log_abs_sum_terms = -1e300;  // log of the sum of term magnitudes
  double cancel_digits = 0.0;
  double rel_error = 0.0;             // estimated relative error of the double result
  int terms = 0;
};

// Alternating z-sum of the 6j formula in double precision.
SumResult alternating_sum(const SixTuple& n, int r);

}  // namespace skein::detail
