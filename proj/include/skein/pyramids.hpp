#pragma once

#include "skein/ext_scalar.hpp"
#include "skein/qnum.hpp"

namespace skein {

struct PyramidValue {
  ExtScalar value;
  double cancel_digits = 0.0;  // log10 of (sum of |terms|) / |value|
  bool high_precision = false;
  long bits = 0;
};

// Yokota invariant of the wheel with n = 4 or 5 spokes, spokes colored a and
// rim edges colored b, through its single (n = 4) or double (n = 5) sum of
// squared 6j-symbols. min_bits 0 picks the MPFR precision automatically.
PyramidValue wheel_yokota(int n, int a, int b, const Level& lvl, long min_bits = 0);

}  // namespace skein
