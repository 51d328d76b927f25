#include "skein/pyramids.hpp"

#include <cmath>
#include <vector>

#include "skein/bigfloat.hpp"
#include "skein/errors.hpp"
#include "skein/parallel.hpp"

namespace skein {

namespace {

// Doubles carry about 15 digits per term; past this much cancellation the
// outer sum is redone in MPFR.
constexpr double kMaxDoubleCancel = 5.0;

struct Sums {
  ExtScalar pos{0.0}, neg{0.0};
  void add(const ExtScalar& t) {
    if (t.real() > 0)
      pos += t;
    else
      neg -= t;
  }
  ExtScalar value() const { return pos - neg; }
  double cancel() const {
    ExtScalar v = value();
    if (v.is_zero()) return INFINITY;
    return ((pos + neg).log_abs() - v.log_abs()) / std::log(10.0);
  }
};

Sums wheel_double(int n, int a, int b, const Level& lvl) {
  const auto I = lvl.colors();
  std::vector<ExtScalar> s1(I.size());
  for (std::size_t k = 0; k < I.size(); ++k) s1[k] = sixj_info({a, a, I[k], b, b, b}, lvl).square;
  Sums s;
  if (n == 4) {
    for (std::size_t k = 0; k < I.size(); ++k)
      if (!s1[k].is_zero()) s.add(ExtScalar(circle_value(I[k], lvl)) * s1[k] * s1[k]);
    return s;
  }
  for (std::size_t i = 0; i < I.size(); ++i) {
    if (s1[i].is_zero()) continue;
    for (std::size_t j = i; j < I.size(); ++j) {
      if (s1[j].is_zero()) continue;
      ExtScalar w = sixj_info({a, I[i], I[j], b, b, b}, lvl).square;
      if (w.is_zero()) continue;
      ExtScalar t = ExtScalar(circle_value(I[i], lvl) * circle_value(I[j], lvl)) * s1[i] * s1[j] * w;
      s.add(t);
      if (j != i) s.add(t);
    }
  }
  return s;
}

BigFloat wheel_big(int n, int a, int b, const Level& lvl, long bits) {
  const auto I = lvl.colors();
  std::vector<BigFloat> s1, d;
  for (int i : I) {
    s1.push_back(sixj_square_big({a, a, i, b, b, b}, lvl, bits));
    d.push_back(circle_value_big(i, lvl, bits));
  }
  BigFloat sum(0.0, bits);
  if (n == 4) {
    for (std::size_t k = 0; k < I.size(); ++k)
      if (!s1[k].is_zero()) sum += d[k] * s1[k] * s1[k];
    return sum;
  }
  BigFloat two(2.0, bits);
  for (std::size_t i = 0; i < I.size(); ++i) {
    if (s1[i].is_zero()) continue;
    for (std::size_t j = i; j < I.size(); ++j) {
      if (s1[j].is_zero()) continue;
      BigFloat w = sixj_square_big({a, I[i], I[j], b, b, b}, lvl, bits);
      if (w.is_zero()) continue;
      BigFloat t = d[i] * d[j] * s1[i] * s1[j] * w;
      if (j != i) t *= two;
      sum += t;
    }
  }
  return sum;
}

}  // namespace

PyramidValue wheel_yokota(int n, int a, int b, const Level& lvl, long min_bits) {
  if (n != 4 && n != 5) throw InvalidArgument("closed forms exist for 4 or 5 spokes");
  if (!lvl.is_color(a) || !lvl.is_color(b)) throw InvalidArgument("invalid pyramid colors");
  if (min_bits == 0) min_bits = default_precision_bits();
  PyramidValue out;
  Sums s = wheel_double(n, a, b, lvl);
  out.cancel_digits = s.cancel();
  if (min_bits == 0 && out.cancel_digits <= kMaxDoubleCancel) {
    out.value = s.value();
    return out;
  }
  // The double estimate saturates near 16 digits, so grow the precision
  // until it covers the cancellation measured in MPFR.
  ExtScalar total = s.pos + s.neg;
  auto needed = [&](double cancel) {
    long bits = static_cast<long>(lvl.r()) + 128 + static_cast<long>(std::ceil(3.33 * cancel));
    return std::max(bits, min_bits);
  };
  long bits = needed(std::isfinite(out.cancel_digits) ? out.cancel_digits : 4.0 * lvl.r() / 3.33);
  for (;;) {
    BigFloat big = wheel_big(n, a, b, lvl, bits);
    out.value = big.to_ext();
    out.high_precision = true;
    out.bits = bits;
    if (big.is_zero()) {
      if (bits >= 4L * lvl.r() + 128) break;
      bits = 4L * lvl.r() + 128;
      continue;
    }
    out.cancel_digits = (total.log_abs() - big.log_abs()) / std::log(10.0);
    long want = needed(out.cancel_digits);
    if (want <= bits) break;
    bits = want;
  }
  return out;
}

}  // namespace skein
