#include "skein/ext_scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace skein {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

std::complex<double> scale2(std::complex<double> z, std::int64_t k) {
  if (k < -2200) return {0.0, 0.0};
  int kk = static_cast<int>(std::max<std::int64_t>(k, -2200));
  return {std::ldexp(z.real(), kk), std::ldexp(z.imag(), kk)};
}

}  // namespace

ExtScalar::ExtScalar(double x) : m_(x, 0.0) { normalize(); }

ExtScalar::ExtScalar(std::complex<double> z) : m_(z) { normalize(); }

ExtScalar ExtScalar::from_parts(std::complex<double> mantissa, std::int64_t exponent) {
  ExtScalar s;
  s.m_ = mantissa;
  s.e_ = exponent;
  s.normalize();
  return s;
}

ExtScalar ExtScalar::from_log(int sign, double log_mag) {
  if (sign == 0 || log_mag == -std::numeric_limits<double>::infinity()) return {};
  double l2 = log_mag / kLn2;
  double fl = std::floor(l2);
  ExtScalar s;
  s.m_ = {sign * std::exp2(l2 - fl), 0.0};
  s.e_ = static_cast<std::int64_t>(fl);
  s.normalize();
  return s;
}

void ExtScalar::normalize() {
  double mx = std::max(std::fabs(m_.real()), std::fabs(m_.imag()));
  if (mx == 0.0 || !std::isfinite(mx)) {
    if (mx == 0.0) {
      m_ = {0.0, 0.0};
      e_ = 0;
    }
    return;
  }
  int k;
  std::frexp(mx, &k);
  m_ = {std::ldexp(m_.real(), -k), std::ldexp(m_.imag(), -k)};
  e_ += k;
}

double ExtScalar::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(m_)) + static_cast<double>(e_) * kLn2;
}

std::complex<double> ExtScalar::to_complex() const {
  if (e_ > 1100) {
    double inf = std::numeric_limits<double>::infinity();
    return {m_.real() == 0 ? 0.0 : std::copysign(inf, m_.real()),
            m_.imag() == 0 ? 0.0 : std::copysign(inf, m_.imag())};
  }
  return scale2(m_, e_);
}

double ExtScalar::real() const { return to_complex().real(); }
double ExtScalar::imag() const { return to_complex().imag(); }

ExtScalar ExtScalar::re() const { return from_parts({m_.real(), 0.0}, e_); }
ExtScalar ExtScalar::im() const { return from_parts({m_.imag(), 0.0}, e_); }
ExtScalar ExtScalar::conj() const { return from_parts(std::conj(m_), e_); }
ExtScalar ExtScalar::abs() const { return from_parts({std::abs(m_), 0.0}, e_); }

ExtScalar ExtScalar::sqrt_real() const {
  if (is_zero()) return {};
  std::int64_t e = e_;
  double m = m_.real();
  if (e % 2 != 0) {
    m *= 2.0;
    e -= 1;
  }
  return from_parts({std::sqrt(m), 0.0}, e / 2);
}

ExtScalar ExtScalar::operator-() const {
  ExtScalar s = *this;
  s.m_ = -s.m_;
  return s;
}

ExtScalar& ExtScalar::operator+=(const ExtScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::int64_t e = std::max(e_, o.e_);
  m_ = scale2(m_, e_ - e) + scale2(o.m_, o.e_ - e);
  e_ = e;
  normalize();
  return *this;
}

ExtScalar& ExtScalar::operator-=(const ExtScalar& o) { return *this += -o; }

ExtScalar& ExtScalar::operator*=(const ExtScalar& o) {
  if (is_zero() || o.is_zero()) return *this = ExtScalar{};
  m_ *= o.m_;
  e_ += o.e_;
  normalize();
  return *this;
}

ExtScalar& ExtScalar::operator/=(const ExtScalar& o) {
  if (o.is_zero()) {
    m_ /= o.m_;  // propagates inf/nan
    return *this;
  }
  if (is_zero()) return *this;
  m_ /= o.m_;
  e_ -= o.e_;
  normalize();
  return *this;
}

ExtScalar ExtScalar::pow(int k) const {
  ExtScalar result(1.0);
  ExtScalar base = k >= 0 ? *this : ExtScalar(1.0) / *this;
  unsigned n = static_cast<unsigned>(k >= 0 ? k : -k);
  while (n) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

std::string ExtScalar::str(int digits) const {
  char buf[128];
  if (is_zero()) return "0";
  if (e_ > -900 && e_ < 900) {
    auto z = to_complex();
    if (z.imag() == 0.0) {
      std::snprintf(buf, sizeof buf, "%.*g", digits, z.real());
    } else if (z.real() == 0.0) {
      std::snprintf(buf, sizeof buf, "%.*gi", digits, z.imag());
    } else {
      std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, z.real(), digits, z.imag());
    }
    return buf;
  }
  double l10 = log_abs() / std::log(10.0);
  double k = std::floor(l10);
  double scale = std::exp2(static_cast<double>(e_) - k * std::log2(10.0));
  std::complex<double> z = m_ * scale;
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.*ge%+.0f", digits, z.real(), k);
  } else if (z.real() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.*ge%+.0fi", digits, z.imag(), k);
  } else {
    std::snprintf(buf, sizeof buf, "(%.*g%+.*gi)e%+.0f", digits, z.real(), digits, z.imag(), k);
  }
  return buf;
}

double rel_diff(const ExtScalar& a, const ExtScalar& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  ExtScalar d = a - b;
  if (d.is_zero()) return 0.0;
  double la = a.log_abs();
  double lb = b.log_abs();
  return std::exp(d.log_abs() - std::max(la, lb));
}

}  // namespace skein
