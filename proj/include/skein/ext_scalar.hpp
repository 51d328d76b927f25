#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace skein {

// Complex value mantissa * 2^exponent. Non-zero values keep
// max(|re|, |im|) in [1/2, 1); zero is mantissa 0, exponent 0.
class ExtScalar {
 public:
  ExtScalar() = default;
  ExtScalar(double x);  // NOLINT(google-explicit-constructor)
  explicit ExtScalar(std::complex<double> z);
  static ExtScalar from_parts(std::complex<double> mantissa, std::int64_t exponent);
  // sign * exp(log_mag)
  static ExtScalar from_log(int sign, double log_mag);

  const std::complex<double>& mantissa() const { return m_; }
  std::int64_t exponent() const { return e_; }

  bool is_zero() const { return m_.real() == 0.0 && m_.imag() == 0.0; }
  // natural log of |value|; -inf for zero
  double log_abs() const;
  std::complex<double> to_complex() const;
  double real() const;
  double imag() const;
  ExtScalar re() const;
  ExtScalar im() const;
  ExtScalar conj() const;
  ExtScalar abs() const;
  ExtScalar sqrt_real() const;  // principal root of a non-negative real

  ExtScalar operator-() const;
  ExtScalar& operator+=(const ExtScalar& o);
  ExtScalar& operator-=(const ExtScalar& o);
  ExtScalar& operator*=(const ExtScalar& o);
  ExtScalar& operator/=(const ExtScalar& o);

  friend ExtScalar operator+(ExtScalar a, const ExtScalar& b) { return a += b; }
  friend ExtScalar operator-(ExtScalar a, const ExtScalar& b) { return a -= b; }
  friend ExtScalar operator*(ExtScalar a, const ExtScalar& b) { return a *= b; }
  friend ExtScalar operator/(ExtScalar a, const ExtScalar& b) { return a /= b; }
  friend bool operator==(const ExtScalar& a, const ExtScalar& b) {
    return a.m_ == b.m_ && a.e_ == b.e_;
  }

  ExtScalar pow(int k) const;

  std::string str(int digits = 10) const;

 private:
  void normalize();

  std::complex<double> m_{0.0, 0.0};
  std::int64_t e_ = 0;
};

// |a - b| / max(|a|, |b|), computed without overflow; 0 when both vanish.
double rel_diff(const ExtScalar& a, const ExtScalar& b);

}  // namespace skein
