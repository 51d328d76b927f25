#pragma once

#include <mpfr.h>

#include <memory>
#include <vector>

#include "skein/ext_scalar.hpp"
#include "skein/qnum.hpp"

namespace skein {

// Owning MPFR value. Arithmetic results take the left operand's precision.
class BigFloat {
 public:
  explicit BigFloat(long bits = 128);
  BigFloat(double x, long bits);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  long bits() const { return static_cast<long>(mpfr_get_prec(v_)); }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  ExtScalar to_ext() const;
  double log_abs() const;

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  BigFloat operator-() const;

 private:
  mpfr_t v_;
};

struct BigTables {
  int r = 0;
  long bits = 0;
  std::vector<BigFloat> qint;  // [n], n = 0..r
  std::vector<BigFloat> fact;  // [n]!, n = 0..r-1
};

std::shared_ptr<const BigTables> big_tables(const Level& lvl, long bits);

// Alternating sum of the 6j formula, without vertex weights.
BigFloat sixj_sum_big(const SixTuple& t, const Level& lvl, long bits);
BigFloat theta_big(int a, int b, int c, const Level& lvl, long bits);
// Square of the 6j symbol (real, possibly negative). Zero if inadmissible.
BigFloat sixj_square_big(const SixTuple& t, const Level& lvl, long bits);
BigFloat circle_value_big(int n, const Level& lvl, long bits);

}  // namespace skein
