#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "skein/ext_scalar.hpp"

namespace skein {

// Odd r >= 3; q = exp(2 pi i / r). Colors are the even integers 0..r-2.
class Level {
 public:
  explicit Level(int r);

  int r() const { return r_; }
  int max_color() const { return r_ - 2; }
  int color_count() const { return (r_ - 1) / 2; }
  std::vector<int> colors() const;
  bool is_color(int c) const { return c >= 0 && c <= r_ - 2 && c % 2 == 0; }

  friend bool operator==(const Level& a, const Level& b) { return a.r_ == b.r_; }

 private:
  int r_;
};

class SignLogReal {
 public:
  SignLogReal() = default;
  SignLogReal(int sign, double log_mag);
  static SignLogReal from_double(double x);

  int sign() const { return sign_; }
  double log_magnitude() const { return log_mag_; }
  bool is_zero() const { return sign_ == 0; }
  double to_double() const;
  ExtScalar to_ext() const { return ExtScalar::from_log(sign_, log_mag_); }

  SignLogReal& operator*=(const SignLogReal& o);
  SignLogReal& operator/=(const SignLogReal& o);
  friend SignLogReal operator*(SignLogReal a, const SignLogReal& b) { return a *= b; }
  friend SignLogReal operator/(SignLogReal a, const SignLogReal& b) { return a /= b; }

 private:
  int sign_ = 0;
  double log_mag_ = 0.0;
};

struct PrecisionPolicy {
  double tolerance = 1e-8;  // estimated relative error that triggers MPFR
  int min_bits = 0;         // 0: automatic (about r + 64)
  bool force_high = false;
};

using SixTuple = std::array<int, 6>;

double quantum_integer(long n, const Level& lvl);
SignLogReal quantum_factorial(int n, const Level& lvl);

// (-1)^(n+1) [n+1]
double loop_weight(int n, const Level& lvl);
// (-1)^n [n+1]: the value of a circle colored n, and the weight carried by
// fusion, Kirby colors and desingularized edges.
double circle_value(int n, const Level& lvl);

bool is_admissible_triple(int a, int b, int c, const Level& lvl);
bool is_admissible_sixtuple(const SixTuple& t, const Level& lvl);

// (-1)^s [s+1]! / ([s-a]! [s-b]! [s-c]!), s = (a+b+c)/2. Throws Inadmissible.
SignLogReal theta_weight(int a, int b, int c, const Level& lvl);
// Theta^(-1/2): positive for Theta > 0, -i/sqrt|Theta| otherwise.
ExtScalar vertex_weight(int a, int b, int c, const Level& lvl);
// Sign of the theta evaluation in Kauffman-Lins normalization.
int kl_theta_sign(int a, int b, int c, const Level& lvl);

struct SixjInfo {
  bool admissible = false;
  ExtScalar value;          // product of vertex weights times the alternating sum
  ExtScalar unitary_real;   // same magnitude, real, as used by the bracket evaluator
  ExtScalar square;         // value^2, real
  double cancel_digits = 0.0;
  bool high_precision = false;
};

SixjInfo sixj_info(const SixTuple& t, const Level& lvl, const PrecisionPolicy& pol = {});
ExtScalar sixj(const SixTuple& t, const Level& lvl);

// The tuple's orbit under the 24 tetrahedral relabelings, and its minimum.
std::array<SixTuple, 24> sixtuple_orbit(const SixTuple& t);
SixTuple canonical_sixtuple(const SixTuple& t);

double kirby_norm(const Level& lvl);

struct SixjMax {
  SixTuple tuple{};
  double log_abs = 0.0;
  double slope = 0.0;  // (2 pi / r) log|6j|
  std::uint64_t tuples_examined = 0;
};

// Exhaustive maximum of |6j| over admissible tuples.
SixjMax max_abs_sixj(const Level& lvl);
// Constant tuple with the even entry (r - 2 +- 1) / 2.
int maximizing_color(const Level& lvl);

void clear_qnum_caches();

}  // namespace skein
