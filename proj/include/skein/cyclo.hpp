#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "skein/bigfloat.hpp"
#include "skein/qnum.hpp"

namespace skein {

struct CycloField;

// Exact element of Q(zeta_r), stored as rational coefficients of the power
// basis 1, x, ..., x^(d-1) modulo the r-th cyclotomic polynomial.
class CycloExact {
 public:
  static CycloExact zero(const Level& lvl);
  static CycloExact one(const Level& lvl);
  static CycloExact from_int(long v, const Level& lvl);
  // zeta^k
  static CycloExact zeta_power(long k, const Level& lvl);

  int r() const;
  const std::vector<mpq_class>& coefficients() const { return c_; }
  bool is_zero() const;

  CycloExact operator-() const;
  CycloExact& operator+=(const CycloExact& o);
  CycloExact& operator-=(const CycloExact& o);
  CycloExact& operator*=(const CycloExact& o);
  friend CycloExact operator+(CycloExact a, const CycloExact& b) { return a += b; }
  friend CycloExact operator-(CycloExact a, const CycloExact& b) { return a -= b; }
  friend CycloExact operator*(CycloExact a, const CycloExact& b) { return a *= b; }
  friend bool operator==(const CycloExact& a, const CycloExact& b);
  // Throws InvalidArgument for zero.
  CycloExact inverse() const;

  // Real and imaginary parts of the embedding zeta -> exp(2 pi i / r).
  BigFloat embed_real(long bits) const;
  BigFloat embed_imag(long bits) const;

  std::string str() const;

 private:
  CycloExact(std::shared_ptr<const CycloField> f, std::vector<mpq_class> c);
  void reduce_into(std::vector<mpq_class> wide);

  std::shared_ptr<const CycloField> field_;
  std::vector<mpq_class> c_;
};

struct CycloBudget {
  int max_r = 31;
};

CycloExact quantum_integer_exact(long n, const Level& lvl);
CycloExact quantum_factorial_exact(int n, const Level& lvl);
// Throws Inadmissible.
CycloExact theta_exact(int a, int b, int c, const Level& lvl);
// Exact square of the 6j symbol; zero for inadmissible tuples.
CycloExact sixj_exact_square(const SixTuple& t, const Level& lvl, const CycloBudget& budget = {});

}  // namespace skein
