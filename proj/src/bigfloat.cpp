#include "skein/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace skein {

BigFloat::BigFloat(long bits) {
  mpfr_init2(v_, static_cast<mpfr_prec_t>(std::max(bits, 2L)));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double x, long bits) {
  mpfr_init2(v_, static_cast<mpfr_prec_t>(std::max(bits, 2L)));
  mpfr_set_d(v_, x, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

ExtScalar BigFloat::to_ext() const {
  if (mpfr_zero_p(v_)) return {};
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return ExtScalar::from_parts({m, 0.0}, e);
}

double BigFloat::log_abs() const { return to_ext().log_abs(); }

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(*this);
  mpfr_neg(out.v_, out.v_, MPFR_RNDN);
  return out;
}

namespace {

std::shared_ptr<const BigTables> build_big_tables(int r, long bits) {
  auto t = std::make_shared<BigTables>();
  t->r = r;
  t->bits = bits;
  long work = bits + 32;
  BigFloat angle(work), s1(work), x(work);
  mpfr_const_pi(angle.get(), MPFR_RNDN);
  mpfr_mul_ui(angle.get(), angle.get(), 2, MPFR_RNDN);
  mpfr_div_ui(angle.get(), angle.get(), static_cast<unsigned long>(r), MPFR_RNDN);
  mpfr_sin(s1.get(), angle.get(), MPFR_RNDN);
  t->qint.reserve(r + 1);
  for (int n = 0; n <= r; ++n) {
    BigFloat q(bits);
    if (n % r != 0) {
      mpfr_mul_ui(x.get(), angle.get(), static_cast<unsigned long>(n), MPFR_RNDN);
      mpfr_sin(x.get(), x.get(), MPFR_RNDN);
      mpfr_div(q.get(), x.get(), s1.get(), MPFR_RNDN);
    }
    t->qint.push_back(std::move(q));
  }
  t->fact.reserve(r);
  t->fact.emplace_back(1.0, bits);
  for (int n = 1; n < r; ++n) t->fact.push_back(t->fact.back() * t->qint[n]);
  return t;
}

}  // namespace

std::shared_ptr<const BigTables> big_tables(const Level& lvl, long bits) {
  static std::mutex mu;
  static std::map<std::pair<int, long>, std::shared_ptr<const BigTables>> cache;
  // Round precision up so nearby requests share tables.
  bits = (bits + 63) / 64 * 64;
  std::pair<int, long> key{lvl.r(), bits};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = build_big_tables(lvl.r(), bits);
  std::lock_guard lock(mu);
  if (cache.size() > 64) cache.clear();
  return cache.emplace(key, built).first->second;
}

BigFloat sixj_sum_big(const SixTuple& n, const Level& lvl, long bits) {
  auto tb = big_tables(lvl, bits);
  const int r = lvl.r();
  const int T[4] = {(n[0] + n[1] + n[2]) / 2, (n[0] + n[4] + n[5]) / 2, (n[1] + n[3] + n[5]) / 2,
                    (n[2] + n[3] + n[4]) / 2};
  const int Q[3] = {(n[0] + n[1] + n[3] + n[4]) / 2, (n[0] + n[2] + n[3] + n[5]) / 2,
                    (n[1] + n[2] + n[4] + n[5]) / 2};
  int zlo = std::max({T[0], T[1], T[2], T[3]});
  int zhi = std::min({Q[0], Q[1], Q[2], r - 2});
  BigFloat sum(tb->bits), term(tb->bits), den(tb->bits);
  for (int z = zlo; z <= zhi; ++z) {
    mpfr_set(den.get(), tb->fact[z - T[0]].get(), MPFR_RNDN);
    for (int i = 1; i < 4; ++i) den *= tb->fact[z - T[i]];
    for (int j = 0; j < 3; ++j) den *= tb->fact[Q[j] - z];
    mpfr_div(term.get(), tb->fact[z + 1].get(), den.get(), MPFR_RNDN);
    if (z % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

BigFloat theta_big(int a, int b, int c, const Level& lvl, long bits) {
  auto tb = big_tables(lvl, bits);
  int s = (a + b + c) / 2;
  BigFloat out = tb->fact[s + 1];
  out /= tb->fact[s - a];
  out /= tb->fact[s - b];
  out /= tb->fact[s - c];
  if (s % 2) mpfr_neg(out.get(), out.get(), MPFR_RNDN);
  return out;
}

BigFloat sixj_square_big(const SixTuple& t, const Level& lvl, long bits) {
  if (!is_admissible_sixtuple(t, lvl)) return BigFloat(bits);
  BigFloat s = sixj_sum_big(t, lvl, bits);
  BigFloat out = s * s;
  static constexpr int kVertexEdges[4][3] = {{0, 1, 2}, {0, 4, 5}, {1, 3, 5}, {2, 3, 4}};
  for (const auto& ve : kVertexEdges) out /= theta_big(t[ve[0]], t[ve[1]], t[ve[2]], lvl, bits);
  return out;
}

BigFloat circle_value_big(int n, const Level& lvl, long bits) {
  auto tb = big_tables(lvl, bits);
  BigFloat out = tb->qint[(n + 1) % lvl.r()];
  if (n % 2) mpfr_neg(out.get(), out.get(), MPFR_RNDN);
  return out;
}

}  // namespace skein
