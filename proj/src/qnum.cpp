#include "skein/qnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "skein/bigfloat.hpp"
#include "skein/errors.hpp"
#include "qtables.hpp"

namespace skein {

Level::Level(int r) : r_(r) {
  if (r < 3 || r % 2 == 0) throw InvalidArgument("level r must be odd and >= 3, got " + std::to_string(r));
}

std::vector<int> Level::colors() const {
  std::vector<int> out;
  for (int c = 0; c <= r_ - 2; c += 2) out.push_back(c);
  return out;
}

SignLogReal::SignLogReal(int sign, double log_mag) : sign_(sign), log_mag_(sign == 0 ? 0.0 : log_mag) {}

SignLogReal SignLogReal::from_double(double x) {
  if (x == 0.0) return {};
  return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
}

double SignLogReal::to_double() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_mag_); }

SignLogReal& SignLogReal::operator*=(const SignLogReal& o) {
  sign_ *= o.sign_;
  log_mag_ = sign_ == 0 ? 0.0 : log_mag_ + o.log_mag_;
  return *this;
}

SignLogReal& SignLogReal::operator/=(const SignLogReal& o) {
  if (o.sign_ == 0) throw InvalidArgument("division by zero in sign-log arithmetic");
  sign_ *= o.sign_;
  log_mag_ = sign_ == 0 ? 0.0 : log_mag_ - o.log_mag_;
  return *this;
}

namespace detail {

namespace {

std::unique_ptr<QTables> build_tables(int r) {
  auto t = std::make_unique<QTables>();
  t->r = r;
  long double s1 = std::sin(2.0L * std::numbers::pi_v<long double> / r);
  t->qint.resize(2 * r + 2);
  for (int n = 0; n < 2 * r + 2; ++n) {
    int k = n % r;
    t->qint[n] = k == 0 ? 0.0 : static_cast<double>(std::sin(2.0L * std::numbers::pi_v<long double> * k / r) / s1);
  }
  t->logfact.assign(r, 0.0);
  t->signfact.assign(r, 1);
  long double acc = 0.0L;
  int sg = 1;
  for (int n = 1; n < r; ++n) {
    long double q = std::sin(2.0L * std::numbers::pi_v<long double> * n / r) / s1;
    acc += std::log(std::fabs(q));
    if (q < 0) sg = -sg;
    t->logfact[n] = static_cast<double>(acc);
    t->signfact[n] = static_cast<std::int8_t>(sg);
  }
  return t;
}

}  // namespace

const QTables& tables(int r) {
  static std::shared_mutex mu;
  static std::map<int, std::unique_ptr<QTables>> cache;
  {
    std::shared_lock lock(mu);
    auto it = cache.find(r);
    if (it != cache.end()) return *it->second;
  }
  auto built = build_tables(r);
  std::unique_lock lock(mu);
  auto [it, inserted] = cache.emplace(r, std::move(built));
  return *it->second;
}

SumResult alternating_sum(const SixTuple& n, int r) {
  const QTables& tb = tables(r);
  const int T[4] = {(n[0] + n[1] + n[2]) / 2, (n[0] + n[4] + n[5]) / 2, (n[1] + n[3] + n[5]) / 2,
                    (n[2] + n[3] + n[4]) / 2};
  const int Q[3] = {(n[0] + n[1] + n[3] + n[4]) / 2, (n[0] + n[2] + n[3] + n[5]) / 2,
                    (n[1] + n[2] + n[4] + n[5]) / 2};
  int zlo = std::max({T[0], T[1], T[2], T[3]});
  int zhi = std::min({Q[0], Q[1], Q[2], r - 2});
  SumResult res;
  double logs[64];
  int signs[64];
  double lmax = -std::numeric_limits<double>::infinity();
  int count = 0;
  double biggest_log = 0.0;
  std::vector<double> big_logs;
  std::vector<int> big_signs;
  double* lp = logs;
  int* sp = signs;
  if (zhi - zlo + 1 > 64) {
    big_logs.resize(zhi - zlo + 1);
    big_signs.resize(zhi - zlo + 1);
    lp = big_logs.data();
    sp = big_signs.data();
  }
  for (int z = zlo; z <= zhi; ++z) {
    double l = tb.logfact[z + 1];
    int s = (z % 2 ? -1 : 1) * tb.signfact[z + 1];
    for (int i = 0; i < 4; ++i) {
      l -= tb.logfact[z - T[i]];
      s *= tb.signfact[z - T[i]];
    }
    for (int j = 0; j < 3; ++j) {
      l -= tb.logfact[Q[j] - z];
      s *= tb.signfact[Q[j] - z];
    }
    lp[count] = l;
    sp[count] = s;
    ++count;
    lmax = std::max(lmax, l);
    biggest_log = std::max(biggest_log, std::fabs(tb.logfact[z + 1]));
  }
  res.terms = count;
  if (count == 0) return res;
  // Kahan-compensated sums of each sign group, shifted by the largest term.
  double pos = 0, pos_c = 0, neg = 0, neg_c = 0;
  for (int k = 0; k < count; ++k) {
    double v = std::exp(lp[k] - lmax);
    double& sum = sp[k] > 0 ? pos : neg;
    double& comp = sp[k] > 0 ? pos_c : neg_c;
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double diff = pos - neg;
  double total = pos + neg;
  res.log_abs_sum_terms = lmax + std::log(total);
  if (diff == 0.0) {
    res.cancel_digits = std::numeric_limits<double>::infinity();
    res.rel_error = std::numeric_limits<double>::infinity();
    return res;
  }
  res.sign = diff > 0 ? 1 : -1;
  res.log_abs = lmax + std::log(std::fabs(diff));
  res.cancel_digits = std::log10(total / std::fabs(diff));
  // Each term carries the error of a table lookup chain plus one exp.
  double term_err = 2.3e-16 * (16.0 + 2.0 * biggest_log + std::fabs(lmax));
  res.rel_error = term_err * (total / std::fabs(diff)) + 4e-16 * count;
  return res;
}

}  // namespace detail

using detail::tables;

double quantum_integer(long n, const Level& lvl) {
  long r = lvl.r();
  long k = ((n % r) + r) % r;
  if (k == 0) return 0.0;
  return tables(lvl.r()).qint[k];
}

SignLogReal quantum_factorial(int n, const Level& lvl) {
  if (n < 0) throw InvalidArgument("quantum factorial of a negative integer");
  if (n >= lvl.r()) return {};
  const auto& tb = tables(lvl.r());
  return {tb.signfact[n], tb.logfact[n]};
}

double loop_weight(int n, const Level& lvl) {
  double q = quantum_integer(n + 1, lvl);
  return (n % 2 == 0) ? -q : q;
}

double circle_value(int n, const Level& lvl) { return -loop_weight(n, lvl); }

bool is_admissible_triple(int a, int b, int c, const Level& lvl) {
  int r = lvl.r();
  if (a < 0 || b < 0 || c < 0) return false;
  if (a > r - 2 || b > r - 2 || c > r - 2) return false;
  int s = a + b + c;
  if (s % 2 != 0 || s > 2 * r - 4) return false;
  return a <= b + c && b <= a + c && c <= a + b;
}

bool is_admissible_sixtuple(const SixTuple& n, const Level& lvl) {
  return is_admissible_triple(n[0], n[1], n[2], lvl) && is_admissible_triple(n[0], n[4], n[5], lvl) &&
         is_admissible_triple(n[1], n[3], n[5], lvl) && is_admissible_triple(n[2], n[3], n[4], lvl);
}

SignLogReal theta_weight(int a, int b, int c, const Level& lvl) {
  if (!is_admissible_triple(a, b, c, lvl)) {
    throw Inadmissible("inadmissible triple (" + std::to_string(a) + "," + std::to_string(b) + "," +
                       std::to_string(c) + ")");
  }
  int s = (a + b + c) / 2;
  if (s + 1 >= lvl.r()) throw DegenerateTheta("theta weight vanishes");
  const auto& tb = tables(lvl.r());
  int sign = (s % 2 ? -1 : 1) * tb.signfact[s + 1] * tb.signfact[s - a] * tb.signfact[s - b] * tb.signfact[s - c];
  double l = tb.logfact[s + 1] - tb.logfact[s - a] - tb.logfact[s - b] - tb.logfact[s - c];
  return {sign, l};
}

ExtScalar vertex_weight(int a, int b, int c, const Level& lvl) {
  SignLogReal th = theta_weight(a, b, c, lvl);
  ExtScalar mag = ExtScalar::from_log(1, -0.5 * th.log_magnitude());
  if (th.sign() > 0) return mag;
  return mag * ExtScalar(std::complex<double>(0.0, -1.0));
}

int kl_theta_sign(int a, int b, int c, const Level& lvl) {
  SignLogReal th = theta_weight(a, b, c, lvl);
  const auto& tb = tables(lvl.r());
  return th.sign() * tb.signfact[a] * tb.signfact[b] * tb.signfact[c];
}

namespace {

struct TupleKey {
  int r;
  SixTuple t;
  bool operator==(const TupleKey& o) const { return r == o.r && t == o.t; }
};

struct TupleKeyHash {
  std::size_t operator()(const TupleKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.r);
    for (int x : k.t) h = h * 1000003u + static_cast<std::size_t>(x);
    return h;
  }
};

class SixjCache {
 public:
  bool find(const TupleKey& k, SixjInfo& out) {
    std::shared_lock lock(mu_);
    auto it = map_.find(k);
    if (it == map_.end()) return false;
    out = it->second;
    return true;
  }
  void put(const TupleKey& k, const SixjInfo& v) {
    std::unique_lock lock(mu_);
    if (map_.size() > kMaxEntries) map_.clear();
    map_[k] = v;
  }
  void clear() {
    std::unique_lock lock(mu_);
    map_.clear();
  }

 private:
  static constexpr std::size_t kMaxEntries = 1u << 22;
  std::shared_mutex mu_;
  std::unordered_map<TupleKey, SixjInfo, TupleKeyHash> map_;
};

SixjCache& sixj_cache() {
  static SixjCache c;
  return c;
}

constexpr int kVertexEdges[4][3] = {{0, 1, 2}, {0, 4, 5}, {1, 3, 5}, {2, 3, 4}};

SixjInfo compute_sixj(const SixTuple& t, const Level& lvl, const PrecisionPolicy& pol) {
  SixjInfo info;
  if (!is_admissible_sixtuple(t, lvl)) return info;
  info.admissible = true;
  const int r = lvl.r();
  const auto& tb = tables(r);

  detail::SumResult s = detail::alternating_sum(t, r);
  info.cancel_digits = s.cancel_digits;
  ExtScalar sum = ExtScalar::from_log(s.sign, s.log_abs);
  if (pol.force_high || s.rel_error > pol.tolerance || s.sign == 0) {
    double cd = std::isfinite(s.cancel_digits) ? s.cancel_digits : 0.0;
    long bits = std::max<long>(pol.min_bits, r + 64 + static_cast<long>(std::ceil(cd * 3.33)));
    if (!std::isfinite(s.cancel_digits)) bits = std::max<long>(bits, 4L * r + 128);
    BigFloat big = sixj_sum_big(t, lvl, bits);
    sum = big.to_ext();
    info.high_precision = true;
  }

  double log_theta = 0.0;
  int theta_sign = 1;
  int fact_sign = 1;
  ExtScalar phase(1.0);
  for (const auto& ve : kVertexEdges) {
    int a = t[ve[0]], b = t[ve[1]], c = t[ve[2]];
    SignLogReal th = theta_weight(a, b, c, lvl);
    log_theta += th.log_magnitude();
    theta_sign *= th.sign();
    if (th.sign() < 0) phase *= ExtScalar(std::complex<double>(0.0, -1.0));
    int m = (a + b - c) / 2, n = (b + c - a) / 2, p = (a + c - b) / 2;
    fact_sign *= tb.signfact[m] * tb.signfact[n] * tb.signfact[p];
  }
  for (int e = 0; e < 6; ++e) fact_sign *= tb.signfact[t[e]];
  ExtScalar scale = ExtScalar::from_log(1, -0.5 * log_theta);
  info.value = sum * scale * phase;
  info.unitary_real = sum * scale * ExtScalar(static_cast<double>(fact_sign));
  ExtScalar s2 = sum * sum * ExtScalar::from_log(1, -log_theta);
  info.square = theta_sign < 0 ? -s2 : s2;
  return info;
}

}  // namespace

SixjInfo sixj_info(const SixTuple& t, const Level& lvl, const PrecisionPolicy& pol) {
  bool default_policy = pol.tolerance == PrecisionPolicy{}.tolerance && pol.min_bits == 0 && !pol.force_high;
  if (!default_policy) return compute_sixj(t, lvl, pol);
  TupleKey key{lvl.r(), canonical_sixtuple(t)};
  SixjInfo info;
  if (sixj_cache().find(key, info)) return info;
  info = compute_sixj(key.t, lvl, pol);
  sixj_cache().put(key, info);
  return info;
}

ExtScalar sixj(const SixTuple& t, const Level& lvl) { return sixj_info(t, lvl).value; }

std::array<SixTuple, 24> sixtuple_orbit(const SixTuple& t) {
  // Columns (n1,n4), (n2,n5), (n3,n6); permute columns, then flip rows in
  // an even number of columns.
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  static constexpr bool kFlips[4][3] = {{false, false, false}, {true, true, false}, {true, false, true}, {false, true, true}};
  std::array<SixTuple, 24> out{};
  int k = 0;
  for (const auto& p : kPerms) {
    for (const auto& f : kFlips) {
      SixTuple s{};
      for (int c = 0; c < 3; ++c) {
        int top = t[p[c]], bottom = t[p[c] + 3];
        if (f[c]) std::swap(top, bottom);
        s[c] = top;
        s[c + 3] = bottom;
      }
      out[k++] = s;
    }
  }
  return out;
}

SixTuple canonical_sixtuple(const SixTuple& t) {
  auto orbit = sixtuple_orbit(t);
  return *std::min_element(orbit.begin(), orbit.end());
}

double kirby_norm(const Level& lvl) {
  double s = std::sin(2.0 * std::numbers::pi / lvl.r());
  return lvl.r() / (4.0 * s * s);
}

int maximizing_color(const Level& lvl) {
  int r = lvl.r();
  int up = (r - 1) / 2;
  return up % 2 == 0 ? up : (r - 3) / 2;
}

SixjMax max_abs_sixj(const Level& lvl) {
  const int r = lvl.r();
  const int top = r - 2;
  SixjMax best;
  best.log_abs = -std::numeric_limits<double>::infinity();
  const auto& tb = tables(r);
  auto log_weights = [&](const SixTuple& t) {
    double l = 0.0;
    for (const auto& ve : kVertexEdges) {
      int a = t[ve[0]], b = t[ve[1]], c = t[ve[2]];
      int s = (a + b + c) / 2;
      l -= 0.5 * (tb.logfact[s + 1] - tb.logfact[s - a] - tb.logfact[s - b] - tb.logfact[s - c]);
    }
    return l;
  };
  // n1 is the largest entry and n2 the largest of the four entries adjacent
  // to n1; every orbit has such a representative.
  SixTuple t{};
  for (int n1 = 0; n1 <= top; n1 += 2) {
    for (int n2 = 0; n2 <= n1; n2 += 2) {
      for (int n3 = 0; n3 <= n2; n3 += 2) {
        if (!is_admissible_triple(n1, n2, n3, lvl)) continue;
        for (int n5 = 0; n5 <= n2; n5 += 2) {
          for (int n6 = 0; n6 <= n2; n6 += 2) {
            if (!is_admissible_triple(n1, n5, n6, lvl)) continue;
            for (int n4 = 0; n4 <= n1; n4 += 2) {
              if (!is_admissible_triple(n2, n4, n6, lvl) || !is_admissible_triple(n3, n4, n5, lvl)) continue;
              t = {n1, n2, n3, n4, n5, n6};
              ++best.tuples_examined;
              detail::SumResult s = detail::alternating_sum(t, r);
              double lw = log_weights(t);
              double cand;
              if (s.rel_error <= 1e-6) {
                cand = s.log_abs + lw;
              } else {
                if (s.log_abs_sum_terms + lw <= best.log_abs) continue;
                cand = sixj_info(t, lvl, PrecisionPolicy{1e-8, 0, true}).value.log_abs();
              }
              if (cand > best.log_abs) {
                best.log_abs = cand;
                best.tuple = t;
              }
            }
          }
        }
      }
    }
  }
  best.slope = 2.0 * std::numbers::pi / r * best.log_abs;
  return best;
}

void clear_qnum_caches() { sixj_cache().clear(); }

}  // namespace skein
