#include "skein/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "skein/errors.hpp"

namespace skein {

using Poly = std::vector<mpq_class>;

struct CycloField {
  int r = 0;
  Poly phi;  // monic, degree d
  int degree() const { return static_cast<int>(phi.size()) - 1; }
  std::vector<CycloExact> fact;
  std::vector<CycloExact> inv_fact;
};

namespace {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient of a by monic-or-not b; a is replaced by the remainder.
Poly divmod(Poly& a, const Poly& b) {
  trim(a);
  int db = static_cast<int>(b.size()) - 1;
  Poly q;
  if (static_cast<int>(a.size()) - 1 < db) return q;
  q.assign(a.size() - b.size() + 1, mpq_class(0));
  while (!a.empty() && static_cast<int>(a.size()) - 1 >= db) {
    int shift = static_cast<int>(a.size()) - 1 - db;
    mpq_class f = a.back() / b.back();
    q[shift] = f;
    for (int i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return q;
}

Poly cyclotomic(int n) {
  static std::map<int, Poly> memo;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  Poly p(n + 1, mpq_class(0));
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divmod(p, cyclotomic(d));
  }
  memo[n] = p;
  return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

std::mutex& field_mutex() {
  static std::mutex mu;
  return mu;
}

std::shared_ptr<CycloField> make_field(int r) {
  auto f = std::make_shared<CycloField>();
  f->r = r;
  f->phi = cyclotomic(r);
  return f;
}

}  // namespace

CycloExact::CycloExact(std::shared_ptr<const CycloField> f, std::vector<mpq_class> c)
    : field_(std::move(f)), c_(std::move(c)) {
  c_.resize(field_->degree(), mpq_class(0));
}

namespace {

std::shared_ptr<const CycloField> field_for(int r);

}  // namespace

CycloExact CycloExact::zero(const Level& lvl) { return CycloExact(field_for(lvl.r()), {}); }

CycloExact CycloExact::one(const Level& lvl) { return from_int(1, lvl); }

CycloExact CycloExact::from_int(long v, const Level& lvl) {
  return CycloExact(field_for(lvl.r()), {mpq_class(v)});
}

CycloExact CycloExact::zeta_power(long k, const Level& lvl) {
  long r = lvl.r();
  long e = ((k % r) + r) % r;
  Poly p(e + 1, mpq_class(0));
  p[e] = 1;
  CycloExact out = zero(lvl);
  out.reduce_into(std::move(p));
  return out;
}

int CycloExact::r() const { return field_->r; }

bool CycloExact::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x == 0; });
}

void CycloExact::reduce_into(std::vector<mpq_class> wide) {
  divmod(wide, field_->phi);
  wide.resize(field_->degree(), mpq_class(0));
  c_ = std::move(wide);
}

CycloExact CycloExact::operator-() const {
  CycloExact out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

CycloExact& CycloExact::operator+=(const CycloExact& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloExact& CycloExact::operator-=(const CycloExact& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloExact& CycloExact::operator*=(const CycloExact& o) {
  Poly a = c_, b = o.c_;
  trim(a);
  trim(b);
  reduce_into(poly_mul(a, b));
  return *this;
}

bool operator==(const CycloExact& a, const CycloExact& b) { return a.r() == b.r() && a.c_ == b.c_; }

CycloExact CycloExact::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of zero in cyclotomic field");
  // Extended Euclid: track s with s * self == r_i (mod phi).
  Poly r0 = field_->phi, r1 = c_;
  trim(r1);
  Poly s0, s1{mpq_class(1)};
  while (!(r1.size() == 1)) {
    Poly rem = r0;
    Poly q = divmod(rem, r1);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    trim(r1);
    if (r1.empty()) throw InvalidArgument("non-invertible cyclotomic element");
  }
  for (auto& x : s1) x /= r1[0];
  CycloExact out(field_, {});
  out.reduce_into(std::move(s1));
  return out;
}

namespace {

BigFloat embed_part(const std::vector<mpq_class>& c, int r, long bits, bool imag) {
  BigFloat acc(bits), angle(bits + 16), x(bits + 16), coef(bits + 16);
  mpfr_const_pi(angle.get(), MPFR_RNDN);
  mpfr_mul_ui(angle.get(), angle.get(), 2, MPFR_RNDN);
  mpfr_div_ui(angle.get(), angle.get(), static_cast<unsigned long>(r), MPFR_RNDN);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    mpfr_mul_ui(x.get(), angle.get(), static_cast<unsigned long>(k), MPFR_RNDN);
    if (imag) {
      mpfr_sin(x.get(), x.get(), MPFR_RNDN);
    } else {
      mpfr_cos(x.get(), x.get(), MPFR_RNDN);
    }
    mpfr_set_q(coef.get(), c[k].get_mpq_t(), MPFR_RNDN);
    x *= coef;
    acc += x;
  }
  return acc;
}

}  // namespace

BigFloat CycloExact::embed_real(long bits) const { return embed_part(c_, field_->r, bits, false); }
BigFloat CycloExact::embed_imag(long bits) const { return embed_part(c_, field_->r, bits, true); }

std::string CycloExact::str() const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c_[k].get_str() + ")";
    if (k > 0) out += "*z^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

namespace {

std::shared_ptr<const CycloField> field_for(int r) {
  static std::map<int, std::shared_ptr<CycloField>> cache;
  std::lock_guard lock(field_mutex());
  auto it = cache.find(r);
  if (it != cache.end()) return it->second;
  auto f = make_field(r);
  cache[r] = f;
  return f;
}

// Factorials and their inverses, built once per level.
const CycloField& field_with_factorials(const Level& lvl) {
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto f = std::const_pointer_cast<CycloField>(field_for(lvl.r()));
  if (f->fact.empty()) {
    std::vector<CycloExact> fact{CycloExact::one(lvl)};
    for (int n = 1; n < lvl.r(); ++n) fact.push_back(fact.back() * quantum_integer_exact(n, lvl));
    std::vector<CycloExact> inv;
    inv.reserve(fact.size());
    CycloExact top = fact.back().inverse();
    inv.resize(fact.size(), CycloExact::zero(lvl));
    inv.back() = top;
    for (int n = lvl.r() - 1; n >= 1; --n) inv[n - 1] = inv[n] * quantum_integer_exact(n, lvl);
    f->inv_fact = std::move(inv);
    f->fact = std::move(fact);
  }
  return *f;
}

}  // namespace

CycloExact quantum_integer_exact(long n, const Level& lvl) {
  CycloExact out = CycloExact::zero(lvl);
  long sign = 1;
  if (n < 0) {
    n = -n;
    sign = -1;
  }
  for (long k = 0; k < n; ++k) out += CycloExact::zeta_power(n - 1 - 2 * k, lvl);
  return sign < 0 ? -out : out;
}

CycloExact quantum_factorial_exact(int n, const Level& lvl) {
  if (n < 0) throw InvalidArgument("quantum factorial of a negative integer");
  if (n >= lvl.r()) return CycloExact::zero(lvl);
  return field_with_factorials(lvl).fact[n];
}

CycloExact theta_exact(int a, int b, int c, const Level& lvl) {
  if (!is_admissible_triple(a, b, c, lvl)) throw Inadmissible("inadmissible triple");
  const CycloField& f = field_with_factorials(lvl);
  int s = (a + b + c) / 2;
  CycloExact out = f.fact[s + 1] * f.inv_fact[s - a] * f.inv_fact[s - b] * f.inv_fact[s - c];
  return s % 2 ? -out : out;
}

CycloExact sixj_exact_square(const SixTuple& n, const Level& lvl, const CycloBudget& budget) {
  if (lvl.r() > budget.max_r) {
    throw BudgetExceeded("exact oracle limited to r <= " + std::to_string(budget.max_r));
  }
  if (!is_admissible_sixtuple(n, lvl)) return CycloExact::zero(lvl);
  const CycloField& f = field_with_factorials(lvl);
  const int T[4] = {(n[0] + n[1] + n[2]) / 2, (n[0] + n[4] + n[5]) / 2, (n[1] + n[3] + n[5]) / 2,
                    (n[2] + n[3] + n[4]) / 2};
  const int Q[3] = {(n[0] + n[1] + n[3] + n[4]) / 2, (n[0] + n[2] + n[3] + n[5]) / 2,
                    (n[1] + n[2] + n[4] + n[5]) / 2};
  int zlo = std::max({T[0], T[1], T[2], T[3]});
  int zhi = std::min({Q[0], Q[1], Q[2], lvl.r() - 2});
  CycloExact sum = CycloExact::zero(lvl);
  for (int z = zlo; z <= zhi; ++z) {
    CycloExact term = f.fact[z + 1];
    for (int t : T) term *= f.inv_fact[z - t];
    for (int q : Q) term *= f.inv_fact[q - z];
    if (z % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  // Theta^-1 = (-1)^s [s-a]! [s-b]! [s-c]! / [s+1]!
  CycloExact out = sum * sum;
  static constexpr int kVertexEdges[4][3] = {{0, 1, 2}, {0, 4, 5}, {1, 3, 5}, {2, 3, 4}};
  for (const auto& ve : kVertexEdges) {
    int a = n[ve[0]], b = n[ve[1]], c = n[ve[2]];
    int s = (a + b + c) / 2;
    out *= f.fact[s - a] * f.fact[s - b] * f.fact[s - c] * f.inv_fact[s + 1];
    if (s % 2) out = -out;
  }
  return out;
}

}  // namespace skein
