#include "skein/hypvol.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "skein/errors.hpp"

namespace skein {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTerms = 40;

// zeta(2k) for k = 1..kTerms.
const std::array<double, kTerms + 1>& zeta_even() {
  static const std::array<double, kTerms + 1> z = [] {
    std::array<double, kTerms + 1> out{};
    out[1] = kPi * kPi / 6.0;
    out[2] = std::pow(kPi, 4) / 90.0;
    for (int k = 3; k <= kTerms; ++k) {
      double s = 0.0;
      for (int n = 2000; n >= 1; --n) s += std::pow(static_cast<double>(n), -2.0 * k);
      out[k] = s;
    }
    return out;
  }();
  return z;
}

// Clausen function Cl2 on [-pi, pi] through its expansion at 0:
// x - x log|x| + sum_k zeta(2k) x^(2k+1) / (k (2k+1) (2 pi)^(2k)).
double clausen2(double x) {
  if (x == 0.0) return 0.0;
  const auto& z = zeta_even();
  double s = x - x * std::log(std::fabs(x));
  double u = x / (2.0 * kPi);
  double p = x;
  for (int k = 1; k <= kTerms; ++k) {
    p *= u * u;
    double t = z[k] * p / (k * (2.0 * k + 1.0));
    s += t;
    if (std::fabs(t) < 1e-18 * std::fabs(s)) break;
  }
  return s;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

}  // namespace

double lobachevsky(double theta) {
  // Lambda(x) = Cl2(2x) / 2, with period pi.
  double x = std::remainder(2.0 * theta, 2.0 * kPi);
  return 0.5 * clausen2(x);
}

double v8() { return 8.0 * lobachevsky(kPi / 4.0); }

double antiprism_volume(int n) {
  if (n < 3) throw InvalidArgument("antiprism needs n >= 3");
  double h = kPi / (2.0 * n);
  return 2.0 * n * (lobachevsky(kPi / 4.0 + h) + lobachevsky(kPi / 4.0 - h));
}

std::vector<NamedVolume> named_volumes() {
  return {
      {"v8", v8(), 3.66, 3},
      {"ideal-square-pyramid", 4.0 * lobachevsky(kPi / 4.0), 1.83193, 6},
      {"ideal-pentagonal-pyramid", 5.0 * lobachevsky(kPi / 5.0), 2.49339, 6},
      {"zero-angled-square-pyramid", antiprism_volume(4), 6.02305, 6},
      {"zero-angled-pentagonal-pyramid", antiprism_volume(5), 8.13789, 6},
  };
}

double named_volume(const std::string& name) {
  for (const auto& v : named_volumes())
    if (v.name == name) return v.value;
  throw InvalidArgument("unknown volume: " + name);
}

double family_max_volume(int m) {
  if (m < 0) throw InvalidArgument("move count must be non-negative");
  return (m + 1) * v8();
}

std::string csv_header() { return "r,kind,color_policy,log_value,slope,target,rel_gap,cancel_digits,wall_ms"; }

std::string csv_row(const ScanRecord& rec) {
  std::ostringstream os;
  os << rec.r << ',' << rec.kind << ',' << rec.color_policy << ',' << fmt("%.12g", rec.log_value) << ','
     << fmt("%.10f", rec.slope) << ',' << fmt("%.10f", rec.target) << ',' << fmt("%.8f", rec.rel_gap) << ','
     << fmt("%.2f", rec.cancel_digits) << ',' << fmt("%.1f", rec.wall_ms);
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<ScanRecord>& rows) {
  os << csv_header() << '\n';
  for (const auto& r : rows) os << csv_row(r) << '\n';
}

std::vector<ScanRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("empty CSV");
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  std::map<std::string, std::size_t> col;
  auto head = split(line);
  for (std::size_t i = 0; i < head.size(); ++i) col[head[i]] = i;
  if (!col.count("r") || !col.count("slope")) throw InvalidArgument("CSV needs r and slope columns");
  std::vector<ScanRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    auto get = [&](const char* name) -> std::string {
      auto it = col.find(name);
      return it != col.end() && it->second < cells.size() ? cells[it->second] : std::string();
    };
    auto num = [&](const char* name) {
      std::string s = get(name);
      return s.empty() ? 0.0 : std::stod(s);
    };
    ScanRecord rec;
    rec.r = std::stoi(get("r"));
    rec.kind = get("kind");
    rec.color_policy = get("color_policy");
    rec.log_value = num("log_value");
    rec.slope = num("slope");
    rec.target = num("target");
    rec.rel_gap = num("rel_gap");
    rec.cancel_digits = num("cancel_digits");
    rec.wall_ms = num("wall_ms");
    out.push_back(rec);
  }
  return out;
}

Extrapolation extrapolate_limit(const std::vector<ScanRecord>& records) {
  const std::size_t n = records.size();
  if (n < 4) throw IllConditioned("extrapolation needs at least four records");
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (const auto& rec : records) {
    if (rec.r <= 1 || !std::isfinite(rec.slope)) throw IllConditioned("record with unusable r or slope");
    double x = std::log(static_cast<double>(rec.r)) / rec.r;
    sx += x;
    sxx += x * x;
    sy += rec.slope;
    sxy += x * rec.slope;
  }
  double det = n * sxx - sx * sx;
  if (!(std::fabs(det) > 1e-14 * std::max(1.0, n * sxx))) throw IllConditioned("degenerate design matrix");
  Extrapolation out;
  out.coefficient = (n * sxy - sx * sy) / det;
  out.limit = (sy - out.coefficient * sx) / n;
  double ss = 0.0;
  for (const auto& rec : records) {
    double x = std::log(static_cast<double>(rec.r)) / rec.r;
    double e = rec.slope - out.limit - out.coefficient * x;
    ss += e * e;
  }
  out.points = n;
  out.residual_rms = std::sqrt(ss / n);
  double sigma2 = n > 2 ? ss / (n - 2) : 0.0;
  out.limit_stderr = std::sqrt(sigma2 * sxx / det);
  out.last_slope = records.back().slope;
  return out;
}

}  // namespace skein
