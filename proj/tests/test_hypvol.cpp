#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "skein/errors.hpp"
#include "skein/hypvol.hpp"

using namespace skein;

namespace {

constexpr double kPi = std::numbers::pi;

// Partial Fourier sum with the tail bounded by 1/(2N).
double lobachevsky_series(double x, int n) {
  double s = 0.0;
  for (int k = n; k >= 1; --k) s += std::sin(2.0 * k * x) / (2.0 * k * k);
  return s;
}

ScanRecord rec(int r, double slope) {
  ScanRecord s;
  s.r = r;
  s.slope = slope;
  return s;
}

}  // namespace

TEST_CASE("Lobachevsky function") {
  CHECK(lobachevsky(0.0) == 0.0);
  CHECK(std::fabs(lobachevsky(kPi / 2)) < 1e-15);
  CHECK(lobachevsky(kPi / 6) == doctest::Approx(0.5074708).epsilon(1e-7));
  for (double x = -4.0; x <= 4.0; x += 0.173) {
    CHECK(std::fabs(lobachevsky(-x) + lobachevsky(x)) < 1e-12);
    CHECK(std::fabs(lobachevsky(x + kPi) - lobachevsky(x)) < 1e-12);
    CHECK(std::fabs(lobachevsky(x) - lobachevsky_series(x, 200000)) < 3e-6);
  }
  // Lambda(2x) = 2 Lambda(x) + 2 Lambda(x + pi/2).
  for (double x = 0.05; x < 1.5; x += 0.11)
    CHECK(std::fabs(lobachevsky(2 * x) - 2 * lobachevsky(x) - 2 * lobachevsky(x + kPi / 2)) < 1e-13);
  // The maximum sits at pi/6.
  CHECK(lobachevsky(kPi / 6) > lobachevsky(kPi / 6 + 1e-4));
  CHECK(lobachevsky(kPi / 6) > lobachevsky(kPi / 6 - 1e-4));
}

TEST_CASE("volume constants") {
  CHECK(v8() == doctest::Approx(3.663862376708876).epsilon(1e-14));
  CHECK(std::fabs(8 * (lobachevsky(kPi / 8) + lobachevsky(3 * kPi / 8)) - antiprism_volume(4)) < 1e-12);
  // Second route to v8 through the duplication rule at pi/8.
  CHECK(std::fabs(16 * (lobachevsky(kPi / 8) + lobachevsky(5 * kPi / 8)) - v8()) < 1e-10);
  CHECK(antiprism_volume(4) == doctest::Approx(6.02305).epsilon(2e-6));
  CHECK(antiprism_volume(3) > 0.0);
  CHECK(antiprism_volume(3) < antiprism_volume(4));
  CHECK(antiprism_volume(100) / (2 * 100 * 2 * lobachevsky(kPi / 4)) == doctest::Approx(1.0).epsilon(0.01));
  for (const auto& v : named_volumes()) {
    double scale = std::pow(10.0, v.quoted_digits - 1 - std::floor(std::log10(v.quoted)));
    CHECK(std::round(v.value * scale) / scale == doctest::Approx(v.quoted).epsilon(1e-12));
  }
  CHECK(named_volume("ideal-square-pyramid") == doctest::Approx(v8() / 2));
  CHECK(family_max_volume(0) == doctest::Approx(v8()));
  CHECK(family_max_volume(1) == doctest::Approx(2 * v8()));
  CHECK(family_max_volume(3) == doctest::Approx(4 * v8()));
  CHECK_THROWS_AS(antiprism_volume(2), InvalidArgument);
}

TEST_CASE("extrapolation") {
  std::vector<ScanRecord> flat, model;
  for (int r = 51; r <= 321; r += 10) {
    flat.push_back(rec(r, 2.5));
    model.push_back(rec(r, 3.6 + 2.0 * std::log(r) / r));
  }
  Extrapolation f = extrapolate_limit(flat);
  CHECK(f.limit == doctest::Approx(2.5));
  CHECK(f.residual_rms < 1e-12);
  Extrapolation m = extrapolate_limit(model);
  CHECK(std::fabs(m.limit - 3.6) < 1e-6);
  CHECK(m.coefficient == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(m.last_slope == model.back().slope);
  // Subsampling moves the estimate by less than the standard error plus noise.
  std::vector<ScanRecord> noisy, half;
  for (int r = 51; r <= 321; r += 10) noisy.push_back(rec(r, 3.6 + 2.0 * std::log(r) / r + 1e-3 * std::sin(r)));
  for (std::size_t i = 0; i < noisy.size(); i += 2) half.push_back(noisy[i]);
  Extrapolation a = extrapolate_limit(noisy), b = extrapolate_limit(half);
  CHECK(std::fabs(a.limit - b.limit) < 3 * (a.limit_stderr + b.limit_stderr));
  CHECK_THROWS_AS(extrapolate_limit({rec(5, 1), rec(7, 1), rec(9, 1)}), IllConditioned);
  CHECK_THROWS_AS(extrapolate_limit({rec(5, 1), rec(5, 1), rec(5, 2), rec(5, 3)}), IllConditioned);
}

TEST_CASE("CSV round trip") {
  ScanRecord a;
  a.r = 101;
  a.kind = "appendix";
  a.color_policy = "sq-ideal:26/38";
  a.log_value = 77.125;
  a.slope = 2.39705;
  a.target = 1.83193;
  a.rel_gap = 0.3;
  a.cancel_digits = 3.3;
  std::ostringstream os;
  write_csv(os, {a});
  CHECK(os.str().rfind(csv_header() + "\n", 0) == 0);
  std::istringstream is(os.str());
  auto back = read_csv(is);
  REQUIRE(back.size() == 1);
  CHECK(back[0].r == 101);
  CHECK(back[0].color_policy == a.color_policy);
  CHECK(back[0].slope == doctest::Approx(a.slope));
  CHECK(csv_row(back[0]) == csv_row(a));
}
