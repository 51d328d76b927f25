#include "skein/scan.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "skein/errors.hpp"
#include "skein/parallel.hpp"
#include "skein/pyramids.hpp"
#include "skein/qnum.hpp"
#include "skein/yokota.hpp"

namespace skein {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void finish(ScanRecord& rec, double log_value, double scale) {
  rec.log_value = log_value;
  rec.slope = scale * log_value / rec.r;
  rec.rel_gap = rec.target != 0.0 ? std::fabs(rec.slope - rec.target) / rec.target : 0.0;
}

void mark_failed(ScanRecord& rec, const std::string& why) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rec.log_value = rec.slope = rec.rel_gap = nan;
  rec.note = why;
}

}  // namespace

int nearest_even(double x) {
  double lo = 2.0 * std::floor(x / 2.0);
  double hi = lo + 2.0;
  double dl = x - lo, dh = hi - x;
  if (dl < dh) return static_cast<int>(lo);
  if (dh < dl) return static_cast<int>(hi);
  return static_cast<int>(std::fabs(lo) < std::fabs(hi) ? lo : hi);
}

std::vector<std::string> appendix_names() { return {"sq-ideal", "sq-zero", "pent-ideal", "pent-zero"}; }

AppendixCase appendix_case(const std::string& which, int r) {
  AppendixCase c;
  c.which = which;
  if (which == "sq-ideal") {
    c.spokes = 4;
    c.raw_a = r / 4.0;
    c.raw_b = 3.0 * r / 8.0;
    c.target = named_volume("ideal-square-pyramid");
  } else if (which == "sq-zero") {
    c.spokes = 4;
    c.raw_a = c.raw_b = r / 2.0;
    c.target = named_volume("zero-angled-square-pyramid");
  } else if (which == "pent-ideal") {
    c.spokes = 5;
    c.raw_a = r / 5.0;
    c.raw_b = 2.0 * r / 5.0;
    c.target = named_volume("ideal-pentagonal-pyramid");
  } else if (which == "pent-zero") {
    c.spokes = 5;
    c.raw_a = c.raw_b = r / 2.0;
    c.target = named_volume("zero-angled-pentagonal-pyramid");
  } else {
    throw InvalidArgument("unknown pyramid case: " + which);
  }
  Level lvl(r);
  c.a = nearest_even(c.raw_a);
  c.b = nearest_even(c.raw_b);
  if (!lvl.is_color(c.a) || !lvl.is_color(c.b)) throw InvalidArgument("pyramid colors fall outside the level");
  return c;
}

std::vector<int> odd_range(int rmin, int rmax, int step) {
  if (step <= 0 || step % 2 != 0) throw InvalidArgument("r step must be a positive even number");
  if (rmin < 3) rmin = 3;
  if (rmin % 2 == 0) ++rmin;
  std::vector<int> out;
  for (int r = rmin; r <= rmax; r += step) out.push_back(r);
  return out;
}

ScanRecord appendix_record(const std::string& which, int r, bool timing) {
  auto t0 = Clock::now();
  AppendixCase c = appendix_case(which, r);
  Level lvl(r);
  ScanRecord rec;
  rec.r = r;
  rec.kind = "appendix";
  rec.color_policy = which + ":" + std::to_string(c.a) + "/" + std::to_string(c.b);
  rec.target = c.target;
  PyramidValue v = wheel_yokota(c.spokes, c.a, c.b, lvl);
  rec.cancel_digits = std::isfinite(v.cancel_digits) ? v.cancel_digits : 0.0;
  if (v.value.is_zero())
    mark_failed(rec, "vanishing invariant");
  else
    finish(rec, v.value.log_abs(), kPi);
  if (c.a != std::lround(c.raw_a) || c.b != std::lround(c.raw_b)) rec.note = "rounded to even colors";
  rec.wall_ms = timing ? elapsed_ms(t0) : 0.0;
  return rec;
}

std::vector<ScanRecord> scan_appendix(const std::string& which, const std::vector<int>& rs, const ScanOptions& opt) {
  appendix_case(which, 5);  // reject unknown names before spawning workers
  return parallel_map<ScanRecord>(rs.size(), opt.threads,
                                  [&](std::size_t i) { return appendix_record(which, rs[i], opt.timing); });
}

std::vector<ScanRecord> scan_sixj(const std::vector<int>& rs, bool exhaustive, const ScanOptions& opt) {
  return parallel_map<ScanRecord>(rs.size(), opt.threads, [&](std::size_t i) {
    auto t0 = Clock::now();
    Level lvl(rs[i]);
    ScanRecord rec;
    rec.r = rs[i];
    rec.target = v8();
    if (exhaustive) {
      rec.kind = "sixj-max";
      SixjMax m = max_abs_sixj(lvl);
      rec.color_policy = "exhaustive";
      for (int k = 0; k < 6; ++k) rec.color_policy += (k ? "/" : ":") + std::to_string(m.tuple[k]);
      finish(rec, m.log_abs, 2.0 * kPi);
    } else {
      rec.kind = "sixj-maximizer";
      int c = maximizing_color(lvl);
      rec.color_policy = "constant:" + std::to_string(c);
      ExtScalar s = sixj({c, c, c, c, c, c}, lvl);
      if (s.is_zero())
        mark_failed(rec, "vanishing 6j");
      else
        finish(rec, s.log_abs(), 2.0 * kPi);
    }
    rec.wall_ms = opt.timing ? elapsed_ms(t0) : 0.0;
    return rec;
  });
}

std::vector<ScanRecord> scan_graph(const PlanarGraph& g, const std::string& policy, const Coloring& fixed,
                                   const std::vector<int>& rs, double target, const ScanOptions& opt) {
  if (policy != "maximizer" && policy != "tv" && policy != "fixed")
    throw InvalidArgument("unknown coloring policy: " + policy);
  if (policy == "fixed" && static_cast<int>(fixed.size()) != g.edge_count())
    throw InvalidArgument("fixed coloring needs one color per edge");
  YokotaOptions yo;
  yo.budget = opt.budget;
  yo.threads = opt.threads;
  std::vector<ScanRecord> out;
  // The r values run in order; each evaluation parallelizes internally.
  for (int r : rs) {
    auto t0 = Clock::now();
    Level lvl(r);
    ScanRecord rec;
    rec.r = r;
    rec.kind = policy == "tv" ? "tv" : "yokota";
    rec.target = target;
    try {
      ExtScalar y;
      if (policy == "tv") {
        rec.color_policy = "all";
        y = tv_graph(g, lvl, yo);
      } else {
        Coloring col = policy == "fixed" ? fixed : maximizing_coloring(g, lvl);
        rec.color_policy = policy == "fixed" ? "fixed" : "maximizer:" + std::to_string(col.empty() ? 0 : col[0]);
        y = yokota(g, col, lvl, yo);
      }
      if (y.is_zero())
        mark_failed(rec, "vanishing invariant");
      else
        finish(rec, y.log_abs(), kPi);
    } catch (const BudgetExceeded& e) {
      mark_failed(rec, std::string("budget exceeded: ") + e.what());
    } catch (const Inadmissible& e) {
      mark_failed(rec, std::string("inadmissible: ") + e.what());
    }
    rec.wall_ms = opt.timing ? elapsed_ms(t0) : 0.0;
    out.push_back(rec);
  }
  return out;
}

}  // namespace skein
