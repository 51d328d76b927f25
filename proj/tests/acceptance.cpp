// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "skein/errors.hpp"
#include "skein/hypvol.hpp"
#include "skein/planar.hpp"
#include "skein/qnum.hpp"
#include "skein/scan.hpp"
#include "skein/verify.hpp"
#include "skein/yokota.hpp"

using namespace skein;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> lines;
  void note(bool pass, const std::string& line) {
    ok = ok && pass;
    lines.push_back((pass ? "ok    " : "FAIL  ") + line);
  }
  void add(const CheckReport& rep) { note(rep.ok(), format_report(rep)); }
};

std::string fmt(const char* f, double x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string csv(const std::vector<ScanRecord>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

Outcome oracle() {
  Outcome o;
  for (int r : {5, 7, 9, 11, 13}) o.add(verify_oracle(r));
  return o;
}

Outcome identities() {
  Outcome o;
  o.add(verify_theta(7));
  o.add(verify_bigon(7));
  o.add(verify_tetrahedron(7));
  o.add(verify_whitehead(fixture("square-pyramid"), 7));
  o.add(verify_doubling(fixture("square-pyramid"), 0, 5));
  o.add(verify_vertex_sum(7));
  for (int r : {5, 7})
    for (const char* name : {"theta", "tetrahedron", "prism"}) {
      CheckReport rep = verify_kirby(fixture(name), r);
      rep.name += std::string(" ") + name;
      o.add(rep);
    }
  return o;
}

Outcome fourier() {
  Outcome o;
  auto named = [&](CheckReport rep, const char* name) {
    rep.name += std::string(" ") + name;
    o.add(rep);
  };
  named(verify_fourier(fixture("theta"), 7, true), "theta/triangle");
  named(verify_fourier(fixture("tetrahedron"), 5, true), "tetrahedron");
  named(verify_fourier(fixture("tetrahedron"), 7, true), "tetrahedron");
  named(verify_fourier(fixture("cube"), 5, true), "cube/octahedron");
  return o;
}

Outcome n_identity() {
  Outcome o;
  o.add(verify_n_identity(2001));
  return o;
}

Outcome sixj_growth() {
  Outcome o;
  double worst = -INFINITY;
  int worst_r = 0;
  for (int r = 5; r <= 101; r += 2) {
    SixjMax m = max_abs_sixj(Level(r));
    double excess = m.slope - (v8() + 4.0 * std::log(r) / r);
    if (excess > worst) worst = excess, worst_r = r;
  }
  o.note(worst <= 0.0, "exhaustive max over odd r <= 101 minus v8 + 4 log(r)/r peaks at " + fmt("%.4f", worst) +
                           " (r=" + std::to_string(worst_r) + ")");
  ScanOptions opt;
  opt.timing = false;
  auto rows = scan_sixj(odd_range(51, 301), false, opt);
  Extrapolation e = extrapolate_limit(rows);
  double gap = std::fabs(e.limit - v8()) / v8();
  o.note(gap <= 0.02, "maximizer series r=51..301 extrapolates to " + fmt("%.5f", e.limit) + " +- " +
                          fmt("%.5f", e.limit_stderr) + ", gap to v8 " + fmt("%.2f%%", 100 * gap));
  return o;
}

const std::vector<int>& appendix_rs() {
  static const std::vector<int> rs = odd_range(101, 321, 20);
  return rs;
}

std::vector<ScanRecord> appendix_rows(int threads) {
  ScanOptions opt;
  opt.threads = threads;
  opt.timing = false;
  std::vector<ScanRecord> rows;
  for (const auto& name : appendix_names()) {
    auto part = scan_appendix(name, appendix_rs(), opt);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

Outcome appendix() {
  Outcome o;
  auto rows = appendix_rows(0);
  auto last = [&](const std::string& name) {
    const ScanRecord* out = nullptr;
    for (const auto& r : rows)
      if (r.color_policy.rfind(name + ":", 0) == 0) out = &r;
    return *out;
  };
  for (const char* name : {"sq-ideal", "pent-ideal", "pent-zero"}) {
    ScanRecord r = last(name);
    o.note(r.rel_gap <= 0.05, std::string(name) + " r=" + std::to_string(r.r) + " slope " + fmt("%.5f", r.slope) +
                                  " target " + fmt("%.5f", r.target) + " gap " + fmt("%.2f%%", 100 * r.rel_gap));
  }
  std::vector<double> gaps;
  for (const auto& r : rows)
    if (r.color_policy.rfind("sq-zero:", 0) == 0) gaps.push_back(r.rel_gap);
  bool decreasing = gaps.size() > 1;
  for (std::size_t i = 1; i < gaps.size(); ++i) decreasing = decreasing && gaps[i] < gaps[i - 1];
  o.note(decreasing, "sq-zero gap over r=101..321 goes from " + fmt("%.2f%%", 100 * gaps.front()) + " to " +
                         fmt("%.2f%%", 100 * gaps.back()) + (decreasing ? ", strictly decreasing" : ", not monotone"));
  return o;
}

Outcome constants() {
  Outcome o;
  for (const auto& v : named_volumes()) {
    // Compare at the precision of the quoted figure, at most five digits.
    int digits = std::min(5, v.quoted_digits);
    double scale = std::pow(10.0, digits - 1 - std::floor(std::log10(v.quoted)));
    bool pass = std::fabs(std::round(v.value * scale) - std::round(v.quoted * scale)) < 0.5;
    o.note(pass, v.name + " " + fmt("%.8f", v.value) + " vs " + fmt("%.6g", v.quoted) + " (" +
                     std::to_string(digits) + " digits)");
  }
  return o;
}

Outcome family() {
  Outcome o;
  auto members = family_enumerate(1);
  const FamilyMember* blown = nullptr;
  const FamilyMember* tri = nullptr;
  for (const auto& f : members) {
    if (f.history == "B" && !blown) blown = &f;
    if (f.history == "T" && !tri) tri = &f;
  }
  if (!blown || !tri) {
    o.note(false, "family with one move lacks a blow-up or a triangulation");
    return o;
  }
  for (int r : {7, 11}) {
    SignReport s = constant_sign_terms(tri->graph, Level(r));
    o.note(s.terms > 0 && s.constant_sign(), "constant sign r=" + std::to_string(r) + ": " + std::to_string(s.terms) +
                                                 " terms, " + std::to_string(s.positive) + " positive, " +
                                                 std::to_string(s.negative) + " negative");
  }
  ScanOptions opt;
  opt.timing = false;
  auto rows = scan_graph(blown->graph, "maximizer", {}, odd_range(51, 301, 10), 2.0 * v8(), opt);
  Extrapolation e = extrapolate_limit(rows);
  double gap = std::fabs(e.limit - 2.0 * v8()) / (2.0 * v8());
  o.note(gap <= 0.05, "blown-up tetrahedron, maximizer r=51..301, limit " + fmt("%.5f", e.limit) + " vs 2 v8 " +
                          fmt("%.5f", 2.0 * v8()) + ", gap " + fmt("%.2f%%", 100 * gap) + "; last slope " +
                          fmt("%.5f", e.last_slope));
  return o;
}

Outcome determinism() {
  Outcome o;
  std::vector<std::string> runs;
  for (int t : {1, 4, 8}) {
    clear_qnum_caches();
    runs.push_back(csv(appendix_rows(t)));
  }
  bool same = runs[0] == runs[1] && runs[0] == runs[2];
  o.note(same, "pyramid CSV with 1, 4 and 8 threads: " + std::to_string(runs[0].size()) + " bytes, " +
                   (same ? "identical" : "different"));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all = {
      {1, "6j oracle equivalence", oracle},
      {2, "identity suite", identities},
      {3, "transform to the dual", fourier},
      {4, "N identity", n_identity},
      {5, "6j growth bound and limit", sixj_growth},
      {6, "pyramid experiments", appendix},
      {7, "volume constants", constants},
      {8, "constant sign and one-move family", family},
      {9, "thread-count determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.note(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s  %s  (%.1f s)\n", c.id, o.ok ? "PASS" : "FAIL", c.title, secs);
    for (const auto& line : o.lines) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed;
}
