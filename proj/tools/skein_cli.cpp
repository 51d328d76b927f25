// Command-line front end. Exit codes: 0 success, 1 failed check or
// computation, 2 invalid input.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "skein/bracket.hpp"
#include "skein/errors.hpp"
#include "skein/hypvol.hpp"
#include "skein/parallel.hpp"
#include "skein/qnum.hpp"
#include "skein/scan.hpp"
#include "skein/verify.hpp"
#include "skein/yokota.hpp"

using namespace skein;
using nlohmann::json;

namespace {

constexpr int kMaxScanR = 1001;

struct Globals {
  int threads = 0;
  int precision_bits = 0;
  std::uint64_t budget = 0;
  bool no_timing = false;
};

// Explicit flags win over the environment; everything downstream reads the
// environment through worker_count() and friends.
void apply(const Globals& g) {
  if (g.threads > 0) setenv("SKEIN_THREADS", std::to_string(g.threads).c_str(), 1);
  if (g.precision_bits > 0) setenv("SKEIN_PRECISION_BITS", std::to_string(g.precision_bits).c_str(), 1);
  if (g.budget > 0) setenv("SKEIN_BUDGET", std::to_string(g.budget).c_str(), 1);
}

std::string num(double x, const char* f = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Coloring parse_colors(const std::string& s) {
  Coloring out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(cell, &used));
      if (used != cell.size()) throw InvalidArgument("");
    } catch (...) {
      throw InvalidArgument("bad color list: " + s);
    }
  }
  return out;
}

void check_colors(const Coloring& c, const Level& lvl) {
  for (int x : c)
    if (!lvl.is_color(x)) throw InvalidArgument("color " + std::to_string(x) + " is not an even integer in 0.." +
                                                std::to_string(lvl.max_color()));
}

PlanarGraph graph_with_colors(const std::string& ref, const std::string& colors, Coloring& col) {
  Coloring from_file;
  PlanarGraph g = load_graph(ref, &from_file);
  col = colors.empty() ? from_file : parse_colors(colors);
  return g;
}

void print_value(const std::string& label, const ExtScalar& v) {
  auto z = v.to_complex();
  std::cout << label << ": " << num(z.real()) << '\n';
  if (z.imag() != 0.0) std::cout << "imag: " << num(z.imag()) << '\n';
  std::cout << "log_abs: " << (v.is_zero() ? std::string("-inf") : num(v.log_abs())) << '\n';
}

json record_json(const ScanRecord& r) {
  json j = {{"r", r.r},           {"kind", r.kind},         {"color_policy", r.color_policy},
            {"log_value", r.log_value}, {"slope", r.slope}, {"target", r.target},
            {"rel_gap", r.rel_gap}, {"cancel_digits", r.cancel_digits}, {"wall_ms", r.wall_ms}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::vector<ScanRecord> usable(const std::vector<ScanRecord>& rows) {
  std::vector<ScanRecord> out;
  for (const auto& r : rows)
    if (std::isfinite(r.slope)) out.push_back(r);
  return out;
}

void emit(const std::vector<ScanRecord>& rows, const std::string& format, const std::string& path, bool fit) {
  std::ostringstream body;
  json summary;
  if (fit) {
    try {
      Extrapolation e = extrapolate_limit(usable(rows));
      summary = {{"limit", e.limit},   {"coefficient", e.coefficient}, {"limit_stderr", e.limit_stderr},
                 {"residual_rms", e.residual_rms}, {"points", e.points}, {"last_slope", e.last_slope}};
    } catch (const IllConditioned& e) {
      summary = {{"error", e.what()}};
    }
  }
  if (format == "json") {
    json j = {{"rows", json::array()}};
    for (const auto& r : rows) j["rows"].push_back(record_json(r));
    if (fit) j["extrapolation"] = summary;
    body << j.dump(2) << '\n';
  } else {
    write_csv(body, rows);
  }
  if (path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << body.str();
  }
  for (const auto& r : rows)
    if (!r.note.empty()) std::cerr << "r=" << r.r << ": " << r.note << '\n';
  if (fit && format != "json") std::cerr << "extrapolation: " << summary.dump() << '\n';
}

double resolve_target(const std::string& t) {
  if (t.empty()) return 0.0;
  if (t == "v8") return v8();
  if (t == "2v8") return 2.0 * v8();
  try {
    std::size_t used = 0;
    double x = std::stod(t, &used);
    if (used == t.size()) return x;
  } catch (...) {
  }
  return named_volume(t);
}

int run_verify(const std::string& suite, int r, int rmax, const std::string& graph_ref) {
  std::vector<CheckReport> reps;
  auto graph_or = [&](const char* fallback) { return load_graph(graph_ref.empty() ? fallback : graph_ref); };
  auto rs_or = [&](std::vector<int> fallback) { return r > 0 ? std::vector<int>{r} : fallback; };
  bool all = suite == "identities";
  bool known = all;
  if (suite == "oracle") {
    known = true;
    for (int k = 5; k <= (rmax > 0 ? rmax : 13); k += 2) reps.push_back(verify_oracle(k));
  }
  if (suite == "n-identity") {
    known = true;
    reps.push_back(verify_n_identity(rmax > 0 ? rmax : 2001));
  }
  if (all || suite == "theta")
    for (int k : rs_or({7})) known = true, reps.push_back(verify_theta(k));
  if (all || suite == "bigon")
    for (int k : rs_or({7})) known = true, reps.push_back(verify_bigon(k));
  if (all || suite == "tetrahedron")
    for (int k : rs_or({7})) known = true, reps.push_back(verify_tetrahedron(k));
  if (all || suite == "whitehead")
    for (int k : rs_or({7})) known = true, reps.push_back(verify_whitehead(graph_or("square-pyramid"), k));
  if (all || suite == "doubling")
    for (int k : rs_or({5})) known = true, reps.push_back(verify_doubling(graph_or("square-pyramid"), 0, k));
  if (all || suite == "vertex-sum")
    for (int k : rs_or({7})) known = true, reps.push_back(verify_vertex_sum(k));
  if (all || suite == "kirby") {
    known = true;
    std::vector<std::string> names = graph_ref.empty() ? std::vector<std::string>{"theta", "tetrahedron", "prism"}
                                                       : std::vector<std::string>{graph_ref};
    for (int k : rs_or({5, 7}))
      for (const auto& n : names) {
        CheckReport rep = verify_kirby(load_graph(n), k);
        rep.name += " " + n;
        reps.push_back(rep);
      }
  }
  if (all || suite == "fourier") {
    known = true;
    if (graph_ref.empty()) {
      reps.push_back(verify_fourier(fixture("theta"), r > 0 ? r : 7, true));
      for (int k : rs_or({5, 7})) reps.push_back(verify_fourier(fixture("tetrahedron"), k, true));
      reps.push_back(verify_fourier(fixture("cube"), r > 0 ? r : 5, true));
    } else {
      for (int k : rs_or({5})) reps.push_back(verify_fourier(load_graph(graph_ref), k, true));
    }
  }
  if (!known) throw InvalidArgument("unknown suite: " + suite);
  bool ok = true;
  for (const auto& rep : reps) {
    std::cout << format_report(rep) << '\n';
    ok = ok && rep.ok();
  }
  std::cout << (ok ? "pass" : "FAIL") << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum 6j-symbols, graph invariants and volume scans"};
  app.require_subcommand(1);
  Globals glob;
  app.add_option("--threads", glob.threads, "Worker threads (default SKEIN_THREADS or core count)");
  app.add_option("--precision-bits", glob.precision_bits, "Minimum MPFR precision (default SKEIN_PRECISION_BITS)");
  app.add_option("--budget", glob.budget, "Cap on colorings per evaluation (default SKEIN_BUDGET or 1e8)");
  app.add_flag("--no-timing", glob.no_timing, "Write wall_ms as 0 so repeated runs give identical files");

  int r = 0;
  std::string colors, graph_ref, out_path, format = "csv", target, policy = "maximizer", which = "all", suite;
  int rmin = 5, rmax = 0, step = 2, m = 1;
  bool json_out = false, fit = false, exhaustive = false, maximizer = false, want_dual = false;

  auto* c_sixj = app.add_subcommand("sixj", "Evaluate one 6j-symbol");
  c_sixj->add_option("--r", r, "Odd level r >= 3")->required();
  c_sixj->add_option("--colors", colors, "Six comma-separated even colors")->required();
  c_sixj->add_flag("--json", json_out);

  auto* c_bracket = app.add_subcommand("bracket", "Bracket of a colored trivalent graph");
  auto* c_yokota = app.add_subcommand("yokota", "Invariant of a colored graph");
  for (auto* c : {c_bracket, c_yokota}) {
    c->add_option("--r", r)->required();
    c->add_option("--graph", graph_ref, "Fixture name or JSON file")->required();
    c->add_option("--colors", colors, "Comma-separated edge colors (default: from the file)");
  }
  c_yokota->add_flag("--maximizer", maximizer, "Use the maximizing constant coloring");

  auto* c_tv = app.add_subcommand("tv", "Sum of |invariant| over all colorings");
  c_tv->add_option("--r", r)->required();
  c_tv->add_option("--graph", graph_ref)->required();

  auto* c_scan = app.add_subcommand("scan", "One row per odd r");
  c_scan->add_option("--graph", graph_ref, "Fixture or JSON file; omit for 6j scans");
  c_scan->add_option("--policy", policy,
                     "fixed | maximizer | tv | full-TV-sweep | ideal-square-pyramid | ideal-pentagonal-pyramid | "
                     "zero-angled | sixj");
  c_scan->add_option("--colors", colors, "Coloring for the fixed policy");
  c_scan->add_flag("--exhaustive", exhaustive, "With --policy sixj, maximize over all tuples");
  c_scan->add_option("--rmin", rmin);
  c_scan->add_option("--rmax", rmax)->required();
  c_scan->add_option("--step", step, "Even step between r values");
  c_scan->add_option("--target", target, "Number, v8, 2v8 or a named volume");
  c_scan->add_option("--out", out_path);
  c_scan->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  c_scan->add_flag("--extrapolate", fit, "Fit a + b log(r)/r to the slopes");

  auto* c_app = app.add_subcommand("reproduce-appendix", "Pyramid volume experiments");
  c_app->add_option("--which", which, "sq-ideal | sq-zero | pent-ideal | pent-zero | all");
  c_app->add_option("--rmin", rmin);
  c_app->add_option("--rmax", rmax, "Largest odd r")->required();
  c_app->add_option("--step", step);
  c_app->add_option("--out", out_path);
  c_app->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* c_verify = app.add_subcommand("verify", "Run an identity suite");
  c_verify->add_option("suite", suite,
                       "oracle | theta | bigon | tetrahedron | whitehead | doubling | vertex-sum | kirby | fourier | "
                       "n-identity | identities")
      ->required();
  c_verify->add_option("--r", r);
  c_verify->add_option("--rmax", rmax);
  c_verify->add_option("--graph", graph_ref);

  auto* c_vol = app.add_subcommand("volumes", "Hyperbolic volume constants");

  auto* c_graph = app.add_subcommand("graph", "Inspect a graph");
  c_graph->add_option("--graph", graph_ref)->required();
  c_graph->add_flag("--dual", want_dual, "Print the dual instead");

  auto* c_family = app.add_subcommand("family", "Graphs reachable by m moves from the tetrahedron");
  c_family->add_option("--m", m);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  apply(glob);

  try {
    if (*c_sixj) {
      Level lvl(r);
      Coloring c = parse_colors(colors);
      if (c.size() != 6) throw InvalidArgument("need exactly six colors");
      check_colors(c, lvl);
      SixTuple t{c[0], c[1], c[2], c[3], c[4], c[5]};
      PrecisionPolicy pol;
      pol.min_bits = default_precision_bits();
      SixjInfo info = sixj_info(t, lvl, pol);
      if (json_out) {
        auto z = info.value.to_complex();
        json j = {{"r", r},
                  {"colors", c},
                  {"admissible", info.admissible},
                  {"re", z.real()},
                  {"im", z.imag()},
                  {"cancel_digits", info.cancel_digits},
                  {"high_precision", info.high_precision}};
        if (!info.value.is_zero()) j["log_abs"] = info.value.log_abs();
        std::cout << j.dump(2) << '\n';
        return 0;
      }
      std::cout << "sixj = " << num(info.value.real(), "%.6f") << '\n';
      print_value("re", info.value);
      std::cout << "admissible: " << (info.admissible ? "yes" : "no (inadmissible, value 0)") << '\n';
      std::cout << "cancel_digits: " << num(info.cancel_digits, "%.2f")
                << (info.high_precision ? " (MPFR)" : "") << '\n';
      return 0;
    }
    if (*c_bracket || *c_yokota) {
      Level lvl(r);
      Coloring col;
      PlanarGraph g = graph_with_colors(graph_ref, colors, col);
      if (*c_yokota && maximizer) col = maximizing_coloring(g, lvl);
      if (static_cast<int>(col.size()) != g.edge_count()) throw InvalidArgument("need one color per edge");
      check_colors(col, lvl);
      if (*c_bracket) {
        print_value("bracket", bracket(g, col, lvl));
      } else {
        ExtScalar y = yokota(g, col, lvl);
        print_value("yokota", y);
        if (!y.is_zero()) std::cout << "slope: " << num(std::acos(-1.0) / r * y.log_abs()) << '\n';
      }
      return 0;
    }
    if (*c_tv) {
      Level lvl(r);
      print_value("tv", tv_graph(load_graph(graph_ref), lvl));
      return 0;
    }
    if (*c_scan) {
      if (rmax > kMaxScanR) throw InvalidArgument("rmax above the cap of " + std::to_string(kMaxScanR));
      ScanOptions opt;
      opt.threads = glob.threads;
      opt.timing = !glob.no_timing;
      opt.budget = glob.budget;
      std::vector<int> rs = odd_range(rmin, rmax, step);
      std::vector<ScanRecord> rows;
      if (policy == "sixj" || graph_ref.empty()) {
        rows = scan_sixj(rs, exhaustive, opt);
      } else if (policy == "ideal-square-pyramid" || policy == "ideal-pentagonal-pyramid" || policy == "zero-angled") {
        PlanarGraph g = load_graph(graph_ref);
        std::string which_case;
        if (isomorphic(g, fixture("square-pyramid")))
          which_case = policy == "zero-angled" ? "sq-zero" : "sq-ideal";
        else if (isomorphic(g, fixture("pentagonal-pyramid")))
          which_case = policy == "zero-angled" ? "pent-zero" : "pent-ideal";
        if (which_case.empty() || (policy == "ideal-square-pyramid" && which_case != "sq-ideal") ||
            (policy == "ideal-pentagonal-pyramid" && which_case != "pent-ideal"))
          throw InvalidArgument("policy " + policy + " needs the matching pyramid graph");
        rows = scan_appendix(which_case, rs, opt);
      } else {
        PlanarGraph g = load_graph(graph_ref);
        std::string p = policy == "full-TV-sweep" ? "tv" : policy;
        Coloring fixed;
        if (p == "fixed") {
          fixed = parse_colors(colors);
          check_colors(fixed, Level(rs.empty() ? 3 : rs.front()));
        }
        rows = scan_graph(g, p, fixed, rs, resolve_target(target), opt);
      }
      if (!target.empty())
        for (auto& row : rows) {
          row.target = resolve_target(target);
          row.rel_gap = std::fabs(row.slope - row.target) / row.target;
        }
      emit(rows, format, out_path, fit);
      return 0;
    }
    if (*c_app) {
      if (rmax > kMaxScanR) throw InvalidArgument("rmax above the cap of " + std::to_string(kMaxScanR));
      ScanOptions opt;
      opt.threads = glob.threads;
      opt.timing = !glob.no_timing;
      std::vector<std::string> cases = which == "all" ? appendix_names() : std::vector<std::string>{which};
      std::vector<int> rs = odd_range(rmin, rmax, step);
      std::vector<ScanRecord> rows;
      for (const auto& c : cases) {
        auto part = scan_appendix(c, rs, opt);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      emit(rows, format, out_path, false);
      // Comparison against the volume targets, on stderr so the table stays clean.
      for (const auto& c : cases) {
        const ScanRecord* last = nullptr;
        for (const auto& row : rows)
          if (row.color_policy.rfind(c + ":", 0) == 0) last = &row;
        if (last)
          std::cerr << c << ": r=" << last->r << " slope " << num(last->slope, "%.5f") << " target "
                    << num(last->target, "%.5f") << " gap " << num(100 * last->rel_gap, "%.2f") << "%\n";
      }
      return 0;
    }
    if (*c_verify) return run_verify(suite, r, rmax, graph_ref);
    if (*c_vol) {
      for (const auto& v : named_volumes())
        std::cout << v.name << ' ' << num(v.value, "%.12f") << " (quoted " << num(v.quoted) << ")\n";
      return 0;
    }
    if (*c_graph) {
      Coloring col;
      PlanarGraph g = load_graph(graph_ref, &col);
      if (want_dual) g = dual(g);
      std::cout << to_json(g, col.empty() || want_dual ? nullptr : &col) << '\n';
      Diagnostics d = validate(g);
      std::cerr << "vertices " << g.vertex_count() << ", edges " << g.edge_count() << ", betti " << betti(g)
                << (d.ok() ? ", valid" : ", not a polyhedral graph") << '\n';
      for (const auto& msg : d.messages) std::cerr << "  " << msg << '\n';
      return 0;
    }
    if (*c_family) {
      auto members = family_enumerate(m);
      for (const auto& f : members)
        std::cout << f.history << ' ' << f.graph.vertex_count() << " vertices " << f.graph.edge_count() << " edges\n";
      return 0;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const NotTrivalent& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const NotPlanar& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const LowValence& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
