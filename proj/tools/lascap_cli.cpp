// lascap: instance generation, reductions, encodings, Lasserre lifts, exact
// solves and certificates.
//
// Exit codes: 0 success, 2 parse error, 3 budget or size cap exhausted,
// 4 contract violation (including a rejected certificate).

#include <atomic>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "lascap/errors.hpp"
#include "lascap/exactlin.hpp"
#include "lascap/io.hpp"
#include "lascap/pipeline.hpp"

using namespace lascap;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitContract = 4;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

template <class T, class W>
std::string render(const T& value, W writer) {
  std::ostringstream out;
  writer(out, value);
  return out.str();
}

template <class P>
auto load(const std::string& path, P parser) {
  return parse_string(read_file(path), parser);
}

Rational rational_option(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(flag) + ": " + e.what(), 0);
  }
}

// .vcsp instances are encoded first; .lp files are taken as they are.
ZeroOneLP load_lp_or_vcsp(const std::string& path) {
  if (ends_with(path, ".vcsp")) return to_ilp(load(path, parse_vcsp));
  return load(path, parse_lp);
}

struct SolveFlags {
  std::string delta;
  std::string radius;
  bool fold = false;
  std::uint64_t max_iter = 0;
  std::size_t max_coords = 64;
  std::string strategy = "pivot";
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--delta", f.delta, "tolerance (default 1/(4 max{1,||c||}))");
  cmd->add_option("--radius", f.radius, "ellipsoid start radius (default ceil(sqrt N) + 1)");
  cmd->add_flag("--fold", f.fold, "optimize in folded coordinates");
  cmd->add_option("--max-iter", f.max_iter, "iteration budget override (0 = default)");
  cmd->add_option("--max-coords", f.max_coords, "cap on lifted coordinates")->capture_default_str();
  cmd->add_option("--strategy", f.strategy, "separation: pivot or eigen")
      ->check(CLI::IsMember({"pivot", "eigen"}))
      ->capture_default_str();
}

RunConfig make_config(const SolveFlags& f) {
  RunConfig cfg;
  if (!f.delta.empty()) cfg.delta = rational_option(f.delta, "--delta");
  if (!f.radius.empty()) cfg.radius = rational_option(f.radius, "--radius");
  cfg.fold = f.fold;
  if (f.max_iter > 0) cfg.max_iterations = f.max_iter;
  cfg.max_coordinates = f.max_coords;
  cfg.strategy = f.strategy == "eigen" ? SeparationStrategy::kEigen : SeparationStrategy::kPivotWitness;
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::size_t cycle = 0, complete = 0, random_maxcut = 0;
  std::vector<std::size_t> random_3lin;
  std::string edge_prob = "1/2";
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const int chosen = (a.cycle > 0) + (a.complete > 0) + (a.random_maxcut > 0) + !a.random_3lin.empty();
  if (chosen != 1) throw ContractViolation("gen: choose exactly one generator");
  std::mt19937_64 rng(a.seed);
  if (!a.random_3lin.empty()) {
    if (a.random_3lin.size() != 2) throw ContractViolation("gen: --random-3lin takes <vars> <equations>");
    const std::size_t n = a.random_3lin[0], m = a.random_3lin[1];
    if (n < 3) throw ContractViolation("gen: 3LIN needs at least 3 variables");
    LinSystem sys{n, {}};
    std::uniform_int_distribution<std::size_t> var(0, n - 1);
    for (std::size_t i = 0; i < m; ++i) {
      LinEquation e;
      do {
        for (auto& v : e.vars) v = var(rng);
      } while (e.vars[0] == e.vars[1] || e.vars[0] == e.vars[2] || e.vars[1] == e.vars[2]);
      e.rhs = rng() & 1;
      sys.equations.push_back(e);
    }
    emit(a.out, render(sys, write_3lin));
    return 0;
  }
  WeightedGraph g;
  if (a.cycle > 0) g = cycle_graph(a.cycle);
  if (a.complete > 0) g = complete_graph(a.complete);
  if (a.random_maxcut > 0) {
    Rational p = rational_option(a.edge_prob, "--edge-prob");
    if (p < 0 || p > 1) throw ContractViolation("gen: --edge-prob must lie in [0,1]");
    g.vertices = a.random_maxcut;
    // Exact Bernoulli(p) from 64 random bits.
    for (std::size_t u = 0; u < g.vertices; ++u)
      for (std::size_t v = u + 1; v < g.vertices; ++v)
        if (Rational(Integer(std::to_string(rng())), Integer("18446744073709551616")) < p) g.add_edge(u, v, 1);
  }
  emit(a.out, render(maxcut_to_vcsp(g), write_vcsp));
  return 0;
}

struct ReduceArgs {
  std::string chain = "3lin";
  std::string input;
  std::string prefix;
};

int run_reduce(const ReduceArgs& a) {
  CnfFormula f;
  std::optional<bool> lin_sat;
  if (a.chain == "3lin") {
    LinSystem sys = load(a.input, parse_3lin);
    f = threelin_to_threesat(sys);
    if (sys.num_vars <= kBruteSatMaxVars) lin_sat = brute_lin(sys);
  } else {
    f = load(a.input, parse_cnf);
  }
  GadgetResult g = threesat_to_maxcut(f);
  std::string prefix = a.prefix;
  if (prefix.empty()) {
    prefix = a.input;
    if (auto dot = prefix.rfind('.'); dot != std::string::npos && prefix.find('/', dot) == std::string::npos)
      prefix.erase(dot);
  }
  if (a.chain == "3lin") write_file(prefix + ".cnf", render(f, write_cnf));
  write_file(prefix + ".graph", render(g.graph, write_graph));
  std::cout << "clauses " << f.clauses.size() << "\nvertices " << g.graph.vertices << "\nedges " << g.graph.edges.size()
            << "\nthreshold " << g.threshold << '\n';
  if (lin_sat) std::cout << "3lin_satisfiable " << (*lin_sat ? "yes" : "no") << '\n';
  if (f.num_vars <= kBruteSatMaxVars) std::cout << "3sat_satisfiable " << (brute_sat(f) ? "yes" : "no") << '\n';
  if (g.graph.vertices <= 26) {
    Integer cut = max_cut_brute(g.graph);
    std::cout << "max_cut " << cut << "\nmaxcut_reaches_threshold " << (cut >= g.threshold ? "yes" : "no") << '\n';
  }
  return 0;
}

int run_encode(const std::string& input, const std::string& out) {
  emit(out, render(to_ilp(load(input, parse_vcsp)), write_lp));
  return 0;
}

int run_lift(const std::string& input, std::size_t level, std::size_t max_coords, const std::string& out) {
  ZeroOneLP lp = load_lp_or_vcsp(input);
  LasserrePencil p = lift(lp, level, max_coords);
  std::cerr << "level " << level << ": " << p.num_coordinates() << " coordinates, " << p.sdp.block_sizes.size()
            << " blocks\n";
  emit(out, render(p.sdp, write_sdp));
  return 0;
}

int run_solve_blp(const std::string& input) {
  if (ends_with(input, ".vcsp")) {
    VcspInstance inst = load(input, parse_vcsp);
    std::cout << "blp " << to_string(blp_value(inst)) << '\n';
    return 0;
  }
  ZeroOneLP lp = load(input, parse_lp);
  LpResult r = lp_optimize(lp.a, lp.b, lp.c);
  switch (r.status) {
    case LpStatus::kOptimal:
      std::cout << "blp " << to_string(r.value) << "\npoint";
      for (const auto& x : r.x) std::cout << ' ' << to_string(x);
      std::cout << '\n';
      break;
    case LpStatus::kInfeasible: std::cout << "blp infeasible\n"; break;
    case LpStatus::kUnbounded: std::cout << "blp unbounded\n"; break;
  }
  return 0;
}

int run_solve_sdp(const std::string& input, const SolveFlags& flags, const std::string& out) {
  RunConfig cfg = make_config(flags);
  InequalitySDP sdp = load(input, parse_sdp);
  Rational delta = cfg.delta ? *cfg.delta : rounding_delta(sdp.objective);
  Rational radius = cfg.radius ? *cfg.radius : lasserre_radius(sdp.num_vars());
  EllipsoidResult r = solve_inequality_sdp(sdp, delta, radius, cfg);
  SolutionRecord s;
  s.status = r.status;
  s.value = r.value;
  s.delta = delta;
  s.shift = r.shift;
  s.tolerance = r.tolerance;
  s.iterations = r.iterations;
  s.budget = r.budget;
  s.point = r.point;
  if (r.status == SolveStatus::kOptimal) {
    Rational twice = 2 * r.value;
    if (!(twice.get_den() == 1 && twice.get_num() % 2 != 0)) s.rounded = round_nearest(r.value);
  }
  if (r.radius_guard) std::cerr << "warning: an accepted point left the radius ball\n";
  emit(out, render(s, write_sol));
  return 0;
}

int run_min_level(const std::vector<std::string>& inputs, std::size_t t_min, std::size_t t_max, const SolveFlags& flags,
                  const std::string& csv_path, bool csv_stdout) {
  RunConfig cfg = make_config(flags);
  cfg.t_min = t_min;
  cfg.t_max = t_max;
  cfg.validate();
  std::vector<VcspInstance> instances;
  for (const auto& p : inputs) instances.push_back(load(p, parse_vcsp));

  std::vector<CaptureReport> reports(instances.size());
  std::vector<std::exception_ptr> errors(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < instances.size();) {
      try {
        reports[i] = min_capture_level(instances[i], cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<unsigned>(thread_count_from_env(), std::max<std::size_t>(instances.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (!csv_path.empty()) write_file(csv_path, capture_table_csv(inputs, reports));
  std::cout << (csv_stdout ? capture_table_csv(inputs, reports) : capture_table_text(inputs, reports));
  return 0;
}

// Re-checks a solution exactly: objective value, PSD certificates of every
// block at the point (with the recorded shift), and the rounding inequality.
int run_certify(const std::string& sdp_path, const std::string& sol_path, const std::string& opt_text) {
  InequalitySDP sdp = load(sdp_path, parse_sdp);
  SolutionRecord s = load(sol_path, parse_sol);
  bool ok = true;
  auto report = [&](const std::string& what, bool pass) {
    std::cout << (pass ? "ok   " : "FAIL ") << what << '\n';
    ok = ok && pass;
  };
  if (s.status == SolveStatus::kEmpty) {
    std::cout << "status empty: nothing to certify\n";
    return 0;
  }
  report("point has " + std::to_string(sdp.num_vars()) + " coordinates", s.point.size() == sdp.num_vars());
  if (!ok) return kExitContract;
  report("value equals <c,x>", dot(sdp.objective, s.point) == s.value);
  auto blocks = sdp.blocks_at(s.point);
  std::size_t bad = 0;
  for (auto& b : blocks)
    if (!psd_certificate(b.shifted(s.shift)).psd) ++bad;
  report("all " + std::to_string(blocks.size()) + " blocks PSD after shift " + to_string(s.shift), bad == 0);
  if (s.rounded) report("rounded value is the nearest integer", *s.rounded == round_nearest(s.value));
  if (!opt_text.empty()) {
    Rational opt = rational_option(opt_text, "--opt");
    report("|s - s*| <= 1/4", abs(s.value - opt) <= Rational(1, 4));
    if (s.rounded) report("rounded value equals s*", Rational(*s.rounded) == opt);
  }
  return ok ? 0 : kExitContract;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Lasserre hierarchy toolkit for valued CSPs"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "generate an instance");
  c_gen->add_option("--maxcut-cycle", gen.cycle, "MAXCUT on the n-cycle");
  c_gen->add_option("--maxcut-complete", gen.complete, "MAXCUT on K_n");
  c_gen->add_option("--random-maxcut", gen.random_maxcut, "MAXCUT on G(n,p)");
  c_gen->add_option("--edge-prob", gen.edge_prob, "edge probability p for --random-maxcut")->capture_default_str();
  c_gen->add_option("--random-3lin", gen.random_3lin, "random 3LIN system: <vars> <equations>")->expected(2);
  c_gen->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  c_gen->add_option("-o,--output", gen.out, "output file (default stdout)");

  ReduceArgs red;
  auto* c_red = app.add_subcommand("reduce", "3LIN -> 3SAT -> MAXCUT");
  c_red->add_option("--chain", red.chain, "source format")->check(CLI::IsMember({"3lin", "3sat"}))->capture_default_str();
  c_red->add_option("input", red.input, ".3lin or .cnf file")->required();
  c_red->add_option("-o,--prefix", red.prefix, "output prefix (default: input without extension)");

  std::string enc_in, enc_out;
  auto* c_enc = app.add_subcommand("encode", "VCSP -> 0-1 LP");
  c_enc->add_option("input", enc_in, ".vcsp file")->required();
  c_enc->add_option("-o,--output", enc_out, "output .lp (default stdout)");

  std::string lift_in, lift_out;
  std::size_t lift_level = 1, lift_coords = kDefaultMaxCoordinates;
  auto* c_lift = app.add_subcommand("lift", "0-1 LP -> level-t Lasserre SDP");
  c_lift->add_option("input", lift_in, ".lp or .vcsp file")->required();
  c_lift->add_option("-t,--level", lift_level, "level t")->capture_default_str();
  c_lift->add_option("--max-coords", lift_coords, "cap on lifted coordinates")->capture_default_str();
  c_lift->add_option("-o,--output", lift_out, "output .sdp (default stdout)");

  std::string blp_in;
  auto* c_blp = app.add_subcommand("solve-blp", "exact basic LP relaxation");
  c_blp->add_option("input", blp_in, ".vcsp or .lp file")->required();

  std::string sdp_in, sdp_out;
  SolveFlags sdp_flags;
  auto* c_sdp = app.add_subcommand("solve-sdp", "ellipsoid solve of an inequality-form SDP");
  c_sdp->add_option("input", sdp_in, ".sdp file")->required();
  c_sdp->add_option("-o,--output", sdp_out, "output .sol (default stdout)");
  add_solve_flags(c_sdp, sdp_flags);

  std::vector<std::string> ml_in;
  std::size_t t_min = 0, t_max = 3;
  std::string csv_path;
  bool csv_stdout = false;
  SolveFlags ml_flags;
  auto* c_ml = app.add_subcommand("min-level", "minimum Lasserre capture level");
  c_ml->add_option("inputs", ml_in, ".vcsp files")->required();
  c_ml->add_option("--t-min", t_min, "first level")->capture_default_str();
  c_ml->add_option("--t-max", t_max, "last level")->capture_default_str();
  c_ml->add_option("--csv", csv_path, "also write the CSV table to this file");
  c_ml->add_flag("--csv-stdout", csv_stdout, "print CSV instead of the text table");
  add_solve_flags(c_ml, ml_flags);

  std::string cert_sdp, cert_sol, cert_opt;
  auto* c_cert = app.add_subcommand("certify", "exact re-check of a solution");
  c_cert->add_option("sdp", cert_sdp, ".sdp file")->required();
  c_cert->add_option("sol", cert_sol, ".sol file")->required();
  c_cert->add_option("--opt", cert_opt, "known optimum s* for the rounding check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*c_gen) return run_gen(gen);
    if (*c_red) return run_reduce(red);
    if (*c_enc) return run_encode(enc_in, enc_out);
    if (*c_lift) return run_lift(lift_in, lift_level, lift_coords, lift_out);
    if (*c_blp) return run_solve_blp(blp_in);
    if (*c_sdp) return run_solve_sdp(sdp_in, sdp_flags, sdp_out);
    if (*c_ml) return run_min_level(ml_in, t_min, t_max, ml_flags, csv_path, csv_stdout);
    if (*c_cert) return run_certify(cert_sdp, cert_sol, cert_opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const TooLarge& e) {
    std::cerr << "too large: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
