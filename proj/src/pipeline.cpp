#include "lascap/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "lascap/errors.hpp"
#include "lascap/exactlin.hpp"

namespace lascap {

void RunConfig::validate() const {
  require(t_min <= t_max, "RunConfig: t_min exceeds t_max");
  require(!delta || *delta > 0, "RunConfig: delta must be positive");
  require(!radius || *radius > 0, "RunConfig: radius must be positive");
  require(max_coordinates > 0, "RunConfig: max_coordinates must be positive");
}

Rational lasserre_radius(std::size_t coordinates) {
  return Rational(ceil_sqrt(Integer(static_cast<unsigned long>(coordinates))) + 1);
}

const char* to_string(LevelStatus s) {
  switch (s) {
    case LevelStatus::kSolved: return "solved";
    case LevelStatus::kEmpty: return "empty";
    case LevelStatus::kTooLarge: return "too-large";
    case LevelStatus::kBudgetExhausted: return "budget";
  }
  return "?";
}

EllipsoidResult solve_inequality_sdp(const InequalitySDP& sdp, const Rational& delta, const Rational& radius,
                                     const RunConfig& cfg) {
  EllipsoidOptions opts;
  opts.strategy = cfg.strategy;
  opts.max_iterations = cfg.max_iterations;
  return cfg.fold ? folded_optimize(sdp, delta, radius, opts) : ellipsoid_optimize(sdp, delta, radius, opts);
}

LevelResult solve_level(const ZeroOneLP& lp, std::size_t t, const RunConfig& cfg) {
  cfg.validate();
  LevelResult r;
  r.t = t;
  r.delta = cfg.delta ? *cfg.delta : rounding_delta(lp.c);
  const auto start = std::chrono::steady_clock::now();
  auto stop_clock = [&] {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    LasserrePencil p = lift(lp, t, cfg.max_coordinates);
    r.coordinates = p.num_coordinates();
    Rational radius = cfg.radius ? *cfg.radius : lasserre_radius(r.coordinates);
    r.solve = solve_inequality_sdp(p.sdp, r.delta, radius, cfg);
    r.iterations = r.solve.iterations;
    r.budget = r.solve.budget;
    if (r.solve.status == SolveStatus::kOptimal) {
      r.status = LevelStatus::kSolved;
      r.value = r.solve.value;
      Rational twice = 2 * r.value;
      if (!(twice.get_den() == 1 && twice.get_num() % 2 != 0)) r.rounded = round_nearest(r.value);
      if (r.solve.radius_guard) r.message = "accepted point left the radius ball";
    } else {
      r.status = LevelStatus::kEmpty;
    }
  } catch (const TooLarge& e) {
    r.status = LevelStatus::kTooLarge;
    r.message = e.what();
  } catch (const BudgetExhausted& e) {
    r.status = LevelStatus::kBudgetExhausted;
    r.message = e.what();
  }
  stop_clock();
  return r;
}

CaptureReport min_capture_level(const VcspInstance& inst, const RunConfig& cfg) {
  cfg.validate();
  CaptureReport rep;
  rep.opt = brute_force_opt(inst, cfg.brute_force_cap).value;
  ZeroOneLP ilp = to_ilp(inst);
  rep.blp = blp_value(inst);

  for (std::size_t t = cfg.t_min; t <= cfg.t_max; ++t) {
    if (t == 0) {
      LevelResult r;
      r.t = 0;
      r.coordinates = ilp.num_vars();
      r.status = LevelStatus::kSolved;
      r.exact = true;
      r.value = rep.blp;
      r.delta = 0;
      r.rounded = round_nearest(rep.blp);
      rep.levels.push_back(r);
      if (rep.blp == Rational(rep.opt)) {
        rep.capture_level = 0;
        rep.determined = true;
        return rep;
      }
      continue;
    }
    LevelResult r = solve_level(ilp, t, cfg);
    const bool usable = r.status == LevelStatus::kSolved || r.status == LevelStatus::kEmpty;
    const bool hit = r.status == LevelStatus::kSolved && r.rounded && *r.rounded == rep.opt;
    rep.levels.push_back(std::move(r));
    if (!usable) return rep;  // undetermined: an earlier level is unknown
    if (hit) {
      rep.capture_level = t;
      rep.determined = true;
      return rep;
    }
  }
  rep.determined = true;  // every level in range computed, none captured
  return rep;
}

namespace {

std::string level_cell(const LevelResult& r) {
  if (r.status != LevelStatus::kSolved) return to_string(r.status);
  std::ostringstream s;
  if (r.exact)
    s << to_string(r.value);
  else
    s << std::fixed << std::setprecision(4) << r.value.get_d();
  return s.str();
}

std::string capture_cell(const CaptureReport& rep) {
  if (rep.capture_level) return std::to_string(*rep.capture_level);
  if (!rep.determined) return "undetermined";
  return "not captured";
}

std::size_t max_levels(const std::vector<CaptureReport>& reports) {
  std::size_t width = 0;
  for (const auto& r : reports)
    for (const auto& l : r.levels) width = std::max(width, l.t + 1);
  return width;
}

}  // namespace

std::string capture_table_text(const std::vector<std::string>& names, const std::vector<CaptureReport>& reports) {
  require(names.size() == reports.size(), "capture_table_text: one name per report");
  const std::size_t levels = max_levels(reports);
  std::ostringstream out;
  out << std::left << std::setw(20) << "instance" << std::setw(6) << "Opt" << std::setw(10) << "BLP";
  for (std::size_t t = 0; t < levels; ++t) out << std::setw(12) << ("t=" + std::to_string(t));
  out << "capture\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& rep = reports[i];
    out << std::setw(20) << names[i] << std::setw(6) << rep.opt.get_str() << std::setw(10) << to_string(rep.blp);
    for (std::size_t t = 0; t < levels; ++t) {
      std::string cell = "-";
      for (const auto& l : rep.levels)
        if (l.t == t) cell = level_cell(l);
      out << std::setw(12) << cell;
    }
    out << capture_cell(rep) << '\n';
  }
  return out.str();
}

std::string capture_table_csv(const std::vector<std::string>& names, const std::vector<CaptureReport>& reports) {
  require(names.size() == reports.size(), "capture_table_csv: one name per report");
  std::ostringstream out;
  out << "instance,opt,blp,level,coordinates,status,value,rounded,delta,iterations,budget,capture\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& rep = reports[i];
    for (const auto& l : rep.levels) {
      out << names[i] << ',' << rep.opt << ',' << to_string(rep.blp) << ',' << l.t << ',' << l.coordinates << ','
          << to_string(l.status) << ',' << (l.status == LevelStatus::kSolved ? to_string(l.value) : "") << ','
          << (l.rounded ? l.rounded->get_str() : "") << ',' << to_string(l.delta) << ',' << l.iterations << ','
          << l.budget << ',' << capture_cell(rep) << '\n';
    }
  }
  return out.str();
}

unsigned thread_count_from_env() {
  const char* env = std::getenv("LASCAP_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) return 1;
  return static_cast<unsigned>(std::min(n, 256L));
}

}  // namespace lascap
