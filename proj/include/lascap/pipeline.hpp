#pragma once

// Experiment harness: BLP, Lasserre levels, rounding, minimum capture level.

#include <optional>
#include <string>
#include <vector>

#include "lascap/encode.hpp"
#include "lascap/lasserre.hpp"
#include "lascap/sdpsolve.hpp"
#include "lascap/vcsp.hpp"

namespace lascap {

struct RunConfig {
  std::size_t t_min = 0;
  std::size_t t_max = 3;
  std::optional<Rational> delta;   // default rounding_delta(c)
  std::optional<Rational> radius;  // default lasserre_radius(N)
  bool fold = false;
  std::uint64_t brute_force_cap = kDefaultBruteForceCap;
  // Coordinate cap for lifted problems. The exact ellipsoid is roughly
  // quintic in the coordinate count, so the default stays small.
  std::size_t max_coordinates = 64;
  std::optional<std::uint64_t> max_iterations;
  SeparationStrategy strategy = SeparationStrategy::kPivotWitness;
  std::uint64_t seed = 1;

  void validate() const;
};

// Feasible moment vectors have entries in [0,1], so ||y|| <= sqrt(N); one
// unit of slack covers the full-dimensionality shift.
Rational lasserre_radius(std::size_t coordinates);

enum class LevelStatus { kSolved, kEmpty, kTooLarge, kBudgetExhausted };
const char* to_string(LevelStatus s);

struct LevelResult {
  std::size_t t = 0;
  std::size_t coordinates = 0;
  LevelStatus status = LevelStatus::kTooLarge;
  bool exact = false;  // value from the exact simplex rather than the ellipsoid
  Rational value;
  std::optional<Integer> rounded;
  Rational delta;
  std::uint64_t iterations = 0;
  std::uint64_t budget = 0;
  double seconds = 0;
  std::string message;
  EllipsoidResult solve;  // filled for ellipsoid levels
};

EllipsoidResult solve_inequality_sdp(const InequalitySDP& sdp, const Rational& delta, const Rational& radius,
                                     const RunConfig& cfg);

// Lifts lp to level t and solves it. Never throws TooLarge or
// BudgetExhausted; those become statuses.
LevelResult solve_level(const ZeroOneLP& lp, std::size_t t, const RunConfig& cfg);

struct CaptureReport {
  Integer opt;
  Rational blp;
  std::vector<LevelResult> levels;  // level 0 is the exact BLP
  std::optional<std::size_t> capture_level;
  // False when a level in range could not be computed before capture.
  bool determined = false;
};

// Smallest t in [t_min, t_max] whose rounded optimum equals Opt(I). Level 0
// compares the exact BLP value with Opt(I).
CaptureReport min_capture_level(const VcspInstance& inst, const RunConfig& cfg);

std::string capture_table_text(const std::vector<std::string>& names, const std::vector<CaptureReport>& reports);
std::string capture_table_csv(const std::vector<std::string>& names, const std::vector<CaptureReport>& reports);

// LASCAP_THREADS, default 1, clamped to [1, 256].
unsigned thread_count_from_env();

}  // namespace lascap
