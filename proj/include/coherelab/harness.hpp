// Randomized checks of strong monotonicity under strictly incoherent
// operations and of the inequality chains between measures.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coherelab/measures.hpp"
#include "coherelab/quantum.hpp"

namespace coherelab {

inline constexpr double kSlackTolerance = 1e-6;
// Branches with smaller probability are left out of the weighted sum.
inline constexpr double kMinBranchProbability = 1e-6;

enum class CheckStatus { pass, fail, inconclusive };

std::string_view to_string(CheckStatus status);

struct MonotonicityReport {
  std::string measure;
  std::size_t dim = 0;
  double lhs = 0.0;  // C(rho)
  double rhs = 0.0;  // sum_lambda q_lambda C(rho_lambda)
  double slack = 0.0;
  std::uint64_t state_seed = 0;
  std::uint64_t channel_seed = 0;
  std::size_t branches = 0;
  std::size_t excluded_branches = 0;
  bool rechecked = false;  // a flagged violation was re-solved with 10x restarts
  CheckStatus status = CheckStatus::pass;
  std::string note;
  // Filled only for failures, so the case can be replayed.
  std::vector<std::vector<Complex>> state;
  std::vector<SioKraus> channel;

  bool pass() const { return status != CheckStatus::fail; }
};

struct MonotonicityOptions {
  double tolerance = kSlackTolerance;
  std::uint64_t state_seed = 0;
  std::uint64_t channel_seed = 0;
  MeasureOptions measure;
};

// Throws InvalidInput unless `m` is one of sio_monotone_measures().
MonotonicityReport check_strong_monotonicity(Measure m, const DensityMatrix& rho,
                                             const SioChannel& channel,
                                             const MonotonicityOptions& options = {});

// Same comparison for a general incoherent Kraus family. Reported, never
// asserted: status is pass or inconclusive, and a negative slack only sets
// `note`.
MonotonicityReport check_incoherent_monotonicity(Measure m, const DensityMatrix& rho,
                                                 const std::vector<IncoherentKraus>& kraus,
                                                 const MonotonicityOptions& options = {});

struct ChainCheck {
  std::string relation;  // e.g. "c_max <= 2 c_trace_dist"
  double lhs;
  double rhs;
  double slack;  // rhs - lhs, or -|lhs - rhs| for equalities
};

struct BoundsReport {
  std::map<std::string, double> values;
  std::vector<ChainCheck> chains;
  double tolerance = kSlackTolerance;

  bool pass() const;
  double worst_slack() const;
};

// Evaluates
//   c_trace_dist <= c_max <= 2 c_trace_dist
//   c_nabla_inf <= c_max
//   c_I_lower <= c_I_upper
//   c_guess == robustness / d
BoundsReport check_bounds(const DensityMatrix& rho, const MeasureOptions& options = {});

struct SuiteConfig {
  std::vector<std::size_t> dimensions = {2, 3, 4};
  int trials = 50;
  std::uint64_t seed = 1;
  std::vector<Measure> measures = sio_monotone_measures();
  double tolerance = kSlackTolerance;
  bool check_bounds = true;
  bool explore_io = false;
  bool record_timings = false;
};

// Parses a JSON config; omitted keys keep their defaults. Unknown keys,
// unknown measure names and trials < 1 throw InvalidInput.
SuiteConfig parse_suite_config(std::string_view json_text);

struct MeasureSummary {
  std::string measure;
  int checks = 0;
  int failures = 0;
  int inconclusive = 0;
  double worst_slack = 0.0;
  std::uint64_t worst_state_seed = 0;
  std::uint64_t worst_channel_seed = 0;
  double wall_seconds = 0.0;
  // Exploratory incoherent-operation runs.
  int io_checks = 0;
  int io_negative = 0;
  double io_worst_slack = 0.0;
};

struct BoundsSummary {
  std::string relation;
  int checks = 0;
  int failures = 0;
  double worst_slack = 0.0;
  std::uint64_t worst_state_seed = 0;
};

struct SuiteResult {
  SuiteConfig config;
  std::vector<MonotonicityReport> reports;
  std::vector<MonotonicityReport> io_reports;
  std::vector<MeasureSummary> measures;
  std::vector<BoundsSummary> bounds;
  int total_failures = 0;
  int total_inconclusive = 0;
};

// Seeds of trial `trial` in dimension `dim`; stream 0 is the state, 1 the
// SIO channel, 2 the exploratory IO channel.
std::uint64_t trial_seed(std::uint64_t base, std::size_t dim, int trial, int stream);

// Runs every (dimension, trial) job, possibly concurrently. The result does
// not depend on the thread count.
SuiteResult run_suite(const SuiteConfig& config);

// Report JSON; see docs/report_schema.md. Numbers carry 12 significant
// digits; wall times appear only with record_timings.
std::string suite_report_json(const SuiteResult& result);

}  // namespace coherelab
