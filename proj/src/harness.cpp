#include "coherelab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "coherelab/error.hpp"
#include "coherelab/format.hpp"
#include "coherelab/kernels.hpp"
#include "json.hpp"

namespace coherelab {

namespace {

using Json = nlohmann::ordered_json;

bool is_sio_monotone(Measure m) {
  const auto& ms = sio_monotone_measures();
  return std::find(ms.begin(), ms.end(), m) != ms.end();
}

std::vector<std::vector<Complex>> rows_of(const DensityMatrix& rho) {
  std::vector<std::vector<Complex>> rows(rho.dim(), std::vector<Complex>(rho.dim()));
  for (std::size_t j = 0; j < rho.dim(); ++j)
    for (std::size_t k = 0; k < rho.dim(); ++k) rows[j][k] = rho(j, k);
  return rows;
}

// Weighted branch sum, skipping branches below kMinBranchProbability.
double branch_sum(Measure m, const std::vector<Branch>& branches, const MeasureOptions& opts,
                  std::size_t& excluded) {
  double rhs = 0.0;
  excluded = 0;
  for (const Branch& b : branches) {
    if (b.probability < kMinBranchProbability) {
      ++excluded;
      continue;
    }
    rhs += b.probability * compute(m, b.state, opts).value;
  }
  return rhs;
}

MonotonicityReport compare(Measure m, const DensityMatrix& rho, const std::vector<Branch>& branches,
                           const MonotonicityOptions& options) {
  MonotonicityReport r;
  r.measure = std::string(measure_name(m));
  r.dim = rho.dim();
  r.state_seed = options.state_seed;
  r.channel_seed = options.channel_seed;
  r.branches = branches.size();
  try {
    r.lhs = compute(m, rho, options.measure).value;
    r.rhs = branch_sum(m, branches, options.measure, r.excluded_branches);
    r.slack = r.lhs - r.rhs;
    if (r.slack < -options.tolerance) {
      // Every optimizer here reports the best value found, so more restarts
      // can only move either side upwards.
      MeasureOptions strong = options.measure;
      strong.restart_scale *= 10;
      r.rechecked = true;
      r.lhs = std::max(r.lhs, compute(m, rho, strong).value);
      double rhs = 0.0;
      for (const Branch& b : branches) {
        if (b.probability < kMinBranchProbability) continue;
        const double first = compute(m, b.state, options.measure).value;
        rhs += b.probability * std::max(first, compute(m, b.state, strong).value);
      }
      r.rhs = rhs;
      r.slack = r.lhs - r.rhs;
    }
    r.status = r.slack >= -options.tolerance ? CheckStatus::pass : CheckStatus::fail;
  } catch (const NumericalFailure& e) {
    r.status = CheckStatus::inconclusive;
    r.note = e.what();
  }
  if (r.status == CheckStatus::fail) r.state = rows_of(rho);
  return r;
}

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json number(double x) { return round_to_12_digits(x); }

Json complex_rows(const std::vector<std::vector<Complex>>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (const Complex& z : row) r.push_back(Json::array({number(z.real()), number(z.imag())}));
    out.push_back(std::move(r));
  }
  return out;
}

Json report_json(const MonotonicityReport& r) {
  Json j;
  j["measure"] = r.measure;
  j["dim"] = r.dim;
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["slack"] = number(r.slack);
  j["state_seed"] = r.state_seed;
  j["channel_seed"] = r.channel_seed;
  j["branches"] = r.branches;
  j["excluded_branches"] = r.excluded_branches;
  j["rechecked"] = r.rechecked;
  j["status"] = std::string(to_string(r.status));
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.state.empty()) j["state"] = complex_rows(r.state);
  if (!r.channel.empty()) {
    Json ks = Json::array();
    for (const SioKraus& k : r.channel) {
      Json amps = Json::array();
      for (const Complex& c : k.amplitudes) amps.push_back(Json::array({number(c.real()), number(c.imag())}));
      ks.push_back({{"permutation", k.permutation}, {"amplitudes", amps}});
    }
    j["channel"] = std::move(ks);
  }
  return j;
}

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "pass";
}

MonotonicityReport check_strong_monotonicity(Measure m, const DensityMatrix& rho,
                                             const SioChannel& channel,
                                             const MonotonicityOptions& options) {
  if (!is_sio_monotone(m))
    throw InvalidInput("check_strong_monotonicity: " + std::string(measure_name(m)) +
                       " is not covered by the SIO monotonicity check");
  if (channel.dim() != rho.dim()) throw InvalidInput("check_strong_monotonicity: dimension mismatch");
  MonotonicityReport r = compare(m, rho, apply_sio(rho, channel), options);
  if (r.status == CheckStatus::fail) r.channel = channel.kraus();
  return r;
}

MonotonicityReport check_incoherent_monotonicity(Measure m, const DensityMatrix& rho,
                                                 const std::vector<IncoherentKraus>& kraus,
                                                 const MonotonicityOptions& options) {
  MonotonicityReport r = compare(m, rho, apply_incoherent(rho, kraus), options);
  if (r.status == CheckStatus::fail) {
    r.status = CheckStatus::pass;
    r.note = "negative slack under an incoherent operation (exploratory)";
  }
  return r;
}

bool BoundsReport::pass() const { return worst_slack() >= -tolerance; }

double BoundsReport::worst_slack() const {
  double w = 0.0;
  for (const ChainCheck& c : chains) w = std::min(w, c.slack);
  return w;
}

BoundsReport check_bounds(const DensityMatrix& rho, const MeasureOptions& options) {
  BoundsReport r;
  const double tr = c_trace_dist(rho, options).value;
  const double mx = c_max(rho, options).value;
  const double ni = c_nabla_inf(rho).value;
  const double il = c_I_lower_default(rho);
  const double iu = c_I_upper(rho);
  const double rob = robustness(rho).value;
  const double guess = c_guess(rho).value;
  r.values = {{"c_trace_dist", tr}, {"c_max", mx},     {"c_nabla_inf", ni}, {"c_I_lower", il},
              {"c_I_upper", iu},    {"robustness", rob}, {"c_guess", guess}};
  auto le = [&](std::string rel, double a, double b) { r.chains.push_back({std::move(rel), a, b, b - a}); };
  le("c_trace_dist <= c_max", tr, mx);
  le("c_max <= 2 c_trace_dist", mx, 2.0 * tr);
  le("c_nabla_inf <= c_max", ni, mx);
  le("c_I_lower <= c_I_upper", il, iu);
  const double scaled = rob / static_cast<double>(rho.dim());
  r.chains.push_back({"c_guess == robustness / d", guess, scaled, -std::abs(guess - scaled)});
  return r;
}

SuiteConfig parse_suite_config(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("suite config: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("suite config: expected a JSON object");
  SuiteConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "dimensions") {
        c.dimensions.clear();
        for (const auto& d : value) {
          const auto dim = d.get<long long>();
          if (dim < 1 || dim > static_cast<long long>(kMaxEnumerationDim))
            throw InvalidInput("suite config: dimensions must lie in 1..20");
          c.dimensions.push_back(static_cast<std::size_t>(dim));
        }
      } else if (key == "trials") {
        c.trials = value.get<int>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "measures") {
        c.measures.clear();
        for (const auto& name : value) {
          const auto m = parse_measure(name.get<std::string>());
          if (!m) throw InvalidInput("suite config: unknown measure '" + name.get<std::string>() + "'");
          if (!is_sio_monotone(*m))
            throw InvalidInput("suite config: " + name.get<std::string>() + " is not checked for SIO monotonicity");
          c.measures.push_back(*m);
        }
      } else if (key == "tolerance") {
        c.tolerance = value.get<double>();
      } else if (key == "check_bounds") {
        c.check_bounds = value.get<bool>();
      } else if (key == "explore_io") {
        c.explore_io = value.get<bool>();
      } else if (key == "record_timings") {
        c.record_timings = value.get<bool>();
      } else {
        throw InvalidInput("suite config: unknown key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("suite config: ") + e.what());
  }
  if (c.trials < 1) throw InvalidInput("suite config: trials must be >= 1");
  if (!(c.tolerance >= 0.0)) throw InvalidInput("suite config: tolerance must be >= 0");
  return c;
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t dim, int trial, int stream) {
  return splitmix(splitmix(splitmix(base) ^ dim) ^ (static_cast<std::uint64_t>(trial) << 2 | stream));
}

SuiteResult run_suite(const SuiteConfig& config) {
  SuiteResult result;
  result.config = config;
  if (config.measures.empty()) return result;

  struct Job {
    std::size_t dim;
    int trial;
    std::vector<MonotonicityReport> reports;
    std::vector<double> wall;
    std::vector<MonotonicityReport> io_reports;
    BoundsReport bounds;
    bool bounds_ok = true;
  };
  std::vector<Job> jobs;
  for (std::size_t d : config.dimensions)
    for (int t = 0; t < config.trials; ++t) jobs.push_back({d, t, {}, {}, {}, {}, true});

  kernels::evaluate_all(jobs.size(), [&](std::size_t i) {
    Job& job = jobs[i];
    const std::size_t d = job.dim;
    MonotonicityOptions opts;
    opts.tolerance = config.tolerance;
    opts.state_seed = trial_seed(config.seed, d, job.trial, 0);
    opts.channel_seed = trial_seed(config.seed, d, job.trial, 1);
    opts.measure.seed = splitmix(opts.state_seed);
    const DensityMatrix rho = random_density(d, 1 + opts.state_seed % d, opts.state_seed);
    const SioChannel channel = random_sio(d, 1 + opts.channel_seed % 4, opts.channel_seed);
    for (Measure m : config.measures) {
      const auto t0 = std::chrono::steady_clock::now();
      job.reports.push_back(check_strong_monotonicity(m, rho, channel, opts));
      job.wall.push_back(seconds_since(t0));
    }
    if (config.explore_io) {
      MonotonicityOptions io = opts;
      io.channel_seed = trial_seed(config.seed, d, job.trial, 2);
      const auto kraus = random_io(d, 1 + io.channel_seed % 4, io.channel_seed);
      for (Measure m : config.measures) job.io_reports.push_back(check_incoherent_monotonicity(m, rho, kraus, io));
    }
    if (config.check_bounds) {
      try {
        job.bounds = check_bounds(rho, opts.measure);
      } catch (const NumericalFailure&) {
        job.bounds_ok = false;
      }
    }
    return 0.0;
  });

  for (Measure m : config.measures) result.measures.push_back({std::string(measure_name(m))});
  for (const Job& job : jobs) {
    for (std::size_t k = 0; k < job.reports.size(); ++k) {
      const MonotonicityReport& r = job.reports[k];
      MeasureSummary& s = result.measures[k];
      ++s.checks;
      s.wall_seconds += job.wall[k];
      if (r.status == CheckStatus::fail) ++s.failures;
      if (r.status == CheckStatus::inconclusive) ++s.inconclusive;
      if (r.status != CheckStatus::inconclusive && (s.checks == 1 || r.slack < s.worst_slack)) {
        s.worst_slack = r.slack;
        s.worst_state_seed = r.state_seed;
        s.worst_channel_seed = r.channel_seed;
      }
      result.reports.push_back(r);
    }
    for (std::size_t k = 0; k < job.io_reports.size(); ++k) {
      const MonotonicityReport& r = job.io_reports[k];
      MeasureSummary& s = result.measures[k];
      ++s.io_checks;
      if (r.slack < -config.tolerance) ++s.io_negative;
      s.io_worst_slack = std::min(s.io_worst_slack, r.slack);
      result.io_reports.push_back(r);
    }
    if (!config.check_bounds) continue;
    if (!job.bounds_ok) {
      ++result.total_inconclusive;
      continue;
    }
    for (std::size_t c = 0; c < job.bounds.chains.size(); ++c) {
      const ChainCheck& chain = job.bounds.chains[c];
      if (result.bounds.size() <= c) result.bounds.push_back({chain.relation});
      BoundsSummary& b = result.bounds[c];
      ++b.checks;
      if (chain.slack < -config.tolerance) ++b.failures;
      if (b.checks == 1 || chain.slack < b.worst_slack) {
        b.worst_slack = chain.slack;
        b.worst_state_seed = trial_seed(config.seed, job.dim, job.trial, 0);
      }
    }
  }
  for (const MeasureSummary& s : result.measures) {
    result.total_failures += s.failures;
    result.total_inconclusive += s.inconclusive;
  }
  for (const BoundsSummary& b : result.bounds) result.total_failures += b.failures;
  return result;
}

std::string suite_report_json(const SuiteResult& result) {
  const SuiteConfig& c = result.config;
  const bool timings = c.record_timings;
  Json j;
  Json config;
  config["dimensions"] = c.dimensions;
  config["trials"] = c.trials;
  config["seed"] = c.seed;
  Json names = Json::array();
  for (Measure m : c.measures) names.push_back(std::string(measure_name(m)));
  config["measures"] = names;
  config["tolerance"] = number(c.tolerance);
  config["check_bounds"] = c.check_bounds;
  config["explore_io"] = c.explore_io;
  config["record_timings"] = c.record_timings;
  j["config"] = config;

  Json summary;
  summary["total_failures"] = result.total_failures;
  summary["total_inconclusive"] = result.total_inconclusive;
  Json ms = Json::array();
  for (const MeasureSummary& s : result.measures) {
    Json e;
    e["measure"] = s.measure;
    e["checks"] = s.checks;
    e["failures"] = s.failures;
    e["inconclusive"] = s.inconclusive;
    e["worst_slack"] = number(s.worst_slack);
    e["worst_state_seed"] = s.worst_state_seed;
    e["worst_channel_seed"] = s.worst_channel_seed;
    if (timings) e["wall_seconds"] = number(s.wall_seconds);
    if (c.explore_io) {
      e["io_checks"] = s.io_checks;
      e["io_negative_slack"] = s.io_negative;
      e["io_worst_slack"] = number(s.io_worst_slack);
    }
    ms.push_back(std::move(e));
  }
  summary["measures"] = std::move(ms);
  Json bs = Json::array();
  for (const BoundsSummary& b : result.bounds)
    bs.push_back({{"relation", b.relation},
                  {"checks", b.checks},
                  {"failures", b.failures},
                  {"worst_slack", number(b.worst_slack)},
                  {"worst_state_seed", b.worst_state_seed}});
  summary["bounds"] = std::move(bs);
  j["summary"] = std::move(summary);

  Json reports = Json::array();
  for (const MonotonicityReport& r : result.reports) reports.push_back(report_json(r));
  j["reports"] = std::move(reports);
  if (c.explore_io) {
    Json io = Json::array();
    for (const MonotonicityReport& r : result.io_reports) io.push_back(report_json(r));
    j["io_reports"] = std::move(io);
  }
  return j.dump(2) + "\n";
}

}  // namespace coherelab
