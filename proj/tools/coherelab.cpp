// coherelab command-line tool.
//
//   coherelab measure      --state rho.json [--all | --only c_max,c_l1] [--format json|csv]
//   coherelab pattern      --state rho.json [--povm fourier|basis:...|file.json] [--grid n] [--sweep path] [--out p.csv]
//   coherelab suite        [--config suite.json] [--out report.json]
//   coherelab random-state --dim d [--rank r] [--seed s] [--maximally-coherent] [--out rho.json]
//
// Exit codes: 0 success, 2 invalid input, 3 solver failure, 4 monotonicity
// failure in a suite run.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "coherelab/error.hpp"
#include "coherelab/format.hpp"
#include "coherelab/harness.hpp"
#include "coherelab/interferometer.hpp"
#include "coherelab/io.hpp"
#include "coherelab/kernels.hpp"
#include "coherelab/measures.hpp"
#include "json.hpp"

namespace {

using namespace coherelab;
using Json = nlohmann::ordered_json;

constexpr int kExitInvalid = 2;
constexpr int kExitSolver = 3;
constexpr int kExitMonotonicity = 4;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + out_path);
  out << text;
}

std::vector<Measure> select_measures(bool all, const std::string& only) {
  if (all || only.empty()) return all_measures();
  std::vector<Measure> ms;
  std::stringstream ss(only);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    const auto m = parse_measure(name);
    if (!m) throw InvalidInput("unknown measure '" + name + "'");
    ms.push_back(*m);
  }
  if (ms.empty()) throw InvalidInput("--only: no measures given");
  return ms;
}

Json result_json(Measure m, const MeasureResult& r) {
  if (!has_witness(m)) return round_to_12_digits(r.value);
  Json values = Json::array();
  for (double v : r.witness.values) values.push_back(round_to_12_digits(v));
  Json diag;
  diag["iterations"] = r.diagnostics.iterations;
  diag["restarts"] = r.diagnostics.restarts;
  diag["residual"] = round_to_12_digits(r.diagnostics.residual);
  for (const auto& [k, v] : r.diagnostics.extra) diag[k] = round_to_12_digits(v);
  Json j;
  j["value"] = round_to_12_digits(r.value);
  j["witness"] = {{"kind", std::string(to_string(r.witness.kind))}, {"values", values}};
  j["diagnostics"] = diag;
  return j;
}

int cmd_measure(const std::string& state, bool all, const std::string& only, const std::string& format,
                std::uint64_t seed) {
  const DensityMatrix rho = read_state_file(state);
  const auto measures = select_measures(all, only);
  MeasureOptions opts;
  opts.seed = seed;
  if (format == "csv") {
    std::string out = "measure,value\n";
    for (Measure m : measures) out += std::string(measure_name(m)) + "," + format_number(compute(m, rho, opts).value) + "\n";
    std::cout << out;
    return 0;
  }
  Json j;
  for (Measure m : measures) j[std::string(measure_name(m))] = result_json(m, compute(m, rho, opts));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_pattern(const std::string& state, const std::string& povm_spec, std::optional<std::size_t> grid_n,
                std::optional<std::size_t> sweep, const std::string& out_path) {
  const DensityMatrix rho = read_state_file(state);
  const Povm povm = parse_povm_spec(povm_spec, rho.dim());
  const std::size_t d = rho.dim();
  if (grid_n && *grid_n < 1) throw InvalidInput("--grid must be >= 1");
  PhaseGrid grid = [&] {
    if (sweep) {
      if (*sweep >= d) throw InvalidInput("--sweep: path index out of range");
      return PhaseGrid::sweep(d, *sweep, grid_n.value_or(33));
    }
    return PhaseGrid::torus(d, grid_n.value_or(PhaseGrid::default_points_per_axis(d)));
  }();
  const PatternGrid pattern = sample_pattern(rho, povm, grid);
  std::ostringstream csv;
  write_pattern_csv(csv, pattern);
  emit(out_path, csv.str());
  return 0;
}

int cmd_suite(const std::string& config_path, const std::string& out_path) {
  const SuiteConfig config = config_path.empty() ? SuiteConfig{} : parse_suite_config(read_text_file(config_path));
  const SuiteResult result = run_suite(config);
  emit(out_path, suite_report_json(result));
  for (const MeasureSummary& s : result.measures)
    std::cerr << s.measure << ": " << s.checks << " checks, " << s.failures << " failures, worst slack "
              << format_number(s.worst_slack) << "\n";
  for (const BoundsSummary& b : result.bounds)
    std::cerr << b.relation << ": " << b.checks << " checks, " << b.failures << " failures, worst slack "
              << format_number(b.worst_slack) << "\n";
  if (result.total_failures == 0) return 0;
  for (const MonotonicityReport& r : result.reports)
    if (r.status == CheckStatus::fail)
      std::cerr << "FAIL " << r.measure << " d=" << r.dim << " state_seed=" << r.state_seed
                << " channel_seed=" << r.channel_seed << " slack=" << format_number(r.slack) << "\n";
  for (const BoundsSummary& b : result.bounds)
    if (b.failures > 0) std::cerr << "FAIL " << b.relation << " worst state_seed=" << b.worst_state_seed << "\n";
  return kExitMonotonicity;
}

int cmd_random_state(std::size_t dim, std::optional<std::size_t> rank, std::uint64_t seed, bool max_coherent,
                     const std::string& out_path) {
  if (dim < 1) throw InvalidInput("--dim must be >= 1");
  const std::size_t r = rank.value_or(dim);
  if (r < 1 || r > dim) throw InvalidInput("--rank must satisfy 1 <= rank <= dim");
  const DensityMatrix rho = max_coherent ? DensityMatrix::maximally_coherent(dim) : random_density(dim, r, seed);
  emit(out_path, state_to_json(rho));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interferometric visibility coherence measures"};
  app.require_subcommand(1);

  std::string state, only, format = "json", povm = "fourier", out, config;
  bool all = false, max_coherent = false;
  std::uint64_t seed = 0;
  std::optional<std::size_t> grid, sweep, rank;
  std::size_t dim = 0;

  auto* measure = app.add_subcommand("measure", "Compute coherence measures of a state file");
  measure->add_option("--state", state, "State JSON file")->required();
  measure->add_flag("--all", all, "All measures (default)");
  measure->add_option("--only", only, "Comma-separated measure names");
  measure->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  measure->add_option("--seed", seed, "Seed for randomized restarts");

  auto* pattern = app.add_subcommand("pattern", "Export an interference pattern as CSV");
  pattern->add_option("--state", state, "State JSON file")->required();
  pattern->add_option("--povm", povm, "fourier, basis:<vectors> or a POVM JSON file");
  pattern->add_option("--grid", grid, "Points per phase axis");
  pattern->add_option("--sweep", sweep, "Sweep only the phase of this path (0-based)");
  pattern->add_option("--out", out, "Output CSV (default stdout)");

  auto* suite = app.add_subcommand("suite", "Run the randomized monotonicity suite");
  suite->add_option("--config", config, "Suite config JSON");
  suite->add_option("--out", out, "Report JSON (default stdout)");

  auto* random = app.add_subcommand("random-state", "Write a random density matrix");
  random->add_option("--dim", dim, "Dimension")->required();
  random->add_option("--rank", rank, "Rank (default dim)");
  random->add_option("--seed", seed, "RNG seed");
  random->add_flag("--maximally-coherent", max_coherent, "Write the maximally coherent state instead");
  random->add_option("--out", out, "Output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    apply_thread_cap_from_env();
    if (*measure) return cmd_measure(state, all, only, format, seed);
    if (*pattern) return cmd_pattern(state, povm, grid, sweep, out);
    if (*suite) return cmd_suite(config, out);
    if (*random) return cmd_random_state(dim, rank, seed, max_coherent, out);
  } catch (const NumericalFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
