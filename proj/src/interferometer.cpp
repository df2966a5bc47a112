#include "coherelab/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>

#include "coherelab/error.hpp"
#include "coherelab/format.hpp"

namespace coherelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double effect_probability(const DensityMatrix& rho, const HermitianMatrix& effect) {
  return trace_of_product(rho.matrix(), effect.matrix()).real();
}

}  // namespace

PhaseGrid::PhaseGrid(std::vector<PhaseVector> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidInput("phase grid must be nonempty");
  const std::size_t d = points_.front().dim();
  if (d == 0) throw InvalidInput("phase grid points must have dimension >= 1");
  for (const auto& p : points_)
    if (p.dim() != d) throw InvalidInput("phase grid points have mismatched dimensions");
}

PhaseGrid PhaseGrid::torus(std::size_t dim, std::size_t points_per_axis) {
  if (dim == 0 || points_per_axis == 0) throw InvalidInput("torus grid needs dim, n >= 1");
  const std::size_t free = dim - 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < free; ++i) total *= points_per_axis;
  std::vector<PhaseVector> points;
  points.reserve(total);
  const double step = kTwoPi / static_cast<double>(points_per_axis);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<double> alpha(dim, 0.0);
    std::size_t rest = idx;
    for (std::size_t axis = free; axis-- > 0;) {
      alpha[axis] = step * static_cast<double>(rest % points_per_axis);
      rest /= points_per_axis;
    }
    points.emplace_back(std::move(alpha));
  }
  return PhaseGrid(std::move(points));
}

std::size_t PhaseGrid::default_points_per_axis(std::size_t dim) {
  if (dim <= 3) return 33;
  if (dim == 4) return 9;
  return 5;
}

PhaseGrid PhaseGrid::default_for(std::size_t dim) {
  return torus(dim, default_points_per_axis(dim));
}

PhaseGrid PhaseGrid::sweep(std::size_t dim, std::size_t path, std::size_t n) {
  if (path >= dim || n == 0) throw InvalidInput("sweep path out of range or empty sweep");
  std::vector<PhaseVector> points;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> alpha(dim, 0.0);
    alpha[path] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    points.emplace_back(std::move(alpha));
  }
  return PhaseGrid(std::move(points));
}

PhaseGrid PhaseGrid::translated(const PhaseVector& shift) const {
  std::vector<PhaseVector> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p + shift);
  return PhaseGrid(std::move(out));
}

PatternGrid sample_pattern(const DensityMatrix& rho, const Povm& povm, const PhaseGrid& grid) {
  if (grid.dim() != rho.dim() || povm.dim() != rho.dim())
    throw InvalidInput("sample_pattern: dimension mismatch");
  return PatternGrid{grid, povm.labels(), kernels::pattern_table(rho, povm, grid.points())};
}

void validate_pattern(const PatternGrid& pattern) {
  if (pattern.table.size() != pattern.grid.size())
    throw InvalidInput("pattern table has wrong number of rows");
  for (const auto& row : pattern.table) {
    if (row.size() != pattern.outcomes.size())
      throw InvalidInput("pattern row has wrong number of outcomes");
    double s = 0.0;
    for (double p : row) {
      if (p < -kPsdClamp) throw InvalidInput("pattern row has a negative probability");
      s += p;
    }
    if (std::abs(s - 1.0) > kPovmTolerance) throw InvalidInput("pattern row does not sum to one");
  }
}

double v_max_on_grid(const PatternGrid& pattern) {
  return kernels::max_pairwise_tv(pattern.table).value;
}

double v_guess_on_settings(const DensityMatrix& rho, const Povm& povm, const PhaseVector& alpha0,
                           std::span<const std::size_t> permutation,
                           const GuessAssignment& assignment) {
  const std::size_t d = rho.dim();
  if (permutation.size() != d || alpha0.dim() != d || povm.dim() != d)
    throw InvalidInput("v_guess_on_settings: dimension mismatch");
  if (assignment.size() != d) throw InvalidInput("assignment must have one outcome set per phase");
  std::vector<bool> used(povm.size(), false);
  for (const auto& omega : assignment)
    for (std::size_t w : omega) {
      if (w >= povm.size()) throw InvalidInput("assignment references an unknown outcome");
      if (used[w]) throw InvalidInput("assignment outcome sets overlap");
      used[w] = true;
    }
  const PhaseVector h = accelerating_phases(permutation);
  double total = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const PhaseVector alpha = alpha0 + h.scaled(static_cast<double>(j + 1));
    const auto p = born_distribution(rho, alpha, povm);
    for (std::size_t w : assignment[j]) total += p[w];
  }
  const double dd = static_cast<double>(d);
  return -1.0 / dd + total / dd;
}

GuessSettingsResult v_guess_best_assignment(const DensityMatrix& rho, const Povm& povm,
                                            const PhaseVector& alpha0,
                                            std::span<const std::size_t> permutation) {
  const std::size_t d = rho.dim();
  if (permutation.size() != d || alpha0.dim() != d || povm.dim() != d)
    throw InvalidInput("v_guess_best_assignment: dimension mismatch");
  const PhaseVector h = accelerating_phases(permutation);
  Table rows;
  for (std::size_t j = 0; j < d; ++j)
    rows.push_back(born_distribution(rho, alpha0 + h.scaled(static_cast<double>(j + 1)), povm));
  GuessAssignment assignment(d);
  for (std::size_t w = 0; w < povm.size(); ++w) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < d; ++j)
      if (rows[j][w] > rows[best][w]) best = j;
    assignment[best].push_back(w);
  }
  return {v_guess_on_settings(rho, povm, alpha0, permutation, assignment), std::move(assignment)};
}

DirectionalDerivative directional_derivative(const DensityMatrix& rho, const HermitianMatrix& effect,
                                             const PhaseVector& alpha,
                                             const DiagonalHamiltonian& h) {
  const std::size_t d = rho.dim();
  if (effect.dim() != d || alpha.dim() != d || h.dim() != d)
    throw InvalidInput("directional_derivative: dimension mismatch");
  {
    const EigenSystem es = eig_hermitian(effect);
    if (es.values.back() < -kPsdClamp || es.values.front() > 1.0 + kPsdClamp)
      throw InvalidInput("directional_derivative: M0 must satisfy 0 <= M0 <= 1");
  }
  const DensityMatrix shifted = apply_phases(rho, alpha);
  const ComplexMatrix comm = commutator(shifted.matrix(), h.matrix());
  const double analytic = (Complex(0.0, -1.0) * trace_of_product(comm, effect.matrix())).real();

  auto response = [&](double t) {
    std::vector<double> a(d);
    for (std::size_t j = 0; j < d; ++j) a[j] = alpha[j] + t * h.h[j];
    return effect_probability(apply_phases(rho, PhaseVector(std::move(a))), effect);
  };
  const double step = kFiniteDifferenceStep;
  const double fd = (response(step) - response(-step)) / (2.0 * step);
  return {analytic, fd};
}

PatternGrid mix_patterns(const std::vector<PatternGrid>& patterns, std::span<const double> weights) {
  if (patterns.empty()) throw InvalidInput("mix_patterns: no patterns");
  if (weights.size() != patterns.size()) throw InvalidInput("mix_patterns: weight count mismatch");
  double wsum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw InvalidInput("mix_patterns: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > kTraceTolerance) throw InvalidInput("mix_patterns: weights must sum to 1");

  const PhaseGrid& grid = patterns.front().grid;
  std::set<std::string> labels;
  PatternGrid out{grid, {}, Table(grid.size())};
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& p = patterns[i];
    if (p.grid.size() != grid.size() || p.grid.dim() != grid.dim())
      throw InvalidInput("mix_patterns: patterns use different phase grids");
    for (std::size_t r = 0; r < grid.size(); ++r)
      if (p.grid.points()[r].values() != grid.points()[r].values())
        throw InvalidInput("mix_patterns: patterns use different phase grids");
    for (const auto& l : p.outcomes)
      if (!labels.insert(l).second) throw InvalidInput("mix_patterns: outcome label '" + l + "' is shared");
    out.outcomes.insert(out.outcomes.end(), p.outcomes.begin(), p.outcomes.end());
    for (std::size_t r = 0; r < grid.size(); ++r)
      for (double x : p.table[r]) out.table[r].push_back(weights[i] * x);
  }
  return out;
}

void write_pattern_csv(std::ostream& out, const PatternGrid& pattern) {
  const std::size_t d = pattern.grid.dim();
  for (std::size_t j = 0; j < d; ++j) out << (j ? "," : "") << "alpha_" << (j + 1);
  for (const auto& l : pattern.outcomes) out << ",p_" << l;
  out << '\n';
  for (std::size_t r = 0; r < pattern.grid.size(); ++r) {
    const auto& a = pattern.grid.points()[r];
    for (std::size_t j = 0; j < d; ++j) out << (j ? "," : "") << format_number(a[j]);
    for (double p : pattern.table[r]) out << ',' << format_number(p);
    out << '\n';
  }
}

}  // namespace coherelab
