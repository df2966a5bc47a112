#include "coherelab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "coherelab/error.hpp"
#include "coherelab/interferometer.hpp"
#include "coherelab/kernels.hpp"
#include "coherelab/optimize.hpp"

namespace coherelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFisherCutoff = 1e-12;

using RealMatrix = std::vector<std::vector<double>>;

double quadratic_form(const RealMatrix& q, std::span<const double> h) {
  double s = 0.0;
  for (std::size_t m = 0; m < h.size(); ++m) {
    if (h[m] == 0.0) continue;
    for (std::size_t n = 0; n < h.size(); ++n) s += h[m] * q[m][n] * h[n];
  }
  return s;
}

struct TopEigen {
  double value;
  std::vector<double> vector;
};

TopEigen top_eigen(const RealMatrix& q) {
  const std::size_t d = q.size();
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = 0.5 * (q[i][j] + q[j][i]);
  const EigenSystem es = eig_hermitian(HermitianMatrix(m));
  std::vector<Complex> v = es.vector(0);
  // Real symmetric input: remove the arbitrary global phase, then fix the
  // sign so the first significant component is positive.
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < d; ++i)
    if (std::abs(v[i]) > std::abs(v[pivot]) + 1e-12) pivot = i;
  const Complex phase = std::abs(v[pivot]) > 0 ? std::conj(v[pivot]) / std::abs(v[pivot]) : 1.0;
  std::vector<double> h(d);
  double norm = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    h[i] = (v[i] * phase).real();
    norm += h[i] * h[i];
  }
  norm = std::sqrt(norm);
  for (double& x : h) x /= norm;
  for (double x : h)
    if (std::abs(x) > 1e-12) {
      if (x < 0)
        for (double& y : h) y = -y;
      break;
    }
  return {es.values[0], std::move(h)};
}

// Signs (+1 / -1) for a partition mask: path 0 in S+, bit (j-1) set means
// path j in S-.
std::vector<double> signs_from_mask(std::size_t dim, std::size_t mask) {
  std::vector<double> h(dim, 1.0);
  for (std::size_t j = 1; j < dim; ++j)
    if (mask >> (j - 1) & 1U) h[j] = -1.0;
  return h;
}

void require_enumerable(std::size_t dim, const char* what) {
  if (dim > kMaxEnumerationDim)
    throw Unsupported(std::string(what) + ": partition enumeration supports d <= 20");
}

double clamp_nonnegative(double x) { return x < 0.0 && x > -1e-12 ? 0.0 : x; }

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MeasureResult zero_result(WitnessKind kind, std::vector<double> values) {
  MeasureResult r;
  r.witness = {kind, std::move(values)};
  return r;
}

// Apply f to every start in parallel, keep the best (smallest index on ties).
OptimumPoint best_of(const std::vector<std::vector<double>>& starts,
                     const std::function<OptimumPoint(const std::vector<double>&)>& run,
                     int& total_evals) {
  std::vector<OptimumPoint> results(starts.size());
  kernels::evaluate_all(starts.size(), [&](std::size_t i) {
    results[i] = run(starts[i]);
    return results[i].value;
  });
  std::size_t best = 0;
  total_evals = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    total_evals += results[i].evaluations;
    if (results[i].value > results[best].value) best = i;
  }
  return results[best];
}

}  // namespace

std::string_view to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::none: return "none";
    case WitnessKind::phases: return "phases";
    case WitnessKind::hamiltonian: return "hamiltonian";
    case WitnessKind::diagonal_state: return "diagonal_state";
    case WitnessKind::dominating_diagonal: return "dominating_diagonal";
  }
  return "none";
}

// ---------------------------------------------------------------- baselines

double c_l1(const DensityMatrix& rho) {
  double s = 0.0;
  for (std::size_t j = 0; j < rho.dim(); ++j)
    for (std::size_t k = 0; k < rho.dim(); ++k)
      if (j != k) s += std::abs(rho(j, k));
  return s;
}

double c_rel_ent(const DensityMatrix& rho) {
  const auto p = rho.diagonal_entries();
  return std::max(0.0, shannon_entropy(p) - von_neumann_entropy(rho));
}

MeasureResult c_trace_dist(const DensityMatrix& rho, const MeasureOptions& options) {
  const std::size_t d = rho.dim();
  const auto diag = rho.diagonal_entries();
  if (rho.is_diagonal()) {
    return zero_result(WitnessKind::diagonal_state, diag);
  }
  auto to_probabilities = [d](std::span<const double> x) {
    std::vector<double> p(d);
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += (p[j] = x[j] * x[j]);
    for (double& v : p) v /= s;
    return p;
  };
  auto distance = [&](std::span<const double> p) {
    ComplexMatrix m = rho.matrix();
    for (std::size_t j = 0; j < d; ++j) m(j, j) -= p[j];
    return 0.5 * trace_norm(HermitianMatrix(std::move(m)));
  };
  auto objective = [&](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    if (!(s > 1e-300)) return 1e300;
    return distance(to_probabilities(x));
  };

  std::vector<std::vector<double>> starts;
  {
    std::vector<double> x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = std::sqrt(std::max(diag[j], 1e-6));
    starts.push_back(std::move(x));
  }
  const int n_random = 9 * std::max(1, options.restart_scale);
  for (int i = 0; i < n_random; ++i) {
    const auto p = random_probability_vector(d, mix_seed(options.seed, 100 + i));
    std::vector<double> x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = std::sqrt(p[j]);
    starts.push_back(std::move(x));
  }
  NelderMeadOptions nm;
  nm.initial_step = 0.1;
  int evals = 0;
  auto neg = [&](std::span<const double> x) { return -objective(x); };
  const OptimumPoint best = best_of(
      starts, [&](const std::vector<double>& x0) { return nelder_mead_maximize(neg, x0, nm); }, evals);

  MeasureResult r;
  r.witness = {WitnessKind::diagonal_state, to_probabilities(best.x)};
  r.value = distance(r.witness.values);
  r.diagnostics.iterations = evals;
  r.diagnostics.restarts = static_cast<int>(starts.size());
  return r;
}

// -------------------------------------------------------------------- C_max

double c_max_objective(const DensityMatrix& rho, const PhaseVector& alpha) {
  const auto u = phase_unitary_diagonal(alpha);
  const std::size_t d = rho.dim();
  ComplexMatrix diff(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) diff(j, k) = (u[j] * std::conj(u[k]) - 1.0) * rho(j, k);
  return 0.5 * trace_norm(HermitianMatrix(std::move(diff)));
}

MeasureResult c_max(const DensityMatrix& rho, const MeasureOptions& options) {
  const std::size_t d = rho.dim();
  if (d == 1 || rho.is_diagonal()) return zero_result(WitnessKind::phases, std::vector<double>(d, 0.0));

  auto phases_of = [d](std::span<const double> free) {
    std::vector<double> a(d, 0.0);
    std::copy(free.begin(), free.end(), a.begin());
    return PhaseVector(std::move(a));
  };
  auto objective = [&](std::span<const double> free) { return c_max_objective(rho, phases_of(free)); };

  // Coarse scan.
  constexpr std::size_t kMaxGridPoints = 20000;
  const std::size_t per_axis = PhaseGrid::default_points_per_axis(d);
  double total = 1.0;
  for (std::size_t i = 0; i + 1 < d; ++i) total *= static_cast<double>(per_axis);
  std::vector<std::vector<double>> candidates;
  if (total <= static_cast<double>(kMaxGridPoints)) {
    const PhaseGrid grid = PhaseGrid::torus(d, per_axis);
    for (const auto& p : grid.points())
      candidates.emplace_back(p.values().begin(), p.values().end() - 1);
  } else {
    std::mt19937_64 rng(mix_seed(options.seed, 7));
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    for (std::size_t i = 0; i < kMaxGridPoints; ++i) {
      std::vector<double> a(d - 1);
      for (double& x : a) x = uni(rng);
      candidates.push_back(std::move(a));
    }
  }
  const auto scan = kernels::evaluate_all(candidates.size(), [&](std::size_t i) { return objective(candidates[i]); });
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t n_starts = std::min<std::size_t>(candidates.size(), 5 * std::max(1, options.restart_scale));
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(n_starts), order.end(),
                    [&](std::size_t a, std::size_t b) { return scan[a] > scan[b] || (scan[a] == scan[b] && a < b); });
  std::vector<std::vector<double>> starts;
  for (std::size_t i = 0; i < n_starts; ++i) starts.push_back(candidates[order[i]]);

  NelderMeadOptions nm;
  nm.initial_step = 0.5 * kTwoPi / static_cast<double>(per_axis);
  int evals = 0;
  OptimumPoint best = best_of(
      starts, [&](const std::vector<double>& x0) { return nelder_mead_maximize(objective, x0, nm); }, evals);
  if (scan[order[0]] > best.value) best = {candidates[order[0]], scan[order[0]], 0};

  MeasureResult r;
  const PhaseVector alpha = phases_of(best.x);
  r.witness = {WitnessKind::phases, alpha.values()};
  r.value = c_max_objective(rho, alpha);
  r.diagnostics.iterations = evals + static_cast<int>(candidates.size());
  r.diagnostics.restarts = static_cast<int>(n_starts);
  r.diagnostics.extra["grid_points"] = static_cast<double>(candidates.size());
  r.diagnostics.extra["grid_best"] = scan[order[0]];
  return r;
}

// --------------------------------------------------------------- robustness

MeasureResult robustness(const DensityMatrix& rho, const RobustnessSolverOptions& solver) {
  const std::size_t d = rho.dim();
  const auto diag = rho.diagonal_entries();
  if (rho.is_diagonal()) {
    MeasureResult r = zero_result(WitnessKind::dominating_diagonal, diag);
    r.diagnostics.extra["dual_bound"] = 0.0;
    return r;
  }

  ComplexMatrix offdiag = rho.matrix();
  for (std::size_t j = 0; j < d; ++j) offdiag(j, j) = 0.0;
  const double lmax = eig_hermitian(HermitianMatrix(offdiag)).values.front();

  std::vector<double> t(d);
  for (std::size_t j = 0; j < d; ++j) t[j] = diag[j] + lmax + 0.1;

  auto slack = [&](std::span<const double> tt) {
    ComplexMatrix s = rho.matrix() * Complex(-1.0);
    for (std::size_t j = 0; j < d; ++j) s(j, j) += tt[j];
    return s;
  };
  // Barrier objective; +inf outside the PD cone.
  auto barrier = [&](std::span<const double> tt, double mu) {
    ComplexMatrix l;
    if (!cholesky(slack(tt), l)) return std::numeric_limits<double>::infinity();
    double logdet = 0.0;
    for (std::size_t j = 0; j < d; ++j) logdet += 2.0 * std::log(l(j, j).real());
    return std::accumulate(tt.begin(), tt.end(), 0.0) - mu * logdet;
  };
  auto solve_real = [d](RealMatrix a, std::vector<double> b) {
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = a[i][j];
    const ComplexMatrix inv = inverse_pd(m);
    std::vector<double> x(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) x[i] += inv(i, j).real() * b[j];
    return x;
  };

  int total_steps = 0;
  double mu = solver.barrier_start;
  double grad_residual = 0.0;
  ComplexMatrix w;
  for (;;) {
    int steps = 0;
    for (;; ++steps) {
      if (steps >= solver.max_newton_steps)
        throw NumericalFailure("robustness: Newton iteration did not converge", total_steps, grad_residual);
      w = inverse_pd(slack(t));
      std::vector<double> g(d);
      RealMatrix h(d, std::vector<double>(d));
      grad_residual = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        g[j] = 1.0 - mu * w(j, j).real();
        grad_residual = std::max(grad_residual, std::abs(g[j]));
        for (std::size_t k = 0; k < d; ++k) h[j][k] = mu * std::norm(w(j, k));
      }
      std::vector<double> minus_g(d);
      for (std::size_t j = 0; j < d; ++j) minus_g[j] = -g[j];
      const std::vector<double> step = solve_real(h, minus_g);
      double decrement2 = 0.0;
      for (std::size_t j = 0; j < d; ++j) decrement2 -= g[j] * step[j];
      if (decrement2 * 0.5 < 1e-14 * std::max(1.0, mu)) break;

      const double f0 = barrier(t, mu);
      double s = 1.0;
      std::vector<double> trial(d);
      for (int ls = 0; ls < 60; ++ls, s *= 0.5) {
        for (std::size_t j = 0; j < d; ++j) trial[j] = t[j] + s * step[j];
        if (barrier(trial, mu) <= f0 - 0.25 * s * decrement2) break;
      }
      t = trial;
      ++total_steps;
    }
    if (static_cast<double>(d) * mu < solver.gap_target) break;
    mu *= solver.barrier_factor;
  }

  // Dual certificate: W = mu S^{-1} with its diagonal rescaled to one is
  // feasible for max tr(rho W) s.t. W >= 0, W_jj = 1.
  w = inverse_pd(slack(t)) * Complex(mu);
  std::vector<double> scale(d);
  for (std::size_t j = 0; j < d; ++j) scale[j] = 1.0 / std::sqrt(w(j, j).real());
  double dual = 0.0;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) dual += (rho(j, k) * w(k, j)).real() * scale[j] * scale[k];

  const double primal = std::accumulate(t.begin(), t.end(), 0.0);
  MeasureResult r;
  r.value = std::max(0.0, primal - 1.0);
  r.witness = {WitnessKind::dominating_diagonal, t};
  r.diagnostics.iterations = total_steps;
  r.diagnostics.residual = primal - dual;
  r.diagnostics.extra["dual_bound"] = dual - 1.0;
  r.diagnostics.extra["final_mu"] = mu;
  r.diagnostics.extra["gradient_residual"] = grad_residual;
  return r;
}

MeasureResult c_guess(const DensityMatrix& rho) {
  MeasureResult r = robustness(rho);
  const double d = static_cast<double>(rho.dim());
  r.value /= d;
  r.diagnostics.extra["robustness"] = r.value * d;
  return r;
}

// ------------------------------------------------------------------ C_nabla

double commutator_half_norm(const DensityMatrix& rho, std::span<const double> h) {
  const std::size_t d = rho.dim();
  if (h.size() != d) throw InvalidInput("commutator_half_norm: dimension mismatch");
  // -i [rho, H] is Hermitian with entries -i (h_k - h_j) rho_jk.
  ComplexMatrix y(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) y(j, k) = Complex(0.0, -1.0) * (h[k] - h[j]) * rho(j, k);
  return 0.5 * trace_norm(HermitianMatrix(std::move(y)));
}

MeasureResult c_nabla_inf(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  require_enumerable(d, "c_nabla_inf");
  if (d == 1) return zero_result(WitnessKind::hamiltonian, {1.0});
  const std::size_t n = std::size_t{1} << (d - 1);
  const IndexedMax best = kernels::argmax(n, [&](std::size_t mask) {
    const auto h = signs_from_mask(d, mask);
    return commutator_half_norm(rho, h);
  });
  MeasureResult r;
  r.value = best.value;
  r.witness = {WitnessKind::hamiltonian, signs_from_mask(d, best.index)};
  r.diagnostics.iterations = static_cast<int>(n);
  return r;
}

MeasureResult c_nabla_2(const DensityMatrix& rho, const MeasureOptions& options) {
  const std::size_t d = rho.dim();
  if (d == 1) return zero_result(WitnessKind::hamiltonian, {1.0});
  if (rho.is_diagonal()) {
    std::vector<double> h(d, 0.0);
    h[0] = 1.0 / std::sqrt(2.0);
    h[1] = -1.0 / std::sqrt(2.0);
    return zero_result(WitnessKind::hamiltonian, std::move(h));
  }
  // The commutator ignores multiples of the identity, so the optimum on the
  // unit sphere lies in the traceless subspace.
  auto project = [d](std::span<const double> x) {
    std::vector<double> h(x.begin(), x.end());
    const double mean = std::accumulate(h.begin(), h.end(), 0.0) / static_cast<double>(d);
    double norm = 0.0;
    for (double& v : h) {
      v -= mean;
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm > 1e-300)
      for (double& v : h) v /= norm;
    return std::make_pair(h, norm);
  };
  auto objective = [&](std::span<const double> x) {
    const auto [h, norm] = project(x);
    if (!(norm > 1e-300)) return 0.0;
    return commutator_half_norm(rho, h);
  };

  std::vector<std::vector<double>> starts;
  starts.push_back(project(c_nabla_inf(rho).witness.values).first);
  {
    // Top eigenvector of the Fisher form is a second structured seed.
    starts.push_back(top_eigen(fisher_quadratic_form(rho)).vector);
  }
  const std::size_t n_starts = 20 * static_cast<std::size_t>(std::max(1, options.restart_scale));
  std::mt19937_64 rng(mix_seed(options.seed, 11));
  std::normal_distribution<double> normal;
  while (starts.size() < n_starts) {
    std::vector<double> x(d);
    for (double& v : x) v = normal(rng);
    starts.push_back(project(x).first);
  }
  NelderMeadOptions nm;
  nm.initial_step = 0.3;
  int evals = 0;
  const OptimumPoint best = best_of(
      starts, [&](const std::vector<double>& x0) { return nelder_mead_maximize(objective, x0, nm); }, evals);

  MeasureResult r;
  r.witness = {WitnessKind::hamiltonian, project(best.x).first};
  r.value = commutator_half_norm(rho, r.witness.values);
  r.diagnostics.iterations = evals;
  r.diagnostics.restarts = static_cast<int>(starts.size());
  return r;
}

// ----------------------------------------------------------------- C_Fisher

namespace {

double fisher_weight(double lj, double lk) {
  lj = std::max(lj, 0.0);
  lk = std::max(lk, 0.0);
  const double s = lj + lk;
  if (s <= kFisherCutoff) return 0.0;
  return (lj - lk) * (lj - lk) / s;
}

}  // namespace

double fisher_info(const DensityMatrix& rho, const DiagonalHamiltonian& h) {
  const std::size_t d = rho.dim();
  if (h.dim() != d) throw InvalidInput("fisher_info: dimension mismatch");
  const EigenSystem es = eig_hermitian(rho.hermitian());
  double f = 0.0;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      const double c = fisher_weight(es.values[j], es.values[k]);
      if (c == 0.0) continue;
      Complex hjk = 0.0;
      for (std::size_t m = 0; m < d; ++m) hjk += std::conj(es.vectors(m, j)) * h.h[m] * es.vectors(m, k);
      f += 2.0 * c * std::norm(hjk);
    }
  return clamp_nonnegative(f);
}

std::vector<std::vector<double>> fisher_quadratic_form(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  const EigenSystem es = eig_hermitian(rho.hermitian());
  const ComplexMatrix& e = es.vectors;
  RealMatrix q(d, std::vector<double>(d, 0.0));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      if (j == k) continue;
      const double c = fisher_weight(es.values[j], es.values[k]);
      if (c == 0.0) continue;
      for (std::size_t m = 0; m < d; ++m) {
        const Complex a = std::conj(e(m, j)) * e(m, k);
        for (std::size_t n = 0; n < d; ++n) q[m][n] += c * (a * std::conj(e(n, k)) * e(n, j)).real();
      }
    }
  return q;
}

MeasureResult c_fisher_inf(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  require_enumerable(d, "c_fisher_inf");
  if (d == 1) return zero_result(WitnessKind::hamiltonian, {1.0});
  const RealMatrix q = fisher_quadratic_form(rho);

  MeasureResult r;
  if (d <= kMaxTernaryDim) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < d; ++i) n *= 3;
    auto ternary = [d](std::size_t idx, bool& canonical) {
      std::vector<double> h(d);
      canonical = false;
      bool seen = false;
      for (std::size_t j = 0; j < d; ++j, idx /= 3) {
        const std::size_t digit = idx % 3;
        h[j] = digit == 0 ? 0.0 : (digit == 1 ? 1.0 : -1.0);
        if (!seen && digit != 0) {
          seen = true;
          canonical = digit == 1;
        }
      }
      return h;
    };
    const IndexedMax best = kernels::argmax(n, [&](std::size_t idx) {
      bool canonical = false;
      const auto h = ternary(idx, canonical);
      return canonical ? quadratic_form(q, h) : -1.0;
    });
    bool canonical = false;
    r.witness = {WitnessKind::hamiltonian, ternary(best.index, canonical)};
    r.diagnostics.iterations = static_cast<int>(n);
  } else {
    const std::size_t n = std::size_t{1} << (d - 1);
    const IndexedMax best = kernels::argmax(n, [&](std::size_t mask) { return quadratic_form(q, signs_from_mask(d, mask)); });
    r.witness = {WitnessKind::hamiltonian, signs_from_mask(d, best.index)};
    r.diagnostics.iterations = static_cast<int>(n);
  }
  r.value = fisher_info(rho, DiagonalHamiltonian{r.witness.values});
  return r;
}

MeasureResult c_fisher_2(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  if (d == 1) return zero_result(WitnessKind::hamiltonian, {1.0});
  const TopEigen top = top_eigen(fisher_quadratic_form(rho));
  MeasureResult r;
  r.witness = {WitnessKind::hamiltonian, top.vector};
  r.value = clamp_nonnegative(std::max(0.0, top.value));
  r.diagnostics.residual = std::abs(fisher_info(rho, DiagonalHamiltonian{top.vector}) - r.value);
  return r;
}

// ----------------------------------------------------------- C_Chernoff / WY

double wigner_yanase(const DensityMatrix& rho, const DiagonalHamiltonian& h) {
  const std::size_t d = rho.dim();
  if (h.dim() != d) throw InvalidInput("wigner_yanase: dimension mismatch");
  const HermitianMatrix s = psd_sqrt(rho.hermitian());
  const ComplexMatrix hm = h.matrix();
  double first = 0.0;
  for (std::size_t m = 0; m < d; ++m) first += rho(m, m).real() * h.h[m] * h.h[m];
  const ComplexMatrix sh = s.matrix() * hm;
  const double second = trace_of_product(sh, sh).real();
  return clamp_nonnegative(first - second);
}

std::vector<std::vector<double>> wigner_yanase_quadratic_form(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  const HermitianMatrix s = psd_sqrt(rho.hermitian());
  RealMatrix q(d, std::vector<double>(d, 0.0));
  for (std::size_t m = 0; m < d; ++m) {
    q[m][m] = rho(m, m).real();
    for (std::size_t n = 0; n < d; ++n) q[m][n] -= std::norm(s(m, n));
  }
  return q;
}

MeasureResult c_chernoff_inf(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  require_enumerable(d, "c_chernoff_inf");
  if (d == 1) return zero_result(WitnessKind::hamiltonian, {1.0});
  const RealMatrix q = wigner_yanase_quadratic_form(rho);
  const std::size_t n = std::size_t{1} << (d - 1);
  const IndexedMax best = kernels::argmax(n, [&](std::size_t mask) { return quadratic_form(q, signs_from_mask(d, mask)); });
  MeasureResult r;
  r.witness = {WitnessKind::hamiltonian, signs_from_mask(d, best.index)};
  r.value = wigner_yanase(rho, DiagonalHamiltonian{r.witness.values});
  r.diagnostics.iterations = static_cast<int>(n);
  return r;
}

PairSearchResult wigner_yanase_pair_search(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  PairSearchResult best{0.0, 0, d > 1 ? 1u : 0u, 0.5};
  if (d == 1) return best;
  const RealMatrix q = wigner_yanase_quadratic_form(rho);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      if (j == k) continue;
      // h_j = sqrt(t), h_k = -sqrt(1-t)
      auto value = [&](double t) {
        t = std::clamp(t, 0.0, 1.0);
        const double a = std::sqrt(t), b = -std::sqrt(1.0 - t);
        return q[j][j] * a * a + q[k][k] * b * b + 2.0 * q[j][k] * a * b;
      };
      auto consider = [&](double t, double v) {
        if (v > best.value) best = {v, j, k, t};
      };
      consider(0.0, value(0.0));
      consider(1.0, value(1.0));
      for (int i = 0; i <= 100; ++i) consider(i / 100.0, value(i / 100.0));
      const ScalarOptimum g = golden_section_maximize(value, 0.0, 1.0, 1e-12);
      consider(g.x, g.value);
    }
  best.value = clamp_nonnegative(best.value);
  return best;
}

MeasureResult c_chernoff_2(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  if (d == 1) return zero_result(WitnessKind::hamiltonian, {1.0});
  const TopEigen top = top_eigen(wigner_yanase_quadratic_form(rho));
  const PairSearchResult pair = wigner_yanase_pair_search(rho);
  MeasureResult r;
  r.value = clamp_nonnegative(std::max(0.0, top.value));
  r.witness = {WitnessKind::hamiltonian, top.vector};
  if (r.value == 0.0) {
    // Any unit h works; report the pair-search one.
    std::vector<double> h(d, 0.0);
    h[pair.j] = std::sqrt(pair.t);
    h[pair.k] = -std::sqrt(1.0 - pair.t);
    r.witness.values = std::move(h);
  }
  r.diagnostics.residual = std::abs(wigner_yanase(rho, DiagonalHamiltonian{r.witness.values}) - r.value);
  r.diagnostics.extra["pair_search_value"] = pair.value;
  r.diagnostics.extra["pair_search_gap"] = r.value - pair.value;
  r.diagnostics.extra["pair_j"] = static_cast<double>(pair.j);
  r.diagnostics.extra["pair_k"] = static_cast<double>(pair.k);
  r.diagnostics.extra["pair_t"] = pair.t;
  return r;
}

// --------------------------------------------------------------------- C_I

void validate_phase_orbit_ensemble(const DensityMatrix& rho, const Ensemble& ensemble) {
  if (ensemble.weights.empty() || ensemble.weights.size() != ensemble.states.size())
    throw InvalidInput("ensemble needs matching, nonempty weights and states");
  double s = 0.0;
  for (double w : ensemble.weights) {
    if (!(w >= 0.0)) throw InvalidInput("ensemble weights must be nonnegative");
    s += w;
  }
  if (std::abs(s - 1.0) > kTraceTolerance) throw InvalidInput("ensemble weights must sum to 1");
  constexpr double tol = 1e-9;
  for (const auto& st : ensemble.states) {
    if (st.dim() != rho.dim()) throw InvalidInput("ensemble state dimension mismatch");
    for (std::size_t j = 0; j < rho.dim(); ++j)
      for (std::size_t k = 0; k < rho.dim(); ++k) {
        const bool ok = j == k ? std::abs(st(j, k) - rho(j, k)) <= tol
                               : std::abs(std::abs(st(j, k)) - std::abs(rho(j, k))) <= tol;
        if (!ok) throw InvalidInput("ensemble state is not on the phase orbit of rho");
      }
  }
}

double c_I_upper(const DensityMatrix& rho) { return c_rel_ent(rho); }

double c_I_lower(const DensityMatrix& rho, const Ensemble& ensemble, const Povm& povm) {
  validate_phase_orbit_ensemble(rho, ensemble);
  if (povm.dim() != rho.dim()) throw InvalidInput("c_I_lower: POVM dimension mismatch");
  const std::size_t n = ensemble.states.size();
  const std::size_t m = povm.size();
  std::vector<double> joint(n * m), pin(n, 0.0), pout(m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t w = 0; w < m; ++w) {
      double p = ensemble.weights[i] * trace_of_product(ensemble.states[i].matrix(), povm[w].matrix()).real();
      p = std::max(p, 0.0);
      joint[i * m + w] = p;
      pin[i] += p;
      pout[w] += p;
    }
  double info = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t w = 0; w < m; ++w) {
      const double p = joint[i * m + w];
      if (p > 0.0) info += p * std::log2(p / (pin[i] * pout[w]));
    }
  return std::max(0.0, info);
}

EnsembleCandidate binary_phase_flip_candidate(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  if (d == 1) {
    return {Ensemble{{1.0}, {rho}}, Povm({"0"}, {HermitianMatrix::identity(1)})};
  }
  const auto signs = c_nabla_inf(rho).witness.values;
  std::vector<Complex> z(signs.begin(), signs.end());
  const DensityMatrix flipped = apply_unitary(rho, ComplexMatrix::diagonal(std::span<const Complex>(z)));
  const HermitianMatrix diff(rho.matrix() - flipped.matrix());
  return {Ensemble{{0.5, 0.5}, {rho, flipped}}, Povm::eigenbasis(diff)};
}

double c_I_lower_default(const DensityMatrix& rho) {
  const EnsembleCandidate c = binary_phase_flip_candidate(rho);
  return c_I_lower(rho, c.ensemble, c.povm);
}

// ------------------------------------------------------ commutator set check

CommutatorSetReport commutator_set_membership_check(const HermitianMatrix& x, NormSelector p,
                                                    double tolerance) {
  CommutatorSetReport r{};
  r.max_diagonal = 0.0;
  for (std::size_t j = 0; j < x.dim(); ++j) r.max_diagonal = std::max(r.max_diagonal, std::abs(x(j, j)));
  r.zero_diagonal = r.max_diagonal <= tolerance;
  r.schatten_norm = schatten_norm(x, p == NormSelector::two ? 2.0 : std::numeric_limits<double>::infinity());
  r.norm_bounded = r.schatten_norm <= 1.0 + tolerance;
  return r;
}

// ----------------------------------------------------------------- registry

const std::vector<Measure>& all_measures() {
  static const std::vector<Measure> all = {
      Measure::l1,        Measure::rel_ent,    Measure::trace_dist, Measure::max,
      Measure::robustness, Measure::guess,     Measure::nabla_2,    Measure::nabla_inf,
      Measure::fisher_2,  Measure::fisher_inf, Measure::chernoff_2, Measure::chernoff_inf,
      Measure::I_upper,   Measure::I_lower,
  };
  return all;
}

const std::vector<Measure>& sio_monotone_measures() {
  static const std::vector<Measure> ms = {
      Measure::max,      Measure::guess,      Measure::nabla_2,    Measure::nabla_inf,
      Measure::fisher_2, Measure::fisher_inf, Measure::chernoff_2, Measure::chernoff_inf,
  };
  return ms;
}

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::l1: return "c_l1";
    case Measure::rel_ent: return "c_rel_ent";
    case Measure::trace_dist: return "c_trace_dist";
    case Measure::max: return "c_max";
    case Measure::robustness: return "robustness";
    case Measure::guess: return "c_guess";
    case Measure::nabla_2: return "c_nabla_2";
    case Measure::nabla_inf: return "c_nabla_inf";
    case Measure::fisher_2: return "c_fisher_2";
    case Measure::fisher_inf: return "c_fisher_inf";
    case Measure::chernoff_2: return "c_chernoff_2";
    case Measure::chernoff_inf: return "c_chernoff_inf";
    case Measure::I_upper: return "c_I_upper";
    case Measure::I_lower: return "c_I_lower";
  }
  return "";
}

std::optional<Measure> parse_measure(std::string_view name) {
  for (Measure m : all_measures())
    if (measure_name(m) == name) return m;
  return std::nullopt;
}

bool has_witness(Measure m) {
  return !(m == Measure::l1 || m == Measure::rel_ent || m == Measure::I_upper || m == Measure::I_lower);
}

MeasureResult compute(Measure m, const DensityMatrix& rho, const MeasureOptions& options) {
  auto scalar = [](double v) {
    MeasureResult r;
    r.value = v;
    return r;
  };
  switch (m) {
    case Measure::l1: return scalar(c_l1(rho));
    case Measure::rel_ent: return scalar(c_rel_ent(rho));
    case Measure::trace_dist: return c_trace_dist(rho, options);
    case Measure::max: return c_max(rho, options);
    case Measure::robustness: return robustness(rho);
    case Measure::guess: return c_guess(rho);
    case Measure::nabla_2: return c_nabla_2(rho, options);
    case Measure::nabla_inf: return c_nabla_inf(rho);
    case Measure::fisher_2: return c_fisher_2(rho);
    case Measure::fisher_inf: return c_fisher_inf(rho);
    case Measure::chernoff_2: return c_chernoff_2(rho);
    case Measure::chernoff_inf: return c_chernoff_inf(rho);
    case Measure::I_upper: return scalar(c_I_upper(rho));
    case Measure::I_lower: return scalar(c_I_lower_default(rho));
  }
  throw InvalidInput("unknown measure");
}

double evaluate_witness(Measure m, const DensityMatrix& rho, const Witness& witness) {
  const auto& v = witness.values;
  switch (m) {
    case Measure::trace_dist: {
      ComplexMatrix diff = rho.matrix();
      for (std::size_t j = 0; j < rho.dim(); ++j) diff(j, j) -= v.at(j);
      return 0.5 * trace_norm(HermitianMatrix(std::move(diff)));
    }
    case Measure::max: return c_max_objective(rho, PhaseVector(v));
    case Measure::robustness:
    case Measure::guess: {
      ComplexMatrix s = rho.matrix() * Complex(-1.0);
      for (std::size_t j = 0; j < rho.dim(); ++j) s(j, j) += v.at(j);
      if (eig_hermitian(HermitianMatrix(s)).values.back() < -1e-9)
        throw InvalidInput("witness does not dominate rho");
      const double cr = std::accumulate(v.begin(), v.end(), 0.0) - 1.0;
      return m == Measure::guess ? cr / static_cast<double>(rho.dim()) : cr;
    }
    case Measure::nabla_2:
    case Measure::nabla_inf: return commutator_half_norm(rho, v);
    case Measure::fisher_2:
    case Measure::fisher_inf: return fisher_info(rho, DiagonalHamiltonian{v});
    case Measure::chernoff_2:
    case Measure::chernoff_inf: return wigner_yanase(rho, DiagonalHamiltonian{v});
    default: return compute(m, rho).value;
  }
}

}  // namespace coherelab
