// Derivative-free local optimizers used by the coherence measures.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace coherelab {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  double initial_step = 0.2;
  double f_tolerance = 1e-15;
  double x_tolerance = 1e-11;
  int max_evaluations = 20000;
  // A converged simplex is rebuilt around its best vertex up to this many
  // times, which guards against collapse on non-smooth objectives.
  int restarts = 3;
};

struct OptimumPoint {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

OptimumPoint nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                  const NelderMeadOptions& options = {});
OptimumPoint nelder_mead_maximize(const Objective& f, std::vector<double> x0,
                                  const NelderMeadOptions& options = {});

struct ScalarOptimum {
  double x;
  double value;
};

// Maximizer of a unimodal f on [lo, hi] to within `tolerance` in x.
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double tolerance = 1e-12);

}  // namespace coherelab
