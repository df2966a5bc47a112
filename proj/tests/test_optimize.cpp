#include <cmath>
#include <numbers>

#include "coherelab/optimize.hpp"
#include "doctest.h"

using namespace coherelab;

TEST_CASE("Nelder-Mead finds the Rosenbrock minimum") {
  auto rosen = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const OptimumPoint r = nelder_mead_minimize(rosen, {-1.2, 1.0});
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.value < 1e-12);
  CHECK(r.evaluations > 0);
}

TEST_CASE("Nelder-Mead maximize on a periodic objective") {
  auto f = [](std::span<const double> x) { return std::cos(x[0] - 1.0) + std::cos(x[1] + 0.5); };
  const OptimumPoint r = nelder_mead_maximize(f, {0.8, -0.2});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("Nelder-Mead respects the evaluation budget") {
  NelderMeadOptions opt;
  opt.max_evaluations = 50;
  opt.restarts = 0;
  int calls = 0;
  auto f = [&](std::span<const double> x) {
    ++calls;
    return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  };
  const OptimumPoint r = nelder_mead_minimize(f, {3.0, 2.0, 1.0}, opt);
  CHECK(r.evaluations == calls);
  CHECK(calls <= 50 + 4);
}

TEST_CASE("golden section on a concave function") {
  auto f = [](double t) { return 0.3 * t + 0.1 * (1 - t) + 2 * 0.2 * std::sqrt(t * (1 - t)); };
  const ScalarOptimum g = golden_section_maximize(f, 0.0, 1.0);
  double best = -1.0;
  for (int i = 0; i <= 100000; ++i) best = std::max(best, f(i / 100000.0));
  CHECK(g.value >= best - 1e-12);
  CHECK_THROWS(golden_section_maximize(f, 1.0, 0.0));
}
