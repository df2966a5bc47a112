#include "coherelab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coherelab/error.hpp"

namespace coherelab {

namespace {

struct Simplex {
  std::vector<std::vector<double>> vertices;
  std::vector<double> values;
};

Simplex build_simplex(const Objective& f, const std::vector<double>& x0, double step, int& evals) {
  const std::size_t n = x0.size();
  Simplex s;
  s.vertices.push_back(x0);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = x0;
    v[i] += step;
    s.vertices.push_back(std::move(v));
  }
  for (const auto& v : s.vertices) {
    s.values.push_back(f(v));
    ++evals;
  }
  return s;
}

void order(Simplex& s) {
  std::vector<std::size_t> idx(s.values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
  Simplex out;
  for (std::size_t i : idx) {
    out.vertices.push_back(std::move(s.vertices[i]));
    out.values.push_back(s.values[i]);
  }
  s = std::move(out);
}

bool converged(const Simplex& s, const NelderMeadOptions& opt) {
  const double fspread = s.values.back() - s.values.front();
  double xspread = 0.0;
  for (std::size_t i = 1; i < s.vertices.size(); ++i)
    for (std::size_t j = 0; j < s.vertices[i].size(); ++j)
      xspread = std::max(xspread, std::abs(s.vertices[i][j] - s.vertices[0][j]));
  if (xspread <= opt.x_tolerance) return true;
  return xspread <= 1e-6 && fspread <= opt.f_tolerance * std::max(1.0, std::abs(s.values.front()));
}

}  // namespace

OptimumPoint nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                  const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0) {
    const double v = f(x0);
    return {x0, v, 1};
  }
  int evals = 0;
  OptimumPoint best{x0, 0.0, 0};
  double step = opt.initial_step;

  for (int round = 0; round <= opt.restarts; ++round) {
    Simplex s = build_simplex(f, best.x, step, evals);
    while (evals < opt.max_evaluations) {
      order(s);
      if (converged(s, opt)) break;
      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += s.vertices[i][j] / static_cast<double>(n);
      auto along = [&](double coef) {
        std::vector<double> p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + coef * (s.vertices[n][j] - centroid[j]);
        return p;
      };
      auto reflected = along(-1.0);
      const double fr = f(reflected);
      ++evals;
      if (fr < s.values[0]) {
        auto expanded = along(-2.0);
        const double fe = f(expanded);
        ++evals;
        if (fe < fr) {
          s.vertices[n] = std::move(expanded);
          s.values[n] = fe;
        } else {
          s.vertices[n] = std::move(reflected);
          s.values[n] = fr;
        }
      } else if (fr < s.values[n - 1]) {
        s.vertices[n] = std::move(reflected);
        s.values[n] = fr;
      } else {
        const bool outside = fr < s.values[n];
        auto contracted = along(outside ? -0.5 : 0.5);
        const double fc = f(contracted);
        ++evals;
        if (fc < (outside ? fr : s.values[n])) {
          s.vertices[n] = std::move(contracted);
          s.values[n] = fc;
        } else {
          for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
              s.vertices[i][j] = s.vertices[0][j] + 0.5 * (s.vertices[i][j] - s.vertices[0][j]);
            s.values[i] = f(s.vertices[i]);
            ++evals;
          }
        }
      }
    }
    order(s);
    const bool improved = round == 0 || s.values[0] < best.value;
    if (round == 0 || s.values[0] <= best.value) {
      best.x = s.vertices[0];
      best.value = s.values[0];
    }
    if (!improved && round > 0) break;
    step = std::max(opt.initial_step * 0.1, 1e-4);
    if (evals >= opt.max_evaluations) break;
  }
  best.evaluations = evals;
  return best;
}

OptimumPoint nelder_mead_maximize(const Objective& f, std::vector<double> x0,
                                  const NelderMeadOptions& opt) {
  auto neg = [&](std::span<const double> x) { return -f(x); };
  OptimumPoint r = nelder_mead_minimize(neg, std::move(x0), opt);
  r.value = -r.value;
  return r;
}

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double tolerance) {
  if (!(hi >= lo)) throw InvalidInput("golden_section_maximize: empty interval");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace coherelab
