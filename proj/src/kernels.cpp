#include "coherelab/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coherelab/error.hpp"

namespace coherelab {

namespace {

int g_default_threads = -1;

// Runs body(i) for i in [0, n) across threads and rethrows the first
// exception (by index) on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const long long count = static_cast<long long>(n);
  std::vector<std::exception_ptr> errors(n);
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 4) reduction(|| : failed)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
      failed = true;
    }
  }
  if (failed)
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
}

IndexedMax reduce_max(const std::vector<double>& values) {
  IndexedMax best{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] > best.value) best = {values[i], i};
  return best;
}

double half_l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t w = 0; w < a.size(); ++w) s += std::abs(a[w] - b[w]);
  return 0.5 * s;
}

}  // namespace

void set_thread_cap(int n) {
#ifdef _OPENMP
  if (g_default_threads < 0) g_default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : g_default_threads);
#else
  (void)n;
#endif
}

void apply_thread_cap_from_env() {
  const char* env = std::getenv("COHERELAB_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || n < 0)
    throw InvalidInput(std::string("COHERELAB_THREADS must be a non-negative integer, got '") + env + "'");
  set_thread_cap(static_cast<int>(n));
}

int thread_cap() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace kernels {

Table pattern_table(const DensityMatrix& rho, const Povm& povm,
                    const std::vector<PhaseVector>& points) {
  Table table(points.size());
  parallel_for(points.size(),
               [&](std::size_t i) { table[i] = born_distribution(rho, points[i], povm); });
  return table;
}

PairMax max_pairwise_tv(const Table& table) {
  const std::size_t n = table.size();
  std::vector<double> row_best(n, 0.0);
  std::vector<std::size_t> row_arg(n, 0);
  parallel_for(n, [&](std::size_t i) {
    double best = 0.0;
    std::size_t arg = i;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = half_l1(table[i], table[j]);
      if (v > best) {
        best = v;
        arg = j;
      }
    }
    row_best[i] = best;
    row_arg[i] = arg;
  });
  PairMax out{0.0, 0, 0};
  for (std::size_t i = 0; i < n; ++i)
    if (row_best[i] > out.value) out = {row_best[i], i, row_arg[i]};
  return out;
}

std::vector<double> evaluate_all(std::size_t n, const IndexedObjective& f) {
  std::vector<double> values(n);
  parallel_for(n, [&](std::size_t i) { values[i] = f(i); });
  return values;
}

IndexedMax argmax(std::size_t n, const IndexedObjective& f) {
  if (n == 0) throw InvalidInput("argmax over an empty range");
  return reduce_max(evaluate_all(n, f));
}

}  // namespace kernels

namespace reference {

Table pattern_table(const DensityMatrix& rho, const Povm& povm,
                    const std::vector<PhaseVector>& points) {
  Table table;
  table.reserve(points.size());
  for (const auto& a : points) table.push_back(born_distribution(rho, a, povm));
  return table;
}

PairMax max_pairwise_tv(const Table& table) {
  PairMax out{0.0, 0, 0};
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      const double v = half_l1(table[i], table[j]);
      if (v > out.value) out = {v, i, j};
    }
  return out;
}

std::vector<double> evaluate_all(std::size_t n, const IndexedObjective& f) {
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) values.push_back(f(i));
  return values;
}

IndexedMax argmax(std::size_t n, const IndexedObjective& f) {
  if (n == 0) throw InvalidInput("argmax over an empty range");
  return reduce_max(evaluate_all(n, f));
}

}  // namespace reference

}  // namespace coherelab
