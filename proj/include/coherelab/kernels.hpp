// Data-parallel inner loops.
//
// Every kernel in `coherelab::kernels` has a serial twin in
// `coherelab::reference` with identical semantics; the tests require their
// results to agree bit for bit, and bench/ times one against the other.
// Ties in arg-max reductions resolve to the smallest index, so results do not
// depend on the thread count.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "coherelab/quantum.hpp"

namespace coherelab {

// Caps OpenMP worker threads; n <= 0 restores the runtime default.
void set_thread_cap(int n);
// Reads COHERELAB_THREADS (if set) and applies it.
void apply_thread_cap_from_env();
int thread_cap();

struct IndexedMax {
  double value;
  std::size_t index;
};

struct PairMax {
  double value;
  std::size_t first;
  std::size_t second;
};

using IndexedObjective = std::function<double(std::size_t)>;
using Table = std::vector<std::vector<double>>;

namespace kernels {

// table[i] = born_distribution(rho, points[i], povm)
Table pattern_table(const DensityMatrix& rho, const Povm& povm,
                    const std::vector<PhaseVector>& points);

// max over i < j of half the l1 distance between rows i and j.
PairMax max_pairwise_tv(const Table& table);

// f(0), ..., f(n-1)
std::vector<double> evaluate_all(std::size_t n, const IndexedObjective& f);

IndexedMax argmax(std::size_t n, const IndexedObjective& f);

}  // namespace kernels

namespace reference {

Table pattern_table(const DensityMatrix& rho, const Povm& povm,
                    const std::vector<PhaseVector>& points);
PairMax max_pairwise_tv(const Table& table);
std::vector<double> evaluate_all(std::size_t n, const IndexedObjective& f);
IndexedMax argmax(std::size_t n, const IndexedObjective& f);

}  // namespace reference

}  // namespace coherelab
