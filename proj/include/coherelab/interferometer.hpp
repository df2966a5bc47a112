// Interference patterns P(omega | alpha) sampled on phase grids, and the
// visibility functionals evaluated on them.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coherelab/kernels.hpp"
#include "coherelab/quantum.hpp"

namespace coherelab {

class PhaseGrid {
 public:
  explicit PhaseGrid(std::vector<PhaseVector> points);

  // Uniform Cartesian grid over the (d-1)-torus, n points per free
  // coordinate, last coordinate fixed to 0.
  static PhaseGrid torus(std::size_t dim, std::size_t points_per_axis);
  // Default resolution: 33 per axis for d <= 3, 9 for d = 4, 5 beyond.
  static PhaseGrid default_for(std::size_t dim);
  static std::size_t default_points_per_axis(std::size_t dim);
  // n equally spaced values of alpha_path in [0, 2 pi), all other phases 0.
  static PhaseGrid sweep(std::size_t dim, std::size_t path, std::size_t n);

  std::size_t dim() const { return points_.front().dim(); }
  std::size_t size() const { return points_.size(); }
  const std::vector<PhaseVector>& points() const { return points_; }

  PhaseGrid translated(const PhaseVector& shift) const;

 private:
  std::vector<PhaseVector> points_;
};

struct PatternGrid {
  PhaseGrid grid;
  std::vector<std::string> outcomes;
  Table table;  // table[i][w] = P(outcomes[w] | grid.points()[i])
};

PatternGrid sample_pattern(const DensityMatrix& rho, const Povm& povm, const PhaseGrid& grid);

// Rows must be probability vectors (sum 1 +- 1e-9, entries >= -1e-10).
void validate_pattern(const PatternGrid& pattern);

// Largest total-variation distance between two rows of the grid.
double v_max_on_grid(const PatternGrid& pattern);

// Omega_j (outcome indices) for j = 0..d-1; must be pairwise disjoint.
using GuessAssignment = std::vector<std::vector<std::size_t>>;

// -1/d + 1/d sum_j P(Omega_j | alpha0 + (j+1) h_pi) with h_pi the
// accelerating phase vector of `permutation`.
double v_guess_on_settings(const DensityMatrix& rho, const Povm& povm, const PhaseVector& alpha0,
                           std::span<const std::size_t> permutation,
                           const GuessAssignment& assignment);

struct GuessSettingsResult {
  double bias;
  GuessAssignment assignment;
};

// Same settings, with the best assignment for this POVM (each outcome goes to
// the phase setting that makes it most likely).
GuessSettingsResult v_guess_best_assignment(const DensityMatrix& rho, const Povm& povm,
                                            const PhaseVector& alpha0,
                                            std::span<const std::size_t> permutation);

struct DirectionalDerivative {
  double analytic;           // -i tr [rho', H] M0 with rho' = rho(alpha)
  double finite_difference;  // central difference of I(alpha + t h), step 1e-5
};

inline constexpr double kFiniteDifferenceStep = 1e-5;

// Derivative of I(alpha) = tr rho(alpha) M0 along h. M0 must satisfy
// 0 <= M0 <= 1.
DirectionalDerivative directional_derivative(const DensityMatrix& rho, const HermitianMatrix& effect,
                                             const PhaseVector& alpha,
                                             const DiagonalHamiltonian& h);

// Rows q_i P_i concatenated along the outcome axis. All inputs share one
// phase grid; outcome labels must be disjoint.
PatternGrid mix_patterns(const std::vector<PatternGrid>& patterns, std::span<const double> weights);

// Header alpha_1..alpha_d, p_<label>...; one row per grid point, 12
// significant digits.
void write_pattern_csv(std::ostream& out, const PatternGrid& pattern);

}  // namespace coherelab
