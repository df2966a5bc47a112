// State-level coherence measures.
//
// Baselines: l1 norm, relative entropy, trace distance. Visibility-derived:
//   c_max           max_alpha 1/2 |U(alpha) rho U(alpha)^dagger - rho|_1
//   robustness      min tr delta - 1 over diagonal delta >= rho, and
//   c_guess         robustness / d
//   c_nabla_{2,inf} max 1/2 |[rho, H]|_1 over diagonal H with |H|_p <= 1
//   c_fisher_{2,inf}   max F_opt(H) over the same sets
//   c_chernoff_{2,inf} max I_WY(rho, H) over the same sets
// and bounds on the accessible-information measure C_I.
//
// Every optimizing measure returns a MeasureResult whose witness can be fed
// back through evaluate_witness() to reproduce the value.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coherelab/quantum.hpp"

namespace coherelab {

enum class WitnessKind {
  none,
  phases,          // optimal phase vector alpha (last coordinate 0)
  hamiltonian,     // diagonal of H; partitions are H = Pi+ - Pi- (entries +-1, 0)
  diagonal_state,  // probabilities of the closest incoherent state
  dominating_diagonal,  // diagonal of delta >= rho
};

std::string_view to_string(WitnessKind kind);

struct Witness {
  WitnessKind kind = WitnessKind::none;
  std::vector<double> values;
};

struct Diagnostics {
  int iterations = 0;
  int restarts = 0;
  double residual = 0.0;
  std::map<std::string, double> extra;
};

struct MeasureResult {
  double value = 0.0;
  Witness witness;
  Diagnostics diagnostics;
};

struct MeasureOptions {
  // Multiplies the number of starts of every multi-start search.
  int restart_scale = 1;
  std::uint64_t seed = 0x5eed;
};

// Largest dimension accepted by the partition enumerations.
inline constexpr std::size_t kMaxEnumerationDim = 20;
// Above this dimension c_fisher_inf enumerates only full partitions (+-1
// entries); F is convex in H so the cube maximum sits on a vertex.
inline constexpr std::size_t kMaxTernaryDim = 12;

double c_l1(const DensityMatrix& rho);
double c_rel_ent(const DensityMatrix& rho);
MeasureResult c_trace_dist(const DensityMatrix& rho, const MeasureOptions& options = {});

MeasureResult c_max(const DensityMatrix& rho, const MeasureOptions& options = {});
// 1/2 |rho(alpha) - rho|_1
double c_max_objective(const DensityMatrix& rho, const PhaseVector& alpha);

struct RobustnessSolverOptions {
  double barrier_start = 1.0;
  double barrier_factor = 0.1;
  double gap_target = 1e-8;  // stop once d * mu < gap_target
  int max_newton_steps = 200;  // per barrier value
};

// Throws NumericalFailure if Newton's method stalls.
MeasureResult robustness(const DensityMatrix& rho, const RobustnessSolverOptions& solver = {});
MeasureResult c_guess(const DensityMatrix& rho);

// 1/2 |[rho, diag(h)]|_1
double commutator_half_norm(const DensityMatrix& rho, std::span<const double> h);
MeasureResult c_nabla_inf(const DensityMatrix& rho);
MeasureResult c_nabla_2(const DensityMatrix& rho, const MeasureOptions& options = {});

// 2 sum_{j<k} (l_j - l_k)^2 / (l_j + l_k) |<e_j|H|e_k>|^2 over eigenpairs of
// rho; pairs with l_j + l_k <= 1e-12 contribute nothing.
double fisher_info(const DensityMatrix& rho, const DiagonalHamiltonian& h);
// Q with fisher_info(rho, diag(h)) = h^T Q h.
std::vector<std::vector<double>> fisher_quadratic_form(const DensityMatrix& rho);
MeasureResult c_fisher_inf(const DensityMatrix& rho);
MeasureResult c_fisher_2(const DensityMatrix& rho);

// tr rho H^2 - tr sqrt(rho) H sqrt(rho) H
double wigner_yanase(const DensityMatrix& rho, const DiagonalHamiltonian& h);
// Q with wigner_yanase(rho, diag(h)) = h^T Q h:
// Q = diag(rho_mm) - [ |sqrt(rho)_mn|^2 ].
std::vector<std::vector<double>> wigner_yanase_quadratic_form(const DensityMatrix& rho);
MeasureResult c_chernoff_inf(const DensityMatrix& rho);

struct PairSearchResult {
  double value;
  std::size_t j;
  std::size_t k;
  double t;  // H = sqrt(t)|j><j| - sqrt(1-t)|k><k|
};

// max over ordered pairs j != k and t in [0,1] of
// I_WY(rho, sqrt(t)|j><j| - sqrt(1-t)|k><k|), by golden section plus a
// 101-point safeguard grid.
PairSearchResult wigner_yanase_pair_search(const DensityMatrix& rho);

// Maximum of I_WY over ||h||_2 <= 1 (top eigenvalue of the quadratic form).
// Diagnostics carry the two-element pair search and its gap to the maximum.
MeasureResult c_chernoff_2(const DensityMatrix& rho);

struct Ensemble {
  std::vector<double> weights;
  std::vector<DensityMatrix> states;
};

// Weights sum to one and every state lies on the phase orbit of rho (same
// diagonal and same moduli |rho_jk|, which U(alpha) preserves).
void validate_phase_orbit_ensemble(const DensityMatrix& rho, const Ensemble& ensemble);

double c_I_upper(const DensityMatrix& rho);
// Mutual information (bits) of weight_i * tr[rho_i M_omega].
double c_I_lower(const DensityMatrix& rho, const Ensemble& ensemble, const Povm& povm);

struct EnsembleCandidate {
  Ensemble ensemble;
  Povm povm;
};

// {(1/2, rho), (1/2, Z rho Z)} with Z = Pi+ - Pi- for the partition that
// maximizes |Pi+ rho Pi-|_1 (sigma_z for qubits), measured in the
// eigenbasis of the difference of the two states.
EnsembleCandidate binary_phase_flip_candidate(const DensityMatrix& rho);
double c_I_lower_default(const DensityMatrix& rho);

enum class NormSelector { two, infinity };

struct CommutatorSetReport {
  bool zero_diagonal;
  bool norm_bounded;
  double max_diagonal;
  double schatten_norm;
  // Necessary conditions only; passing both does not prove membership.
  bool passes() const { return zero_diagonal && norm_bounded; }
};

CommutatorSetReport commutator_set_membership_check(const HermitianMatrix& x, NormSelector p,
                                                    double tolerance = 1e-10);

enum class Measure {
  l1,
  rel_ent,
  trace_dist,
  max,
  robustness,
  guess,
  nabla_2,
  nabla_inf,
  fisher_2,
  fisher_inf,
  chernoff_2,
  chernoff_inf,
  I_upper,
  I_lower,
};

const std::vector<Measure>& all_measures();
// The measures covered by the strong-monotonicity theorem for SIO.
const std::vector<Measure>& sio_monotone_measures();
std::string_view measure_name(Measure m);
std::optional<Measure> parse_measure(std::string_view name);
// Whether the measure reports a witness (MeasureResult) or a bare number.
bool has_witness(Measure m);

MeasureResult compute(Measure m, const DensityMatrix& rho, const MeasureOptions& options = {});

// Re-evaluates the objective of `m` at the witness.
double evaluate_witness(Measure m, const DensityMatrix& rho, const Witness& witness);

}  // namespace coherelab
