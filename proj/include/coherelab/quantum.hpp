// States, phase unitaries, detectors and strictly incoherent channels of the
// d-path interferometer. Paths are indexed 0..d-1 throughout.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coherelab/numerics.hpp"

namespace coherelab {

inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPovmTolerance = 1e-9;

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates Hermiticity, eigenvalues >= -1e-10 and unit trace.
  explicit DensityMatrix(HermitianMatrix m);
  explicit DensityMatrix(const ComplexMatrix& m) : DensityMatrix(HermitianMatrix(m)) {}

  static DensityMatrix pure(std::span<const Complex> psi);
  static DensityMatrix diagonal(std::span<const double> probabilities);
  // Entries all 1/d.
  static DensityMatrix maximally_coherent(std::size_t dim);

  std::size_t dim() const { return m_.dim(); }
  const Complex& operator()(std::size_t j, std::size_t k) const { return m_(j, k); }
  const HermitianMatrix& hermitian() const { return m_; }
  const ComplexMatrix& matrix() const { return m_.matrix(); }
  std::vector<double> diagonal_entries() const;
  bool is_diagonal(double tol = 0.0) const;

 private:
  HermitianMatrix m_;
};

double von_neumann_entropy(const DensityMatrix& rho);

// Phases alpha_j in radians, each reduced into [0, 2 pi).
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(std::vector<double> alpha);
  static PhaseVector zeros(std::size_t dim) { return PhaseVector(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const { return alpha_.size(); }
  double operator[](std::size_t j) const { return alpha_[j]; }
  const std::vector<double>& values() const { return alpha_; }

  PhaseVector operator+(const PhaseVector& rhs) const;
  PhaseVector scaled(double factor) const;

 private:
  std::vector<double> alpha_;
};

// Diagonal of U(alpha): e^{i alpha_j}.
std::vector<Complex> phase_unitary_diagonal(const PhaseVector& alpha);

// 2 pi / d * (pi(1), ..., pi(d)) with values pi(j) in 1..d; `permutation` holds
// 0-based images.
PhaseVector accelerating_phases(std::span<const std::size_t> permutation);

struct DiagonalHamiltonian {
  std::vector<double> h;

  std::size_t dim() const { return h.size(); }
  ComplexMatrix matrix() const { return ComplexMatrix::diagonal(h); }
  double norm2() const;
  double norm_inf() const;
};

class Povm {
 public:
  Povm() = default;
  // Each element PSD to -1e-10 and the elements sum to the identity to 1e-9.
  Povm(std::vector<std::string> labels, std::vector<HermitianMatrix> elements);

  // Rank-one projectors onto the given orthonormal vectors, labelled "0", "1", ...
  static Povm from_basis(const std::vector<std::vector<Complex>>& basis);
  // Columns of the d x d Fourier matrix: (1/sqrt d) sum_j zeta^{t j} |j>.
  static Povm fourier(std::size_t dim);
  // Eigenbasis of a Hermitian operator.
  static Povm eigenbasis(const HermitianMatrix& a);
  // (M0, 1 - M0).
  static Povm two_outcome(const HermitianMatrix& effect);

  std::size_t dim() const { return elements_.empty() ? 0 : elements_.front().dim(); }
  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<HermitianMatrix>& elements() const { return elements_; }
  const HermitianMatrix& operator[](std::size_t i) const { return elements_[i]; }

 private:
  std::vector<std::string> labels_;
  std::vector<HermitianMatrix> elements_;
};

// K = pi D: K|j> = amplitudes[j] |permutation[j]>.
struct SioKraus {
  std::vector<std::size_t> permutation;
  std::vector<Complex> amplitudes;

  ComplexMatrix matrix() const;
};

class SioChannel {
 public:
  SioChannel() = default;
  // Checks that each permutation is a bijection and that
  // sum_lambda |c_{lambda, j}|^2 = 1 to 1e-10 for every j.
  explicit SioChannel(std::vector<SioKraus> kraus);

  static SioChannel identity(std::size_t dim);
  // Kraus operators |j><j|.
  static SioChannel full_dephasing(std::size_t dim);
  // Single Kraus operator with permutation and unit-modulus phases.
  static SioChannel incoherent_unitary(std::vector<std::size_t> permutation,
                                       const PhaseVector& phases);

  std::size_t dim() const { return kraus_.empty() ? 0 : kraus_.front().permutation.size(); }
  const std::vector<SioKraus>& kraus() const { return kraus_; }

 private:
  std::vector<SioKraus> kraus_;
};

// K|j> = amplitudes[j] |target[j]> with an arbitrary (possibly non-injective)
// map. Only used for exploratory runs outside the strictly incoherent class.
struct IncoherentKraus {
  std::vector<std::size_t> target;
  std::vector<Complex> amplitudes;

  ComplexMatrix matrix() const;
};

struct Branch {
  double probability;
  DensityMatrix state;
};

inline constexpr double kBranchCutoff = 1e-12;

DensityMatrix dephase(const DensityMatrix& rho);
DensityMatrix apply_phases(const DensityMatrix& rho, const PhaseVector& alpha);
DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u);

// tr[rho(alpha) M_omega]; entries in [-1e-10, 0) are clamped to zero.
std::vector<double> born_distribution(const DensityMatrix& rho, const PhaseVector& alpha,
                                      const Povm& povm);

// Selective application: (q_lambda, rho_lambda) for every branch with
// q_lambda > 1e-12.
std::vector<Branch> apply_sio(const DensityMatrix& rho, const SioChannel& channel);

// Branches of a general incoherent Kraus family. Throws InvalidInput when the
// family is not trace preserving.
std::vector<Branch> apply_incoherent(const DensityMatrix& rho,
                                     const std::vector<IncoherentKraus>& kraus);

// rho = G G^dagger / tr G G^dagger with G a d x rank complex Gaussian matrix.
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

// Uniform random permutations with complex Gaussian amplitudes, normalized
// column by column so the family is complete.
SioChannel random_sio(std::size_t dim, std::size_t n_kraus, std::uint64_t seed);

// Random incoherent (not necessarily strictly incoherent) Kraus family.
std::vector<IncoherentKraus> random_io(std::size_t dim, std::size_t n_kraus, std::uint64_t seed);

// Uniform random point of the probability simplex.
std::vector<double> random_probability_vector(std::size_t dim, std::uint64_t seed);

}  // namespace coherelab
