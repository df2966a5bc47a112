#include "coherelab/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "coherelab/error.hpp"

namespace coherelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_permutation_of_range(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t x : perm) {
    if (x >= perm.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
  if (m_.dim() == 0) throw InvalidInput("density matrix must have dimension >= 1");
  if (std::abs(m_.trace() - 1.0) > kTraceTolerance)
    throw InvalidInput("density matrix must have unit trace");
  const EigenSystem es = eig_hermitian(m_);
  if (es.values.back() < -kPsdClamp) throw NotPsd("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
  double n = 0.0;
  for (const auto& z : psi) n += std::norm(z);
  if (!(n > 0.0)) throw InvalidInput("pure state vector must be nonzero");
  std::vector<Complex> u(psi.begin(), psi.end());
  for (auto& z : u) z /= std::sqrt(n);
  return DensityMatrix(ComplexMatrix::outer(u, u));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
  return DensityMatrix(ComplexMatrix::diagonal(probabilities));
}

DensityMatrix DensityMatrix::maximally_coherent(std::size_t dim) {
  if (dim == 0) throw InvalidInput("dimension must be >= 1");
  return DensityMatrix(
      ComplexMatrix(dim, std::vector<Complex>(dim * dim, 1.0 / static_cast<double>(dim))));
}

std::vector<double> DensityMatrix::diagonal_entries() const {
  std::vector<double> p(dim());
  for (std::size_t j = 0; j < dim(); ++j) p[j] = m_(j, j).real();
  return p;
}

bool DensityMatrix::is_diagonal(double tol) const {
  for (std::size_t j = 0; j < dim(); ++j)
    for (std::size_t k = 0; k < dim(); ++k)
      if (j != k && std::abs(m_(j, k)) > tol) return false;
  return true;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const EigenSystem es = eig_hermitian(rho.hermitian());
  double s = 0.0;
  for (double x : es.values)
    if (x > 0.0) s -= x * std::log2(x);
  return std::max(s, 0.0);
}

PhaseVector::PhaseVector(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  for (double& a : alpha_) {
    if (!std::isfinite(a)) throw InvalidInput("phase vector has non-finite component");
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
  }
}

PhaseVector PhaseVector::operator+(const PhaseVector& rhs) const {
  if (rhs.dim() != dim()) throw InvalidInput("phase vector dimension mismatch");
  std::vector<double> out(dim());
  for (std::size_t j = 0; j < dim(); ++j) out[j] = alpha_[j] + rhs.alpha_[j];
  return PhaseVector(std::move(out));
}

PhaseVector PhaseVector::scaled(double factor) const {
  std::vector<double> out(alpha_);
  for (double& a : out) a *= factor;
  return PhaseVector(std::move(out));
}

std::vector<Complex> phase_unitary_diagonal(const PhaseVector& alpha) {
  std::vector<Complex> u(alpha.dim());
  for (std::size_t j = 0; j < alpha.dim(); ++j) u[j] = std::polar(1.0, alpha[j]);
  return u;
}

PhaseVector accelerating_phases(std::span<const std::size_t> permutation) {
  if (!is_permutation_of_range(permutation)) throw InvalidInput("not a permutation");
  const double d = static_cast<double>(permutation.size());
  std::vector<double> h(permutation.size());
  for (std::size_t j = 0; j < permutation.size(); ++j)
    h[j] = kTwoPi / d * static_cast<double>(permutation[j] + 1);
  return PhaseVector(std::move(h));
}

double DiagonalHamiltonian::norm2() const {
  double s = 0.0;
  for (double x : h) s += x * x;
  return std::sqrt(s);
}

double DiagonalHamiltonian::norm_inf() const {
  double m = 0.0;
  for (double x : h) m = std::max(m, std::abs(x));
  return m;
}

Povm::Povm(std::vector<std::string> labels, std::vector<HermitianMatrix> elements)
    : labels_(std::move(labels)), elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidInput("POVM must have at least one element");
  if (labels_.size() != elements_.size()) throw InvalidInput("POVM label count mismatch");
  {
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInput("POVM labels must be distinct");
  }
  const std::size_t d = elements_.front().dim();
  ComplexMatrix sum(d);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].dim() != d) throw InvalidInput("POVM elements have mismatched dimensions");
    const EigenSystem es = eig_hermitian(elements_[i]);
    if (es.values.back() < -kPsdClamp)
      throw InvalidInput("POVM element '" + labels_[i] + "' is not positive semidefinite");
    sum += elements_[i].matrix();
  }
  sum -= ComplexMatrix::identity(d);
  double worst = 0.0;
  for (const auto& z : sum.data()) worst = std::max(worst, std::abs(z));
  if (worst > kPovmTolerance) throw InvalidInput("POVM elements do not sum to the identity");
}

Povm Povm::from_basis(const std::vector<std::vector<Complex>>& basis) {
  std::vector<std::string> labels;
  std::vector<HermitianMatrix> elements;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    labels.push_back(std::to_string(i));
    elements.emplace_back(ComplexMatrix::outer(basis[i], basis[i]));
  }
  return Povm(std::move(labels), std::move(elements));
}

Povm Povm::fourier(std::size_t dim) {
  std::vector<std::vector<Complex>> basis(dim, std::vector<Complex>(dim));
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t t = 0; t < dim; ++t)
    for (std::size_t j = 0; j < dim; ++j)
      basis[t][j] = std::polar(norm, kTwoPi * static_cast<double>(t * j % dim) /
                                         static_cast<double>(dim));
  return from_basis(basis);
}

Povm Povm::eigenbasis(const HermitianMatrix& a) {
  const EigenSystem es = eig_hermitian(a);
  std::vector<std::vector<Complex>> basis;
  for (std::size_t j = 0; j < a.dim(); ++j) basis.push_back(es.vector(j));
  return from_basis(basis);
}

Povm Povm::two_outcome(const HermitianMatrix& effect) {
  HermitianMatrix rest(ComplexMatrix::identity(effect.dim()) - effect.matrix());
  return Povm({"0", "1"}, {effect, rest});
}

ComplexMatrix SioKraus::matrix() const {
  ComplexMatrix k(permutation.size());
  for (std::size_t j = 0; j < permutation.size(); ++j) k(permutation[j], j) = amplitudes[j];
  return k;
}

SioChannel::SioChannel(std::vector<SioKraus> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvalidInput("SIO channel needs at least one Kraus operator");
  const std::size_t d = kraus_.front().permutation.size();
  if (d == 0) throw InvalidInput("SIO channel dimension must be >= 1");
  std::vector<double> weight(d, 0.0);
  for (const auto& k : kraus_) {
    if (k.permutation.size() != d || k.amplitudes.size() != d)
      throw InvalidInput("SIO Kraus operators have mismatched dimensions");
    if (!is_permutation_of_range(k.permutation))
      throw InvalidInput("SIO Kraus operator permutation is not a bijection");
    for (std::size_t j = 0; j < d; ++j) weight[j] += std::norm(k.amplitudes[j]);
  }
  for (double w : weight)
    if (std::abs(w - 1.0) > kTraceTolerance) throw InvalidInput("SIO Kraus family is incomplete");
}

SioChannel SioChannel::identity(std::size_t dim) {
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  return SioChannel({SioKraus{perm, std::vector<Complex>(dim, 1.0)}});
}

SioChannel SioChannel::full_dephasing(std::size_t dim) {
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<SioKraus> kraus;
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<Complex> c(dim, 0.0);
    c[j] = 1.0;
    kraus.push_back({perm, std::move(c)});
  }
  return SioChannel(std::move(kraus));
}

SioChannel SioChannel::incoherent_unitary(std::vector<std::size_t> permutation,
                                          const PhaseVector& phases) {
  if (phases.dim() != permutation.size()) throw InvalidInput("dimension mismatch");
  return SioChannel({SioKraus{std::move(permutation), phase_unitary_diagonal(phases)}});
}

ComplexMatrix IncoherentKraus::matrix() const {
  ComplexMatrix k(target.size());
  for (std::size_t j = 0; j < target.size(); ++j) k(target[j], j) = amplitudes[j];
  return k;
}

DensityMatrix dephase(const DensityMatrix& rho) {
  return DensityMatrix(ComplexMatrix::diagonal(rho.diagonal_entries()));
}

DensityMatrix apply_phases(const DensityMatrix& rho, const PhaseVector& alpha) {
  if (alpha.dim() != rho.dim()) throw InvalidInput("apply_phases: dimension mismatch");
  const auto u = phase_unitary_diagonal(alpha);
  const std::size_t d = rho.dim();
  ComplexMatrix out(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) out(j, k) = u[j] * rho(j, k) * std::conj(u[k]);
  return DensityMatrix(HermitianMatrix(std::move(out)));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.dim() != rho.dim()) throw InvalidInput("apply_unitary: dimension mismatch");
  return DensityMatrix(HermitianMatrix(u * rho.matrix() * u.adjoint()));
}

std::vector<double> born_distribution(const DensityMatrix& rho, const PhaseVector& alpha,
                                      const Povm& povm) {
  if (povm.dim() != rho.dim() || alpha.dim() != rho.dim())
    throw InvalidInput("born_distribution: dimension mismatch");
  const auto u = phase_unitary_diagonal(alpha);
  const std::size_t d = rho.dim();
  std::vector<double> p(povm.size());
  for (std::size_t w = 0; w < povm.size(); ++w) {
    const HermitianMatrix& m = povm[w];
    // tr[U rho U^dagger M] = sum_jk u_j rho_jk conj(u_k) M_kj
    Complex s = 0.0;
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) s += u[j] * rho(j, k) * std::conj(u[k]) * m(k, j);
    double x = s.real();
    if (x < 0.0 && x >= -kPsdClamp) x = 0.0;
    p[w] = x;
  }
  return p;
}

namespace {

DensityMatrix normalized(ComplexMatrix m, double q) {
  m *= 1.0 / q;
  // Renormalize exactly; q was computed from the same entries.
  const double tr = m.trace().real();
  m *= 1.0 / tr;
  return DensityMatrix(HermitianMatrix(std::move(m)));
}

}  // namespace

std::vector<Branch> apply_sio(const DensityMatrix& rho, const SioChannel& channel) {
  if (channel.dim() != rho.dim()) throw InvalidInput("apply_sio: dimension mismatch");
  const std::size_t d = rho.dim();
  std::vector<Branch> out;
  for (const auto& k : channel.kraus()) {
    ComplexMatrix m(d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        m(k.permutation[j], k.permutation[l]) = k.amplitudes[j] * rho(j, l) * std::conj(k.amplitudes[l]);
    const double q = m.trace().real();
    if (q > kBranchCutoff) out.push_back({q, normalized(std::move(m), q)});
  }
  return out;
}

std::vector<Branch> apply_incoherent(const DensityMatrix& rho,
                                     const std::vector<IncoherentKraus>& kraus) {
  if (kraus.empty()) throw InvalidInput("empty Kraus family");
  const std::size_t d = rho.dim();
  ComplexMatrix completeness(d);
  for (const auto& k : kraus) {
    if (k.target.size() != d || k.amplitudes.size() != d)
      throw InvalidInput("Kraus operator dimension mismatch");
    for (std::size_t t : k.target)
      if (t >= d) throw InvalidInput("Kraus target index out of range");
    const ComplexMatrix km = k.matrix();
    completeness += km.adjoint() * km;
  }
  completeness -= ComplexMatrix::identity(d);
  for (const auto& z : completeness.data())
    if (std::abs(z) > kTraceTolerance) throw InvalidInput("Kraus family is not trace preserving");

  std::vector<Branch> out;
  for (const auto& k : kraus) {
    const ComplexMatrix km = k.matrix();
    ComplexMatrix m = km * rho.matrix() * km.adjoint();
    const double q = m.trace().real();
    if (q > kBranchCutoff) out.push_back({q, normalized(std::move(m), q)});
  }
  return out;
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  if (dim == 0 || rank < 1 || rank > dim) throw InvalidInput("random_density: rank out of range");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Complex> g(dim * rank);
  for (auto& z : g) z = Complex(normal(rng), normal(rng));
  ComplexMatrix m(dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = 0; k < dim; ++k) {
      Complex s = 0.0;
      for (std::size_t r = 0; r < rank; ++r) s += g[j * rank + r] * std::conj(g[k * rank + r]);
      m(j, k) = s;
    }
  m *= 1.0 / m.trace().real();
  return DensityMatrix(HermitianMatrix(std::move(m)));
}

SioChannel random_sio(std::size_t dim, std::size_t n_kraus, std::uint64_t seed) {
  if (dim == 0 || n_kraus < 1) throw InvalidInput("random_sio: need dim >= 1 and n_kraus >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<SioKraus> kraus(n_kraus);
  for (auto& k : kraus) {
    k.permutation.resize(dim);
    std::iota(k.permutation.begin(), k.permutation.end(), 0);
    std::shuffle(k.permutation.begin(), k.permutation.end(), rng);
    k.amplitudes.resize(dim);
    for (auto& z : k.amplitudes) z = Complex(normal(rng), normal(rng));
  }
  for (std::size_t j = 0; j < dim; ++j) {
    double w = 0.0;
    for (const auto& k : kraus) w += std::norm(k.amplitudes[j]);
    const double scale = 1.0 / std::sqrt(w);
    for (auto& k : kraus) k.amplitudes[j] *= scale;
  }
  return SioChannel(std::move(kraus));
}

std::vector<IncoherentKraus> random_io(std::size_t dim, std::size_t n_kraus, std::uint64_t seed) {
  if (dim == 0 || n_kraus < 1) throw InvalidInput("random_io: need dim >= 1 and n_kraus >= 1");
  // Inputs are split into random groups; every group G collapses onto its own
  // target t_G (targets distinct across groups), and the operators are
  // K_lambda = sum_G sum_{j in G} F^G_{lambda j} |t_G><j| with F^G an isometry
  // (orthonormal columns). Then sum_lambda K^dagger K = identity while K is
  // non-injective whenever a group has two or more members.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<std::size_t> group_of(0, dim - 1);
  std::vector<std::vector<std::size_t>> groups(dim);
  for (std::size_t j = 0; j < dim; ++j) groups[group_of(rng)].push_back(j);
  std::vector<std::size_t> targets(dim);
  std::iota(targets.begin(), targets.end(), 0);
  std::shuffle(targets.begin(), targets.end(), rng);

  std::size_t m = n_kraus;
  for (const auto& g : groups) m = std::max(m, g.size());
  std::vector<IncoherentKraus> kraus(m);
  for (auto& k : kraus) {
    k.target.assign(dim, 0);
    k.amplitudes.assign(dim, 0.0);
  }
  for (std::size_t gi = 0; gi < dim; ++gi) {
    const auto& g = groups[gi];
    // Gram-Schmidt on |G| Gaussian columns of length m.
    std::vector<std::vector<Complex>> cols;
    for (std::size_t c = 0; c < g.size(); ++c) {
      std::vector<Complex> v(m);
      for (auto& z : v) z = Complex(normal(rng), normal(rng));
      for (const auto& u : cols) {
        Complex dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += std::conj(u[i]) * v[i];
        for (std::size_t i = 0; i < m; ++i) v[i] -= dot * u[i];
      }
      double n = 0.0;
      for (const auto& z : v) n += std::norm(z);
      for (auto& z : v) z /= std::sqrt(n);
      cols.push_back(std::move(v));
    }
    for (std::size_t c = 0; c < g.size(); ++c)
      for (std::size_t l = 0; l < m; ++l) {
        kraus[l].target[g[c]] = targets[gi];
        kraus[l].amplitudes[g[c]] = cols[c][l];
      }
  }
  return kraus;
}

std::vector<double> random_probability_vector(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> p(dim);
  double s = 0.0;
  for (auto& x : p) s += (x = ex(rng));
  for (auto& x : p) x /= s;
  return p;
}

}  // namespace coherelab
