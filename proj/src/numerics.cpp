#include "coherelab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "coherelab/error.hpp"

namespace coherelab {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw InvalidInput("matrix entry count does not match dimension");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw InvalidInput("matrix must be square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t j = 0; j < dim; ++j) m(j, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t j = 0; j < diag.size(); ++j) m(j, j) = diag[j];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t j = 0; j < diag.size(); ++j) m(j, j) = diag[j];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw InvalidInput("outer product of mismatched vectors");
  ComplexMatrix m(u.size());
  for (std::size_t j = 0; j < u.size(); ++j)
    for (std::size_t k = 0; k < v.size(); ++k) m(j, k) = u[j] * std::conj(v[k]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = 0; k < dim_; ++k) out(k, j) = std::conj((*this)(j, k));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) t += (*this)(j, j);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = j; k < dim_; ++k)
      worst = std::max(worst, std::abs((*this)(j, k) - std::conj((*this)(k, j))));
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw InvalidInput("dimension mismatch in matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw InvalidInput("dimension mismatch in matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw InvalidInput("dimension mismatch in matrix product");
  const std::size_t d = lhs.dim_;
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < d; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("dimension mismatch in trace of product");
  Complex t = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(j, k) * b(k, j);
  return t;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.all_finite()) throw InvalidInput("matrix has non-finite entries");
  const double tol = 1e-12 * std::max(1.0, m_.frobenius_norm());
  if (m_.hermiticity_defect() > tol) throw InvalidInput("matrix is not Hermitian");
  const std::size_t d = m_.dim();
  for (std::size_t j = 0; j < d; ++j) {
    m_(j, j) = m_(j, j).real();
    for (std::size_t k = j + 1; k < d; ++k) {
      const Complex avg = 0.5 * (m_(j, k) + std::conj(m_(k, j)));
      m_(j, k) = avg;
      m_(k, j) = std::conj(avg);
    }
  }
}

std::vector<Complex> EigenSystem::vector(std::size_t j) const {
  std::vector<Complex> v(vectors.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, j);
  return v;
}

ComplexMatrix EigenSystem::reconstruct() const {
  const std::size_t d = vectors.dim();
  ComplexMatrix out(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        out(r, c) += values[j] * vectors(r, j) * std::conj(vectors(c, j));
  return out;
}

namespace {

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (j != k) s += std::norm(a(j, k));
  return s;
}

}  // namespace

EigenSystem eig_hermitian(const HermitianMatrix& input) {
  const std::size_t d = input.dim();
  ComplexMatrix a = input.matrix();
  if (!a.all_finite()) throw InvalidInput("eig_hermitian: non-finite entries");
  ComplexMatrix v = ComplexMatrix::identity(d);

  const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
  const double target = std::pow(1e-17 * scale, 2);
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm2(a) > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= std::numeric_limits<double>::min()) continue;
        // Phase off a(p,q) so the 2x2 pivot block becomes real symmetric, then
        // apply a real Jacobi rotation. Rotation V = diag(1, e^{-i phi}) R acts
        // on columns p, q.
        const Complex phase = a(p, q) / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex vpp = c;
        const Complex vpq = s;
        const Complex vqp = -s * std::conj(phase);
        const Complex vqq = c * std::conj(phase);

        // A <- A V (columns p, q)
        for (std::size_t r = 0; r < d; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = arp * vpp + arq * vqp;
          a(r, q) = arp * vpq + arq * vqq;
        }
        // A <- V^dagger A (rows p, q)
        for (std::size_t col = 0; col < d; ++col) {
          const Complex apc = a(p, col);
          const Complex aqc = a(q, col);
          a(p, col) = std::conj(vpp) * apc + std::conj(vqp) * aqc;
          a(q, col) = std::conj(vpq) * apc + std::conj(vqq) * aqc;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t r = 0; r < d; ++r) {
          const Complex vrp = v(r, p);
          const Complex vrq = v(r, q);
          v(r, p) = vrp * vpp + vrq * vqp;
          v(r, q) = vrp * vpq + vrq * vqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  EigenSystem es;
  es.values.resize(d);
  es.vectors = ComplexMatrix(d);
  for (std::size_t j = 0; j < d; ++j) {
    es.values[j] = a(order[j], order[j]).real();
    for (std::size_t r = 0; r < d; ++r) es.vectors(r, j) = v(r, order[j]);
  }
  return es;
}

HermitianMatrix apply_spectral_function(const HermitianMatrix& a,
                                        const std::function<double(double)>& f) {
  const EigenSystem es = eig_hermitian(a);
  const std::size_t d = a.dim();
  ComplexMatrix out(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double fj = f(es.values[j]);
    if (fj == 0.0) continue;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        out(r, c) += fj * es.vectors(r, j) * std::conj(es.vectors(c, j));
  }
  return HermitianMatrix(std::move(out));
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
  return apply_spectral_function(a, [](double x) {
    if (x < -kPsdClamp) throw NotPsd("psd_sqrt: matrix has a negative eigenvalue");
    return x <= 0.0 ? 0.0 : std::sqrt(x);
  });
}

double trace_norm(const HermitianMatrix& a) {
  const EigenSystem es = eig_hermitian(a);
  double s = 0.0;
  for (double x : es.values) s += std::abs(x);
  return s;
}

double trace_norm(const ComplexMatrix& a) {
  if (!a.all_finite()) throw InvalidInput("trace_norm: non-finite entries");
  const double tol = 1e-14 * std::max(1.0, a.frobenius_norm());
  if (a.hermiticity_defect() <= tol) return trace_norm(HermitianMatrix(a));
  // Anti-Hermitian input: i*A is Hermitian with the same singular values.
  const ComplexMatrix ia = a * Complex(0.0, 1.0);
  if (ia.hermiticity_defect() <= tol) return trace_norm(HermitianMatrix(ia));

  const std::size_t d = a.dim();
  ComplexMatrix dilation(2 * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      dilation(j, d + k) = a(j, k);
      dilation(d + k, j) = std::conj(a(j, k));
    }
  return 0.5 * trace_norm(HermitianMatrix(std::move(dilation)));
}

double schatten_norm(const HermitianMatrix& a, double p) {
  const EigenSystem es = eig_hermitian(a);
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : es.values) m = std::max(m, std::abs(x));
    return m;
  }
  if (!(p >= 1.0)) throw InvalidInput("schatten_norm: p must be >= 1");
  double s = 0.0;
  for (double x : es.values) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

bool cholesky(const ComplexMatrix& a, ComplexMatrix& lower) {
  const std::size_t d = a.dim();
  lower = ComplexMatrix(d);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(lower(j, k));
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    lower(j, j) = ljj;
    for (std::size_t i = j + 1; i < d; ++i) {
      Complex s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower(i, k) * std::conj(lower(j, k));
      lower(i, j) = s / ljj;
    }
  }
  return true;
}

ComplexMatrix inverse_pd(const ComplexMatrix& a) {
  ComplexMatrix l;
  if (!cholesky(a, l)) throw NotPsd("inverse_pd: matrix is not positive definite");
  const std::size_t d = a.dim();
  // Solve L Y = I (forward), then L^dagger X = Y (backward).
  ComplexMatrix y(d);
  for (std::size_t col = 0; col < d; ++col) {
    for (std::size_t i = 0; i < d; ++i) {
      Complex s = (i == col) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y(k, col);
      y(i, col) = s / l(i, i);
    }
  }
  ComplexMatrix x(d);
  for (std::size_t col = 0; col < d; ++col) {
    for (std::size_t ii = d; ii-- > 0;) {
      Complex s = y(ii, col);
      for (std::size_t k = ii + 1; k < d; ++k) s -= std::conj(l(k, ii)) * x(k, col);
      x(ii, col) = s / l(ii, ii);
    }
  }
  return x;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

double binary_entropy(double p) {
  const double q[2] = {p, 1.0 - p};
  return shannon_entropy(q);
}

}  // namespace coherelab
