// Dense complex linear algebra for small (d <= ~32) operators.
//
// Everything here is a pure function of its inputs. Matrices are stored
// row-major in a flat std::vector; the dimension is always square.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace coherelab {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  // |u><v|
  static ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  // Largest |A - A^dagger| entry.
  double hermiticity_defect() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) { return lhs *= scale; }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) { return rhs *= scale; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// tr(A B) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

// A matrix equal to its adjoint. Construction checks the Hermiticity defect
// against 1e-12 * max(1, |A|_F) and then symmetrizes, so the stored entries
// satisfy a(j,k) == conj(a(k,j)) exactly.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(ComplexMatrix m);

  static HermitianMatrix identity(std::size_t dim) {
    return HermitianMatrix(ComplexMatrix::identity(dim));
  }
  static HermitianMatrix diagonal(std::span<const double> diag) {
    return HermitianMatrix(ComplexMatrix::diagonal(diag));
  }

  std::size_t dim() const { return m_.dim(); }
  const Complex& operator()(std::size_t row, std::size_t col) const { return m_(row, col); }
  const ComplexMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

  bool operator==(const HermitianMatrix&) const = default;

 private:
  ComplexMatrix m_;
};

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column j is the eigenvector for values[j]

  std::vector<Complex> vector(std::size_t j) const;
  ComplexMatrix reconstruct() const;
};

// Cyclic complex Jacobi. Throws InvalidInput on non-finite entries.
EigenSystem eig_hermitian(const HermitianMatrix& a);

// f applied to the spectrum of A.
HermitianMatrix apply_spectral_function(const HermitianMatrix& a,
                                        const std::function<double(double)>& f);

inline constexpr double kPsdClamp = 1e-10;

// Throws NotPsd if an eigenvalue lies below -kPsdClamp; smaller negative
// eigenvalues are clamped to zero.
HermitianMatrix psd_sqrt(const HermitianMatrix& a);

// Sum of singular values. Hermitian inputs use |eigenvalues| directly; other
// inputs use the Hermitian dilation [[0, A], [A^dagger, 0]], whose spectrum is
// +-sigma_j, which keeps small singular values accurate.
double trace_norm(const ComplexMatrix& a);
double trace_norm(const HermitianMatrix& a);

// Schatten p-norm of a Hermitian matrix; p = infinity gives the operator norm.
double schatten_norm(const HermitianMatrix& a, double p);

// Lower Cholesky factor of a Hermitian positive definite matrix. Returns false
// when a non-positive pivot appears (the matrix is not PD).
bool cholesky(const ComplexMatrix& a, ComplexMatrix& lower);

// Inverse of a Hermitian positive definite matrix via Cholesky. Throws
// NotPsd when the matrix is not positive definite.
ComplexMatrix inverse_pd(const ComplexMatrix& a);

// Shannon entropy in bits with 0 log 0 = 0.
double shannon_entropy(std::span<const double> p);

// Binary entropy in bits.
double binary_entropy(double p);

}  // namespace coherelab
