// Helpers shared by the unit tests. Nothing here calls into the code under
// test beyond constructing inputs.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "coherelab/quantum.hpp"

namespace testutil {

using coherelab::Complex;
using coherelab::ComplexMatrix;

inline ComplexMatrix random_complex_matrix(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  ComplexMatrix m(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) m(j, k) = {n(rng), n(rng)};
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  ComplexMatrix g = random_complex_matrix(d, rng);
  ComplexMatrix h = g + g.adjoint();
  return h * Complex(0.5);
}

inline std::vector<double> random_unit_vector(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::vector<double> v(d);
  double s = 0.0;
  for (double& x : v) s += (x = n(rng)) * x;
  s = std::sqrt(s);
  for (double& x : v) x /= s;
  return v;
}

// Roots of the characteristic polynomial of A (Faddeev-LeVerrier +
// Durand-Kerner), sorted descending. Only meant for small d.
inline std::vector<double> charpoly_eigenvalues(const ComplexMatrix& a) {
  const std::size_t d = a.dim();
  std::vector<Complex> c(d + 1);
  c[d] = 1.0;
  ComplexMatrix m(d);
  for (std::size_t k = 1; k <= d; ++k) {
    ComplexMatrix am = a * m;
    for (std::size_t i = 0; i < d; ++i) am(i, i) += c[d - k + 1];
    m = am;
    ComplexMatrix amk = a * m;
    c[d - k] = -amk.trace() / static_cast<double>(k);
  }
  auto poly = [&](Complex z) {
    Complex v = 0.0;
    for (std::size_t i = d + 1; i-- > 0;) v = v * z + c[i];
    return v;
  };
  std::vector<Complex> z(d);
  for (std::size_t i = 0; i < d; ++i) z[i] = std::pow(Complex(0.4, 0.9), static_cast<double>(i)) * 2.0;
  for (int it = 0; it < 2000; ++it) {
    for (std::size_t i = 0; i < d; ++i) {
      Complex den = 1.0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) den *= z[i] - z[j];
      z[i] -= poly(z[i]) / den;
    }
  }
  std::vector<double> out;
  for (const Complex& x : z) out.push_back(x.real());
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace testutil
