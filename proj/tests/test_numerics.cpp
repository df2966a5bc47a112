#include <cmath>
#include <limits>

#include "coherelab/error.hpp"
#include "coherelab/numerics.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace coherelab;

TEST_CASE("eig_hermitian matches characteristic-polynomial roots") {
  std::mt19937_64 rng(11);
  for (std::size_t d = 1; d <= 4; ++d) {
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix a = testutil::random_hermitian(d, rng);
      const EigenSystem es = eig_hermitian(HermitianMatrix(a));
      const auto roots = testutil::charpoly_eigenvalues(a);
      for (std::size_t j = 0; j < d; ++j) CHECK(es.values[j] == doctest::Approx(roots[j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("eig_hermitian: 2x2 closed form, ordering and reconstruction") {
  const ComplexMatrix a{{2.0, Complex(1.0, 1.0)}, {Complex(1.0, -1.0), -1.0}};
  const EigenSystem es = eig_hermitian(HermitianMatrix(a));
  const double mid = 0.5, rad = std::sqrt(1.5 * 1.5 + 2.0);
  CHECK(es.values[0] == doctest::Approx(mid + rad));
  CHECK(es.values[1] == doctest::Approx(mid - rad));

  std::mt19937_64 rng(5);
  const ComplexMatrix b = testutil::random_hermitian(6, rng);
  const EigenSystem eb = eig_hermitian(HermitianMatrix(b));
  for (std::size_t j = 0; j + 1 < 6; ++j) CHECK(eb.values[j] >= eb.values[j + 1]);
  CHECK((eb.reconstruct() - b).frobenius_norm() < 1e-12);
  const ComplexMatrix vv = eb.vectors.adjoint() * eb.vectors;
  CHECK((vv - ComplexMatrix::identity(6)).frobenius_norm() < 1e-12);
}

TEST_CASE("eig_hermitian rejects non-finite input") {
  ComplexMatrix a(2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eig_hermitian(HermitianMatrix(a)), Error);
}

TEST_CASE("HermitianMatrix rejects non-Hermitian input") {
  const ComplexMatrix a{{1.0, 2.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(HermitianMatrix{a}, InvalidInput);
  const ComplexMatrix b{{1.0, Complex(0.0, 1.0)}, {Complex(0.0, -1.0), 1.0}};
  CHECK_NOTHROW(HermitianMatrix{b});
}

TEST_CASE("psd_sqrt squares back and rejects negative spectra") {
  std::mt19937_64 rng(3);
  const ComplexMatrix g = testutil::random_complex_matrix(4, rng);
  const ComplexMatrix a = g * g.adjoint();
  const HermitianMatrix s = psd_sqrt(HermitianMatrix(a));
  CHECK((s.matrix() * s.matrix() - a).frobenius_norm() < 1e-11 * a.frobenius_norm());
  CHECK(eig_hermitian(s).values.back() >= -1e-12);

  const std::vector<double> neg = {1.0, -1e-3};
  CHECK_THROWS_AS(psd_sqrt(HermitianMatrix::diagonal(neg)), NotPsd);
  const std::vector<double> tiny = {1.0, -1e-12};
  CHECK(psd_sqrt(HermitianMatrix::diagonal(tiny))(1, 1) == Complex(0.0));
}

TEST_CASE("trace_norm agrees with singular values from A^dagger A") {
  std::mt19937_64 rng(17);
  for (std::size_t d = 1; d <= 5; ++d) {
    const ComplexMatrix a = testutil::random_complex_matrix(d, rng);
    const auto ev = testutil::charpoly_eigenvalues(a.adjoint() * a);
    double oracle = 0.0;
    for (double l : ev) oracle += std::sqrt(std::max(l, 0.0));
    CHECK(trace_norm(a) == doctest::Approx(oracle).epsilon(1e-8));
  }
  // Hermitian and anti-Hermitian paths.
  const ComplexMatrix h{{1.0, 0.0}, {0.0, -3.0}};
  CHECK(trace_norm(h) == doctest::Approx(4.0));
  const ComplexMatrix ah{{0.0, 2.0}, {-2.0, 0.0}};
  CHECK(trace_norm(ah) == doctest::Approx(4.0));
  // Rank-one |u><v| has trace norm |u||v|.
  const std::vector<Complex> u = {1.0, Complex(0.0, 2.0)};
  const std::vector<Complex> w = {Complex(0.0, -3.0), 4.0};
  CHECK(trace_norm(ComplexMatrix::outer(u, w)) == doctest::Approx(std::sqrt(5.0) * 5.0));
}

TEST_CASE("schatten_norm special cases") {
  const std::vector<double> d = {3.0, -4.0, 0.0};
  const HermitianMatrix a = HermitianMatrix::diagonal(d);
  CHECK(schatten_norm(a, 1.0) == doctest::Approx(7.0));
  CHECK(schatten_norm(a, 2.0) == doctest::Approx(5.0));
  CHECK(schatten_norm(a, std::numeric_limits<double>::infinity()) == doctest::Approx(4.0));
}

TEST_CASE("cholesky and inverse_pd") {
  std::mt19937_64 rng(23);
  const ComplexMatrix g = testutil::random_complex_matrix(4, rng);
  ComplexMatrix a = g * g.adjoint();
  for (std::size_t i = 0; i < 4; ++i) a(i, i) += 0.5;
  ComplexMatrix l;
  REQUIRE(cholesky(a, l));
  CHECK((l * l.adjoint() - a).frobenius_norm() < 1e-12);
  CHECK((a * inverse_pd(a) - ComplexMatrix::identity(4)).frobenius_norm() < 1e-11);

  const ComplexMatrix indefinite{{1.0, 2.0}, {2.0, 1.0}};
  CHECK_FALSE(cholesky(indefinite, l));
  CHECK_THROWS_AS(inverse_pd(indefinite), NotPsd);
}

TEST_CASE("entropies in bits") {
  const std::vector<double> p = {0.75, 0.25};
  CHECK(shannon_entropy(p) == doctest::Approx(0.811278124459).epsilon(1e-12));
  const std::vector<double> q = {0.25, 0.25, 0.25, 0.25, 0.0};
  CHECK(shannon_entropy(q) == doctest::Approx(2.0));
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
}

TEST_CASE("matrix helpers") {
  const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  CHECK(trace_of_product(a, b) == (a * b).trace());
  CHECK(commutator(a, b) == a * b - b * a);
  CHECK(a.adjoint()(0, 1) == Complex(3.0));
  CHECK(a.hermiticity_defect() == doctest::Approx(1.0));
  const std::vector<double> diag = {1.0, 2.0};
  CHECK(ComplexMatrix::diagonal(diag)(1, 1) == Complex(2.0));
}
