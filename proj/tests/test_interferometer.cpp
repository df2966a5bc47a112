#include <cmath>
#include <numbers>
#include <sstream>

#include "coherelab/error.hpp"
#include "coherelab/interferometer.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace coherelab;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix qutrit_example() {
  const double t = 1.0 / 3.0;
  return DensityMatrix(ComplexMatrix{{t, t, 0.0}, {t, t, 0.0}, {0.0, 0.0, t}});
}

HermitianMatrix random_effect(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix g = testutil::random_complex_matrix(d, rng);
  const ComplexMatrix a = g * g.adjoint();
  const double top = eig_hermitian(HermitianMatrix(a)).values.front();
  std::uniform_real_distribution<double> u(0.2, 1.0);
  return HermitianMatrix(a * Complex(u(rng) / top));
}

}  // namespace

TEST_CASE("phase grids") {
  const PhaseGrid g = PhaseGrid::torus(3, 4);
  CHECK(g.size() == 16);
  for (const auto& p : g.points()) CHECK(p[2] == 0.0);
  CHECK(PhaseGrid::default_points_per_axis(3) == 33);
  CHECK(PhaseGrid::default_points_per_axis(4) == 9);
  CHECK(PhaseGrid::default_points_per_axis(6) == 5);
  const PhaseGrid s = PhaseGrid::sweep(3, 1, 8);
  CHECK(s.size() == 8);
  CHECK(s.points()[2][1] == doctest::Approx(kPi / 2));
  CHECK(s.points()[2][0] == 0.0);
  const PhaseGrid t = s.translated(PhaseVector({0.0, kPi, 0.0}));
  CHECK(t.points()[0][1] == doctest::Approx(kPi));
}

TEST_CASE("diagonal states give flat patterns") {
  const std::vector<double> p = {0.5, 0.3, 0.2};
  const PatternGrid pat = sample_pattern(DensityMatrix::diagonal(p), Povm::fourier(3), PhaseGrid::torus(3, 7));
  for (const auto& row : pat.table)
    for (std::size_t w = 0; w < row.size(); ++w) CHECK(row[w] == doctest::Approx(pat.table[0][w]).epsilon(1e-14));
  CHECK(v_max_on_grid(pat) < 1e-14);
}

TEST_CASE("v_max on a grid reaches the optimal visibility for the optimal detector") {
  const DensityMatrix rho = qutrit_example();
  // Detector: eigenbasis of rho(alpha*) - rho with alpha* = (pi, 0, 0).
  const DensityMatrix flipped = apply_phases(rho, PhaseVector({kPi, 0.0, 0.0}));
  const Povm povm = Povm::eigenbasis(HermitianMatrix(flipped.matrix() - rho.matrix()));
  const PatternGrid pat = sample_pattern(rho, povm, PhaseGrid::sweep(3, 0, 2));
  CHECK(v_max_on_grid(pat) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // Any other detector does no better.
  const PatternGrid fourier = sample_pattern(rho, Povm::fourier(3), PhaseGrid::sweep(3, 0, 64));
  CHECK(v_max_on_grid(fourier) <= 2.0 / 3.0 + 1e-12);
}

TEST_CASE("guessing with accelerating phases") {
  const DensityMatrix plus(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}});
  const Povm f = Povm::fourier(2);
  const std::vector<std::size_t> perm = {0, 1};
  const double bias = v_guess_on_settings(plus, f, PhaseVector::zeros(2), perm, {{1}, {0}});
  CHECK(bias == doctest::Approx(0.5));
  const GuessSettingsResult best = v_guess_best_assignment(plus, f, PhaseVector::zeros(2), perm);
  CHECK(best.bias == doctest::Approx(0.5));
  CHECK_THROWS_AS(v_guess_on_settings(plus, f, PhaseVector::zeros(2), perm, {{0, 1}, {1}}), InvalidInput);
  // No detector helps on an incoherent state.
  const std::vector<double> p = {0.6, 0.4};
  CHECK(v_guess_best_assignment(DensityMatrix::diagonal(p), f, PhaseVector::zeros(2), perm).bias ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("directional derivative: analytic commutator vs finite differences") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const DensityMatrix rho = random_density(d, 1 + trial % d, 500 + trial);
    const HermitianMatrix m0 = random_effect(d, rng);
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    std::vector<double> a(d);
    for (double& x : a) x = u(rng);
    const DiagonalHamiltonian h{testutil::random_unit_vector(d, rng)};
    const DirectionalDerivative dd = directional_derivative(rho, m0, PhaseVector(a), h);
    CHECK(std::abs(dd.analytic - dd.finite_difference) <= 1e-6 * std::max(1e-3, std::abs(dd.analytic)));
  }
  const std::vector<double> too_big = {2.0, 0.0};
  CHECK_THROWS_AS(directional_derivative(DensityMatrix::maximally_coherent(2), HermitianMatrix::diagonal(too_big),
                                         PhaseVector::zeros(2), DiagonalHamiltonian{{1.0, 0.0}}),
                  InvalidInput);
}

TEST_CASE("mixing patterns with disjoint outcomes") {
  const DensityMatrix a = random_density(2, 2, 1);
  const DensityMatrix b = random_density(2, 2, 2);
  const PhaseGrid g = PhaseGrid::sweep(2, 0, 9);
  const PatternGrid pa = sample_pattern(a, Povm::fourier(2), g);
  PatternGrid pb = sample_pattern(b, Povm(std::vector<std::string>{"x", "y"},
                                          {HermitianMatrix::diagonal(std::vector<double>{1.0, 0.0}),
                                           HermitianMatrix::diagonal(std::vector<double>{0.0, 1.0})}),
                                  g);
  const std::vector<double> w = {0.3, 0.7};
  const PatternGrid mix = mix_patterns({pa, pb}, w);
  CHECK(mix.outcomes.size() == 4);
  CHECK_NOTHROW(validate_pattern(mix));
  CHECK(mix.table[3][1] == doctest::Approx(0.3 * pa.table[3][1]));
  CHECK(mix.table[3][2] == doctest::Approx(0.7 * pb.table[3][0]));
  // Row-pair distances are additive over the blocks.
  double tv = 0.0, tva = 0.0, tvb = 0.0;
  for (std::size_t k = 0; k < 4; ++k) tv += 0.5 * std::abs(mix.table[0][k] - mix.table[5][k]);
  for (std::size_t k = 0; k < 2; ++k) {
    tva += 0.5 * std::abs(pa.table[0][k] - pa.table[5][k]);
    tvb += 0.5 * std::abs(pb.table[0][k] - pb.table[5][k]);
  }
  CHECK(tv == doctest::Approx(0.3 * tva + 0.7 * tvb));
  CHECK_THROWS_AS(mix_patterns({pa, pa}, w), InvalidInput);
  const std::vector<double> bad = {0.3, 0.3};
  CHECK_THROWS_AS(mix_patterns({pa, pb}, bad), InvalidInput);
}

TEST_CASE("validate_pattern rejects rows that are not distributions") {
  PatternGrid p = sample_pattern(DensityMatrix::maximally_coherent(2), Povm::fourier(2), PhaseGrid::sweep(2, 0, 3));
  p.table[1][0] += 1e-6;
  CHECK_THROWS_AS(validate_pattern(p), InvalidInput);
}

TEST_CASE("pattern CSV layout") {
  const PatternGrid p = sample_pattern(qutrit_example(), Povm::fourier(3), PhaseGrid::sweep(3, 1, 4));
  std::ostringstream out;
  write_pattern_csv(out, p);
  std::istringstream in(out.str());
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "alpha_1,alpha_2,alpha_3,p_0,p_1,p_2");
  std::getline(in, row);
  CHECK(row == "0,0,0,0.555555555556,0.222222222222,0.222222222222");
  int rows = 1;
  while (std::getline(in, row)) ++rows;
  CHECK(rows == 4);
}
