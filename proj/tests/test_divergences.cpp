#include "qsuff/divergences.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"

using namespace qsuff;
using namespace qsuff::testing;

TEST_SUITE_BEGIN("divergences");

TEST_CASE("spectral relative entropy on the classical fixture") {
  const DensityMatrix rho = rho_diag();
  const DensityMatrix sigma = sigma_diag();
  CHECK(relative_entropy_spectral(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));

  const double oracle = classical_kl({0.75, 0.25}, {0.5, 0.5});
  CHECK(relative_entropy_spectral(rho, sigma) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(oracle == doctest::Approx(0.130812).epsilon(1e-5));
}

TEST_CASE("support violation gives +inf") {
  CHECK(std::isinf(relative_entropy_spectral(basis_state(0, 2), basis_state(1, 2))));
}

TEST_CASE("relative entropy is nonnegative and faithful") {
  Rng rng(default_seed());
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_density(3, rng);
    const DensityMatrix sigma = random_density(3, rng);
    const double d = relative_entropy_spectral(rho, sigma);
    CHECK(d >= -1e-9);
  }
  const DensityMatrix rho = random_density(3, rng);
  CHECK(std::abs(relative_entropy_spectral(rho, rho)) <= 1e-8);
}

TEST_CASE("frenkel integrand vanishes on [0,1] and matches diagonal arithmetic") {
  const DensityMatrix rho = rho_diag();
  const DensityMatrix sigma = sigma_diag();
  CHECK(frenkel_integrand(rho, sigma, 0.5) == doctest::Approx(0.0));

  Rng rng(default_seed());
  const DensityMatrix a = random_density(3, rng);
  const DensityMatrix b = random_density(3, rng);
  double max_on_unit = 0.0;
  for (int i = 0; i <= 100; ++i) {
    max_on_unit = std::max(max_on_unit, frenkel_integrand(a, b, i / 100.0));
  }
  CHECK(max_on_unit <= 1e-10);

  // Tr[(-rho + 2 sigma)_-] for the diagonal pair is zero...
  CHECK(frenkel_integrand(rho, sigma, 2.0) == doctest::Approx(0.0).epsilon(1e-13));
  // ...and 1 for orthogonal pure states
  CHECK(frenkel_integrand(basis_state(0, 2), basis_state(1, 2), 2.0) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("integral route equals the classical oracle on the diagonal pair") {
  const QuadratureResult r = relative_entropy_integral(rho_diag(), sigma_diag());
  const double oracle = classical_kl({0.75, 0.25}, {0.5, 0.5});
  CHECK(std::abs(r.value - oracle) <= 1e-6);

  const QuadratureResult same = relative_entropy_integral(rho_diag(), rho_diag());
  CHECK(std::abs(same.value) <= 1e-9);
}

TEST_CASE("integral and spectral routes agree on random full-rank pairs") {
  Rng rng(default_seed());
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density(2, rng, 0.1);
    const DensityMatrix sigma = random_density(2, rng, 0.1);
    const double spectral = relative_entropy_spectral(rho, sigma);
    const QuadratureResult integral = relative_entropy_integral(rho, sigma);
    CHECK(std::abs(spectral - integral.value) <= std::max(1e-6, 10.0 * integral.error_estimate));
    CHECK(std::abs(spectral - integral.value) <= 1e-6);
  }
}

TEST_CASE("integral route handles a rank-deficient rho (mu = 0 branch)") {
  Rng rng(default_seed());
  cvec psi(2);
  psi << complexd(0.8, 0.1), complexd(0.3, -0.5);
  psi.normalize();
  const DensityMatrix pure((psi * psi.adjoint()).eval());
  const DensityMatrix sigma = random_density(2, rng, 0.2);
  const double spectral = relative_entropy_spectral(pure, sigma);
  const QuadratureResult integral = relative_entropy_integral(pure, sigma);
  CHECK(std::isfinite(spectral));
  CHECK(std::abs(spectral - integral.value) <= 1e-6);
}

TEST_CASE("gauss-legendre scheme agrees too") {
  QuadratureSpec spec;
  spec.scheme = QuadratureSpec::Scheme::FixedGaussLegendre;
  const QuadratureResult r = relative_entropy_integral(rho_diag(), sigma_diag(), spec);
  CHECK(std::abs(r.value - classical_kl({0.75, 0.25}, {0.5, 0.5})) <= 1e-6);

  // a qubit integrand only kinks at the endpoints, so the rule is spectrally
  // accurate inside [mu, lambda]; starve the budget below one composite pass
  spec.max_nodes = 20;
  CHECK_THROWS_AS(relative_entropy_integral(rho_diag(), sigma_tilted(), spec), Error);
}

TEST_CASE("quadrature budget and spec validation") {
  QuadratureSpec tiny;
  tiny.max_nodes = 17;
  CHECK_THROWS_AS(relative_entropy_integral(rho_diag(), sigma_diag(), tiny), Error);
  try {
    relative_entropy_integral(rho_diag(), sigma_diag(), tiny);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QuadratureBudgetExceeded);
  }

  QuadratureSpec bad;
  bad.max_nodes = 5;
  CHECK_THROWS_AS(relative_entropy_integral(rho_diag(), sigma_diag(), bad), Error);
  bad.max_nodes = 1000;
  bad.rel_tol = 0.5;
  CHECK_THROWS_AS(relative_entropy_integral(rho_diag(), sigma_diag(), bad), Error);
}

TEST_CASE("d_max values for the diagonal pair") {
  const DensityMatrix rho = rho_diag();
  const DensityMatrix sigma = sigma_diag();
  CHECK(d_max(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(d_max(rho, sigma) == doctest::Approx(std::log(1.5)).epsilon(1e-10));
  CHECK(d_max(sigma, rho) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(std::isinf(d_max(basis_state(0, 2), basis_state(1, 2))));
}

TEST_CASE("divergence_report aggregates consistently") {
  const DivergenceReport r = divergence_report(rho_diag(), sigma_diag());
  const double oracle = classical_kl({0.75, 0.25}, {0.5, 0.5});
  CHECK(r.d_spectral == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(std::abs(r.d_integral - oracle) <= 1e-6);
  CHECK(r.d_max_rho_sigma == doctest::Approx(std::log(1.5)).epsilon(1e-10));
  CHECK(r.d_max_sigma_rho == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(r.d_omega == doctest::Approx(std::log(3.0)).epsilon(1e-9));

  const DivergenceReport same = divergence_report(rho_diag(), rho_diag());
  CHECK(std::abs(same.d_spectral) <= 1e-12);
  CHECK(std::abs(same.d_integral) <= 1e-9);
  CHECK(std::abs(same.d_omega) <= 1e-10);
}

TEST_CASE("both divergence routes hit +inf together") {
  Rng rng(default_seed());
  const DensityMatrix sigma = random_density(2, rng);
  const DivergenceReport inf_report = divergence_report(basis_state(0, 2), basis_state(1, 2));
  CHECK(std::isinf(inf_report.d_spectral));
  CHECK(std::isinf(inf_report.d_integral));
  CHECK(std::isinf(inf_report.d_max_rho_sigma));

  // rank-deficient sigma against full-rank rho: spectral inf iff d_max inf
  cvec psi(2);
  psi << 1.0, 0.0;
  const DensityMatrix pure((psi * psi.adjoint()).eval());
  const DensityMatrix full = random_density(2, rng, 0.2);
  CHECK(std::isinf(relative_entropy_spectral(full, pure)) == std::isinf(d_max(full, pure)));
  CHECK(std::isinf(relative_entropy_spectral(pure, full)) == std::isinf(d_max(pure, full)));
}

TEST_CASE("routes agree at dimension 16") {
  Rng rng(default_seed());
  const DensityMatrix rho = random_density(16, rng, 0.1);
  const DensityMatrix sigma = random_density(16, rng, 0.1);
  const double spectral = relative_entropy_spectral(rho, sigma);
  const QuadratureResult integral = relative_entropy_integral(rho, sigma);
  CHECK(std::abs(spectral - integral.value) <= 1e-6);
}

TEST_CASE("data processing inequality for the relative entropy") {
  Rng rng(default_seed());
  for (int trial = 0; trial < 30; ++trial) {
    const DensityMatrix rho = random_density(2, rng, 0.05);
    const DensityMatrix sigma = random_density(2, rng, 0.05);
    const QuantumChannel phi = random_channel(2, 2, 3, rng);
    const double before = relative_entropy_spectral(rho, sigma);
    const double after =
        relative_entropy_spectral(apply_channel(phi, rho), apply_channel(phi, sigma));
    CHECK(after <= before + 1e-8);
  }
}

TEST_SUITE_END();
