#include "qsuff/linalg.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"

using namespace qsuff;
using namespace qsuff::testing;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("hermitian_eig on the identity") {
  const HermitianEigen eig = hermitian_eig(cmat::Identity(2, 2));
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - cmat::Identity(2, 2)).norm() < 1e-13);
}

TEST_CASE("hermitian_eig returns ascending eigenvalues") {
  cmat m = cmat::Zero(2, 2);
  m(0, 0) = 0.25;
  m(1, 1) = -0.25;
  const HermitianEigen eig = hermitian_eig(m);
  CHECK(eig.eigenvalues[0] == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("hermitian_eig matches the 2x2 analytic formula") {
  const cmat x = pauli_x();
  const auto [lo, hi] = eig2x2(x);
  const HermitianEigen eig = hermitian_eig(x);
  CHECK(eig.eigenvalues[0] == doctest::Approx(lo).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(hi).epsilon(1e-14));

  Rng rng(default_seed());
  for (int trial = 0; trial < 50; ++trial) {
    const cmat h = random_hermitian(2, rng);
    const auto [a, b] = eig2x2(h);
    const HermitianEigen e = hermitian_eig(h);
    CHECK(e.eigenvalues[0] == doctest::Approx(a).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eig rejects bad inputs") {
  CHECK_THROWS_AS(hermitian_eig(cmat::Zero(2, 3)), Error);
  cmat m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eig(m), Error);
  try {
    hermitian_eig(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
}

TEST_CASE("reconstruction and orthonormality residuals on random matrices") {
  Rng rng(default_seed());
  for (int d = 2; d <= 8; ++d) {
    for (int trial = 0; trial < 25; ++trial) {
      const cmat h = random_hermitian(d, rng);
      const HermitianEigen eig = hermitian_eig(h);
      const cmat recon =
          eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
      CHECK((h - recon).norm() <= d * 1e-12 * std::max(1.0, h.norm()));
      CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - cmat::Identity(d, d)).norm() <=
            d * 1e-12);
    }
  }
}

TEST_CASE("positive_negative_parts on diagonal input") {
  cmat m = cmat::Zero(2, 2);
  m(0, 0) = 0.25;
  m(1, 1) = -0.25;
  const PosNegParts parts = positive_negative_parts(m);
  CHECK(parts.tr_pos == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(parts.tr_neg == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("positive part of a PSD matrix is the matrix itself") {
  Rng rng(default_seed());
  const cmat g = random_ginibre(3, 3, rng);
  const cmat psd = g * g.adjoint();
  const PosNegParts parts = positive_negative_parts(psd);
  CHECK(parts.neg.norm() < 1e-12 * psd.norm());
  CHECK(parts.tr_neg < 1e-12 * psd.norm());
}

TEST_CASE("negative mass of rho - sigma for the diagonal pair") {
  const cmat delta = rho_diag().matrix() - sigma_diag().matrix();
  const PosNegParts parts = positive_negative_parts(delta);
  CHECK(parts.tr_neg == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("positive_negative_parts properties on 1000 random Hermitians") {
  Rng rng(default_seed());
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 7);
    const cmat h = random_hermitian(d, rng);
    const PosNegParts parts = positive_negative_parts(h);
    CHECK((h - (parts.pos - parts.neg)).norm() <= d * 1e-12 * h.norm());
    CHECK((parts.pos * parts.neg).norm() <= d * 1e-11 * std::max(1.0, h.norm() * h.norm()));
    const double scale = d * 1e-11 * std::max(1.0, h.norm());
    CHECK(std::abs(trace_norm(h) - (parts.tr_pos + parts.tr_neg)) <= scale);
    CHECK(std::abs(h.trace().real() - (parts.tr_pos - parts.tr_neg)) <= scale);
  }
}

TEST_CASE("trace_norm basics") {
  CHECK(trace_norm(cmat::Zero(3, 3)) == doctest::Approx(0.0));
  cmat m = cmat::Zero(2, 2);
  m(0, 0) = 0.25;
  m(1, 1) = -0.25;
  CHECK(trace_norm(m) == doctest::Approx(0.5).epsilon(1e-14));

  const cmat delta2 = rho_diag().matrix() - 2.0 * sigma_diag().matrix();
  CHECK(trace_norm(delta2) == doctest::Approx(1.0).epsilon(1e-14));

  cmat nilpotent(2, 2);
  nilpotent << 0, 1, 0, 0;
  CHECK(trace_norm(nilpotent) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(trace_norm(cmat::Zero(2, 3)), Error);
}

TEST_CASE("trace_norm dominates the trace and matches the SVD route") {
  Rng rng(default_seed());
  for (int trial = 0; trial < 100; ++trial) {
    const cmat h = random_hermitian(4, rng);
    const double tn = trace_norm(h);
    CHECK(tn >= std::abs(h.trace().real()) - 1e-12);
    Eigen::JacobiSVD<cmat> svd(h);
    CHECK(tn == doctest::Approx(svd.singularValues().sum()).epsilon(1e-11));
  }
}

TEST_CASE("matrix_function basics") {
  Rng rng(default_seed());
  const cmat h = random_hermitian(3, rng);
  const cmat same = matrix_function(h, [](double x) { return x; }, false);
  CHECK((same - symmetrized(h)).norm() < 1e-12 * std::max(1.0, h.norm()));

  cmat d49 = cmat::Zero(2, 2);
  d49(0, 0) = 4.0;
  d49(1, 1) = 9.0;
  const cmat root = matrix_function(d49, [](double x) { return std::sqrt(x); }, false);
  CHECK(root(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(root(1, 1).real() == doctest::Approx(3.0).epsilon(1e-14));

  const cmat log_half = matrix_function(0.5 * cmat::Identity(2, 2),
                                        [](double x) { return std::log(x); }, false);
  CHECK(std::abs(log_half(0, 0).real() - std::log(0.5)) < 1e-12);
}

TEST_CASE("matrix_function support restriction and domain errors") {
  cmat m = cmat::Zero(2, 2);
  m(0, 0) = 0.5;
  const cmat log_supp = matrix_function(m, [](double x) { return std::log(x); }, true);
  CHECK(log_supp(0, 0).real() == doctest::Approx(std::log(0.5)).epsilon(1e-14));
  CHECK(std::abs(log_supp(1, 1)) < 1e-14);

  cmat neg = cmat::Zero(2, 2);
  neg(0, 0) = 1.0;
  neg(1, 1) = -1.0;
  CHECK_THROWS_AS(matrix_function(neg, [](double x) { return std::log(x); }, false), Error);
}

TEST_CASE("matrix_imaginary_power diagonal and endpoint cases") {
  Rng rng(default_seed());
  const cmat g = random_ginibre(3, 3, rng);
  const cmat psd = g * g.adjoint();
  CHECK((matrix_imaginary_power(psd, 0.0) - cmat::Identity(3, 3)).norm() < 1e-12);

  cmat ab = cmat::Zero(2, 2);
  ab(0, 0) = 0.3;
  ab(1, 1) = 1.7;
  const double t = 0.9;
  const cmat power = matrix_imaginary_power(ab, t);
  CHECK(std::abs(power(0, 0) - std::exp(complexd(0, t * std::log(0.3)))) < 1e-14);
  CHECK(std::abs(power(1, 1) - std::exp(complexd(0, t * std::log(1.7)))) < 1e-14);

  // kernel directions act as the identity
  cmat proj = cmat::Zero(2, 2);
  proj(0, 0) = 1.0;
  CHECK((matrix_imaginary_power(proj, 1.3) - cmat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("matrix_imaginary_power is unitary and satisfies the group law") {
  Rng rng(default_seed());
  for (int trial = 0; trial < 20; ++trial) {
    const cmat g = random_ginibre(4, 4, rng);
    const cmat psd = g * g.adjoint();
    const cmat power = matrix_imaginary_power(psd, 1.7);
    CHECK((power.adjoint() * power - cmat::Identity(4, 4)).norm() <= 1e-10);

    const double s = 0.6, t = -1.9;
    const cmat lhs = matrix_imaginary_power(psd, s) * matrix_imaginary_power(psd, t);
    const cmat rhs = matrix_imaginary_power(psd, s + t);
    CHECK((lhs - rhs).norm() <= 1e-9);
  }
  cmat indef = cmat::Zero(2, 2);
  indef(0, 0) = 1.0;
  indef(1, 1) = -1.0;
  CHECK_THROWS_AS(matrix_imaginary_power(indef, 1.0), Error);
}

TEST_CASE("support_projection ranks and projector residuals") {
  const SupportProjection full = support_projection(rho_diag().matrix());
  CHECK(full.rank == 2);
  CHECK((full.projector - cmat::Identity(2, 2)).norm() < 1e-12);

  cmat m = cmat::Zero(3, 3);
  m(0, 0) = 0.7;
  m(1, 1) = 0.3;
  const SupportProjection partial = support_projection(m);
  CHECK(partial.rank == 2);
  CHECK(std::abs(partial.projector(0, 0).real() - 1.0) < 1e-12);
  CHECK(std::abs(partial.projector(2, 2)) < 1e-12);

  cmat pure = cmat::Zero(2, 2);
  pure(0, 0) = 1.0;
  const SupportProjection rank1 = support_projection(pure);
  CHECK(rank1.rank == 1);

  const cmat p = partial.projector;
  CHECK((p * p - p).norm() <= 1e-10);
  CHECK((p - p.adjoint()).norm() <= 1e-12);
}

TEST_SUITE_END();
