#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "qsuff/errors.hpp"

namespace qsuff {

using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;
using complexd = std::complex<double>;

// Relative eigenvalue cutoff separating support from kernel.
inline constexpr double kSupportCutoff = 1e-10;
// Default hermiticity tolerance, relative to max(1, ||A||_F).
inline constexpr double kHermitianTol = 1e-10;

struct HermitianEigen {
  rvec eigenvalues;   // ascending
  cmat eigenvectors;  // columns orthonormal
};

struct SupportProjection {
  cmat projector;
  int rank = 0;
  double threshold = 0.0;
};

struct PosNegParts {
  cmat pos;
  cmat neg;
  double tr_pos = 0.0;
  double tr_neg = 0.0;
};

bool is_hermitian(const cmat& a, double tol = kHermitianTol);

/// (A + A^dag)/2. Throws NotSquare.
cmat symmetrized(const cmat& a);

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
/// The input is symmetrized after the hermiticity check; reconstruction and
/// orthonormality residuals are verified on every call.
HermitianEigen hermitian_eig(const cmat& a, double hermiticity_tol = kHermitianTol);

/// A = pos - neg with pos, neg >= 0 and pos*neg = 0.
/// tr_pos + tr_neg = ||A||_1 and tr_pos - tr_neg = Tr A.
PosNegParts positive_negative_parts(const cmat& a);

/// Sum of singular values. Uses eigenvalues on the Hermitian path.
double trace_norm(const cmat& a);

/// V f(Lambda) V^dag. With support_only, f is applied only to eigenvalues
/// above the support cutoff and the kernel block is zeroed.
cmat matrix_function(const cmat& a, const std::function<double(double)>& f, bool support_only);

/// A^{it} = exp(it log A) on the support of A, identity on the kernel.
cmat matrix_imaginary_power(const cmat& a, double t);

/// A^z = exp(z log A) on the support, zero on the kernel. A must be PSD.
cmat matrix_power_on_support(const cmat& a, complexd z);

/// Projector onto the span of eigenvectors with eigenvalue > threshold.
SupportProjection support_projection(const cmat& a, double threshold);

/// Same with the default relative threshold kSupportCutoff * lambda_max.
SupportProjection support_projection(const cmat& a);

/// Eigenvalues of a PSD matrix with the clip policy applied: values in
/// [-cutoff*scale, 0) become 0, anything more negative raises NotPSD.
rvec psd_eigenvalues(const HermitianEigen& eig);

}  // namespace qsuff
