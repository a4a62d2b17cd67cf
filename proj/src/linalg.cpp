#include "qsuff/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace qsuff {

namespace {

void require_square(const cmat& a, const char* what) {
  if (a.rows() != a.cols()) {
    raise(ErrorKind::NotSquare, std::string(what) + ": matrix is " + std::to_string(a.rows()) +
                                    "x" + std::to_string(a.cols()));
  }
}

double support_threshold(const rvec& eigenvalues) {
  const double lambda_max = eigenvalues.size() > 0 ? eigenvalues.maxCoeff() : 0.0;
  return kSupportCutoff * std::max(lambda_max, 0.0);
}

}  // namespace

bool is_hermitian(const cmat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

cmat symmetrized(const cmat& a) {
  require_square(a, "symmetrized");
  return 0.5 * (a + a.adjoint());
}

HermitianEigen hermitian_eig(const cmat& a, double hermiticity_tol) {
  require_square(a, "hermitian_eig");
  const double scale = std::max(1.0, a.norm());
  if ((a - a.adjoint()).norm() > hermiticity_tol * scale) {
    raise(ErrorKind::NotHermitian, "||A - A^dag||_F = " + std::to_string((a - a.adjoint()).norm()));
  }
  const cmat sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<cmat> solver(sym);
  if (solver.info() != Eigen::Success) {
    raise(ErrorKind::ConvergenceFailure, "self-adjoint eigensolver did not converge");
  }
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};

  const double d = static_cast<double>(a.rows());
  const cmat recon = out.eigenvectors * out.eigenvalues.asDiagonal() * out.eigenvectors.adjoint();
  if ((sym - recon).norm() > d * 1e-12 * std::max(1.0, sym.norm())) {
    raise(ErrorKind::ConvergenceFailure, "eigendecomposition residual out of tolerance");
  }
  const cmat gram = out.eigenvectors.adjoint() * out.eigenvectors;
  if ((gram - cmat::Identity(a.rows(), a.cols())).norm() > d * 1e-12) {
    raise(ErrorKind::ConvergenceFailure, "eigenvector orthonormality out of tolerance");
  }
  return out;
}

PosNegParts positive_negative_parts(const cmat& a) {
  const HermitianEigen eig = hermitian_eig(a);
  const Eigen::Index d = a.rows();
  rvec pos_vals(d), neg_vals(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    pos_vals[i] = std::max(eig.eigenvalues[i], 0.0);
    neg_vals[i] = std::max(-eig.eigenvalues[i], 0.0);
  }
  PosNegParts out;
  out.pos = eig.eigenvectors * pos_vals.asDiagonal() * eig.eigenvectors.adjoint();
  out.neg = eig.eigenvectors * neg_vals.asDiagonal() * eig.eigenvectors.adjoint();
  out.tr_pos = pos_vals.sum();
  out.tr_neg = neg_vals.sum();
  return out;
}

double trace_norm(const cmat& a) {
  require_square(a, "trace_norm");
  if (is_hermitian(a)) {
    return hermitian_eig(a).eigenvalues.cwiseAbs().sum();
  }
  Eigen::JacobiSVD<cmat> svd(a);
  return svd.singularValues().sum();
}

cmat matrix_function(const cmat& a, const std::function<double(double)>& f, bool support_only) {
  const HermitianEigen eig = hermitian_eig(a);
  const Eigen::Index d = a.rows();
  const double threshold = kSupportCutoff * eig.eigenvalues.cwiseAbs().maxCoeff();
  rvec mapped(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lambda = eig.eigenvalues[i];
    if (support_only && lambda <= threshold) {
      mapped[i] = 0.0;
      continue;
    }
    const double value = f(lambda);
    if (!std::isfinite(value)) {
      raise(ErrorKind::DomainError,
            "f undefined at eigenvalue " + std::to_string(lambda));
    }
    mapped[i] = value;
  }
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

rvec psd_eigenvalues(const HermitianEigen& eig) {
  const double lambda_max = eig.eigenvalues.size() > 0 ? eig.eigenvalues.maxCoeff() : 0.0;
  const double clip = kSupportCutoff * std::max(lambda_max, 1.0);
  rvec vals = eig.eigenvalues;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] < -clip) {
      raise(ErrorKind::NotPSD, "eigenvalue " + std::to_string(vals[i]) + " below clip window");
    }
    if (vals[i] < 0.0) vals[i] = 0.0;
  }
  return vals;
}

cmat matrix_imaginary_power(const cmat& a, double t) {
  const HermitianEigen eig = hermitian_eig(a);
  const rvec vals = psd_eigenvalues(eig);
  const double threshold = support_threshold(vals);
  const Eigen::Index d = a.rows();
  cvec mapped(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    mapped[i] = vals[i] > threshold ? std::exp(complexd(0.0, t * std::log(vals[i])))
                                    : complexd(1.0, 0.0);
  }
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

cmat matrix_power_on_support(const cmat& a, complexd z) {
  const HermitianEigen eig = hermitian_eig(a);
  const rvec vals = psd_eigenvalues(eig);
  const double threshold = support_threshold(vals);
  const Eigen::Index d = a.rows();
  cvec mapped(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    mapped[i] = vals[i] > threshold ? std::exp(z * std::log(vals[i])) : complexd(0.0, 0.0);
  }
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

SupportProjection support_projection(const cmat& a, double threshold) {
  const HermitianEigen eig = hermitian_eig(a);
  const rvec vals = psd_eigenvalues(eig);
  const Eigen::Index d = a.rows();
  SupportProjection out;
  out.threshold = threshold;
  cmat proj = cmat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (vals[i] > threshold) {
      proj += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
      ++out.rank;
    }
  }
  out.projector = 0.5 * (proj + proj.adjoint());
  return out;
}

SupportProjection support_projection(const cmat& a) {
  const HermitianEigen eig = hermitian_eig(a);
  return support_projection(a, support_threshold(psd_eigenvalues(eig)));
}

}  // namespace qsuff
