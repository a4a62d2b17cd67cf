#include "qsuff/quantum.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <string>
#include <utility>

namespace qsuff {

namespace {

void require_equal_dims(int a, int b, const char* what) {
  if (a != b) {
    raise(ErrorKind::DimensionMismatch,
          std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

// Partial trace of a Choi matrix over the output factor: M_{ij} = sum_k C[(k,i),(k,j)].
cmat choi_trace_out(const cmat& choi, int dim_in, int dim_out) {
  cmat out = cmat::Zero(dim_in, dim_in);
  for (int k = 0; k < dim_out; ++k) {
    out += choi.block(k * dim_in, k * dim_in, dim_in, dim_in);
  }
  return out;
}

// Complete positivity of a Kraus family, via PSD-ness of its Choi matrix.
void check_completely_positive(const std::vector<cmat>& kraus, int dim_in, int dim_out,
                               double tol) {
  cmat choi = cmat::Zero(dim_in * dim_out, dim_in * dim_out);
  for (const cmat& k : kraus) {
    cvec v(dim_in * dim_out);
    for (int r = 0; r < dim_out; ++r)
      for (int c = 0; c < dim_in; ++c) v[r * dim_in + c] = k(r, c);
    choi += v * v.adjoint();
  }
  if (hermitian_eig(choi).eigenvalues.minCoeff() < -tol) {
    raise(ErrorKind::ValidationError, "Choi matrix of Kraus family not PSD");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(const cmat& m, double trace_tol) {
  if (m.rows() != m.cols()) {
    raise(ErrorKind::NotSquare, "density matrix must be square");
  }
  if (!is_hermitian(m)) {
    raise(ErrorKind::NotHermitian, "density matrix not Hermitian within tolerance");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > trace_tol) {
    raise(ErrorKind::ValidationError, "trace " + std::to_string(tr) + " not 1 within tolerance");
  }
  HermitianEigen eig = hermitian_eig(m);
  const rvec vals = psd_eigenvalues(eig);  // raises NotPSD beyond the clip window
  eig.eigenvalues = vals;
  mat_ = eig.eigenvectors * vals.asDiagonal() * eig.eigenvectors.adjoint();
  mat_ = 0.5 * (mat_ + mat_.adjoint());
  eig_ = std::move(eig);
}

cmat DensityMatrix::power_on_support(complexd z) const {
  const double threshold = kSupportCutoff * eig_.eigenvalues.maxCoeff();
  cvec mapped(dim());
  for (int i = 0; i < dim(); ++i) {
    const double lambda = eig_.eigenvalues[i];
    mapped[i] = lambda > threshold ? std::exp(z * std::log(lambda)) : complexd(0.0, 0.0);
  }
  return eig_.eigenvectors * mapped.asDiagonal() * eig_.eigenvectors.adjoint();
}

SupportProjection DensityMatrix::support() const {
  const double threshold = kSupportCutoff * eig_.eigenvalues.maxCoeff();
  SupportProjection out;
  out.threshold = threshold;
  cmat proj = cmat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (eig_.eigenvalues[i] > threshold) {
      proj += eig_.eigenvectors.col(i) * eig_.eigenvectors.col(i).adjoint();
      ++out.rank;
    }
  }
  out.projector = 0.5 * (proj + proj.adjoint());
  return out;
}

Effect::Effect(const cmat& m) {
  if (m.rows() != m.cols()) {
    raise(ErrorKind::NotSquare, "effect must be square");
  }
  if (!is_hermitian(m)) {
    raise(ErrorKind::NotHermitian, "effect not Hermitian within tolerance");
  }
  const HermitianEigen eig = hermitian_eig(m);
  if (eig.eigenvalues.minCoeff() < -1e-10 || eig.eigenvalues.maxCoeff() > 1.0 + 1e-10) {
    raise(ErrorKind::ValidationError, "effect eigenvalues outside [0, 1]");
  }
  mat_ = 0.5 * (m + m.adjoint());
}

QuantumChannel::QuantumChannel(std::vector<cmat> kraus, double tol) {
  if (kraus.empty()) {
    raise(ErrorKind::ValidationError, "channel needs at least one Kraus operator");
  }
  dim_out_ = static_cast<int>(kraus.front().rows());
  dim_in_ = static_cast<int>(kraus.front().cols());
  cmat gram = cmat::Zero(dim_in_, dim_in_);
  for (const cmat& k : kraus) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      raise(ErrorKind::DimensionMismatch, "inconsistent Kraus operator shapes");
    }
    gram += k.adjoint() * k;
  }
  if ((gram - cmat::Identity(dim_in_, dim_in_)).norm() > tol) {
    raise(ErrorKind::ValidationError, "Kraus family is not trace preserving");
  }
  kraus_ = std::move(kraus);
  domain_ = cmat::Identity(dim_in_, dim_in_);
  full_domain_ = true;
  check_completely_positive(kraus_, dim_in_, dim_out_, tol);
}

QuantumChannel QuantumChannel::on_domain(std::vector<cmat> kraus, const cmat& domain_projector,
                                         double tol) {
  if (kraus.empty()) {
    raise(ErrorKind::ValidationError, "channel needs at least one Kraus operator");
  }
  QuantumChannel out;
  out.dim_out_ = static_cast<int>(kraus.front().rows());
  out.dim_in_ = static_cast<int>(kraus.front().cols());
  cmat gram = cmat::Zero(out.dim_in_, out.dim_in_);
  for (const cmat& k : kraus) {
    if (k.rows() != out.dim_out_ || k.cols() != out.dim_in_) {
      raise(ErrorKind::DimensionMismatch, "inconsistent Kraus operator shapes");
    }
    gram += k.adjoint() * k;
  }
  if ((gram - domain_projector).norm() > tol) {
    raise(ErrorKind::ValidationError, "Kraus family not trace preserving on its domain");
  }
  out.kraus_ = std::move(kraus);
  out.domain_ = domain_projector;
  out.full_domain_ =
      (domain_projector - cmat::Identity(out.dim_in_, out.dim_in_)).norm() <= tol;
  check_completely_positive(out.kraus_, out.dim_in_, out.dim_out_, tol);
  return out;
}

ChoiMatrix::ChoiMatrix(int dim_in, int dim_out, const cmat& m, double tol)
    : dim_in_(dim_in), dim_out_(dim_out), mat_(0.5 * (m + m.adjoint())) {
  if (m.rows() != dim_in * dim_out || m.cols() != dim_in * dim_out) {
    raise(ErrorKind::DimensionMismatch, "Choi matrix has wrong size");
  }
  const HermitianEigen eig = hermitian_eig(mat_);
  if (eig.eigenvalues.minCoeff() < -tol) {
    raise(ErrorKind::ValidationError, "Choi matrix not PSD within tolerance");
  }
  const cmat traced = choi_trace_out(mat_, dim_in, dim_out);
  if ((traced - cmat::Identity(dim_in, dim_in)).norm() > tol) {
    raise(ErrorKind::ValidationError, "Choi partial trace over output is not the identity");
  }
}

cmat apply_kraus(const std::vector<cmat>& kraus, const cmat& x) {
  cmat out = cmat::Zero(kraus.front().rows(), kraus.front().rows());
  for (const cmat& k : kraus) out += k * x * k.adjoint();
  return out;
}

DensityMatrix apply_channel(const QuantumChannel& phi, const DensityMatrix& rho) {
  require_equal_dims(rho.dim(), phi.dim_in(), "apply_channel");
  return DensityMatrix(apply_kraus(phi.kraus(), rho.matrix()), 1e-9);
}

cmat apply_adjoint(const QuantumChannel& phi, const cmat& a) {
  if (a.rows() != phi.dim_out() || a.cols() != phi.dim_out()) {
    raise(ErrorKind::DimensionMismatch, "apply_adjoint: operator must live on the output space");
  }
  cmat out = cmat::Zero(phi.dim_in(), phi.dim_in());
  for (const cmat& k : phi.kraus()) out += k.adjoint() * a * k;
  return out;
}

ChoiMatrix kraus_to_choi(const QuantumChannel& phi) {
  const int din = phi.dim_in();
  const int dout = phi.dim_out();
  cmat choi = cmat::Zero(din * dout, din * dout);
  for (const cmat& k : phi.kraus()) {
    cvec v(din * dout);
    for (int r = 0; r < dout; ++r)
      for (int c = 0; c < din; ++c) v[r * din + c] = k(r, c);
    choi += v * v.adjoint();
  }
  return ChoiMatrix(din, dout, choi);
}

DensityMatrix apply_via_choi(const ChoiMatrix& choi, const DensityMatrix& rho) {
  require_equal_dims(rho.dim(), choi.dim_in(), "apply_via_choi");
  const int din = choi.dim_in();
  const int dout = choi.dim_out();
  cmat out = cmat::Zero(dout, dout);
  for (int k = 0; k < dout; ++k)
    for (int l = 0; l < dout; ++l) {
      complexd acc = 0.0;
      for (int i = 0; i < din; ++i)
        for (int j = 0; j < din; ++j) {
          acc += choi.matrix()(k * din + i, l * din + j) * rho.matrix()(i, j);
        }
      out(k, l) = acc;
    }
  try {
    return DensityMatrix(out, 1e-8);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotPSD) {
      raise(ErrorKind::NotPSDOutput, "Choi application produced a non-PSD state");
    }
    throw;
  }
}

std::vector<cmat> choi_to_kraus(const ChoiMatrix& choi, double threshold) {
  const int din = choi.dim_in();
  const int dout = choi.dim_out();
  const HermitianEigen eig = hermitian_eig(choi.matrix());
  std::vector<cmat> kraus;
  for (int n = 0; n < eig.eigenvalues.size(); ++n) {
    const double lambda = eig.eigenvalues[n];
    if (lambda <= threshold) continue;
    cmat k(dout, din);
    for (int r = 0; r < dout; ++r)
      for (int c = 0; c < din; ++c) k(r, c) = std::sqrt(lambda) * eig.eigenvectors(r * din + c, n);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& tau) {
  require_equal_dims(rho.dim(), tau.dim(), "fidelity");
  const cmat product = rho.power_on_support(0.5) * tau.power_on_support(0.5);
  Eigen::JacobiSVD<cmat> svd(product);
  return svd.singularValues().sum();
}

QuantumChannel channel_compose(const QuantumChannel& psi, const QuantumChannel& phi) {
  require_equal_dims(psi.dim_in(), phi.dim_out(), "channel_compose");
  std::vector<cmat> kraus;
  kraus.reserve(psi.kraus().size() * phi.kraus().size());
  for (const cmat& l : psi.kraus())
    for (const cmat& k : phi.kraus()) kraus.push_back(l * k);
  return QuantumChannel(std::move(kraus));
}

QuantumChannel identity_channel(int dim) {
  return QuantumChannel({cmat::Identity(dim, dim)});
}

QuantumChannel unitary_channel(const cmat& u) {
  if (u.rows() != u.cols()) {
    raise(ErrorKind::NotSquare, "unitary_channel");
  }
  if ((u.adjoint() * u - cmat::Identity(u.rows(), u.cols())).norm() > 1e-8) {
    raise(ErrorKind::ValidationError, "matrix is not unitary within tolerance");
  }
  return QuantumChannel({u});
}

QuantumChannel depolarizing_channel(int dim, double p) {
  if (p < 0.0 || p > 1.0) {
    raise(ErrorKind::ValidationError, "depolarizing probability outside [0, 1]");
  }
  // rho -> (1-p) rho + p Tr[rho] I/d, via the Weyl (shift/clock) unitaries.
  std::vector<cmat> kraus;
  const complexd omega = std::exp(complexd(0.0, 2.0 * M_PI / dim));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      cmat w = cmat::Zero(dim, dim);
      for (int j = 0; j < dim; ++j) w((j + a) % dim, j) = std::pow(omega, b * j);
      const double weight = (a == 0 && b == 0) ? (1.0 - p) + p / (dim * dim) : p / (dim * dim);
      if (weight <= 0.0) continue;
      kraus.push_back(std::sqrt(weight) * w);
    }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel attach_ancilla_channel(int dim, const DensityMatrix& tau) {
  // X -> X (x) tau. Kraus per spectral component of tau.
  std::vector<cmat> kraus;
  const HermitianEigen& eig = tau.eig();
  for (int n = 0; n < tau.dim(); ++n) {
    const double p = eig.eigenvalues[n];
    if (p <= 0.0) continue;
    const cmat column = eig.eigenvectors.col(n);
    kraus.push_back(std::sqrt(p) *
                    Eigen::kroneckerProduct(cmat::Identity(dim, dim), column).eval());
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel partial_trace_channel(int dim_keep, int dim_traced) {
  std::vector<cmat> kraus;
  for (int m = 0; m < dim_traced; ++m) {
    cmat bra = cmat::Zero(1, dim_traced);
    bra(0, m) = 1.0;
    kraus.push_back(Eigen::kroneckerProduct(cmat::Identity(dim_keep, dim_keep), bra).eval());
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel pinching_channel(const cmat& projector) {
  const cmat p = symmetrized(projector);
  if ((p * p - p).norm() > 1e-10) {
    raise(ErrorKind::ValidationError, "pinching needs an idempotent projector");
  }
  return QuantumChannel({p, cmat::Identity(p.rows(), p.cols()) - p});
}

}  // namespace qsuff
