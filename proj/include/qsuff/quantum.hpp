#pragma once

#include <vector>

#include "qsuff/linalg.hpp"

namespace qsuff {

/// Hermitian PSD trace-1 matrix. The stored matrix is symmetrized and has
/// negative eigenvalue dust clipped; the eigendecomposition is cached.
class DensityMatrix {
 public:
  explicit DensityMatrix(const cmat& m, double trace_tol = 1e-10);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const cmat& matrix() const { return mat_; }
  const HermitianEigen& eig() const { return eig_; }

  /// sqrt, support-restricted inverse sqrt, etc. via the cached spectrum.
  cmat power_on_support(complexd z) const;
  SupportProjection support() const;

 private:
  cmat mat_;
  HermitianEigen eig_;
};

/// Operator M with 0 <= M <= I.
class Effect {
 public:
  explicit Effect(const cmat& m);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const cmat& matrix() const { return mat_; }

 private:
  cmat mat_;
};

/// CPTP map in Kraus form. A channel may be trace preserving only on a
/// declared domain projector P (sum K^dag K = P), as recovery maps are when
/// Phi(sigma) is rank deficient; the default constructor requires P = I.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<cmat> kraus, double tol = 1e-8);
  static QuantumChannel on_domain(std::vector<cmat> kraus, const cmat& domain_projector,
                                  double tol = 1e-7);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<cmat>& kraus() const { return kraus_; }
  const cmat& domain_projector() const { return domain_; }
  bool trace_preserving() const { return full_domain_; }

 private:
  QuantumChannel() = default;
  std::vector<cmat> kraus_;
  cmat domain_;
  int dim_in_ = 0;
  int dim_out_ = 0;
  bool full_domain_ = true;
};

/// Choi matrix (Phi x id)(|Omega><Omega|), indexed (out, in) row-major:
/// C[(k,i),(l,j)] = Phi(|i><j|)_{kl}.
class ChoiMatrix {
 public:
  ChoiMatrix(int dim_in, int dim_out, const cmat& m, double tol = 1e-8);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const cmat& matrix() const { return mat_; }

 private:
  int dim_in_;
  int dim_out_;
  cmat mat_;
};

DensityMatrix apply_channel(const QuantumChannel& phi, const DensityMatrix& rho);
cmat apply_kraus(const std::vector<cmat>& kraus, const cmat& x);
cmat apply_adjoint(const QuantumChannel& phi, const cmat& a);
ChoiMatrix kraus_to_choi(const QuantumChannel& phi);
DensityMatrix apply_via_choi(const ChoiMatrix& choi, const DensityMatrix& rho);
std::vector<cmat> choi_to_kraus(const ChoiMatrix& choi, double threshold = 1e-12);

/// F(rho, tau) = ||rho^{1/2} tau^{1/2}||_1.
double fidelity(const DensityMatrix& rho, const DensityMatrix& tau);

/// psi after phi: Kraus family {L_j K_i}.
QuantumChannel channel_compose(const QuantumChannel& psi, const QuantumChannel& phi);

// Channel constructors used across the toolkit and its fixtures.
QuantumChannel identity_channel(int dim);
QuantumChannel unitary_channel(const cmat& u);
QuantumChannel depolarizing_channel(int dim, double p);
QuantumChannel attach_ancilla_channel(int dim, const DensityMatrix& tau);
QuantumChannel partial_trace_channel(int dim_keep, int dim_traced);
QuantumChannel pinching_channel(const cmat& projector);

}  // namespace qsuff
