#include "qsuff/random.hpp"

#include <cstdlib>
#include <string>

namespace qsuff {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QSUFF_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 42;
}

cmat random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  cmat g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = complexd(gauss(rng), gauss(rng));
  return g;
}

cmat random_unitary(int dim, Rng& rng) {
  const cmat g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  // Fix the phases so the distribution is Haar.
  const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const complexd diag = r(i, i);
    q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

DensityMatrix random_density(int dim, Rng& rng, double floor) {
  const cmat g = random_ginibre(dim, dim, rng);
  cmat rho = g * g.adjoint();
  rho /= rho.trace().real();
  if (floor > 0.0) {
    rho = (1.0 - floor) * rho + (floor / dim) * cmat::Identity(dim, dim);
  }
  return DensityMatrix(rho);
}

Effect random_effect(int dim, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const cmat u = random_unitary(dim, rng);
  rvec vals(dim);
  for (int i = 0; i < dim; ++i) vals[i] = uniform(rng);
  return Effect(u * vals.asDiagonal() * u.adjoint());
}

QuantumChannel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng) {
  // Orthonormal columns of a (dim_out * kraus_count) x dim_in Ginibre matrix
  // give an isometry; its row blocks are an exactly trace-preserving family.
  const cmat g = random_ginibre(dim_out * kraus_count, dim_in, rng);
  Eigen::HouseholderQR<cmat> qr(g);
  const cmat v = cmat(qr.householderQ()).leftCols(dim_in);
  std::vector<cmat> kraus;
  kraus.reserve(kraus_count);
  for (int i = 0; i < kraus_count; ++i) {
    kraus.push_back(v.middleRows(i * dim_out, dim_out));
  }
  return QuantumChannel(std::move(kraus));
}

}  // namespace qsuff
