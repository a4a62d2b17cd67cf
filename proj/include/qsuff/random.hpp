#pragma once

#include <cstdint>
#include <random>

#include "qsuff/quantum.hpp"

namespace qsuff {

using Rng = std::mt19937_64;

/// Seed from the QSUFF_SEED environment variable, default 42.
std::uint64_t default_seed();

/// Ginibre matrix: i.i.d. standard complex Gaussian entries.
cmat random_ginibre(int rows, int cols, Rng& rng);

/// Haar-random unitary via QR of a Ginibre matrix.
cmat random_unitary(int dim, Rng& rng);

/// G G^dag / Tr, mixed with floor * I/d to keep the spectrum away from zero.
DensityMatrix random_density(int dim, Rng& rng, double floor = 0.0);

/// Random effect U diag(u_i) U^dag with u_i uniform in [0, 1].
Effect random_effect(int dim, Rng& rng);

/// Random CPTP map from a Haar-random isometry into dim_out * kraus_count.
QuantumChannel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng);

}  // namespace qsuff
