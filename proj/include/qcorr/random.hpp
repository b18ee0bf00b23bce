#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "qcorr/measurement.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

using Rng = std::mt19937_64;

/// Full-rank state G G^dagger / Tr(G G^dagger) from a complex Ginibre matrix.
DensityMatrix random_density(const std::vector<std::size_t>& dims, Rng& rng);

/// Haar-distributed unitary (Gram-Schmidt on a Ginibre matrix).
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

ProjectiveMeasurement random_measurement(std::size_t d, Rng& rng);

/// sum_i w_i |beta_i><beta_i| over the four Bell states with Dirichlet(1)
/// weights. Both marginals are maximally mixed.
DensityMatrix random_bell_diagonal(Rng& rng);

/// sum_ij p_ij |i><i| (x) |j><j| with a random joint table.
DensityMatrix random_classical_classical(std::size_t da, std::size_t db, Rng& rng);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger for a bipartite state.
DensityMatrix apply_local_unitaries(const DensityMatrix& rho, const ComplexMatrix& ua,
                                    const ComplexMatrix& ub);

}  // namespace qcorr
