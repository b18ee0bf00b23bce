#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

inline constexpr double kProjectorTolerance = 1e-9;

/// Complete set of d orthogonal rank-1 projectors on one d-dimensional
/// subsystem. Stored as the measurement basis (column i spans projector i);
/// the projector matrices are materialized on construction.
class ProjectiveMeasurement {
 public:
  /// Validates Hermiticity, idempotence, unit trace, pairwise orthogonality
  /// and completeness, each within 1e-9.
  explicit ProjectiveMeasurement(std::vector<ComplexMatrix> projectors);

  std::size_t subsystem_dim() const noexcept { return basis_.rows(); }
  const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
  /// Column i is a unit vector spanning projector i (phase arbitrary).
  const ComplexMatrix& basis() const noexcept { return basis_; }

 private:
  ProjectiveMeasurement(ComplexMatrix basis, std::vector<ComplexMatrix> projectors)
      : basis_(std::move(basis)), projectors_(std::move(projectors)) {}
  friend ProjectiveMeasurement measurement_from_unitary(const ComplexMatrix& u);

  ComplexMatrix basis_;
  std::vector<ComplexMatrix> projectors_;
};

/// Projectors onto cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> and its
/// orthogonal complement. theta in [0, pi], phi in [0, 2 pi).
ProjectiveMeasurement qubit_measurement(double theta, double phi);

/// Unit vectors spanning a qubit measurement, as the columns of a 2x2 unitary.
ComplexMatrix qubit_basis(double theta, double phi);

/// Projectors onto the columns of a unitary (checked within 1e-8).
ProjectiveMeasurement measurement_from_unitary(const ComplexMatrix& u);

/// Largest entrywise distance between two measurements, minimized over
/// relabelings of the outcomes.
double projector_distance(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b);

/// Angle (radians) between the Bloch axes of two qubit measurements, up to
/// relabeling of the outcomes; in [0, pi/2].
double bloch_axis_angle(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b);

/// Outcome probabilities and normalized states of the unmeasured subsystems.
/// Outcomes with probability below 1e-12 have no state (std::nullopt).
struct ConditionalEnsemble {
  std::vector<double> probabilities;
  std::vector<std::optional<DensityMatrix>> states;
  std::vector<std::size_t> rest_dims;
};

/// sum_i P_i rho P_i with P_i = I (x) Pi_i (x) I acting on subsystem k.
DensityMatrix apply_nonselective(const DensityMatrix& rho, std::size_t k,
                                 const ProjectiveMeasurement& m);

ConditionalEnsemble conditionals(const DensityMatrix& rho, std::size_t k,
                                 const ProjectiveMeasurement& m);

/// Mutual information induced by measuring subsystem k:
/// sum_{j != k} S(rho_j) - sum_i p_i S(rho_{rest|i}).
double induced_J(const DensityMatrix& rho, std::size_t k, const ProjectiveMeasurement& m);

/// Repeated J evaluation for one (state, subsystem) pair. Caches the blocks
/// of rho indexed by the measured subsystem and the marginal entropies of the
/// other subsystems, so each evaluation only builds the conditional states.
class JEvaluator {
 public:
  JEvaluator(const DensityMatrix& rho, std::size_t k);

  std::size_t measured_dim() const noexcept { return d_; }
  std::size_t rest_dim() const noexcept { return rest_; }
  double rest_entropy_sum() const noexcept { return rest_entropy_sum_; }

  /// J for the measurement whose basis vectors are the columns of `basis`
  /// (d x d, assumed unitary).
  double operator()(const ComplexMatrix& basis) const;

  /// Average conditional entropy sum_i p_i S(rho_{rest|i}).
  double conditional_entropy(const ComplexMatrix& basis) const;

 private:
  std::size_t d_;
  std::size_t rest_;
  // blocks_[a * d + b] holds rho[(a, r), (b, c)] over rest indices r, c.
  std::vector<ComplexMatrix> blocks_;
  double rest_entropy_sum_;
};

/// Composite index of (measured value a at slot k, rest index r), big-endian.
std::size_t compose_index(std::span<const std::size_t> dims, std::size_t k, std::size_t a,
                          std::size_t r);

}  // namespace qcorr
