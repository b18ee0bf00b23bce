#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcorr/measurement.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct OptimizerConfig {
  std::size_t grid_theta = 128;
  std::size_t grid_phi = 128;
  /// Random starts for subsystems of dimension > 2.
  std::size_t restarts = 32;
  /// Moves improving J by less than this count as failures; also the width
  /// of the tie band for the lexicographic tie-break.
  double refine_tolerance = 1e-9;
  std::size_t max_refine_steps = 500;
  std::uint64_t seed = 0;

  /// Throws ParamOutOfRange unless every field is positive.
  void validate() const;
};

/// Pattern search stops once its step falls below this (radians or
/// generator units).
inline constexpr double kMinRefineStep = 1e-6;

struct GridResult {
  double theta = 0.0;
  double phi = 0.0;
  double j_value = 0.0;
};

struct RefineResult {
  std::vector<double> params;
  double j_value = 0.0;
  std::size_t iterations = 0;
};

struct OptimalMeasurementResult {
  ProjectiveMeasurement measurement;
  /// (theta, phi) for qubits, the d*d generator parameters otherwise.
  std::vector<double> params;
  double j_value = 0.0;
  double mutual_info = 0.0;
  double discord = 0.0;
  std::size_t iterations = 0;
  /// Refined J minus best grid J; only present for qubits.
  std::optional<double> oracle_gap;
};

/// Exhaustive search over theta_i = i pi / (n_theta - 1), phi_j = 2 pi j / n_phi.
/// Among points within refine_tolerance of the best, the lexicographically
/// smallest (theta, phi) wins.
GridResult grid_search_qubit(const DensityMatrix& rho, std::size_t k, std::size_t n_theta,
                             std::size_t n_phi, double tie_tolerance = 1e-9);

/// Compass search on J from `start`. For qubits the parameters are (theta,
/// phi); otherwise the d*d generator of unitary_from_generator. Never returns
/// a J below the starting value.
RefineResult refine_local(const DensityMatrix& rho, std::size_t k, std::span<const double> start,
                          const OptimizerConfig& config);

/// sup_Pi J on subsystem k and the resulting discord I - J (floored at 0 when
/// within 1e-9 of it).
OptimalMeasurementResult optimize_measurement(const DensityMatrix& rho, std::size_t k,
                                              const OptimizerConfig& config = {});

/// exp(i H) where H is Hermitian with diagonal params[0..d) and then one
/// (real, imaginary) pair per upper-triangular entry in row-major order.
ComplexMatrix unitary_from_generator(std::span<const double> params, std::size_t d);

/// Maps (theta, phi) onto theta in [0, pi], phi in [0, 2 pi) describing the
/// same projector pair.
std::pair<double, double> canonical_angles(double theta, double phi);

}  // namespace qcorr
