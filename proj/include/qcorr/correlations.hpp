#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/infotheory.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

/// One pass of optimal local measurements over every subsystem, in `order`.
struct SequentialReport {
  std::vector<std::size_t> order;
  /// Indexed by step, not by subsystem.
  std::vector<double> step_discords;
  std::vector<ProjectiveMeasurement> step_measurements;
  std::vector<std::vector<double>> step_params;
  double q_total = 0.0;
  double c_total = 0.0;
  double mutual_info = 0.0;
  /// Outcome distribution of the final, fully classical state; party j of
  /// the table is subsystem j regardless of the measurement order.
  ProbabilityTable classical_table{{1}, {1.0}};
  double residual_sum = 0.0;        // |Q + C - I|
  double residual_classical = 0.0;  // |Q - (I - I_cl(p))|
  DensityMatrix final_state{ComplexMatrix::identity(2) * 0.5, {2}};
};

struct SubsystemCorrelations {
  double discord = 0.0;
  double classical = 0.0;  // Henderson-Vedral C_k = sup J
  OptimalMeasurementResult optimum;
};

struct CorrelationReport {
  std::vector<std::size_t> dims;
  std::vector<double> marginal_entropies;
  double joint_entropy = 0.0;
  double mutual_info = 0.0;
  std::vector<SubsystemCorrelations> per_subsystem;
  SequentialReport sequential;
};

double discord(const DensityMatrix& rho, std::size_t k, const OptimizerConfig& config = {});
double classical_hv(const DensityMatrix& rho, std::size_t k, const OptimizerConfig& config = {});

/// Measures each subsystem in `order` with its optimal measurement on the
/// current state, accumulating the step discords into Q. Throws BadOrder
/// unless `order` is a permutation of all subsystems.
SequentialReport sequential_measure(const DensityMatrix& rho, std::span<const std::size_t> order,
                                    const OptimizerConfig& config = {});

/// Q and C for the identity order 0, 1, ..., m-1.
double overall_q(const DensityMatrix& rho, const OptimizerConfig& config = {});
double overall_c(const DensityMatrix& rho, const OptimizerConfig& config = {});

/// Every measurement order (at most 4 subsystems). This explores how Q
/// depends on the order; the measure itself is defined by a fixed order.
struct AllOrdersReport {
  std::vector<SequentialReport> reports;  // lexicographic order of permutations
  double q_min = 0.0;
  double q_max = 0.0;
};
AllOrdersReport sequential_all_orders(const DensityMatrix& rho, const OptimizerConfig& config = {});

CorrelationReport correlation_report(const DensityMatrix& rho, const OptimizerConfig& config = {},
                                     std::optional<std::vector<std::size_t>> order = std::nullopt);

enum class StateClass { Product, ClassicalClassical, ClassicalQuantum, Discordant };

struct ClassifyThresholds {
  double mutual_info = 1e-6;
  double discord = 1e-6;
  double commutator = 1e-6;
};

struct Classification {
  StateClass kind = StateClass::Discordant;
  /// Subsystem with zero discord, for ClassicalQuantum.
  std::optional<std::size_t> subsystem;
  double discord_a = 0.0;
  double discord_b = 0.0;
  double max_commutator = 0.0;
};

std::string to_string(const Classification& c);

/// Bipartite states only.
Classification classify(const DensityMatrix& rho, const OptimizerConfig& config = {},
                        const ClassifyThresholds& thresholds = {});

/// Largest entrywise modulus of [a, b] over all pairs of conditional states
/// with nonzero probability.
double max_conditional_commutator(const ConditionalEnsemble& ensemble);

}  // namespace qcorr
