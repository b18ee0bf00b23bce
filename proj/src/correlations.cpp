#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

void require_order(const DensityMatrix& rho, std::span<const std::size_t> order) {
  std::vector<std::size_t> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> expected(rho.num_subsystems());
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected)
    throw Error(ErrorKind::BadOrder, "measurement order must be a permutation of 0.." +
                                         std::to_string(rho.num_subsystems() - 1));
}

// p(i_0, ..., i_{m-1}) = <w|rho|w> with w the product of the chosen basis vectors.
ProbabilityTable outcome_table(const DensityMatrix& rho,
                               const std::vector<const ProjectiveMeasurement*>& by_subsystem) {
  const auto& dims = rho.dims();
  const std::size_t n = rho.dimension();
  std::vector<double> probs(n, 0.0);
  std::vector<std::size_t> outcome(dims.size(), 0);
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::vector<Complex> w{1.0};
    for (std::size_t j = 0; j < dims.size(); ++j) {
      const auto& u = by_subsystem[j]->basis();
      std::vector<Complex> next;
      next.reserve(w.size() * dims[j]);
      for (const Complex& x : w)
        for (std::size_t a = 0; a < dims[j]; ++a) next.push_back(x * u(a, outcome[j]));
      w = std::move(next);
    }
    Complex acc{0.0, 0.0};
    for (std::size_t r = 0; r < n; ++r) {
      if (w[r] == Complex{}) continue;
      Complex row{0.0, 0.0};
      for (std::size_t c = 0; c < n; ++c) row += rho.matrix()(r, c) * w[c];
      acc += std::conj(w[r]) * row;
    }
    probs[flat] = acc.real();
    // Advance the big-endian outcome counter.
    for (std::size_t j = dims.size(); j-- > 0;) {
      if (++outcome[j] < dims[j]) break;
      outcome[j] = 0;
    }
  }
  return ProbabilityTable(dims, std::move(probs));
}

}  // namespace

double discord(const DensityMatrix& rho, std::size_t k, const OptimizerConfig& config) {
  return optimize_measurement(rho, k, config).discord;
}

double classical_hv(const DensityMatrix& rho, std::size_t k, const OptimizerConfig& config) {
  return optimize_measurement(rho, k, config).j_value;
}

SequentialReport sequential_measure(const DensityMatrix& rho, std::span<const std::size_t> order,
                                    const OptimizerConfig& config) {
  require_order(rho, order);
  SequentialReport report;
  report.order.assign(order.begin(), order.end());
  report.mutual_info = mutual_information(rho);

  DensityMatrix current = rho;
  std::vector<std::size_t> step_of(rho.num_subsystems());
  for (std::size_t step = 0; step < order.size(); ++step) {
    const std::size_t k = order[step];
    auto optimum = optimize_measurement(current, k, config);
    report.step_discords.push_back(optimum.discord);
    report.step_params.push_back(optimum.params);
    current = apply_nonselective(current, k, optimum.measurement);
    report.step_measurements.push_back(std::move(optimum.measurement));
    step_of[k] = step;
  }
  report.q_total = std::accumulate(report.step_discords.begin(), report.step_discords.end(), 0.0);

  std::vector<const ProjectiveMeasurement*> by_subsystem;
  for (std::size_t j = 0; j < rho.num_subsystems(); ++j)
    by_subsystem.push_back(&report.step_measurements[step_of[j]]);
  report.classical_table = outcome_table(current, by_subsystem);
  report.c_total = classical_mutual_information(report.classical_table);
  report.residual_sum = std::abs(report.q_total + report.c_total - report.mutual_info);
  report.residual_classical =
      std::abs(report.q_total - (report.mutual_info - report.c_total));
  report.final_state = std::move(current);
  return report;
}

double overall_q(const DensityMatrix& rho, const OptimizerConfig& config) {
  std::vector<std::size_t> order(rho.num_subsystems());
  std::iota(order.begin(), order.end(), 0);
  return sequential_measure(rho, order, config).q_total;
}

double overall_c(const DensityMatrix& rho, const OptimizerConfig& config) {
  std::vector<std::size_t> order(rho.num_subsystems());
  std::iota(order.begin(), order.end(), 0);
  return sequential_measure(rho, order, config).c_total;
}

AllOrdersReport sequential_all_orders(const DensityMatrix& rho, const OptimizerConfig& config) {
  if (rho.num_subsystems() > 4)
    throw Error(ErrorKind::BadOrder, "all-orders exploration supports at most 4 subsystems");
  std::vector<std::size_t> order(rho.num_subsystems());
  std::iota(order.begin(), order.end(), 0);
  AllOrdersReport out;
  do {
    out.reports.push_back(sequential_measure(rho, order, config));
  } while (std::next_permutation(order.begin(), order.end()));
  auto [lo, hi] = std::minmax_element(
      out.reports.begin(), out.reports.end(),
      [](const SequentialReport& a, const SequentialReport& b) { return a.q_total < b.q_total; });
  out.q_min = lo->q_total;
  out.q_max = hi->q_total;
  return out;
}

CorrelationReport correlation_report(const DensityMatrix& rho, const OptimizerConfig& config,
                                     std::optional<std::vector<std::size_t>> order) {
  if (rho.num_subsystems() < 2)
    throw Error(ErrorKind::SinglePartyState, "correlations need >= 2 subsystems");
  CorrelationReport report;
  report.dims = rho.dims();
  for (std::size_t k = 0; k < rho.num_subsystems(); ++k)
    report.marginal_entropies.push_back(von_neumann_entropy(reduced(rho, {k})));
  report.joint_entropy = von_neumann_entropy(rho);
  report.mutual_info = mutual_information(rho);
  for (std::size_t k = 0; k < rho.num_subsystems(); ++k) {
    auto optimum = optimize_measurement(rho, k, config);
    report.per_subsystem.push_back({optimum.discord, optimum.j_value, std::move(optimum)});
  }
  if (!order) {
    order.emplace(rho.num_subsystems());
    std::iota(order->begin(), order->end(), 0);
  }
  report.sequential = sequential_measure(rho, *order, config);
  return report;
}

double max_conditional_commutator(const ConditionalEnsemble& ensemble) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ensemble.states.size(); ++i)
    for (std::size_t j = i + 1; j < ensemble.states.size(); ++j) {
      if (!ensemble.states[i] || !ensemble.states[j]) continue;
      const auto c = commutator(ensemble.states[i]->matrix(), ensemble.states[j]->matrix());
      worst = std::max(worst, max_abs_diff(c, ComplexMatrix(c.rows(), c.cols())));
    }
  return worst;
}

std::string to_string(const Classification& c) {
  switch (c.kind) {
    case StateClass::Product: return "product";
    case StateClass::ClassicalClassical: return "classical_classical";
    case StateClass::ClassicalQuantum:
      return "classical_quantum(" + std::to_string(c.subsystem.value_or(0)) + ")";
    case StateClass::Discordant: return "discordant";
  }
  return "unknown";
}

Classification classify(const DensityMatrix& rho, const OptimizerConfig& config,
                        const ClassifyThresholds& thresholds) {
  if (rho.num_subsystems() != 2)
    throw Error(ErrorKind::DimensionMismatch, "classification is defined for bipartite states");
  Classification out;
  if (mutual_information(rho) <= thresholds.mutual_info) {
    out.kind = StateClass::Product;
    return out;
  }
  const auto opt_a = optimize_measurement(rho, 0, config);
  const auto opt_b = optimize_measurement(rho, 1, config);
  out.discord_a = opt_a.discord;
  out.discord_b = opt_b.discord;
  const bool zero_a = opt_a.discord <= thresholds.discord;
  const bool zero_b = opt_b.discord <= thresholds.discord;

  if (zero_a || zero_b) {
    const std::size_t k = zero_a ? 0 : 1;
    const auto& optimum = zero_a ? opt_a : opt_b;
    out.max_commutator = max_conditional_commutator(conditionals(rho, k, optimum.measurement));
    if (zero_a && zero_b && out.max_commutator <= thresholds.commutator) {
      out.kind = StateClass::ClassicalClassical;
    } else {
      out.kind = StateClass::ClassicalQuantum;
      out.subsystem = k;
    }
    return out;
  }
  out.kind = StateClass::Discordant;
  return out;
}

}  // namespace qcorr
