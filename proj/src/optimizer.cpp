#include "qcorr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <string>

#include "qcorr/error.hpp"
#include "qcorr/infotheory.hpp"

namespace qcorr {

namespace {

constexpr double kPi = std::numbers::pi;

void require_subsystem(const DensityMatrix& rho, std::size_t k) {
  if (rho.num_subsystems() < 2)
    throw Error(ErrorKind::SinglePartyState, "discord needs >= 2 subsystems");
  if (k >= rho.num_subsystems())
    throw Error(ErrorKind::DimensionMismatch, "subsystem index " + std::to_string(k) +
                                                  " out of range");
}

// Basis for a parameter vector: Bloch angles for qubits, generator otherwise.
ComplexMatrix basis_for(std::span<const double> params, std::size_t d) {
  if (d == 2) {
    const auto [theta, phi] = canonical_angles(params[0], params[1]);
    return qubit_basis(theta, phi);
  }
  return unitary_from_generator(params, d);
}

std::vector<double> canonical_params(std::vector<double> params, std::size_t d) {
  if (d == 2) {
    const auto [theta, phi] = canonical_angles(params[0], params[1]);
    params = {theta, phi};
  }
  return params;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (grid_theta < 2 || grid_phi < 1 || restarts < 1 || max_refine_steps < 1 ||
      !(refine_tolerance > 0.0))
    throw Error(ErrorKind::ParamOutOfRange,
                "optimizer config needs grid_theta >= 2, grid_phi, restarts, max_refine_steps >= "
                "1 and refine_tolerance > 0");
}

std::pair<double, double> canonical_angles(double theta, double phi) {
  const double two_pi = 2.0 * kPi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta > kPi) {
    // (theta, phi) and (2 pi - theta, phi + pi) give the same vector up to sign.
    theta = two_pi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return {theta, phi};
}

ComplexMatrix unitary_from_generator(std::span<const double> params, std::size_t d) {
  if (d < 1 || params.size() != d * d)
    throw Error(ErrorKind::LengthMismatch, "generator for dimension " + std::to_string(d) +
                                               " needs " + std::to_string(d * d) +
                                               " parameters, got " +
                                               std::to_string(params.size()));
  ComplexMatrix h(d, d);
  std::size_t next = d;
  for (std::size_t i = 0; i < d; ++i) h(i, i) = params[i];
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r + 1; c < d; ++c) {
      h(r, c) = Complex{params[next], params[next + 1]};
      h(c, r) = std::conj(h(r, c));
      next += 2;
    }
  const auto eig = eigh(h);
  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) scaled(r, c) *= std::polar(1.0, eig.eigenvalues[c]);
  return scaled * eig.eigenvectors.adjoint();
}

GridResult grid_search_qubit(const DensityMatrix& rho, std::size_t k, std::size_t n_theta,
                             std::size_t n_phi, double tie_tolerance) {
  require_subsystem(rho, k);
  if (rho.dims()[k] != 2)
    throw Error(ErrorKind::NotAQubit, "grid search needs a qubit, subsystem " + std::to_string(k) +
                                          " has dimension " + std::to_string(rho.dims()[k]));
  if (n_theta < 2 || n_phi < 1) throw Error(ErrorKind::ParamOutOfRange, "grid too small");

  const JEvaluator evaluate(rho, k);
  std::vector<double> values(n_theta * n_phi);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double theta = kPi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_phi);
      const double value = evaluate(qubit_basis(theta, phi));
      values[i * n_phi + j] = value;
      best = std::max(best, value);
    }
  }
  // Row-major order is lexicographic order in (theta, phi).
  const auto first = std::find_if(values.begin(), values.end(),
                                  [&](double v) { return v >= best - tie_tolerance; });
  const auto flat = static_cast<std::size_t>(first - values.begin());
  return {kPi * static_cast<double>(flat / n_phi) / static_cast<double>(n_theta - 1),
          2.0 * kPi * static_cast<double>(flat % n_phi) / static_cast<double>(n_phi), *first};
}

namespace {

RefineResult pattern_search(const JEvaluator& evaluate, std::size_t d, std::vector<double> x,
                            double step, const OptimizerConfig& config) {
  x = canonical_params(std::move(x), d);
  double fx = evaluate(basis_for(x, d));
  std::size_t iterations = 0;
  while (iterations < config.max_refine_steps && step >= kMinRefineStep) {
    ++iterations;
    // Poll every axis in both directions and take the best strict improvement.
    std::vector<double> best_x;
    double best_f = fx + config.refine_tolerance;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (double sign : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[i] += sign * step;
        y = canonical_params(std::move(y), d);
        const double fy = evaluate(basis_for(y, d));
        if (fy > best_f) {
          best_f = fy;
          best_x = std::move(y);
        }
      }
    if (best_x.empty()) {
      step *= 0.5;
    } else {
      x = std::move(best_x);
      fx = best_f;
    }
  }
  return {std::move(x), fx, iterations};
}

double initial_step(std::size_t d, const OptimizerConfig& config) {
  return d == 2 ? kPi / static_cast<double>(config.grid_theta - 1) : kPi / 8.0;
}

}  // namespace

RefineResult refine_local(const DensityMatrix& rho, std::size_t k, std::span<const double> start,
                          const OptimizerConfig& config) {
  config.validate();
  require_subsystem(rho, k);
  const std::size_t d = rho.dims()[k];
  const std::size_t expected = d == 2 ? 2 : d * d;
  if (start.size() != expected)
    throw Error(ErrorKind::LengthMismatch, "refinement start needs " + std::to_string(expected) +
                                               " parameters");
  const JEvaluator evaluate(rho, k);
  return pattern_search(evaluate, d, {start.begin(), start.end()}, initial_step(d, config), config);
}

OptimalMeasurementResult optimize_measurement(const DensityMatrix& rho, std::size_t k,
                                              const OptimizerConfig& config) {
  config.validate();
  require_subsystem(rho, k);
  const std::size_t d = rho.dims()[k];
  const JEvaluator evaluate(rho, k);

  RefineResult best;
  std::optional<double> oracle_gap;
  if (d == 2) {
    const auto grid = grid_search_qubit(rho, k, config.grid_theta, config.grid_phi,
                                        config.refine_tolerance);
    best = pattern_search(evaluate, d, {grid.theta, grid.phi}, initial_step(d, config), config);
    oracle_gap = best.j_value - grid.j_value;
  } else {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uniform(-kPi, kPi);
    std::vector<std::vector<double>> starts;
    // The computational basis is always tried first.
    starts.emplace_back(d * d, 0.0);
    for (std::size_t s = 0; s < config.restarts; ++s) {
      std::vector<double> params(d * d);
      for (double& p : params) p = uniform(rng);
      starts.push_back(std::move(params));
    }
    std::vector<RefineResult> candidates;
    candidates.reserve(starts.size());
    for (auto& start : starts)
      candidates.push_back(
          pattern_search(evaluate, d, std::move(start), initial_step(d, config), config));

    double top = -std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) top = std::max(top, c.j_value);
    std::size_t total_iterations = 0;
    const RefineResult* chosen = nullptr;
    for (const auto& c : candidates) {
      total_iterations += c.iterations;
      if (c.j_value < top - config.refine_tolerance) continue;
      if (chosen == nullptr || c.params < chosen->params) chosen = &c;
    }
    best = *chosen;
    best.iterations = total_iterations;
  }

  const double mutual_info = mutual_information(rho);
  double discord = mutual_info - best.j_value;
  if (discord < 0.0 && discord >= -1e-9) discord = 0.0;
  return {measurement_from_unitary(basis_for(best.params, d)),
          best.params,
          best.j_value,
          mutual_info,
          discord,
          best.iterations,
          oracle_gap};
}

}  // namespace qcorr
