#include "qcorr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qcorr/correlations.hpp"
#include "qcorr/error.hpp"
#include "qcorr/infotheory.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

namespace {

// Values reported for the worked example (|00> + |1+>)/sqrt(2).
constexpr double kExampleDiscordA = 0.600876;
constexpr double kExampleDiscordB = 0.201752;
constexpr double kExampleQ = 0.802628;

CheckResult check(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured <= tolerance};
}

void paper_example_suite(const OptimizerConfig& config, std::vector<CheckResult>& out) {
  const auto rho = paper_example();
  const auto opt_a = optimize_measurement(rho, 0, config);
  out.push_back(check("example: D_A = 0.600876", std::abs(opt_a.discord - kExampleDiscordA), 5e-4));
  out.push_back(check("example: optimal A basis is computational",
                      projector_distance(opt_a.measurement, qubit_measurement(0.0, 0.0)), 1e-3));

  const auto post = apply_nonselective(rho, 0, opt_a.measurement);
  const auto opt_b = optimize_measurement(post, 1, config);
  out.push_back(check("example: D_B after A = 0.201752",
                      std::abs(opt_b.discord - kExampleDiscordB), 5e-4));
  out.push_back(check("example: optimal B axis sin(pi/8)|0> + cos(pi/8)|1>",
                      bloch_axis_angle(opt_b.measurement,
                                       qubit_measurement(3.0 * std::numbers::pi / 4.0, 0.0)),
                      1e-2));

  const std::vector<std::size_t> order{0, 1};
  const auto seq = sequential_measure(rho, order, config);
  out.push_back(check("example: Q = 0.802628", std::abs(seq.q_total - kExampleQ), 1e-3));
  out.push_back(check("example: |Q + C - I|", seq.residual_sum, 1e-6));
  out.push_back(check("example: |Q - (I - I_cl)|", seq.residual_classical, 1e-6));
}

void bounds_suite(std::uint64_t seed, const OptimizerConfig& config,
                  std::vector<CheckResult>& out) {
  Rng rng(seed);
  double neg_discord = 0.0, discord_over_q = 0.0, q_over_i = 0.0, c_over_ca = 0.0;
  double monotonicity = 0.0, residual = 0.0;
  const std::vector<std::size_t> order{0, 1};
  for (int n = 0; n < 40; ++n) {
    const auto rho = random_density({2, 2}, rng);
    const auto seq = sequential_measure(rho, order, config);
    const double d_a = seq.step_discords[0];
    const double c_a = seq.mutual_info - d_a;
    neg_discord = std::max(neg_discord, -d_a);
    discord_over_q = std::max(discord_over_q, d_a - seq.q_total);
    q_over_i = std::max(q_over_i, seq.q_total - seq.mutual_info);
    c_over_ca = std::max(c_over_ca, seq.c_total - c_a);

    const auto m = random_measurement(2, rng);
    const std::size_t k = n % 2;
    monotonicity = std::max(
        monotonicity, mutual_information(apply_nonselective(rho, k, m)) - seq.mutual_info);

    const auto after = apply_nonselective(rho, 0, seq.step_measurements[0]);
    residual = std::max(residual, optimize_measurement(after, 0, config).discord);
  }
  out.push_back(check("bounds: D_A >= 0 (worst -D_A)", neg_discord, 1e-9));
  out.push_back(check("bounds: D_A <= Q (worst D_A - Q)", discord_over_q, 1e-9));
  out.push_back(check("bounds: Q <= I (worst Q - I)", q_over_i, 1e-6));
  out.push_back(check("bounds: C <= C_A (worst C - C_A)", c_over_ca, 1e-6));
  out.push_back(check("bounds: I(M(rho)) <= I(rho)", monotonicity, 1e-9));
  out.push_back(check("bounds: residual discord after optimal measurement", residual, 1e-3));
}

void oracle_suite(std::uint64_t seed, const OptimizerConfig& config,
                  std::vector<CheckResult>& out) {
  Rng rng(seed + 1);
  double worst = 0.0;
  for (int n = 0; n < 8; ++n) {
    const auto rho = random_density({2, 2}, rng);
    const std::size_t k = n % 2;
    const double optimized = optimize_measurement(rho, k, config).j_value;
    const double grid = grid_search_qubit(rho, k, 512, 512).j_value;
    worst = std::max(worst, std::abs(optimized - grid));
  }
  out.push_back(check("oracle: |J_opt - J_grid512|", worst, 1e-4));
}

void identities_suite(std::uint64_t seed, const OptimizerConfig& config,
                      std::vector<CheckResult>& out) {
  Rng rng(seed + 2);
  double sum_residual = 0.0, classical_residual = 0.0, relative = 0.0, channel = 0.0;
  const std::vector<std::vector<std::size_t>> shapes{{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}};
  for (int n = 0; n < 12; ++n) {
    const auto& dims = shapes[n % shapes.size()];
    const auto rho = random_density(dims, rng);
    const double mi = mutual_information(rho);

    if (dims.size() == 2) {
      const auto product = tensor(reduced(rho, {0}), reduced(rho, {1}));
      relative = std::max(relative, std::abs(mi - relative_entropy(rho, product)));
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const auto m = random_measurement(dims[k], rng);
      channel = std::max(channel, std::abs(induced_J(rho, k, m) -
                                           mutual_information(apply_nonselective(rho, k, m))));
    }
    if (std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 2; })) {
      std::vector<std::size_t> order(dims.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      const auto seq = sequential_measure(rho, order, config);
      sum_residual = std::max(sum_residual, seq.residual_sum);
      classical_residual = std::max(classical_residual, seq.residual_classical);
    }
  }
  out.push_back(check("identities: |Q + C - I|", sum_residual, 1e-6));
  out.push_back(check("identities: |Q - (I - I_cl)|", classical_residual, 1e-6));
  out.push_back(check("identities: |I - S(rho || rho_A x rho_B)|", relative, 1e-8));
  out.push_back(check("identities: |J - I(M(rho))|", channel, 1e-8));
}

}  // namespace

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names{"paper-example", "bounds", "oracle", "identities",
                                              "all"};
  return names;
}

std::vector<CheckResult> run_verification(const std::string& suite, std::uint64_t seed,
                                          const OptimizerConfig& config) {
  const auto& names = verification_suites();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw Error(ErrorKind::ParamOutOfRange, "unknown verification suite '" + suite + "'");
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (all || suite == "paper-example") paper_example_suite(config, out);
  if (all || suite == "bounds") bounds_suite(seed, config, out);
  if (all || suite == "oracle") oracle_suite(seed, config, out);
  if (all || suite == "identities") identities_suite(seed, config, out);
  return out;
}

void print_checks(const std::vector<CheckResult>& checks, std::ostream& out) {
  char buffer[64];
  for (const auto& c : checks) {
    std::snprintf(buffer, sizeof buffer, "measured=%.6e tol=%.1e", c.measured, c.tolerance);
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  " << buffer << '\n';
  }
  const auto passed = std::count_if(checks.begin(), checks.end(),
                                    [](const CheckResult& c) { return c.passed; });
  out << passed << "/" << checks.size() << " checks passed\n";
}

}  // namespace qcorr
