#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/error.hpp"
#include "qcorr/random.hpp"

using namespace qcorr;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExampleDA = 0.600876036692856;
constexpr double kExampleDB = 0.2017520733857121;
constexpr double kExampleQ = 0.8026281100785679;
constexpr double kExampleI = 1.2017520733857123;

DensityMatrix classical_table_state() {
  return from_dense(ComplexMatrix::diagonal({0.5, 0.0, 0.0, 0.5}), {2, 2});
}

}  // namespace

TEST_CASE("discord and classical_hv") {
  CHECK(discord(paper_example(), 0) == doctest::Approx(kExampleDA).epsilon(1e-9));
  CHECK(classical_hv(paper_example(), 0) == doctest::Approx(kExampleI - kExampleDA).epsilon(1e-9));
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(discord(bell(BellState::PhiPlus), k) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(classical_hv(bell(BellState::PhiPlus), k) == doctest::Approx(1.0).epsilon(1e-9));
  }
  Rng rng(61);
  const auto product = tensor(random_density({2}, rng), random_density({3}, rng));
  CHECK(discord(product, 0) <= 1e-9);
  CHECK(discord(product, 1) <= 1e-9);
  CHECK(std::abs(classical_hv(product, 0)) <= 1e-9);
}

TEST_CASE("sequential_measure") {
  SUBCASE("worked example, order (A, B)") {
    const std::vector<std::size_t> order{0, 1};
    const auto r = sequential_measure(paper_example(), order);
    REQUIRE(r.step_discords.size() == 2);
    CHECK(r.step_discords[0] == doctest::Approx(kExampleDA).epsilon(1e-9));
    CHECK(r.step_discords[1] == doctest::Approx(kExampleDB).epsilon(1e-9));
    CHECK(r.q_total == doctest::Approx(kExampleQ).epsilon(1e-9));
    CHECK(r.c_total == doctest::Approx(kExampleI - kExampleQ).epsilon(1e-9));
    CHECK(std::abs(r.q_total - (r.step_discords[0] + r.step_discords[1])) <= 1e-12);
    CHECK(r.residual_sum <= 1e-6);
    CHECK(r.residual_classical <= 1e-6);
    CHECK(bloch_axis_angle(r.step_measurements[1], qubit_measurement(3 * kPi / 4, 0)) <= 1e-2);
    CHECK(r.step_params[0] == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("GHZ(3) with step-wise oracle confirmation") {
    const auto rho = ghz(3);
    const std::vector<std::size_t> order{0, 1, 2};
    const auto r = sequential_measure(rho, order);
    CHECK(r.mutual_info == doctest::Approx(3.0));
    CHECK(r.step_discords[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(r.step_discords[1]) <= 1e-9);
    CHECK(std::abs(r.step_discords[2]) <= 1e-9);
    CHECK(r.q_total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.c_total == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.classical_table.at(std::vector<std::size_t>{0, 0, 0}) == doctest::Approx(0.5));
    CHECK(r.classical_table.at(std::vector<std::size_t>{1, 1, 1}) == doctest::Approx(0.5));

    // Brute-force channel-output grid for each step, applying the step optimum.
    auto state = rho;
    for (std::size_t step = 0; step < 3; ++step) {
      const auto o = oracle::grid_channel(state, step, 33, 32);
      const double d_oracle = mutual_information(state) - o.j;
      CHECK(std::abs(d_oracle - r.step_discords[step]) <= 1e-4);
      state = apply_nonselective(state, step, r.step_measurements[step]);
    }
  }
  SUBCASE("bad orders") {
    const std::vector<std::size_t> repeated{0, 0}, short_order{0}, out_of_range{0, 2};
    CHECK_THROWS_AS(sequential_measure(paper_example(), repeated), Error);
    CHECK_THROWS_AS(sequential_measure(paper_example(), short_order), Error);
    CHECK_THROWS_AS(sequential_measure(paper_example(), out_of_range), Error);
  }
  SUBCASE("final state is classical on every subsystem") {
    Rng rng(62);
    const auto rho = random_density({2, 2, 2}, rng);
    const std::vector<std::size_t> order{2, 0, 1};
    const auto r = sequential_measure(rho, order);
    CHECK(r.residual_sum <= 1e-6);
    CHECK(r.residual_classical <= 1e-6);
    for (std::size_t k = 0; k < 3; ++k) CHECK(discord(r.final_state, k) <= 1e-3);
  }
}

TEST_CASE("overall_q and overall_c") {
  CHECK(overall_q(paper_example()) == doctest::Approx(kExampleQ).epsilon(1e-9));
  CHECK(overall_c(paper_example()) == doctest::Approx(kExampleI - kExampleQ).epsilon(1e-9));
  CHECK(std::abs(overall_q(classical_table_state())) <= 1e-9);
  CHECK(overall_c(classical_table_state()) == doctest::Approx(1.0));
  CHECK(overall_q(bell(BellState::PhiPlus)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(overall_c(bell(BellState::PhiPlus)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sequential_all_orders") {
  const auto all = sequential_all_orders(paper_example());
  REQUIRE(all.reports.size() == 2);
  CHECK(all.reports[0].order == std::vector<std::size_t>{0, 1});
  CHECK(all.reports[1].order == std::vector<std::size_t>{1, 0});
  CHECK(all.q_min <= all.q_max);
  CHECK(all.reports[0].q_total == doctest::Approx(kExampleQ).epsilon(1e-9));
  for (const auto& r : all.reports) CHECK(r.residual_sum <= 1e-6);
  CHECK(sequential_all_orders(ghz(3)).reports.size() == 6);
}

TEST_CASE("correlation_report") {
  const auto report = correlation_report(paper_example());
  CHECK(report.mutual_info == doctest::Approx(kExampleI).epsilon(1e-12));
  CHECK(std::abs(report.joint_entropy) <= 1e-9);
  REQUIRE(report.per_subsystem.size() == 2);
  for (const auto& s : report.per_subsystem)
    CHECK(std::abs(s.discord + s.classical - report.mutual_info) <= 1e-6);
  CHECK(report.sequential.q_total == doctest::Approx(kExampleQ).epsilon(1e-9));
  const auto reversed = correlation_report(paper_example(), {}, std::vector<std::size_t>{1, 0});
  CHECK(reversed.sequential.order == std::vector<std::size_t>{1, 0});
}

TEST_CASE("classify") {
  SUBCASE("post-measurement worked example is classical-quantum on A") {
    const auto post = apply_nonselective(paper_example(), 0, qubit_measurement(0, 0));
    const auto c = classify(post);
    CHECK(c.kind == StateClass::ClassicalQuantum);
    REQUIRE(c.subsystem.has_value());
    CHECK(*c.subsystem == 0);
    // [|0><0|, |+><+|] = [[0, 1/2], [-1/2, 0]].
    const auto e = conditionals(post, 0, qubit_measurement(0, 0));
    CHECK(max_conditional_commutator(e) == doctest::Approx(0.5));
  }
  SUBCASE("diagonal table state is classical-classical") {
    Rng rng(63);
    CHECK(classify(random_classical_classical(2, 3, rng)).kind == StateClass::ClassicalClassical);
    CHECK(classify(classical_table_state()).kind == StateClass::ClassicalClassical);
  }
  SUBCASE("worked example is discordant") {
    CHECK(classify(paper_example()).kind == StateClass::Discordant);
  }
  SUBCASE("product") {
    CHECK(classify(maximally_mixed({2, 2})).kind == StateClass::Product);
  }
  SUBCASE("multipartite rejected") {
    CHECK_THROWS_AS(classify(ghz(3)), Error);
  }
}

TEST_CASE("bound chain and identities on random two-qubit states") {
  Rng rng(64);
  for (int trial = 0; trial < 40; ++trial) {
    const auto rho = random_density({2, 2}, rng);
    const auto r = correlation_report(rho);
    const double i = r.mutual_info;
    const double d_a = r.per_subsystem[0].discord;
    const double q = r.sequential.q_total;
    CHECK(d_a >= 0.0);
    CHECK(d_a <= q + 1e-6);
    CHECK(q <= i + 1e-6);
    CHECK(r.sequential.c_total <= r.per_subsystem[0].classical + 1e-6);
    CHECK(r.sequential.residual_sum <= 1e-6);
    CHECK(r.sequential.residual_classical <= 1e-6);
    for (double step : r.sequential.step_discords) CHECK(step >= -1e-9);
  }
}

TEST_CASE("classical correlations survive each optimal measurement step") {
  Rng rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density({2, 2}, rng);
    const auto r = sequential_measure(rho, std::vector<std::size_t>{0, 1});
    auto state = rho;
    for (std::size_t step = 0; step < 2; ++step) {
      // The optimal measurement on `step` leaves C on that subsystem unchanged.
      const auto after = apply_nonselective(state, step, r.step_measurements[step]);
      CHECK(std::abs(classical_hv(state, step) - classical_hv(after, step)) <= 2e-3);
      state = after;
    }
  }
}

TEST_CASE("Bell-diagonal states: Q equals D_A and conditionals commute") {
  Rng rng(66);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_bell_diagonal(rng);
    const auto r = sequential_measure(rho, std::vector<std::size_t>{0, 1});
    const auto a = optimize_measurement(rho, 0);
    CHECK(std::abs(r.q_total - a.discord) <= 1e-3);
    CHECK(max_conditional_commutator(conditionals(rho, 0, a.measurement)) <= 1e-6);
  }
}

TEST_CASE("measurement-order diagnostic") {
  // Reported, not asserted equal: the two orders may differ.
  Rng rng(67);
  for (int trial = 0; trial < 5; ++trial) {
    const auto all = sequential_all_orders(random_density({2, 2}, rng));
    CHECK(all.q_max - all.q_min >= 0.0);
    CHECK(all.q_max <= all.reports[0].mutual_info + 1e-6);
  }
}
