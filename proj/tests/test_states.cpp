#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcorr/error.hpp"
#include "qcorr/random.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected qcorr::Error");
  return ErrorKind::ParseError;
}

void check_invariants(const DensityMatrix& rho) {
  CHECK(hermiticity_defect(rho.matrix()) <= 1e-9);
  CHECK(std::abs(rho.matrix().trace() - 1.0) <= 1e-9);
  CHECK(eigvalsh(rho.matrix()).front() >= -1e-9);
}

const double kH = 1.0 / std::numbers::sqrt2;

}  // namespace

TEST_CASE("from_dense") {
  SUBCASE("maximally mixed two qubits") {
    const auto rho = from_dense(ComplexMatrix::identity(4) * 0.25, {2, 2});
    CHECK(rho.dims() == std::vector<std::size_t>{2, 2});
    check_invariants(rho);
  }
  SUBCASE("trace 1.1 rejected") {
    CHECK(kind_of([] { from_dense(ComplexMatrix::diagonal({1.0, 0.1}), {2}); }) ==
          ErrorKind::TraceNotOne);
  }
  SUBCASE("negative eigenvalue rejected") {
    CHECK(kind_of([] { from_dense(ComplexMatrix::diagonal({1.2, -0.2}), {2}); }) ==
          ErrorKind::NotPSD);
  }
  SUBCASE("dust below -1e-9 tolerance is accepted") {
    CHECK_NOTHROW(from_dense(ComplexMatrix::diagonal({1.0 + 5e-10, -5e-10}), {2}));
  }
  SUBCASE("non-Hermitian rejected") {
    CHECK(kind_of([] { from_dense(ComplexMatrix{{0.5, 0.3}, {0.1, 0.5}}, {2}); }) ==
          ErrorKind::NotHermitian);
  }
  SUBCASE("dims must match") {
    CHECK(kind_of([] { from_dense(ComplexMatrix::identity(4) * 0.25, {2, 3}); }) ==
          ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { from_dense(ComplexMatrix::identity(4) * 0.25, {1, 4}); }) ==
          ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("from_pure") {
  SUBCASE("|00>") {
    const std::vector<Complex> a{1.0, 0.0, 0.0, 0.0};
    const auto rho = from_pure(a, {2, 2});
    CHECK(max_abs_diff(rho.matrix(), ComplexMatrix::diagonal({1, 0, 0, 0})) == 0.0);
  }
  SUBCASE("worked example amplitudes") {
    const std::vector<Complex> a{kH, 0.0, 0.5, 0.5};
    CHECK(max_abs_diff(from_pure(a, {2, 2}).matrix(), paper_example().matrix()) == 0.0);
    // Direct expansion of (|00> + |1>|+>)/sqrt2.
    const ComplexMatrix expected{{0.5, 0.0, kH / 2, kH / 2},
                                 {0.0, 0.0, 0.0, 0.0},
                                 {kH / 2, 0.0, 0.25, 0.25},
                                 {kH / 2, 0.0, 0.25, 0.25}};
    CHECK(max_abs_diff(paper_example().matrix(), expected) < 1e-15);
  }
  SUBCASE("Bell phi+") {
    const std::vector<Complex> a{kH, 0.0, 0.0, kH};
    CHECK(max_abs_diff(from_pure(a, {2, 2}).matrix(), bell(BellState::PhiPlus).matrix()) == 0.0);
  }
  SUBCASE("unnormalized amplitudes rejected") {
    const std::vector<Complex> a{1.0, 1.0, 0.0, 0.0};
    CHECK(kind_of([&] { from_pure(a, {2, 2}); }) == ErrorKind::NotNormalized);
  }
}

TEST_CASE("named families") {
  SUBCASE("paper_example") {
    const auto rho = named("paper_example", {});
    CHECK(max_abs_diff(rho.matrix(), paper_example().matrix()) == 0.0);
  }
  SUBCASE("werner p = 0 is maximally mixed") {
    const std::vector<double> p{0.0};
    CHECK(max_abs_diff(named("werner", p).matrix(), ComplexMatrix::identity(4) * 0.25) < 1e-15);
  }
  SUBCASE("werner p = 1 is the singlet") {
    CHECK(max_abs_diff(werner(1.0).matrix(), bell(BellState::PsiMinus).matrix()) < 1e-15);
    CHECK(bell(BellState::PsiMinus).matrix()(1, 2).real() == doctest::Approx(-0.5));
  }
  SUBCASE("ghz(3)") {
    const std::vector<double> n{3};
    const auto rho = named("ghz", n);
    CHECK(rho.dims() == std::vector<std::size_t>{2, 2, 2});
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.5));
    CHECK(rho.matrix()(0, 7).real() == doctest::Approx(0.5));
    CHECK(rho.matrix()(7, 7).real() == doctest::Approx(0.5));
    CHECK(rho.matrix()(3, 3).real() == 0.0);
  }
  SUBCASE("product of Bloch vectors") {
    const std::vector<double> params{0, 0, 1, 0, 0, -1};
    CHECK(max_abs_diff(named("product", params).matrix(), ComplexMatrix::diagonal({0, 1, 0, 0})) <
          1e-15);
  }
  SUBCASE("maximally_mixed uses dims") {
    const auto rho = named("maximally_mixed", {}, "", {2, 3});
    CHECK(rho.dimension() == 6);
  }
  SUBCASE("errors") {
    CHECK(kind_of([] { named("cluster", {}); }) == ErrorKind::UnknownFamily);
    const std::vector<double> bad{1.5};
    CHECK(kind_of([&] { named("werner", bad); }) == ErrorKind::ParamOutOfRange);
    const std::vector<double> long_vector{0, 0, 2};
    CHECK(kind_of([&] { named("product", long_vector); }) == ErrorKind::ParamOutOfRange);
    CHECK(kind_of([] { named("bell", {}, "chi+"); }) == ErrorKind::ParamOutOfRange);
  }
}

TEST_CASE("reduced") {
  SUBCASE("product state") {
    const auto a = from_dense(ComplexMatrix{{0.6, Complex{0.1, 0.1}}, {Complex{0.1, -0.1}, 0.4}}, {2});
    const auto b = maximally_mixed({3});
    CHECK(max_abs_diff(reduced(tensor(a, b), {0}).matrix(), a.matrix()) <= 1e-10);
  }
  SUBCASE("worked example marginal") {
    // rho_A = [[1/2, 1/(2 sqrt2)], [1/(2 sqrt2), 1/2]] from expanding |psi><psi|.
    const double off = 1.0 / (2.0 * std::numbers::sqrt2);
    CHECK(max_abs_diff(reduced(paper_example(), {0}).matrix(),
                       ComplexMatrix{{0.5, off}, {off, 0.5}}) < 1e-15);
  }
  SUBCASE("GHZ single-qubit marginal") {
    CHECK(max_abs_diff(reduced(ghz(3), {1}).matrix(), ComplexMatrix::identity(2) * 0.5) < 1e-15);
  }
  SUBCASE("kept subsystems come back in index order") {
    const auto rho = reduced(ghz(3), {2, 0});
    CHECK(rho.dims() == std::vector<std::size_t>{2, 2});
  }
}

TEST_CASE("tensor") {
  const auto half = maximally_mixed({2});
  const auto t = tensor(half, half);
  CHECK(t.dims() == std::vector<std::size_t>{2, 2});
  CHECK(max_abs_diff(t.matrix(), ComplexMatrix::identity(4) * 0.25) < 1e-15);
  CHECK(std::abs(t.matrix().trace() - 1.0) < 1e-15);

  const auto rho = paper_example();
  const auto reference = tensor(reduced(rho, {0}), reduced(rho, {1}));
  CHECK(reference.dims() == rho.dims());
  check_invariants(reference);
}

TEST_CASE("state invariants on random inputs") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_density({2, 3}, rng);
    const auto b = random_density({2}, rng);
    check_invariants(a);
    check_invariants(tensor(a, b));
    CHECK(max_abs_diff(reduced(tensor(a, b), {0, 1}).matrix(), a.matrix()) <= 1e-10);

    std::vector<Complex> amplitudes(6);
    std::normal_distribution<double> normal;
    double norm = 0.0;
    for (auto& x : amplitudes) {
      x = Complex{normal(rng), normal(rng)};
      norm += std::norm(x);
    }
    for (auto& x : amplitudes) x /= std::sqrt(norm);
    const auto pure = from_pure(amplitudes, {3, 2});
    const auto spectrum = eigvalsh(pure.matrix());
    CHECK(spectrum.back() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i + 1 < spectrum.size(); ++i) CHECK(spectrum[i] <= 1e-9);
  }
  check_invariants(random_bell_diagonal(rng));
  check_invariants(werner(0.37));
}
