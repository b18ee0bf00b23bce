#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"

using namespace qcorr;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix h(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    h(r, r) = normal(rng);
    for (std::size_t c = r + 1; c < n; ++c) {
      h(r, c) = Complex{normal(rng), normal(rng)};
      h(c, r) = std::conj(h(r, c));
    }
  }
  return h;
}

ComplexMatrix random_psd(std::size_t n, std::mt19937_64& rng) {
  const auto h = random_hermitian(n, rng);
  auto m = h * h;
  return m * (1.0 / m.trace().real());
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected qcorr::Error");
  return ErrorKind::ParseError;
}

const std::vector<std::size_t> kTwoQubits{2, 2};

}  // namespace

TEST_CASE("kron") {
  SUBCASE("identity") {
    CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                       ComplexMatrix::identity(4)) == 0.0);
  }
  SUBCASE("diagonal expansion") {
    const auto k = kron(ComplexMatrix::diagonal({1, 2}), ComplexMatrix::diagonal({3, 4}));
    CHECK(max_abs_diff(k, ComplexMatrix::diagonal({3, 4, 6, 8})) == 0.0);
  }
  SUBCASE("projector product is a rank-1 projector") {
    const double h = 1.0 / std::numbers::sqrt2;
    const std::vector<Complex> zero{1.0, 0.0}, plus{h, h};
    const auto p = kron(ComplexMatrix::outer(zero), ComplexMatrix::outer(plus));
    CHECK(p.rows() == 4);
    CHECK(std::abs(p.trace() - 1.0) < 1e-15);
    CHECK(max_abs_diff(p * p, p) < 1e-15);
    CHECK(eigvalsh(p)[2] == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("eigh known spectra") {
  SUBCASE("diagonal") {
    const auto e = eigh(ComplexMatrix::diagonal({0.3, 0.7}));
    CHECK(e.eigenvalues[0] == doctest::Approx(0.3));
    CHECK(e.eigenvalues[1] == doctest::Approx(0.7));
  }
  SUBCASE("Pauli X") {
    const auto e = eigh(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
    CHECK(e.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
  }
  SUBCASE("example marginal") {
    // Characteristic polynomial (1/2 - x)^2 - 1/8 = 0 gives x = (2 -+ sqrt 2)/4.
    const double off = 1.0 / (2.0 * std::numbers::sqrt2);
    const auto e = eigh(ComplexMatrix{{0.5, off}, {off, 0.5}});
    CHECK(e.eigenvalues[0] == doctest::Approx((2.0 - std::numbers::sqrt2) / 4.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx((2.0 + std::numbers::sqrt2) / 4.0).epsilon(1e-14));
  }
  SUBCASE("non-Hermitian input rejected") {
    CHECK(kind_of([] { eigh(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}); }) == ErrorKind::NotHermitian);
  }
  SUBCASE("tiny asymmetry is symmetrized away") {
    const auto e = eigh(ComplexMatrix{{1.0, 1e-11}, {0.0, 2.0}});
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("eigh reconstruction and orthonormality on random Hermitian matrices") {
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto h = random_hermitian(n, rng);
      const auto e = eigh(h);
      CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
      CHECK(max_abs_diff(from_spectrum(e), h) <= 1e-8);
      CHECK(max_abs_diff(e.eigenvectors.adjoint() * e.eigenvectors, ComplexMatrix::identity(n)) <=
            1e-10);
      for (std::size_t k = 0; k < n; ++k) {
        ComplexMatrix u(n, 1);
        for (std::size_t r = 0; r < n; ++r) u(r, 0) = e.eigenvectors(r, k);
        CHECK(max_abs_diff(h * u, u * e.eigenvalues[k]) <= 1e-9);
      }
    }
  }
}

TEST_CASE("partial_trace") {
  SUBCASE("factorized state") {
    const ComplexMatrix a{{0.7, Complex{0.1, 0.2}}, {Complex{0.1, -0.2}, 0.3}};
    const auto b = ComplexMatrix::diagonal({0.25, 0.75});
    const std::vector<std::size_t> keep{0};
    CHECK(max_abs_diff(partial_trace(kron(a, b), kTwoQubits, keep), a) < 1e-15);
  }
  SUBCASE("Bell state marginal is maximally mixed") {
    const double h = 1.0 / std::numbers::sqrt2;
    const std::vector<Complex> phi{h, 0.0, 0.0, h};
    const std::vector<std::size_t> keep{1};
    CHECK(max_abs_diff(partial_trace(ComplexMatrix::outer(phi), kTwoQubits, keep),
                       ComplexMatrix::identity(2) * 0.5) < 1e-15);
  }
  SUBCASE("keeping everything is the identity map") {
    std::mt19937_64 rng(3);
    const auto m = random_psd(6, rng);
    const std::vector<std::size_t> dims{2, 3}, keep{0, 1};
    CHECK(max_abs_diff(partial_trace(m, dims, keep), m) == 0.0);
  }
  SUBCASE("dimension mismatch") {
    const std::vector<std::size_t> dims{2, 3}, keep{0};
    CHECK(kind_of([&] { partial_trace(ComplexMatrix::identity(4), dims, keep); }) ==
          ErrorKind::DimensionMismatch);
    const std::vector<std::size_t> none;
    CHECK(kind_of([&] { partial_trace(ComplexMatrix::identity(4), kTwoQubits, none); }) ==
          ErrorKind::DimensionMismatch);
  }
  SUBCASE("middle subsystem of three uses big-endian indexing") {
    // |0>|1>|0> has the middle qubit in |1>.
    std::vector<Complex> psi(8, 0.0);
    psi[0b010] = 1.0;
    const std::vector<std::size_t> dims{2, 2, 2}, keep{1};
    CHECK(max_abs_diff(partial_trace(ComplexMatrix::outer(psi), dims, keep),
                       ComplexMatrix::diagonal({0.0, 1.0})) == 0.0);
  }
}

TEST_CASE("partial trace and kron invariants on random inputs") {
  std::mt19937_64 rng(11);
  const std::vector<std::size_t> dims{2, 3, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_psd(12, rng);
    for (const std::vector<std::size_t>& keep :
         {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
      const auto r = partial_trace(m, dims, keep);
      CHECK(std::abs(r.trace() - m.trace()) <= 1e-10);
    }
    // Tracing out subsystem 2 and then subsystem 1 equals tracing both at once.
    const std::vector<std::size_t> keep01{0, 1}, keep0{0}, dims01{2, 3};
    const auto stepwise = partial_trace(partial_trace(m, dims, keep01), dims01, keep0);
    CHECK(max_abs_diff(stepwise, partial_trace(m, dims, keep0)) <= 1e-10);

    const auto a = random_hermitian(3, rng);
    const auto b = random_hermitian(2, rng);
    CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) <= 1e-10);
  }
}

TEST_CASE("log2_psd") {
  CHECK(max_abs_diff(log2_psd(ComplexMatrix::identity(2)), ComplexMatrix::zeros(2, 2)) < 1e-15);
  CHECK(max_abs_diff(log2_psd(ComplexMatrix::diagonal({0.5, 0.5})),
                     ComplexMatrix::diagonal({-1.0, -1.0})) < 1e-15);
  CHECK(max_abs_diff(log2_psd(ComplexMatrix::diagonal({0.25, 0.75})),
                     ComplexMatrix::diagonal({-2.0, std::log2(0.75)})) < 1e-15);
  // Below the support threshold the logarithm is reported as zero.
  CHECK(max_abs_diff(log2_psd(ComplexMatrix::diagonal({1.0, 0.0})), ComplexMatrix::zeros(2, 2)) ==
        0.0);
  CHECK(kind_of([] { log2_psd(ComplexMatrix::diagonal({1.2, -0.2})); }) == ErrorKind::NotPSD);
}

TEST_CASE("matrix construction validates shape and finiteness") {
  CHECK(kind_of([] { ComplexMatrix(2, 2, std::vector<Complex>(3)); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { ComplexMatrix{{1.0, std::nan("")}, {0.0, 1.0}}; }) == ErrorKind::NonFinite);
}
