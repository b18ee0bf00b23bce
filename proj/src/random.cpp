#include "qcorr/random.hpp"

#include <cmath>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex{re, im};
    }
  return g;
}

std::vector<double> dirichlet_one(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> exponential(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& x : w) sum += (x = exponential(rng));
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace

DensityMatrix random_density(const std::vector<std::size_t>& dims, Rng& rng) {
  const std::size_t n = total_dimension(dims);
  const auto g = ginibre(n, n, rng);
  auto m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  return DensityMatrix(std::move(m), dims);
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  auto q = ginibre(d, d, rng);
  // Modified Gram-Schmidt on the columns. The implied R has a positive real
  // diagonal, so Q is Haar distributed.
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex overlap{0.0, 0.0};
      for (std::size_t r = 0; r < d; ++r) overlap += std::conj(q(r, prev)) * q(r, c);
      for (std::size_t r = 0; r < d; ++r) q(r, c) -= overlap * q(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += std::norm(q(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) q(r, c) /= norm;
  }
  return q;
}

ProjectiveMeasurement random_measurement(std::size_t d, Rng& rng) {
  return measurement_from_unitary(random_unitary(d, rng));
}

DensityMatrix random_bell_diagonal(Rng& rng) {
  const auto w = dirichlet_one(4, rng);
  ComplexMatrix m(4, 4);
  const BellState states[] = {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus,
                              BellState::PsiMinus};
  for (std::size_t i = 0; i < 4; ++i) m += w[i] * bell(states[i]).matrix();
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix random_classical_classical(std::size_t da, std::size_t db, Rng& rng) {
  const auto p = dirichlet_one(da * db, rng);
  return DensityMatrix(ComplexMatrix::diagonal(p), {da, db});
}

DensityMatrix apply_local_unitaries(const DensityMatrix& rho, const ComplexMatrix& ua,
                                    const ComplexMatrix& ub) {
  if (rho.num_subsystems() != 2 || ua.rows() != rho.dims()[0] || ub.rows() != rho.dims()[1])
    throw Error(ErrorKind::DimensionMismatch, "local unitaries do not match a bipartite state");
  const auto u = kron(ua, ub);
  return DensityMatrix(u * rho.matrix() * u.adjoint(), rho.dims());
}

}  // namespace qcorr
