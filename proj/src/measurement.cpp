#include "qcorr/measurement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <string>

#include "qcorr/error.hpp"
#include "qcorr/infotheory.hpp"

namespace qcorr {

namespace {

void check_subsystem(const DensityMatrix& rho, std::size_t k, std::size_t measured_dim) {
  if (k >= rho.num_subsystems())
    throw Error(ErrorKind::DimensionMismatch, "subsystem index " + std::to_string(k) +
                                                  " out of range for " +
                                                  std::to_string(rho.num_subsystems()) +
                                                  " subsystems");
  if (rho.dims()[k] != measured_dim)
    throw Error(ErrorKind::DimensionMismatch,
                "measurement of dimension " + std::to_string(measured_dim) +
                    " on subsystem of dimension " + std::to_string(rho.dims()[k]));
}

// Unit vector spanning a rank-1 projector: its largest column, normalized.
std::vector<Complex> spanning_vector(const ComplexMatrix& p) {
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t c = 0; c < p.cols(); ++c) {
    double n = 0.0;
    for (std::size_t r = 0; r < p.rows(); ++r) n += std::norm(p(r, c));
    if (n > best_norm) {
      best_norm = n;
      best = c;
    }
  }
  std::vector<Complex> v(p.rows());
  const double scale = 1.0 / std::sqrt(best_norm);
  for (std::size_t r = 0; r < p.rows(); ++r) v[r] = p(r, best) * scale;
  return v;
}

std::vector<std::size_t> rest_dims_of(const std::vector<std::size_t>& dims, std::size_t k) {
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < dims.size(); ++j)
    if (j != k) rest.push_back(dims[j]);
  return rest;
}

// Entropy (bits) of sigma / p for an unnormalized Hermitian sigma with trace p.
double normalized_entropy(const ComplexMatrix& sigma, double p) {
  if (sigma.rows() == 2) {
    const double a = sigma(0, 0).real() / p;
    const double d = sigma(1, 1).real() / p;
    const double radius = std::hypot(0.5 * (a - d), std::abs(sigma(0, 1)) / p);
    const double mean = 0.5 * (a + d);
    double h = 0.0;
    for (double lambda : {mean - radius, mean + radius})
      if (lambda > kZeroProbability) h -= lambda * std::log2(lambda);
    return h;
  }
  double h = 0.0;
  for (double mu : eigvalsh(sigma)) {
    const double lambda = mu / p;
    if (lambda > kZeroProbability) h -= lambda * std::log2(lambda);
  }
  return h;
}

}  // namespace

std::size_t compose_index(std::span<const std::size_t> dims, std::size_t k, std::size_t a,
                          std::size_t r) {
  std::size_t low = 1;
  for (std::size_t j = k + 1; j < dims.size(); ++j) low *= dims[j];
  const std::size_t high = r / low;
  return (high * dims[k] + a) * low + r % low;
}

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<ComplexMatrix> projectors)
    : projectors_(std::move(projectors)) {
  const std::size_t d = projectors_.size();
  if (d < 2) throw Error(ErrorKind::DimensionMismatch, "measurement needs >= 2 projectors");
  ComplexMatrix sum(d, d);
  basis_ = ComplexMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto& p = projectors_[i];
    if (!p.is_square() || p.rows() != d)
      throw Error(ErrorKind::DimensionMismatch, "projector " + std::to_string(i) + " must be " +
                                                    std::to_string(d) + "x" + std::to_string(d));
    if (hermiticity_defect(p) > kProjectorTolerance)
      throw Error(ErrorKind::NotHermitian, "projector " + std::to_string(i) + " not Hermitian");
    if (max_abs_diff(p * p, p) > kProjectorTolerance)
      throw Error(ErrorKind::NotAProjector, "projector " + std::to_string(i) + " not idempotent");
    if (std::abs(p.trace() - Complex{1.0, 0.0}) > kProjectorTolerance)
      throw Error(ErrorKind::NotAProjector, "projector " + std::to_string(i) + " not rank 1");
    for (std::size_t j = 0; j < i; ++j)
      if (max_abs_diff(p * projectors_[j], ComplexMatrix(d, d)) > kProjectorTolerance)
        throw Error(ErrorKind::NotAProjector, "projectors " + std::to_string(j) + " and " +
                                                      std::to_string(i) + " not orthogonal");
    sum += p;
    const auto v = spanning_vector(p);
    for (std::size_t r = 0; r < d; ++r) basis_(r, i) = v[r];
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(d)) > kProjectorTolerance)
    throw Error(ErrorKind::NotAProjector, "projectors do not sum to the identity");
}

ComplexMatrix qubit_basis(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex phase = std::polar(1.0, phi);
  ComplexMatrix u(2, 2);
  u(0, 0) = c;
  u(1, 0) = phase * s;
  u(0, 1) = -std::conj(phase) * s;
  u(1, 1) = c;
  return u;
}

ProjectiveMeasurement qubit_measurement(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw Error(ErrorKind::AngleOutOfRange, "theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
    throw Error(ErrorKind::AngleOutOfRange, "phi must lie in [0, 2 pi)");
  return measurement_from_unitary(qubit_basis(theta, phi));
}

ProjectiveMeasurement measurement_from_unitary(const ComplexMatrix& u) {
  if (!u.is_square() || u.rows() < 2)
    throw Error(ErrorKind::NotUnitary, "measurement basis must be a square matrix of size >= 2");
  const std::size_t d = u.rows();
  if (max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(d)) > 1e-8)
    throw Error(ErrorKind::NotUnitary, "columns are not orthonormal within 1e-8");
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Complex> column(d);
    for (std::size_t r = 0; r < d; ++r) column[r] = u(r, i);
    projectors.push_back(ComplexMatrix::outer(column));
  }
  return ProjectiveMeasurement(u, std::move(projectors));
}

double projector_distance(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b) {
  if (a.subsystem_dim() != b.subsystem_dim())
    throw Error(ErrorKind::DimensionMismatch, "measurements on different dimensions");
  std::vector<std::size_t> perm(a.subsystem_dim());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      worst = std::max(worst, max_abs_diff(a.projectors()[i], b.projectors()[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double bloch_axis_angle(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b) {
  if (a.subsystem_dim() != 2 || b.subsystem_dim() != 2)
    throw Error(ErrorKind::NotAQubit, "Bloch axes exist for qubit measurements only");
  auto axis = [](const ComplexMatrix& p) {
    return std::array<double, 3>{2.0 * p(1, 0).real(), 2.0 * p(1, 0).imag(),
                                 (p(0, 0) - p(1, 1)).real()};
  };
  const auto u = axis(a.projectors()[0]);
  const auto v = axis(b.projectors()[0]);
  const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  return std::acos(std::min(1.0, std::abs(dot)));
}

DensityMatrix apply_nonselective(const DensityMatrix& rho, std::size_t k,
                                 const ProjectiveMeasurement& m) {
  check_subsystem(rho, k, m.subsystem_dim());
  const auto& dims = rho.dims();
  std::size_t before = 1, after = 1;
  for (std::size_t j = 0; j < k; ++j) before *= dims[j];
  for (std::size_t j = k + 1; j < dims.size(); ++j) after *= dims[j];
  const auto left = ComplexMatrix::identity(before);
  const auto right = ComplexMatrix::identity(after);

  ComplexMatrix out(rho.dimension(), rho.dimension());
  for (const auto& p : m.projectors()) {
    const auto lifted = kron(kron(left, p), right);
    out += lifted * rho.matrix() * lifted;
  }
  return DensityMatrix(std::move(out), dims);
}

ConditionalEnsemble conditionals(const DensityMatrix& rho, std::size_t k,
                                 const ProjectiveMeasurement& m) {
  check_subsystem(rho, k, m.subsystem_dim());
  const auto& dims = rho.dims();
  const std::size_t d = dims[k];
  const std::size_t rest = rho.dimension() / d;

  ConditionalEnsemble out;
  out.rest_dims = rest_dims_of(dims, k);
  const auto& u = m.basis();
  for (std::size_t i = 0; i < d; ++i) {
    // sigma_i[r, c] = <v_i| rho_{(., r), (., c)} |v_i>
    ComplexMatrix sigma(rest, rest);
    for (std::size_t r = 0; r < rest; ++r)
      for (std::size_t c = 0; c < rest; ++c) {
        Complex acc{0.0, 0.0};
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b)
            acc += std::conj(u(a, i)) * u(b, i) *
                   rho.matrix()(compose_index(dims, k, a, r), compose_index(dims, k, b, c));
        sigma(r, c) = acc;
      }
    const double p = sigma.trace().real();
    if (p < kZeroProbability) {
      out.probabilities.push_back(std::max(p, 0.0));
      out.states.emplace_back(std::nullopt);
      continue;
    }
    out.probabilities.push_back(p);
    out.states.emplace_back(DensityMatrix((1.0 / p) * sigma, out.rest_dims));
  }
  return out;
}

double induced_J(const DensityMatrix& rho, std::size_t k, const ProjectiveMeasurement& m) {
  check_subsystem(rho, k, m.subsystem_dim());
  return JEvaluator(rho, k)(m.basis());
}

JEvaluator::JEvaluator(const DensityMatrix& rho, std::size_t k) {
  if (rho.num_subsystems() < 2)
    throw Error(ErrorKind::SinglePartyState, "induced mutual information needs >= 2 subsystems");
  if (k >= rho.num_subsystems())
    throw Error(ErrorKind::DimensionMismatch, "subsystem index out of range");
  const auto& dims = rho.dims();
  d_ = dims[k];
  rest_ = rho.dimension() / d_;
  blocks_.reserve(d_ * d_);
  for (std::size_t a = 0; a < d_; ++a)
    for (std::size_t b = 0; b < d_; ++b) {
      ComplexMatrix block(rest_, rest_);
      for (std::size_t r = 0; r < rest_; ++r)
        for (std::size_t c = 0; c < rest_; ++c)
          block(r, c) = rho.matrix()(compose_index(dims, k, a, r), compose_index(dims, k, b, c));
      blocks_.push_back(std::move(block));
    }
  rest_entropy_sum_ = 0.0;
  for (std::size_t j = 0; j < dims.size(); ++j)
    if (j != k) rest_entropy_sum_ += von_neumann_entropy(reduced(rho, {j}));
}

double JEvaluator::conditional_entropy(const ComplexMatrix& basis) const {
  double total = 0.0;
  ComplexMatrix sigma(rest_, rest_);
  for (std::size_t i = 0; i < d_; ++i) {
    sigma *= 0.0;
    for (std::size_t a = 0; a < d_; ++a) {
      const Complex va = std::conj(basis(a, i));
      if (va == Complex{}) continue;
      for (std::size_t b = 0; b < d_; ++b) {
        const Complex w = va * basis(b, i);
        if (w == Complex{}) continue;
        const auto src = blocks_[a * d_ + b].entries();
        for (std::size_t r = 0; r < rest_; ++r)
          for (std::size_t c = 0; c < rest_; ++c) sigma(r, c) += w * src[r * rest_ + c];
      }
    }
    const double p = sigma.trace().real();
    if (p < kZeroProbability) continue;
    total += p * normalized_entropy(sigma, p);
  }
  return total;
}

double JEvaluator::operator()(const ComplexMatrix& basis) const {
  return rest_entropy_sum_ - conditional_entropy(basis);
}

}  // namespace qcorr
