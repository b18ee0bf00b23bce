#include "qcorr/infotheory.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

ProbabilityTable::ProbabilityTable(std::vector<std::size_t> dims, std::vector<double> probs)
    : dims_(std::move(dims)), probs_(std::move(probs)) {
  if (dims_.empty()) throw Error(ErrorKind::NotADistribution, "table needs at least one party");
  if (probs_.size() != total_dimension(dims_))
    throw Error(ErrorKind::NotADistribution, "table size does not match outcome counts");
  double sum = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -kZeroProbability)
      throw Error(ErrorKind::NotADistribution, "negative or non-finite probability");
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorKind::NotADistribution, "probabilities sum to " + std::to_string(sum));
}

std::vector<double> ProbabilityTable::marginal(std::size_t party) const {
  if (party >= dims_.size()) throw Error(ErrorKind::DimensionMismatch, "no such party");
  std::size_t inner = 1;
  for (std::size_t i = party + 1; i < dims_.size(); ++i) inner *= dims_[i];
  std::vector<double> out(dims_[party], 0.0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat)
    out[(flat / inner) % dims_[party]] += probs_[flat];
  return out;
}

double ProbabilityTable::at(std::span<const std::size_t> outcome) const {
  if (outcome.size() != dims_.size()) throw Error(ErrorKind::DimensionMismatch, "outcome arity");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (outcome[i] >= dims_[i]) throw Error(ErrorKind::DimensionMismatch, "outcome out of range");
    flat = flat * dims_[i] + outcome[i];
  }
  return probs_[flat];
}

double shannon_entropy(std::span<const double> p) {
  double sum = 0.0;
  double h = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -kZeroProbability)
      throw Error(ErrorKind::NotADistribution, "negative or non-finite probability");
    sum += x;
    if (x > kZeroProbability) h -= x * std::log2(x);
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorKind::NotADistribution, "probabilities sum to " + std::to_string(sum));
  return h;
}

double shannon_entropy(const ProbabilityTable& p) { return shannon_entropy(p.probs()); }

double von_neumann_entropy(const DensityMatrix& rho) { return shannon_entropy(rho.spectrum()); }

double mutual_information(const DensityMatrix& rho) {
  if (rho.num_subsystems() < 2)
    throw Error(ErrorKind::SinglePartyState, "mutual information needs >= 2 subsystems");
  double sum = -von_neumann_entropy(rho);
  for (std::size_t k = 0; k < rho.num_subsystems(); ++k)
    sum += von_neumann_entropy(reduced(rho, {k}));
  return sum;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dimension() != sigma.dimension())
    throw Error(ErrorKind::DimensionMismatch, "relative entropy of states of different dimension");
  const auto sigma_eig = eigh(sigma.matrix());
  const auto& u = sigma_eig.eigenvectors;
  const auto& r = rho.matrix();
  const std::size_t n = rho.dimension();

  // Tr(rho log sigma) = sum_k <u_k|rho|u_k> log lambda_k over the support of sigma.
  double cross = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    Complex weight{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      Complex row{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) row += r(i, j) * u(j, k);
      weight += std::conj(u(i, k)) * row;
    }
    const double lambda = sigma_eig.eigenvalues[k];
    if (lambda < kLogSupportEps) {
      if (weight.real() > 1e-9) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight.real() * std::log2(lambda);
  }
  return -von_neumann_entropy(rho) - cross;
}

double classical_mutual_information(const ProbabilityTable& p) {
  if (p.num_parties() < 2)
    throw Error(ErrorKind::SinglePartyState, "classical mutual information needs >= 2 parties");
  double sum = -shannon_entropy(p);
  for (std::size_t k = 0; k < p.num_parties(); ++k) sum += shannon_entropy(p.marginal(k));
  return sum;
}

}  // namespace qcorr
