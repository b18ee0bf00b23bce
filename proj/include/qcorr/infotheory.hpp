#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcorr/states.hpp"

namespace qcorr {

/// Probabilities below this are treated as exact zeros in entropy sums.
inline constexpr double kZeroProbability = 1e-12;

/// Joint distribution over a product of outcome alphabets, row-major
/// (big-endian) over `dims`. Entries in [-1e-12, 0) are clamped to 0 and the
/// sum must be 1 within 1e-9.
class ProbabilityTable {
 public:
  ProbabilityTable(std::vector<std::size_t> dims, std::vector<double> probs);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t num_parties() const noexcept { return dims_.size(); }

  /// Distribution of a single party's outcome.
  std::vector<double> marginal(std::size_t party) const;

  /// Probability of a joint outcome given as one index per party.
  double at(std::span<const std::size_t> outcome) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> probs_;
};

double shannon_entropy(std::span<const double> p);
double shannon_entropy(const ProbabilityTable& p);

double von_neumann_entropy(const DensityMatrix& rho);

/// Sum of marginal entropies minus joint entropy; needs >= 2 subsystems.
double mutual_information(const DensityMatrix& rho);

/// -S(rho) - Tr(rho log2 sigma). Returns +infinity when the support of rho is
/// not contained in the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

double classical_mutual_information(const ProbabilityTable& p);

}  // namespace qcorr
