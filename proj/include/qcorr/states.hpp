#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

inline constexpr double kStateTolerance = 1e-9;

/// A validated quantum state over a tensor product of subsystems.
///
/// Invariants checked on construction: every subsystem dimension is at least
/// 2, the matrix is D x D with D the product of dims, Hermitian within 1e-9,
/// unit trace within 1e-9 and smallest eigenvalue >= -1e-9. The stored
/// matrix is the symmetrized (H + H^dagger)/2 of the input.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t num_subsystems() const noexcept { return dims_.size(); }
  std::size_t dimension() const noexcept { return matrix_.rows(); }

  /// Spectrum with eigenvalues in [-1e-9, 0) clamped to 0.
  std::vector<double> spectrum() const;

 private:
  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
};

DensityMatrix from_dense(const ComplexMatrix& matrix, std::vector<std::size_t> dims);

/// |psi><psi| for a normalized amplitude vector (big-endian over dims).
DensityMatrix from_pure(std::span<const Complex> amplitudes, std::vector<std::size_t> dims);

DensityMatrix reduced(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix reduced(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

/// rho_a (x) rho_b with dims concatenated.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Named benchmark families.
enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// (|00> + |1+>)/sqrt(2), the worked two-qubit example.
DensityMatrix paper_example();
DensityMatrix bell(BellState which);
/// (|0...0> + |1...1>)/sqrt(2) on n >= 2 qubits.
DensityMatrix ghz(std::size_t n);
/// p |Psi-><Psi-| + (1 - p) I/4 with |Psi-> = (|01> - |10>)/sqrt(2), 0 <= p <= 1.
DensityMatrix werner(double p);
/// Product of single-qubit states (I + r.sigma)/2, each |r| <= 1.
DensityMatrix product_qubits(std::span<const std::array<double, 3>> bloch_vectors);
DensityMatrix maximally_mixed(std::vector<std::size_t> dims);

BellState parse_bell(const std::string& name);

/// Describes a state independently of how it is realized. Used by the CLI
/// state files; `realize` turns it into a validated DensityMatrix.
struct DenseSpec {
  ComplexMatrix matrix;
};
struct PureSpec {
  std::vector<Complex> amplitudes;
};
struct NamedSpec {
  std::string family;
  /// Scalar parameters: werner -> {p}, ghz -> {n}, bell uses `label`,
  /// product -> flattened Bloch vectors (3 per qubit).
  std::vector<double> params;
  std::string label;
};

struct StateSpec {
  std::vector<std::size_t> dims;
  std::variant<DenseSpec, PureSpec, NamedSpec> payload;
};

DensityMatrix realize(const StateSpec& spec);

/// Named family by string; `params` interpreted as in NamedSpec.
DensityMatrix named(const std::string& family, std::span<const double> params,
                    const std::string& label = {}, std::vector<std::size_t> dims = {});

}  // namespace qcorr
