#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcorr {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Sized for the small Hilbert spaces used
/// here (total dimension up to ~64), so everything is stored by value.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Nested-list construction, one inner list per row.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  /// |v><v| for a column vector v.
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  Complex trace() const;
  ComplexMatrix adjoint() const;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of h - h^dagger.
double hermiticity_defect(const ComplexMatrix& h);

/// Commutator ab - ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns are orthonormal eigenvectors
};

inline constexpr double kHermitianTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-9;
inline constexpr double kLogSupportEps = 1e-12;

/// Hermitian eigendecomposition. The input is symmetrized as (H + H^dagger)/2
/// first. Throws NotHermitian when the defect exceeds kHermitianTolerance.
EigenDecomposition eigh(const ComplexMatrix& h);

/// Eigenvalues only, ascending. Same contract as eigh.
std::vector<double> eigvalsh(const ComplexMatrix& h);

/// Reconstructs U diag(values) U^dagger.
ComplexMatrix from_spectrum(const EigenDecomposition& decomposition);

/// Traces out every subsystem not listed in `keep`. Subsystem 0 is the
/// leftmost (most significant) tensor factor. The kept subsystems appear in
/// ascending index order in the result.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Base-2 matrix logarithm of a positive-semidefinite matrix. Eigenvalues below
/// `eps` are outside the support and contribute zero; callers that care about
/// support mismatch must check it themselves.
ComplexMatrix log2_psd(const ComplexMatrix& s, double eps = kLogSupportEps);

/// Product of the entries of dims.
std::size_t total_dimension(std::span<const std::size_t> dims);

}  // namespace qcorr
