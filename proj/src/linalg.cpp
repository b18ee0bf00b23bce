#include "qcorr/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix of shape " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                    " given " + std::to_string(entries_.size()) + " entries");
  }
  if (!all_finite()) throw Error(ErrorKind::NonFinite, "matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw Error(ErrorKind::NonFinite, "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorKind::DimensionMismatch, "matrix sum of different shapes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorKind::DimensionMismatch, "matrix difference of different shapes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "comparison of different shapes");
  double worst = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (!h.is_square()) throw Error(ErrorKind::DimensionMismatch, "Hermiticity of non-square matrix");
  double worst = 0.0;
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = r; c < h.cols(); ++c)
      worst = std::max(worst, std::abs(h(r, c) - std::conj(h(c, r))));
  return worst;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

namespace {

void require_hermitian(const ComplexMatrix& h) {
  if (!h.is_square())
    throw Error(ErrorKind::DimensionMismatch, "eigendecomposition of non-square matrix");
  const double defect = hermiticity_defect(h);
  if (defect > kHermitianTolerance)
    throw Error(ErrorKind::NotHermitian,
                "max |H - H^dagger| = " + std::to_string(defect) + " exceeds 1e-9");
}

// Closed form for [[a, b], [conj(b), d]].
EigenDecomposition eigh_2x2(const ComplexMatrix& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const Complex b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half_gap = 0.5 * (a - d);
  const double radius = std::hypot(half_gap, std::abs(b));

  EigenDecomposition out{{mean - radius, mean + radius}, ComplexMatrix(2, 2)};
  if (std::abs(b) <= 1e-300) {
    // Already diagonal; order the basis vectors by eigenvalue.
    const bool swap = a > d;
    out.eigenvectors(swap ? 1 : 0, 0) = 1.0;
    out.eigenvectors(swap ? 0 : 1, 1) = 1.0;
    return out;
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const double lambda = out.eigenvalues[k];
    // Two candidate (unnormalized) null vectors of H - lambda; take the better conditioned.
    Complex v0 = b, v1 = lambda - a;
    Complex w0 = lambda - d, w1 = std::conj(b);
    if (std::norm(w0) + std::norm(w1) > std::norm(v0) + std::norm(v1)) {
      v0 = w0;
      v1 = w1;
    }
    const double norm = std::sqrt(std::norm(v0) + std::norm(v1));
    out.eigenvectors(0, k) = v0 / norm;
    out.eigenvectors(1, k) = v1 / norm;
  }
  return out;
}

Eigen::MatrixXcd to_eigen_symmetrized(const ComplexMatrix& h) {
  const auto n = static_cast<Eigen::Index>(h.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));
  return m;
}

}  // namespace

EigenDecomposition eigh(const ComplexMatrix& h) {
  require_hermitian(h);
  if (h.rows() == 1) return {{h(0, 0).real()}, ComplexMatrix::identity(1)};
  if (h.rows() == 2) return eigh_2x2(h);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen_symmetrized(h));
  const auto n = h.rows();
  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = solver.eigenvalues()(i);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.eigenvectors(r, c) = solver.eigenvectors()(r, c);
  return out;
}

std::vector<double> eigvalsh(const ComplexMatrix& h) {
  require_hermitian(h);
  if (h.rows() <= 2) return eigh(h).eigenvalues;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen_symmetrized(h),
                                                         Eigen::EigenvaluesOnly);
  std::vector<double> values(h.rows());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = solver.eigenvalues()(i);
  return values;
}

ComplexMatrix from_spectrum(const EigenDecomposition& decomposition) {
  const auto& u = decomposition.eigenvectors;
  ComplexMatrix scaled = u;
  for (std::size_t r = 0; r < u.rows(); ++r)
    for (std::size_t c = 0; c < u.cols(); ++c) scaled(r, c) *= decomposition.eigenvalues[c];
  return scaled * u.adjoint();
}

std::size_t total_dimension(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t n = total_dimension(dims);
  if (!m.is_square() || m.rows() != n)
    throw Error(ErrorKind::DimensionMismatch,
                "matrix dimension " + std::to_string(m.rows()) +
                    " does not match product of subsystem dims " + std::to_string(n));
  if (keep.empty()) throw Error(ErrorKind::DimensionMismatch, "partial trace must keep a subsystem");

  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k])
      throw Error(ErrorKind::DimensionMismatch, "invalid or repeated subsystem index in keep set");
    kept[k] = true;
  }

  // Big-endian strides of the composite index.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  std::vector<std::size_t> kept_idx, traced_idx;
  for (std::size_t i = 0; i < dims.size(); ++i) (kept[i] ? kept_idx : traced_idx).push_back(i);

  // Offsets into the composite index contributed by each kept / traced multi-index.
  auto offsets = [&](const std::vector<std::size_t>& subsystems) {
    std::vector<std::size_t> out{0};
    for (std::size_t s : subsystems) {
      std::vector<std::size_t> next;
      next.reserve(out.size() * dims[s]);
      for (std::size_t base : out)
        for (std::size_t v = 0; v < dims[s]; ++v) next.push_back(base + v * stride[s]);
      out = std::move(next);
    }
    return out;
  };
  const auto kept_off = offsets(kept_idx);
  const auto traced_off = offsets(traced_idx);

  ComplexMatrix out(kept_off.size(), kept_off.size());
  for (std::size_t r = 0; r < kept_off.size(); ++r)
    for (std::size_t c = 0; c < kept_off.size(); ++c) {
      Complex sum{0.0, 0.0};
      for (std::size_t t : traced_off) sum += m(kept_off[r] + t, kept_off[c] + t);
      out(r, c) = sum;
    }
  return out;
}

ComplexMatrix log2_psd(const ComplexMatrix& s, double eps) {
  auto decomposition = eigh(s);
  for (double& lambda : decomposition.eigenvalues) {
    if (lambda < -kPsdTolerance)
      throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(lambda) + " below -1e-9");
    lambda = lambda < eps ? 0.0 : std::log2(lambda);
  }
  return from_spectrum(decomposition);
}

}  // namespace qcorr
