#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

std::string dims_to_string(const std::vector<std::size_t>& dims) {
  std::string out = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) out += (i ? "," : "") + std::to_string(dims[i]);
  return out + ")";
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorKind::DimensionMismatch, "state needs at least one subsystem");
  for (std::size_t d : dims_)
    if (d < 2) throw Error(ErrorKind::DimensionMismatch, "subsystem dimension must be >= 2");
  const std::size_t n = total_dimension(dims_);
  if (!matrix.is_square() || matrix.rows() != n)
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                    " matrix does not match dims " + dims_to_string(dims_));
  if (!matrix.all_finite()) throw Error(ErrorKind::NonFinite, "state entries must be finite");

  const double defect = hermiticity_defect(matrix);
  if (defect > kStateTolerance)
    throw Error(ErrorKind::NotHermitian, "max |rho - rho^dagger| = " + std::to_string(defect));

  matrix_ = 0.5 * (matrix + matrix.adjoint());

  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kStateTolerance)
    throw Error(ErrorKind::TraceNotOne, "trace is " + std::to_string(tr.real()));

  const auto values = eigvalsh(matrix_);
  if (values.front() < -kStateTolerance)
    throw Error(ErrorKind::NotPSD, "smallest eigenvalue " + std::to_string(values.front()));
}

std::vector<double> DensityMatrix::spectrum() const {
  auto values = eigvalsh(matrix_);
  for (double& v : values) v = std::max(v, 0.0);
  return values;
}

DensityMatrix from_dense(const ComplexMatrix& matrix, std::vector<std::size_t> dims) {
  return DensityMatrix(matrix, std::move(dims));
}

DensityMatrix from_pure(std::span<const Complex> amplitudes, std::vector<std::size_t> dims) {
  if (amplitudes.size() != total_dimension(dims))
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(amplitudes.size()) + " amplitudes do not match dims " +
                    dims_to_string(dims));
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (std::abs(std::sqrt(norm2) - 1.0) > kStateTolerance)
    throw Error(ErrorKind::NotNormalized, "amplitude norm is " + std::to_string(std::sqrt(norm2)));
  return DensityMatrix(ComplexMatrix::outer(amplitudes), std::move(dims));
}

DensityMatrix reduced(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  auto m = partial_trace(rho.matrix(), rho.dims(), sorted);
  std::vector<std::size_t> dims;
  for (std::size_t k : sorted) dims.push_back(rho.dims()[k]);
  return DensityMatrix(std::move(m), std::move(dims));
}

DensityMatrix reduced(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return reduced(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  auto dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(dims));
}

DensityMatrix paper_example() {
  const double h = 1.0 / std::numbers::sqrt2;
  const std::vector<Complex> amplitudes{h, 0.0, 0.5, 0.5};
  return from_pure(amplitudes, {2, 2});
}

DensityMatrix bell(BellState which) {
  const double h = 1.0 / std::numbers::sqrt2;
  std::vector<Complex> a(4, 0.0);
  switch (which) {
    case BellState::PhiPlus: a = {h, 0.0, 0.0, h}; break;
    case BellState::PhiMinus: a = {h, 0.0, 0.0, -h}; break;
    case BellState::PsiPlus: a = {0.0, h, h, 0.0}; break;
    case BellState::PsiMinus: a = {0.0, h, -h, 0.0}; break;
  }
  return from_pure(a, {2, 2});
}

BellState parse_bell(const std::string& name) {
  if (name == "phi+" || name == "phi_plus") return BellState::PhiPlus;
  if (name == "phi-" || name == "phi_minus") return BellState::PhiMinus;
  if (name == "psi+" || name == "psi_plus") return BellState::PsiPlus;
  if (name == "psi-" || name == "psi_minus") return BellState::PsiMinus;
  throw Error(ErrorKind::ParamOutOfRange, "unknown Bell state '" + name + "'");
}

DensityMatrix ghz(std::size_t n) {
  if (n < 2 || n > 6) throw Error(ErrorKind::ParamOutOfRange, "ghz needs 2 <= n <= 6 qubits");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> a(dim, 0.0);
  a.front() = a.back() = 1.0 / std::numbers::sqrt2;
  return from_pure(a, std::vector<std::size_t>(n, 2));
}

DensityMatrix werner(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorKind::ParamOutOfRange, "werner weight p must lie in [0, 1]");
  auto m = p * bell(BellState::PsiMinus).matrix() +
           ((1.0 - p) / 4.0) * ComplexMatrix::identity(4);
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix product_qubits(std::span<const std::array<double, 3>> bloch_vectors) {
  if (bloch_vectors.empty())
    throw Error(ErrorKind::ParamOutOfRange, "product state needs at least one qubit");
  ComplexMatrix m = ComplexMatrix::identity(1);
  for (const auto& [x, y, z] : bloch_vectors) {
    if (std::sqrt(x * x + y * y + z * z) > 1.0 + kStateTolerance)
      throw Error(ErrorKind::ParamOutOfRange, "Bloch vector longer than 1");
    const ComplexMatrix q{{0.5 * (1.0 + z), 0.5 * Complex{x, -y}},
                          {0.5 * Complex{x, y}, 0.5 * (1.0 - z)}};
    m = kron(m, q);
  }
  return DensityMatrix(std::move(m), std::vector<std::size_t>(bloch_vectors.size(), 2));
}

DensityMatrix maximally_mixed(std::vector<std::size_t> dims) {
  const std::size_t n = total_dimension(dims);
  return DensityMatrix((1.0 / static_cast<double>(n)) * ComplexMatrix::identity(n), std::move(dims));
}

DensityMatrix named(const std::string& family, std::span<const double> params,
                    const std::string& label, std::vector<std::size_t> dims) {
  auto expect_params = [&](std::size_t count) {
    if (params.size() != count)
      throw Error(ErrorKind::ParamOutOfRange, family + " expects " + std::to_string(count) +
                                                  " parameter(s), got " +
                                                  std::to_string(params.size()));
  };
  if (family == "paper_example") {
    expect_params(0);
    return paper_example();
  }
  if (family == "bell") {
    expect_params(0);
    return bell(parse_bell(label.empty() ? "phi+" : label));
  }
  if (family == "ghz") {
    expect_params(1);
    const double n = params[0];
    if (n != std::floor(n) || n < 2) throw Error(ErrorKind::ParamOutOfRange, "ghz n must be an integer >= 2");
    return ghz(static_cast<std::size_t>(n));
  }
  if (family == "werner") {
    expect_params(1);
    return werner(params[0]);
  }
  if (family == "product") {
    if (params.empty() || params.size() % 3 != 0)
      throw Error(ErrorKind::ParamOutOfRange, "product expects 3 Bloch components per qubit");
    std::vector<std::array<double, 3>> vectors;
    for (std::size_t i = 0; i < params.size(); i += 3)
      vectors.push_back({params[i], params[i + 1], params[i + 2]});
    return product_qubits(vectors);
  }
  if (family == "maximally_mixed") {
    expect_params(0);
    if (dims.empty()) throw Error(ErrorKind::ParamOutOfRange, "maximally_mixed needs dims");
    return maximally_mixed(std::move(dims));
  }
  throw Error(ErrorKind::UnknownFamily, "unknown state family '" + family + "'");
}

DensityMatrix realize(const StateSpec& spec) {
  struct Visitor {
    const StateSpec& spec;
    DensityMatrix operator()(const DenseSpec& d) const { return from_dense(d.matrix, spec.dims); }
    DensityMatrix operator()(const PureSpec& p) const { return from_pure(p.amplitudes, spec.dims); }
    DensityMatrix operator()(const NamedSpec& n) const {
      auto rho = named(n.family, n.params, n.label, spec.dims);
      if (!spec.dims.empty() && rho.dims() != spec.dims)
        throw Error(ErrorKind::DimensionMismatch,
                    "family '" + n.family + "' has dims " + dims_to_string(rho.dims()) +
                        " but the state declares " + dims_to_string(spec.dims));
      return rho;
    }
  };
  return std::visit(Visitor{spec}, spec.payload);
}

}  // namespace qcorr
