#include "qsteer/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsteer {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;  // absorbs round-off in convex mixtures

}  // namespace

DensityOperator DensityOperator::from_matrix(ComplexMatrix m) {
  if (m.dim() != 2 && m.dim() != 4)
    throw std::invalid_argument("density operator dimension must be 2 or 4");
  if (!m.all_finite())
    throw std::invalid_argument("density operator entries must be finite");
  if (m.hermiticity_defect() > kHermitianTol)
    throw std::invalid_argument("density operator must be Hermitian");
  if (std::abs(m.trace() - complexd{1.0}) > kTraceTol)
    throw std::invalid_argument("density operator must have unit trace");
  const auto ev = hermitian_eigenvalues(m);
  if (ev.front() < -kPsdTol)
    throw std::invalid_argument("density operator must be positive semidefinite");
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::pure(const std::vector<complexd>& amplitudes) {
  const std::size_t d = amplitudes.size();
  if (d != 2 && d != 4)
    throw std::invalid_argument("pure state dimension must be 2 or 4");
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (norm2 <= 0.0)
    throw std::invalid_argument("pure state amplitudes must not all vanish");
  ComplexMatrix m(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      m.at(r, c) = amplitudes[r] * std::conj(amplitudes[c]) / norm2;
  return DensityOperator(std::move(m));
}

double DensityOperator::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  const double f = mat_.frobenius_norm();
  return f * f;
}

std::array<double, 3> DensityOperator::bloch() const {
  if (dim() != 2)
    throw std::invalid_argument("bloch vector defined for dimension-2 states");
  return {2.0 * mat_.at(0, 1).real(), -2.0 * mat_.at(0, 1).imag(),
          (mat_.at(0, 0) - mat_.at(1, 1)).real()};
}

DensityOperator make_psi(PureStateParam p) {
  if (!(p.theta >= 0.0 && p.theta <= std::numbers::pi / 2.0))
    throw std::domain_error("theta must lie in [0, pi/2]");
  return DensityOperator::pure({std::cos(p.theta), 0.0, 0.0, std::sin(p.theta)});
}

DensityOperator make_werner(WernerParam w) {
  if (!(w.f >= 0.0 && w.f <= 1.0))
    throw std::domain_error("mixing probability f must lie in [0, 1]");
  // theta is unrestricted here: the pure component is well defined for any
  // angle, and callers build rotated-family members directly.
  const DensityOperator psi =
      DensityOperator::pure({std::cos(w.theta), 0.0, 0.0, std::sin(w.theta)});
  ComplexMatrix m = psi.matrix();
  m *= w.f;
  ComplexMatrix mixed = ComplexMatrix::identity(4);
  mixed *= (1.0 - w.f) / 4.0;
  m += mixed;
  return DensityOperator::from_matrix(std::move(m));
}

DensityOperator maximally_mixed(std::size_t dim) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityOperator::from_matrix(std::move(m));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != 2 || b.dim() != 2)
    throw std::invalid_argument("tensor expects two dimension-2 states");
  return DensityOperator::from_matrix(kron(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, Subsystem traced_out) {
  if (m.dim() != 4)
    throw std::invalid_argument("partial trace expects a dimension-4 operator");
  ComplexMatrix out(2);
  if (traced_out == Subsystem::B) {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        out.at(i, j) = m.at(2 * i, 2 * j) + m.at(2 * i + 1, 2 * j + 1);
  } else {
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t l = 0; l < 2; ++l)
        out.at(k, l) = m.at(k, l) + m.at(2 + k, 2 + l);
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, Subsystem traced_out) {
  return DensityOperator::from_matrix(partial_trace_matrix(rho.matrix(), traced_out));
}

double trace_distance_matrix(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("trace distance requires equal dimensions");
  double sum = 0.0;
  for (double ev : hermitian_eigenvalues(a - b)) sum += std::abs(ev);
  return 0.5 * sum;
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  return trace_distance_matrix(a.matrix(), b.matrix());
}

double von_neumann_entropy_bits(const DensityOperator& rho) {
  double s = 0.0;
  for (double ev : hermitian_eigenvalues(rho.matrix())) {
    if (ev > 1e-15) s -= ev * std::log2(ev);
  }
  return s;
}

}  // namespace qsteer
