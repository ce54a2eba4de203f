#ifndef QSTEER_STATE_HPP
#define QSTEER_STATE_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "qsteer/matrix.hpp"

namespace qsteer {

// Two-qubit pure state parameter: cos(theta)|00> + sin(theta)|11>,
// theta in [0, pi/2].
struct PureStateParam {
  double theta = 0.0;
};

// Werner-like mixture W(f, theta) = f |Psi(theta)><Psi(theta)| + (1-f) I/4.
struct WernerParam {
  double f = 1.0;
  double theta = 0.0;
};

// Which tensor factor an operation refers to, in the fixed A-major basis
// ordering |00>, |01>, |10>, |11|.
enum class Subsystem { A, B };

// Unit-trace positive-semidefinite Hermitian matrix of dimension 2 or 4.
// Construction validates: hermiticity defect <= 1e-12, |trace-1| <= 1e-12,
// eigenvalues >= -1e-10. Immutable after construction.
class DensityOperator {
public:
  static DensityOperator from_matrix(ComplexMatrix m);
  // Rank-1 projector onto the given amplitude vector (normalized here).
  static DensityOperator pure(const std::vector<complexd>& amplitudes);

  const ComplexMatrix& matrix() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }

  double purity() const;  // Re tr(rho^2)
  bool is_pure(double tol = 1e-10) const { return purity() > 1.0 - tol; }

  // Pauli expectation values (tr rho sigma_i); dimension-2 states only.
  std::array<double, 3> bloch() const;

private:
  explicit DensityOperator(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

DensityOperator make_psi(PureStateParam p);
DensityOperator make_werner(WernerParam w);
DensityOperator maximally_mixed(std::size_t dim);

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// Trace out the named subsystem of a two-qubit state.
DensityOperator partial_trace(const DensityOperator& rho, Subsystem traced_out);
ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, Subsystem traced_out);

// (1/2) sum |eigenvalues(a-b)|.
double trace_distance(const DensityOperator& a, const DensityOperator& b);
double trace_distance_matrix(const ComplexMatrix& a, const ComplexMatrix& b);

// -sum lambda log2 lambda, in bits.
double von_neumann_entropy_bits(const DensityOperator& rho);

}  // namespace qsteer

#endif
