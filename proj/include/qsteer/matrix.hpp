#ifndef QSTEER_MATRIX_HPP
#define QSTEER_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qsteer {

using complexd = std::complex<double>;

// Dense complex square matrix, row-major. Sized for qubit work (dim 2 and 4);
// nothing here assumes sparsity or large dimensions.
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<complexd>> rows);

  std::size_t dim() const { return dim_; }

  complexd& at(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const complexd& at(std::size_t r, std::size_t c) const {
    return entries_[r * dim_ + c];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(complexd scale);

  ComplexMatrix adjoint() const;
  complexd trace() const;
  double frobenius_norm() const;
  // max_ij |m_ij - conj(m_ji)|
  double hermiticity_defect() const;
  bool all_finite() const;

private:
  std::size_t dim_ = 0;
  std::vector<complexd> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(complexd scale, ComplexMatrix m);

// Kronecker product; index convention is row-major A-major: entry
// ((i*db+k),(j*db+l)) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigenvalues of a real symmetric matrix (row-major, n*n values), ascending.
// Cyclic Jacobi; converges quadratically, plenty for n <= 8.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n);

// Eigenvalues of a Hermitian matrix, ascending. Closed form for dim 2,
// Jacobi on the real symmetric embedding [[Re,-Im],[Im,Re]] otherwise.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace qsteer

#endif
