#include "qsteer/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsteer {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<complexd>> rows) {
  ComplexMatrix m(rows.size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != m.dim())
      throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows");
    std::size_t c = 0;
    for (const auto& v : row) m.at(r, c++) = v;
    ++r;
  }
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complexd scale) {
  for (auto& v : entries_) v *= scale;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out.at(c, r) = std::conj(at(r, c));
  return out;
}

complexd ComplexMatrix::trace() const {
  complexd t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : entries_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c)
      worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
  return worst;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : entries_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim() != rhs.dim())
    throw std::invalid_argument("matrix dimension mismatch");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const complexd v = lhs.at(r, k);
      if (v == complexd{}) continue;
      for (std::size_t c = 0; c < n; ++c) out.at(r, c) += v * rhs.at(k, c);
    }
  return out;
}

ComplexMatrix operator*(complexd scale, ComplexMatrix m) {
  m *= scale;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const complexd v = a.at(i, j);
      if (v == complexd{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          out.at(i * db + k, j * db + l) = v * b.at(k, l);
    }
  return out;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw std::invalid_argument("bad symmetric matrix size");
  auto idx = [n](std::size_t r, std::size_t c) { return r * n + c; };

  double scale = 0.0;
  for (double v : a) scale += v * v;
  scale = std::sqrt(scale);
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  const double off_tol = 1e-14 * std::max(1.0, scale);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[idx(p, q)] * a[idx(p, q)];
    if (std::sqrt(2.0 * off) <= off_tol) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[idx(p, q)];
        if (std::abs(apq) <= 1e-300) continue;
        const double tau = (a[idx(q, q)] - a[idx(p, p)]) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Two-sided rotation in the (p,q) plane.
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[idx(k, p)], akq = a[idx(k, q)];
          a[idx(k, p)] = c * akp - s * akq;
          a[idx(k, q)] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[idx(p, k)], aqk = a[idx(q, k)];
          a[idx(p, k)] = c * apk - s * aqk;
          a[idx(q, k)] = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[idx(i, i)];
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return {};
  if (n == 1) return {m.at(0, 0).real()};
  if (n == 2) {
    const double a = m.at(0, 0).real();
    const double d = m.at(1, 1).real();
    const complexd b = 0.5 * (m.at(0, 1) + std::conj(m.at(1, 0)));
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    return {mid - rad, mid + rad};
  }

  // Embed into the 2n x 2n real symmetric matrix [[Re,-Im],[Im,Re]]; every
  // eigenvalue of the Hermitian input shows up twice.
  std::vector<double> e(4 * n * n, 0.0);
  auto idx = [n](std::size_t r, std::size_t c) { return r * (2 * n) + c; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const complexd h = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
      e[idx(i, j)] = h.real();
      e[idx(i + n, j + n)] = h.real();
      e[idx(i, j + n)] = -h.imag();
      e[idx(i + n, j)] = h.imag();
    }
  const std::vector<double> paired = symmetric_eigenvalues(std::move(e), 2 * n);
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i)
    ev[i] = 0.5 * (paired[2 * i] + paired[2 * i + 1]);
  return ev;
}

}  // namespace qsteer
