#ifndef QSTEER_TEST_SUPPORT_HPP
#define QSTEER_TEST_SUPPORT_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "qsteer/measurement.hpp"
#include "qsteer/rng.hpp"
#include "qsteer/state.hpp"

namespace qsteer::testing {

inline double gauss(SplitMix64& rng) {
  const double u1 = rng.uniform() + 1e-300;
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

inline Observable random_observable(SplitMix64& rng) {
  while (true) {
    const double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n > 1e-6) return Observable({x / n, y / n, z / n});
  }
}

inline DensityOperator random_pure(std::size_t dim, SplitMix64& rng) {
  std::vector<complexd> amp(dim);
  for (auto& a : amp) a = complexd{gauss(rng), gauss(rng)};
  return DensityOperator::pure(amp);
}

inline DensityOperator random_density(std::size_t dim, SplitMix64& rng) {
  ComplexMatrix acc(dim);
  double total = 0.0;
  std::vector<double> w(dim);
  for (auto& v : w) {
    v = rng.uniform() + 1e-9;
    total += v;
  }
  for (std::size_t k = 0; k < dim; ++k) {
    ComplexMatrix part = random_pure(dim, rng).matrix();
    part *= w[k] / total;
    acc += part;
  }
  return DensityOperator::from_matrix(std::move(acc));
}

inline DensityOperator random_product(SplitMix64& rng) {
  return tensor(random_density(2, rng), random_density(2, rng));
}

inline DensityOperator random_separable(SplitMix64& rng, int max_terms = 4) {
  const int k = 1 + static_cast<int>(rng.uniform() * max_terms);
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& v : w) {
    v = rng.uniform() + 1e-9;
    total += v;
  }
  ComplexMatrix acc(4);
  for (int i = 0; i < k; ++i) {
    ComplexMatrix part =
        kron(random_pure(2, rng).matrix(), random_pure(2, rng).matrix());
    part *= w[i] / total;
    acc += part;
  }
  return DensityOperator::from_matrix(std::move(acc));
}

// Haar-ish random 2x2 unitary [[a, b], [-conj(b), conj(a)]].
inline ComplexMatrix random_local_unitary(SplitMix64& rng) {
  const double alpha = rng.uniform() * std::numbers::pi / 2.0;
  const double p1 = rng.uniform() * 2.0 * std::numbers::pi;
  const double p2 = rng.uniform() * 2.0 * std::numbers::pi;
  const complexd a = std::polar(std::cos(alpha), p1);
  const complexd b = std::polar(std::sin(alpha), p2);
  return ComplexMatrix::from_rows({{a, b}, {-std::conj(b), std::conj(a)}});
}

// Brute-force maximum of sum_j max_b p(b|y_j) over a Fibonacci sphere grid;
// stays independent of the sign-enumeration route it cross-checks.
inline double grid_uncertainty_max(const std::vector<Observable>& obs,
                                   std::size_t points) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double best = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) /
                               static_cast<double>(points);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    const double x = r * std::cos(phi), y = r * std::sin(phi);
    double sum = 0.0;
    for (const auto& o : obs) {
      const auto& n = o.bloch();
      sum += 0.5 * (1.0 + std::abs(n[0] * x + n[1] * y + n[2] * z));
    }
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace qsteer::testing

#endif
