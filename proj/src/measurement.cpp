#include "qsteer/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace qsteer {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kEqualTol = 1e-10;
constexpr double kProbFloor = 1e-12;

ComplexMatrix projector_on_a(const Observable& x, int outcome) {
  return kron(x.projector(outcome), ComplexMatrix::identity(2));
}

double clamp01(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }

}  // namespace

Observable::Observable(std::array<double, 3> bloch) : bloch_(bloch) {
  const double norm =
      std::sqrt(bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]);
  if (std::abs(norm - 1.0) > kUnitTol)
    throw std::domain_error("observable Bloch vector must have unit norm");
  for (auto& v : bloch_) v /= norm;
}

ComplexMatrix Observable::matrix() const {
  const double nx = bloch_[0], ny = bloch_[1], nz = bloch_[2];
  return ComplexMatrix::from_rows(
      {{complexd{nz, 0.0}, complexd{nx, -ny}}, {complexd{nx, ny}, complexd{-nz, 0.0}}});
}

ComplexMatrix Observable::projector(int outcome) const {
  if (outcome != 1 && outcome != -1)
    throw std::invalid_argument("outcome label must be +1 or -1");
  ComplexMatrix p = matrix();
  p *= 0.5 * static_cast<double>(outcome);
  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= 0.5;
  p += half;
  return p;
}

Observable observable_z() { return Observable({0.0, 0.0, 1.0}); }
Observable observable_x() { return Observable({1.0, 0.0, 0.0}); }

Observable observable_from_angles(double polar, double azimuth) {
  return Observable({std::sin(polar) * std::cos(azimuth),
                     std::sin(polar) * std::sin(azimuth), std::cos(polar)});
}

double bloch_dot(const Observable& a, const Observable& b) {
  return a.bloch()[0] * b.bloch()[0] + a.bloch()[1] * b.bloch()[1] +
         a.bloch()[2] * b.bloch()[2];
}

std::vector<LocalMeasurementOutcome> measure(const DensityOperator& rho,
                                             const Observable& obs) {
  if (rho.dim() != 2)
    throw std::invalid_argument("measure expects a dimension-2 state");
  std::vector<LocalMeasurementOutcome> out;
  const auto r = rho.bloch();
  const auto n = obs.bloch();
  const double dot = n[0] * r[0] + n[1] * r[1] + n[2] * r[2];
  for (int a : {+1, -1}) {
    const double p = clamp01(0.5 * (1.0 + a * dot));
    out.push_back({a, p, DensityOperator::from_matrix(obs.projector(a))});
  }
  return out;
}

DensityOperator nonselective(const DensityOperator& rho, const Observable& obs) {
  if (rho.dim() == 2) {
    ComplexMatrix sum(2);
    for (int a : {+1, -1}) {
      const ComplexMatrix p = obs.projector(a);
      sum += p * rho.matrix() * p;
    }
    return DensityOperator::from_matrix(std::move(sum));
  }
  ComplexMatrix sum(4);
  for (int a : {+1, -1}) {
    const ComplexMatrix p = projector_on_a(obs, a);
    sum += p * rho.matrix() * p;
  }
  return DensityOperator::from_matrix(std::move(sum));
}

double alice_outcome_probability(const DensityOperator& rho_ab,
                                 const Observable& x, int outcome) {
  if (rho_ab.dim() != 4)
    throw std::invalid_argument("expected a dimension-4 joint state");
  return clamp01((projector_on_a(x, outcome) * rho_ab.matrix()).trace().real());
}

ConditionalState remote_conditional_state(const DensityOperator& rho_ab,
                                          const Observable& x, int outcome) {
  const double p = alice_outcome_probability(rho_ab, x, outcome);
  if (p <= kProbFloor)
    throw std::domain_error(
        "conditional state undefined: outcome probability vanishes");
  const ComplexMatrix pa = projector_on_a(x, outcome);
  ComplexMatrix sub = partial_trace_matrix(pa * rho_ab.matrix() * pa, Subsystem::A);
  sub *= 1.0 / p;
  return {p, DensityOperator::from_matrix(std::move(sub))};
}

double joint_probability(const DensityOperator& rho_ab, const Observable& x,
                         int a, const Observable& y, int b) {
  if (rho_ab.dim() != 4)
    throw std::invalid_argument("expected a dimension-4 joint state");
  const ComplexMatrix pab = kron(x.projector(a), y.projector(b));
  return clamp01((pab * rho_ab.matrix()).trace().real());
}

bool are_compatible(const Observable& o1, const Observable& o2) {
  return std::abs(std::abs(bloch_dot(o1, o2)) - 1.0) <= kEqualTol;
}

bool is_commensurate(const DensityOperator& rho_ab, const Observable& x,
                     const Observable& y) {
  if (rho_ab.dim() != 4)
    throw std::invalid_argument("expected a dimension-4 joint state");
  if (!rho_ab.is_pure())
    throw std::invalid_argument("commensurability is defined for pure joint states");

  const DensityOperator marginal_a = partial_trace(rho_ab, Subsystem::B);
  const DensityOperator marginal_b = partial_trace(rho_ab, Subsystem::A);
  if (trace_distance(marginal_a, marginal_b) >= kEqualTol) return false;

  // Alice's normalized post-measurement state for a sharp observable is the
  // outcome projector; it must match Bob's remote conditional state.
  for (int a : {+1, -1}) {
    if (alice_outcome_probability(rho_ab, x, a) <= kProbFloor) continue;
    const ConditionalState cond = remote_conditional_state(rho_ab, x, a);
    if (trace_distance_matrix(x.projector(a), cond.state.matrix()) >= kEqualTol)
      return false;
  }

  // Measuring x on A and y on B must produce identical outcomes.
  const double mismatch = joint_probability(rho_ab, x, +1, y, -1) +
                          joint_probability(rho_ab, x, -1, y, +1);
  return mismatch < kEqualTol;
}

bool no_joint_disturbance(const DensityOperator& rho_ab, const Observable& x) {
  if (rho_ab.dim() != 4)
    throw std::invalid_argument("expected a dimension-4 joint state");
  return trace_distance(rho_ab, nonselective(rho_ab, x)) < kEqualTol;
}

}  // namespace qsteer
