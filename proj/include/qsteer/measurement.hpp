#ifndef QSTEER_MEASUREMENT_HPP
#define QSTEER_MEASUREMENT_HPP

#include <array>
#include <vector>

#include "qsteer/state.hpp"

namespace qsteer {

// Sharp two-outcome qubit observable n . sigma, defined by a unit Bloch
// vector. Outcomes are labeled +1 / -1.
class Observable {
public:
  explicit Observable(std::array<double, 3> bloch);

  const std::array<double, 3>& bloch() const { return bloch_; }
  ComplexMatrix matrix() const;
  // (I + outcome * n.sigma) / 2
  ComplexMatrix projector(int outcome) const;

private:
  std::array<double, 3> bloch_;
};

Observable observable_z();
Observable observable_x();
Observable observable_from_angles(double polar, double azimuth);

double bloch_dot(const Observable& a, const Observable& b);

struct LocalMeasurementOutcome {
  int outcome;  // +1 or -1
  double probability;
  DensityOperator post_state;
};

// Sharp qubit measurement with the Lueders update; for rank-1 projectors the
// post-measurement state is the outcome projector itself.
std::vector<LocalMeasurementOutcome> measure(const DensityOperator& rho,
                                             const Observable& obs);

// Non-selective update sum_a P_a rho P_a. A dimension-2 input is measured
// directly; a dimension-4 input is measured on subsystem A (obs tensor id).
DensityOperator nonselective(const DensityOperator& rho, const Observable& obs);

struct ConditionalState {
  double probability;
  DensityOperator state;  // dimension 2
};

// Bob's normalized state conditioned on Alice measuring x with the given
// outcome. Throws if the outcome probability vanishes.
ConditionalState remote_conditional_state(const DensityOperator& rho_ab,
                                          const Observable& x, int outcome);

double alice_outcome_probability(const DensityOperator& rho_ab,
                                 const Observable& x, int outcome);

// tr[rho (P_a^x tensor P_b^y)]
double joint_probability(const DensityOperator& rho_ab, const Observable& x,
                         int a, const Observable& y, int b);

// Sharp qubit observables are jointly measurable iff their Bloch vectors are
// collinear (outcome relabeling allowed).
bool are_compatible(const Observable& o1, const Observable& o2);

// For a pure joint state: marginals agree, Alice's post-measurement state for
// every outcome of x equals Bob's remote conditional state, and measuring x on
// A and y on B gives perfectly correlated outcomes.
bool is_commensurate(const DensityOperator& rho_ab, const Observable& x,
                     const Observable& y);

// True iff the non-selective measurement of x on A leaves the joint state
// unchanged (trace distance < 1e-10).
bool no_joint_disturbance(const DensityOperator& rho_ab, const Observable& x);

}  // namespace qsteer

#endif
