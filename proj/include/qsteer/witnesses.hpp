#ifndef QSTEER_WITNESSES_HPP
#define QSTEER_WITNESSES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qsteer/protocols.hpp"

namespace qsteer {

struct WitnessReport {
  double lhs = 0.0;
  double classical_bound = 0.0;
  double algebraic_max = 0.0;
  bool violated = false;       // lhs > classical_bound + 1e-9
  double margin_ratio = 0.0;   // lhs / classical_bound
  std::optional<double> quantum_reference;  // known quantum maximum, if any
};

// Exact maximum over single-qubit states of sum_j max_b p(b|y_j), computed by
// enumerating the 2^k sign patterns: k/2 + max_s ||sum_j s_j n_j|| / 2.
// Accepts 1 to 8 observables.
double uncertainty_bound(const std::vector<Observable>& obs);

// Certainty-sum witness: lhs from conditional_certainties, classical bound
// from the uncertainty bound of Bob's settings.
WitnessReport steering_functional(const SteeringScenario& s);

// Same evaluation restricted to scenarios with exactly two terms.
WitnessReport two_term_steering(const SteeringScenario& s);

struct BellSettings {
  Observable a1, a2, b1, b2;
};

// Agreement witness P11= + P12= + P21= + P22!= with classical bound 3,
// algebraic maximum 4 and quantum maximum 2 + sqrt(2). Measurements are
// simultaneous and non-adaptive.
WitnessReport bell_functional(const DensityOperator& rho,
                              const BellSettings& settings);

// Sum of the two largest eigenvalues of T^t T for the spin correlation matrix
// T_ij = tr(rho sigma_i x sigma_j); the state admits a CHSH violation iff > 1.
double horodecki_m(const DensityOperator& rho);

// --- deterministic multi-start optimizers ---------------------------------
// Coordinate ascent: 24-point grid per angle followed by golden-section
// refinement to 1e-8. Restart starting points derive from the seed; results
// merge by value with ties going to the lowest restart index.

struct BellOptimum {
  BellSettings settings;
  WitnessReport report;
};

// Maximizes the agreement witness over all four measurement directions
// (two angles each).
BellOptimum optimize_bell_settings(const DensityOperator& rho, int restarts,
                                   std::uint64_t seed);

struct SteeringOptimum {
  SteeringScenario scenario;
  WitnessReport report;
};

// Maximizes the three-term certainty sum over the x-z plane polar angles of
// Alice's two settings and Bob's three branch observables, keeping the
// adaptive term structure of aligned_three_term_scenario.
SteeringOptimum optimize_steering_settings(const DensityOperator& rho,
                                           int restarts, std::uint64_t seed);

struct ThetaMarginOptimum {
  double theta = 0.0;
  WitnessReport report;
};

// Maximizes the violation margin of the aligned scenario on |Psi(theta)> over
// theta in (0, pi/2). The margin has mirror-symmetric maxima; the smallest
// maximizing theta is returned.
ThetaMarginOptimum optimize_margin_over_theta(int grid_points = 48);

}  // namespace qsteer

#endif
