#ifndef QSTEER_ORNL_HPP
#define QSTEER_ORNL_HPP

#include <vector>

#include "qsteer/witnesses.hpp"

namespace qsteer {

// What kind of evidence backs an operational-reality certificate.
enum class CertificateBasis {
  pure_state_conditions,    // direct check on a pure joint state
  steering_violation,       // certainty-sum violation with a preparation promise
  known_preparation,        // mixing procedure disclosed by the preparer
  device_independent_bell,  // agreement-witness violation
};

struct ORCertificate {
  double upsilon_star = 0.0;  // observed lhs
  double upsilon_max = 3.0;   // theory maximum (algebraic default 3)
  double f_min = 0.0;         // certified fraction, clamped to [0, 1]
  CertificateBasis basis = CertificateBasis::steering_violation;
};

struct PreparationComponent {
  double probability = 0.0;
  DensityOperator state;  // dimension 4
  Observable designated_x0;
  // Set when the preparer knows the component is separable (it then cannot
  // contribute remote disturbance); mixed components require this flag.
  bool declared_separable = false;
};

// A disclosed mixing procedure; component probabilities must sum to 1.
class Preparation {
public:
  explicit Preparation(std::vector<PreparationComponent> components);
  const std::vector<PreparationComponent>& components() const {
    return components_;
  }

private:
  std::vector<PreparationComponent> components_;
};

// A pure joint state is OR nonlocal for x0 when (a) the non-selective
// measurement of x0 on A changes the joint state, and (b) the disturbance of
// A is identical to the remote disturbance of B (commensurate pair (x0, x0)).
bool check_or_nonlocal_pure(const DensityOperator& rho_ab, const Observable& x0);

// Probability that the remote disturbance is OR nonlocal under a known
// preparation: the total weight of pure components passing the check above.
double or_probability_known_prep(const Preparation& p);

struct DecompositionCheck {
  bool matches = false;
  double distance = 0.0;  // trace distance between target and reconstruction
};

// Reconstructs sum_i p_i rho_i and compares it to the target.
DecompositionCheck validate_decomposition(const DensityOperator& target,
                                          const Preparation& p);

// Lower bound on the OR-nonlocal fraction from a violated three-term
// certainty-sum report: (lhs - 3/2) / (upsilon_max - 3/2), clamped to [0, 1].
// Requires the caller's promise that the state is a noisy pure state with a
// commensurate measurement pair; that promise is never inferred from the
// density operator, because a mixed state does not determine its preparation.
ORCertificate certify_steering_violation(const WitnessReport& report,
                                         double upsilon_max,
                                         bool commensurate_promise);

enum class WernerClass {
  unsteerable_region,    // by this witness family
  or_nonlocal_not_bell,  // certainty sum violated, no CHSH violation possible
  bell_nonlocal,
};

// Region of W(f, theta) by direct evaluation of the aligned three-term
// witness and the Horodecki criterion.
WernerClass classify_werner(double f, double theta);
const char* to_string(WernerClass c);

struct WernerThresholds {
  double steering = 1.0;  // root of lhs(f) = bound
  double bell = 1.0;      // root of M(f) = 1
};

WernerThresholds werner_thresholds(double theta);

// Local-hidden-state model for a compatible pair of Alice observables:
// hidden B-states with response probabilities reproducing both families of
// conditional states. response[setting][i] is the probability of outcome +1
// (i = 0) or -1 (i = 1) of that setting given the hidden state.
struct HiddenStateComponent {
  double weight = 0.0;
  DensityOperator state;  // dimension 2
  std::array<std::array<double, 2>, 2> response{};
};

struct HiddenStateModel {
  std::vector<HiddenStateComponent> components;
};

HiddenStateModel lhs_model_from_compatible(const DensityOperator& rho_ab,
                                           const Observable& x0,
                                           const Observable& x1);

}  // namespace qsteer

#endif
