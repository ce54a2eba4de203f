#ifndef QSTEER_PROTOCOLS_HPP
#define QSTEER_PROTOCOLS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qsteer/measurement.hpp"
#include "qsteer/state.hpp"

namespace qsteer {

// Distinguishability of a state from its non-selectively measured version,
// reported three ways. The signal is "operationally real" when the states are
// distinguishable at all, i.e. the trace distance is nonzero.
struct SignalReport {
  double trace_distance = 0.0;
  double helstrom_success = 0.5;  // 1/2 + trace_distance/2
  double holevo_bits = 0.0;       // of the equiprobable binary ensemble
  bool operationally_real() const { return trace_distance > 1e-10; }
};

// How one certainty term is aggregated over Alice's outcomes.
enum class TermRule { averaged, outcome_conditioned };

struct SteeringTerm {
  std::size_t alice_setting = 0;
  TermRule rule = TermRule::averaged;
  int designated_outcome = +1;  // used by outcome_conditioned
};

// A steering experiment: shared state, Alice's settings, Bob's
// outcome-adaptive branch map, and the per-term aggregation rules.
class SteeringScenario {
public:
  using BranchKey = std::pair<std::size_t, int>;  // (alice setting, outcome)

  SteeringScenario(DensityOperator state, std::vector<Observable> alice,
                   std::map<BranchKey, Observable> bob_branches,
                   std::vector<SteeringTerm> terms);

  const DensityOperator& state() const { return state_; }
  const std::vector<Observable>& alice() const { return alice_; }
  const std::vector<SteeringTerm>& terms() const { return terms_; }
  const Observable& branch(std::size_t setting, int outcome) const;

  // One Bob observable per term (the branch observable for the designated
  // outcome; averaged terms carry the same observable on both branches).
  std::vector<Observable> bob_settings() const;

  SteeringScenario with_state(DensityOperator state) const;

private:
  DensityOperator state_;
  std::vector<Observable> alice_;
  std::map<BranchKey, Observable> bob_branches_;
  std::vector<SteeringTerm> terms_;
};

// Three-term scenario with x0 = y0 = sigma_Z, x1 = sigma_X and Bob's adaptive
// settings y1/y2 = sin(2 theta) sigma_X +/- cos(2 theta) sigma_Z, i.e. aligned
// with the conditional states of |Psi(theta)>. Term 0 is averaged, terms 1-2
// condition on Alice's +1 / -1 outcome of x1.
SteeringScenario aligned_three_term_scenario(DensityOperator state, double theta);

// Two-term scenario with both terms averaged.
SteeringScenario two_term_scenario(DensityOperator state, Observable x0,
                                   Observable y0, Observable x1, Observable y1);

// General non-adaptive form: one averaged term per (x_j, y_j) pair. Unlike
// the outcome-adaptive realization above, the certainty sum of this form
// never exceeds the uncertainty bound of the y_j on separable states.
SteeringScenario averaged_scenario(DensityOperator state,
                                   std::vector<Observable> alice,
                                   std::vector<Observable> bob);

// Distinguishability of phi from M_x(phi): can Alice's local measurement be
// noticed on the system itself?
SignalReport signal_a_to_a(const DensityOperator& phi, const Observable& x);

// Same comparison for a joint state against (x on A, identity on B).
SignalReport signal_a_to_ab(const DensityOperator& rho_ab, const Observable& x);

// Bob's certainty per term: for `averaged`, sum_a p(a|x) max_b p(b|y_branch,
// conditional state); for `outcome_conditioned`, the certainty at the
// designated outcome. Throws if a designated outcome has zero probability.
std::vector<double> conditional_certainties(const SteeringScenario& s);

// Outcome counts of a simulated run, n shots per term.
// counts[term][a_index][b_index] with index 0 = outcome +1, 1 = outcome -1.
struct SampleCounts {
  std::uint64_t shots_per_term = 0;
  std::uint64_t seed = 0;
  std::vector<std::array<std::array<std::uint64_t, 2>, 2>> counts;
};

// I.i.d. sampling from the exact joint distribution; deterministic for a given
// (seed, n). Term j draws from the splitmix64 substream substream_seed(seed, j).
SampleCounts sample_experiment(const SteeringScenario& s, std::uint64_t n,
                               std::uint64_t seed);

struct TermEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t effective_shots = 0;
};

struct FunctionalEstimate {
  std::vector<TermEstimate> terms;
  double sum = 0.0;
  double sum_std_error = 0.0;
};

// Empirical certainty estimate: the fraction of shots where Bob's outcome
// matches the most likely one for the exact conditional state (Alice's
// prediction). Unbiased, with plain binomial standard errors.
FunctionalEstimate estimate_from_counts(const SteeringScenario& s,
                                        const SampleCounts& c);

}  // namespace qsteer

#endif
