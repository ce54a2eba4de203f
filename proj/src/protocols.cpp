#include "qsteer/protocols.hpp"

#include <cmath>
#include <stdexcept>

#include "qsteer/rng.hpp"

namespace qsteer {

namespace {

constexpr double kProbFloor = 1e-12;

double abs_dot(const Observable& y, const std::array<double, 3>& r) {
  return std::abs(y.bloch()[0] * r[0] + y.bloch()[1] * r[1] + y.bloch()[2] * r[2]);
}

double signed_dot(const Observable& y, const std::array<double, 3>& r) {
  return y.bloch()[0] * r[0] + y.bloch()[1] * r[1] + y.bloch()[2] * r[2];
}

// max_b p(b|y) for a dimension-2 state.
double best_outcome_probability(const Observable& y, const DensityOperator& rho) {
  return 0.5 * (1.0 + abs_dot(y, rho.bloch()));
}

// Outcome of y most likely on rho; ties resolve to +1.
int predicted_outcome(const Observable& y, const DensityOperator& rho) {
  return signed_dot(y, rho.bloch()) >= 0.0 ? +1 : -1;
}

SignalReport compare_states(const DensityOperator& before,
                            const DensityOperator& after) {
  SignalReport rep;
  rep.trace_distance = trace_distance(before, after);
  rep.helstrom_success = 0.5 + 0.5 * rep.trace_distance;
  if (rep.trace_distance < 1e-10) {
    rep.holevo_bits = 0.0;
    return rep;
  }
  ComplexMatrix avg = before.matrix() + after.matrix();
  avg *= 0.5;
  const double mixed_entropy =
      von_neumann_entropy_bits(DensityOperator::from_matrix(std::move(avg)));
  const double chi = mixed_entropy - 0.5 * (von_neumann_entropy_bits(before) +
                                            von_neumann_entropy_bits(after));
  rep.holevo_bits = chi > 0.0 ? chi : 0.0;
  return rep;
}

}  // namespace

SteeringScenario::SteeringScenario(DensityOperator state,
                                   std::vector<Observable> alice,
                                   std::map<BranchKey, Observable> bob_branches,
                                   std::vector<SteeringTerm> terms)
    : state_(std::move(state)),
      alice_(std::move(alice)),
      bob_branches_(std::move(bob_branches)),
      terms_(std::move(terms)) {
  if (state_.dim() != 4)
    throw std::invalid_argument("steering scenario requires a dimension-4 state");
  if (alice_.empty() || terms_.empty())
    throw std::invalid_argument("steering scenario requires settings and terms");
  for (const auto& term : terms_) {
    if (term.alice_setting >= alice_.size())
      throw std::invalid_argument("term references a missing Alice setting");
    if (term.rule == TermRule::averaged) {
      const auto plus = bob_branches_.find({term.alice_setting, +1});
      const auto minus = bob_branches_.find({term.alice_setting, -1});
      if (plus == bob_branches_.end() || minus == bob_branches_.end())
        throw std::invalid_argument("averaged term is missing a Bob branch");
      if (std::abs(std::abs(bloch_dot(plus->second, minus->second)) - 1.0) > 1e-12 ||
          bloch_dot(plus->second, minus->second) < 0.0)
        throw std::invalid_argument(
            "averaged term must use one Bob observable on both branches");
    } else {
      if (term.designated_outcome != +1 && term.designated_outcome != -1)
        throw std::invalid_argument("designated outcome must be +1 or -1");
      if (!bob_branches_.count({term.alice_setting, term.designated_outcome}))
        throw std::invalid_argument("conditioned term is missing its Bob branch");
    }
  }
}

const Observable& SteeringScenario::branch(std::size_t setting, int outcome) const {
  const auto it = bob_branches_.find({setting, outcome});
  if (it == bob_branches_.end())
    throw std::invalid_argument("no Bob branch for this setting/outcome");
  return it->second;
}

std::vector<Observable> SteeringScenario::bob_settings() const {
  std::vector<Observable> out;
  out.reserve(terms_.size());
  for (const auto& term : terms_)
    out.push_back(branch(term.alice_setting, term.rule == TermRule::averaged
                                                 ? +1
                                                 : term.designated_outcome));
  return out;
}

SteeringScenario SteeringScenario::with_state(DensityOperator state) const {
  return SteeringScenario(std::move(state), alice_, bob_branches_, terms_);
}

SteeringScenario aligned_three_term_scenario(DensityOperator state, double theta) {
  const double s = std::sin(2.0 * theta);
  const double c = std::cos(2.0 * theta);
  const Observable z = observable_z();
  const Observable y1({s, 0.0, c});
  const Observable y2({s, 0.0, -c});
  std::map<SteeringScenario::BranchKey, Observable> branches{
      {{0, +1}, z}, {{0, -1}, z}, {{1, +1}, y1}, {{1, -1}, y2}};
  std::vector<SteeringTerm> terms{
      {0, TermRule::averaged, +1},
      {1, TermRule::outcome_conditioned, +1},
      {1, TermRule::outcome_conditioned, -1}};
  return SteeringScenario(std::move(state), {z, observable_x()},
                          std::move(branches), std::move(terms));
}

SteeringScenario two_term_scenario(DensityOperator state, Observable x0,
                                   Observable y0, Observable x1, Observable y1) {
  std::map<SteeringScenario::BranchKey, Observable> branches{
      {{0, +1}, y0}, {{0, -1}, y0}, {{1, +1}, y1}, {{1, -1}, y1}};
  std::vector<SteeringTerm> terms{{0, TermRule::averaged, +1},
                                  {1, TermRule::averaged, +1}};
  return SteeringScenario(std::move(state), {std::move(x0), std::move(x1)},
                          std::move(branches), std::move(terms));
}

SteeringScenario averaged_scenario(DensityOperator state,
                                   std::vector<Observable> alice,
                                   std::vector<Observable> bob) {
  if (alice.size() != bob.size())
    throw std::invalid_argument("averaged scenario needs one y per x");
  std::map<SteeringScenario::BranchKey, Observable> branches;
  std::vector<SteeringTerm> terms;
  for (std::size_t j = 0; j < alice.size(); ++j) {
    branches.insert({{j, +1}, bob[j]});
    branches.insert({{j, -1}, bob[j]});
    terms.push_back({j, TermRule::averaged, +1});
  }
  return SteeringScenario(std::move(state), std::move(alice),
                          std::move(branches), std::move(terms));
}

SignalReport signal_a_to_a(const DensityOperator& phi, const Observable& x) {
  if (phi.dim() != 2)
    throw std::invalid_argument("signal_a_to_a expects a dimension-2 state");
  return compare_states(phi, nonselective(phi, x));
}

SignalReport signal_a_to_ab(const DensityOperator& rho_ab, const Observable& x) {
  if (rho_ab.dim() != 4)
    throw std::invalid_argument("signal_a_to_ab expects a dimension-4 state");
  return compare_states(rho_ab, nonselective(rho_ab, x));
}

std::vector<double> conditional_certainties(const SteeringScenario& s) {
  std::vector<double> values;
  values.reserve(s.terms().size());
  for (const auto& term : s.terms()) {
    const Observable& x = s.alice()[term.alice_setting];
    if (term.rule == TermRule::averaged) {
      double v = 0.0;
      for (int a : {+1, -1}) {
        const double p = alice_outcome_probability(s.state(), x, a);
        if (p <= kProbFloor) continue;  // zero-weight branch
        const ConditionalState cond = remote_conditional_state(s.state(), x, a);
        v += p * best_outcome_probability(s.branch(term.alice_setting, a),
                                          cond.state);
      }
      values.push_back(v);
    } else {
      const int a = term.designated_outcome;
      if (alice_outcome_probability(s.state(), x, a) <= kProbFloor)
        throw std::domain_error(
            "conditional certainty undefined: designated outcome has zero "
            "probability");
      const ConditionalState cond = remote_conditional_state(s.state(), x, a);
      values.push_back(best_outcome_probability(
          s.branch(term.alice_setting, a), cond.state));
    }
  }
  return values;
}

SampleCounts sample_experiment(const SteeringScenario& s, std::uint64_t n,
                               std::uint64_t seed) {
  if (n < 1) throw std::domain_error("sample size must be at least 1");
  SampleCounts out;
  out.shots_per_term = n;
  out.seed = seed;
  out.counts.assign(s.terms().size(), {});

  for (std::size_t j = 0; j < s.terms().size(); ++j) {
    const auto& term = s.terms()[j];
    const Observable& x = s.alice()[term.alice_setting];
    const double p_plus = alice_outcome_probability(s.state(), x, +1);

    // Conditional distribution of Bob's branch outcome per Alice outcome.
    std::array<double, 2> bob_plus_prob{0.5, 0.5};
    for (int a : {+1, -1}) {
      const double pa = a == +1 ? p_plus : 1.0 - p_plus;
      if (pa <= kProbFloor) continue;
      const ConditionalState cond = remote_conditional_state(s.state(), x, a);
      const Observable& y = s.branch(term.alice_setting, a);
      bob_plus_prob[a == +1 ? 0 : 1] =
          0.5 * (1.0 + signed_dot(y, cond.state.bloch()));
    }

    SplitMix64 rng(substream_seed(seed, j));
    auto& table = out.counts[j];
    for (std::uint64_t shot = 0; shot < n; ++shot) {
      const int ai = rng.uniform() < p_plus ? 0 : 1;
      const int bi = rng.uniform() < bob_plus_prob[ai] ? 0 : 1;
      ++table[ai][bi];
    }
  }
  return out;
}

FunctionalEstimate estimate_from_counts(const SteeringScenario& s,
                                        const SampleCounts& c) {
  if (c.counts.size() != s.terms().size())
    throw std::invalid_argument("counts do not match the scenario terms");
  FunctionalEstimate est;
  double var_sum = 0.0;
  for (std::size_t j = 0; j < s.terms().size(); ++j) {
    const auto& term = s.terms()[j];
    const Observable& x = s.alice()[term.alice_setting];
    const auto& table = c.counts[j];

    // Alice predicts the most likely outcome of the exact conditional state;
    // the estimate is her empirical success rate.
    std::uint64_t hits = 0, shots = 0;
    for (int a : {+1, -1}) {
      const int ai = a == +1 ? 0 : 1;
      const std::uint64_t row = table[ai][0] + table[ai][1];
      if (term.rule == TermRule::outcome_conditioned &&
          a != term.designated_outcome)
        continue;
      if (row == 0) continue;
      const ConditionalState cond = remote_conditional_state(s.state(), x, a);
      const int predicted = predicted_outcome(s.branch(term.alice_setting, a),
                                              cond.state);
      hits += table[ai][predicted == +1 ? 0 : 1];
      shots += row;
    }
    TermEstimate t;
    t.effective_shots = shots;
    if (shots > 0) {
      t.value = static_cast<double>(hits) / static_cast<double>(shots);
      t.std_error =
          std::sqrt(t.value * (1.0 - t.value) / static_cast<double>(shots));
    }
    est.sum += t.value;
    var_sum += t.std_error * t.std_error;
    est.terms.push_back(t);
  }
  est.sum_std_error = std::sqrt(var_sum);
  return est;
}

}  // namespace qsteer
