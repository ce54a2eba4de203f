#include "qsteer/ornl.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qsteer {

namespace {

constexpr double kProbSumTol = 1e-12;
constexpr double kEqualTol = 1e-10;
constexpr double kAlgebraicMin = 1.5;  // three terms, 1/2 each

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

Preparation::Preparation(std::vector<PreparationComponent> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw std::invalid_argument("preparation needs at least one component");
  double total = 0.0;
  for (const auto& c : components_) {
    if (c.probability < 0.0)
      throw std::invalid_argument("component probabilities must be nonnegative");
    if (c.state.dim() != 4)
      throw std::invalid_argument("components must be dimension-4 states");
    total += c.probability;
  }
  if (std::abs(total - 1.0) > kProbSumTol)
    throw std::invalid_argument("component probabilities must sum to 1");
}

bool check_or_nonlocal_pure(const DensityOperator& rho_ab, const Observable& x0) {
  if (rho_ab.dim() != 4)
    throw std::invalid_argument("expected a dimension-4 joint state");
  if (!rho_ab.is_pure())
    throw std::invalid_argument("check_or_nonlocal_pure requires a pure state");
  const bool locally_real =
      signal_a_to_ab(rho_ab, x0).trace_distance > kEqualTol;
  return locally_real && is_commensurate(rho_ab, x0, x0);
}

double or_probability_known_prep(const Preparation& p) {
  double total = 0.0;
  for (const auto& c : p.components()) {
    if (c.declared_separable) continue;
    if (!c.state.is_pure())
      throw std::invalid_argument(
          "component is neither pure nor declared separable");
    if (check_or_nonlocal_pure(c.state, c.designated_x0)) total += c.probability;
  }
  return clamp01(total);
}

DecompositionCheck validate_decomposition(const DensityOperator& target,
                                          const Preparation& p) {
  ComplexMatrix sum(target.dim());
  for (const auto& c : p.components()) {
    ComplexMatrix part = c.state.matrix();
    part *= c.probability;
    sum += part;
  }
  const double distance = trace_distance_matrix(target.matrix(), sum);
  return {distance < kEqualTol, distance};
}

ORCertificate certify_steering_violation(const WitnessReport& report,
                                         double upsilon_max,
                                         bool commensurate_promise) {
  if (!report.violated)
    throw std::invalid_argument(
        "no certificate: the witness bound was not violated");
  if (!commensurate_promise)
    throw std::invalid_argument(
        "a commensurate-preparation promise is required for this certificate");
  if (!(upsilon_max > report.classical_bound &&
        upsilon_max <= report.algebraic_max + 1e-12))
    throw std::domain_error(
        "upsilon_max must lie in (classical bound, term count]");
  ORCertificate cert;
  cert.upsilon_star = report.lhs;
  cert.upsilon_max = upsilon_max;
  cert.f_min =
      clamp01((report.lhs - kAlgebraicMin) / (upsilon_max - kAlgebraicMin));
  cert.basis = CertificateBasis::steering_violation;
  return cert;
}

WernerClass classify_werner(double f, double theta) {
  const DensityOperator state = make_werner({f, theta});
  if (horodecki_m(state) > 1.0 + 1e-9) return WernerClass::bell_nonlocal;
  if (steering_functional(aligned_three_term_scenario(state, theta)).violated)
    return WernerClass::or_nonlocal_not_bell;
  return WernerClass::unsteerable_region;
}

const char* to_string(WernerClass c) {
  switch (c) {
    case WernerClass::unsteerable_region:
      return "unsteerable-region";
    case WernerClass::or_nonlocal_not_bell:
      return "OR-nonlocal-not-Bell";
    case WernerClass::bell_nonlocal:
      return "Bell-nonlocal";
  }
  return "?";
}

WernerThresholds werner_thresholds(double theta) {
  WernerThresholds out;

  auto bisect = [](const std::function<double(double)>& g) {
    // Root of an increasing function of f on [0, 1]; 1.0 when never positive.
    if (g(1.0) <= 0.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  };

  out.steering = bisect([theta](double f) {
    const WitnessReport rep = steering_functional(
        aligned_three_term_scenario(make_werner({f, theta}), theta));
    return rep.lhs - rep.classical_bound;
  });
  out.bell = bisect(
      [theta](double f) { return horodecki_m(make_werner({f, theta})) - 1.0; });
  return out;
}

HiddenStateModel lhs_model_from_compatible(const DensityOperator& rho_ab,
                                           const Observable& x0,
                                           const Observable& x1) {
  if (rho_ab.dim() != 4)
    throw std::invalid_argument("expected a dimension-4 joint state");
  if (!are_compatible(x0, x1))
    throw std::invalid_argument(
        "hidden-state model requires a compatible (collinear) pair");
  // x1's projectors are x0's with outcomes relabeled by the collinearity sign.
  const int sign = bloch_dot(x0, x1) >= 0.0 ? +1 : -1;

  HiddenStateModel model;
  for (int a : {+1, -1}) {
    const double pa = alice_outcome_probability(rho_ab, x0, a);
    if (pa <= 1e-12) continue;
    HiddenStateComponent comp{pa, remote_conditional_state(rho_ab, x0, a).state,
                              {}};
    comp.response[0][a == +1 ? 0 : 1] = 1.0;
    const int a1 = a * sign;  // outcome of x1 produced by this hidden state
    comp.response[1][a1 == +1 ? 0 : 1] = 1.0;
    model.components.push_back(std::move(comp));
  }

  // Merge components with identical hidden states (product states collapse to
  // a single stochastic-response component).
  for (std::size_t i = 0; i + 1 < model.components.size();) {
    auto& a = model.components[i];
    auto& b = model.components[i + 1];
    if (trace_distance(a.state, b.state) < kEqualTol) {
      const double w = a.weight + b.weight;
      for (int s = 0; s < 2; ++s)
        for (int o = 0; o < 2; ++o)
          a.response[s][o] =
              (a.weight * a.response[s][o] + b.weight * b.response[s][o]) / w;
      a.weight = w;
      model.components.erase(model.components.begin() + i + 1);
    } else {
      ++i;
    }
  }
  return model;
}

}  // namespace qsteer
