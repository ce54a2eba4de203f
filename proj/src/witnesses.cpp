#include "qsteer/witnesses.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "qsteer/rng.hpp"

namespace qsteer {

namespace {

constexpr double kViolationTol = 1e-9;
constexpr double kPi = std::numbers::pi;

WitnessReport make_report(double lhs, double bound, double algebraic_max) {
  WitnessReport rep;
  rep.lhs = lhs;
  rep.classical_bound = bound;
  rep.algebraic_max = algebraic_max;
  rep.violated = lhs > bound + kViolationTol;
  rep.margin_ratio = lhs / bound;
  return rep;
}

double pauli_correlation(const DensityOperator& rho, const Observable& a,
                         const Observable& b) {
  return (kron(a.matrix(), b.matrix()) * rho.matrix()).trace().real();
}

// --- golden-section maximization over a bracketing interval ----------------

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

// Cyclic coordinate ascent over periodic angles: per coordinate, scan a
// 24-point grid and refine around the best point by golden section.
double coordinate_ascent(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double>& angles, double period) {
  constexpr int kGrid = 24;
  const double step = period / kGrid;
  double best = f(angles);
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double at_sweep_start = best;
    for (std::size_t i = 0; i < angles.size(); ++i) {
      double grid_arg = angles[i];
      double grid_val = best;
      for (int g = 0; g < kGrid; ++g) {
        const double cand = g * step;
        std::vector<double> probe = angles;
        probe[i] = cand;
        const double v = f(probe);
        if (v > grid_val) {
          grid_val = v;
          grid_arg = cand;
        }
      }
      auto line = [&](double x) {
        std::vector<double> probe = angles;
        probe[i] = x;
        return f(probe);
      };
      const double refined =
          golden_max(line, grid_arg - step, grid_arg + step, 1e-8);
      const double refined_val = line(refined);
      if (refined_val > best) {
        best = refined_val;
        angles[i] = refined;
      } else if (grid_val > best) {
        best = grid_val;
        angles[i] = grid_arg;
      }
    }
    if (best - at_sweep_start < 1e-12) break;
  }
  return best;
}

BellSettings settings_from_angles(const std::vector<double>& a) {
  return {observable_from_angles(a[0], a[1]), observable_from_angles(a[2], a[3]),
          observable_from_angles(a[4], a[5]), observable_from_angles(a[6], a[7])};
}

// x-z plane observables for the steering search; the adaptive term structure
// matches aligned_three_term_scenario.
SteeringScenario scenario_from_plane_angles(const DensityOperator& rho,
                                            const std::vector<double>& a) {
  const Observable x0 = observable_from_angles(a[0], 0.0);
  const Observable x1 = observable_from_angles(a[1], 0.0);
  const Observable y0 = observable_from_angles(a[2], 0.0);
  const Observable y1 = observable_from_angles(a[3], 0.0);
  const Observable y2 = observable_from_angles(a[4], 0.0);
  std::map<SteeringScenario::BranchKey, Observable> branches{
      {{0, +1}, y0}, {{0, -1}, y0}, {{1, +1}, y1}, {{1, -1}, y2}};
  std::vector<SteeringTerm> terms{
      {0, TermRule::averaged, +1},
      {1, TermRule::outcome_conditioned, +1},
      {1, TermRule::outcome_conditioned, -1}};
  return SteeringScenario(rho, {x0, x1}, std::move(branches), std::move(terms));
}

}  // namespace

double uncertainty_bound(const std::vector<Observable>& obs) {
  const std::size_t k = obs.size();
  if (k < 1) throw std::domain_error("uncertainty bound needs at least one observable");
  if (k > 8) throw std::domain_error("uncertainty bound supports at most 8 observables");
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    double vx = 0.0, vy = 0.0, vz = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double s = (mask >> j) & 1u ? -1.0 : 1.0;
      vx += s * obs[j].bloch()[0];
      vy += s * obs[j].bloch()[1];
      vz += s * obs[j].bloch()[2];
    }
    best = std::max(best, std::sqrt(vx * vx + vy * vy + vz * vz));
  }
  return 0.5 * static_cast<double>(k) + 0.5 * best;
}

WitnessReport steering_functional(const SteeringScenario& s) {
  const std::vector<double> certs = conditional_certainties(s);
  double lhs = 0.0;
  for (double v : certs) lhs += v;
  const double bound = uncertainty_bound(s.bob_settings());
  return make_report(lhs, bound, static_cast<double>(certs.size()));
}

WitnessReport two_term_steering(const SteeringScenario& s) {
  if (s.terms().size() != 2)
    throw std::domain_error("two-term witness requires exactly two terms");
  return steering_functional(s);
}

WitnessReport bell_functional(const DensityOperator& rho,
                              const BellSettings& st) {
  if (rho.dim() != 4)
    throw std::invalid_argument("bell functional expects a dimension-4 state");
  // P= = (1 + <a x b>)/2 for sharp two-outcome measurements.
  const double e11 = pauli_correlation(rho, st.a1, st.b1);
  const double e12 = pauli_correlation(rho, st.a1, st.b2);
  const double e21 = pauli_correlation(rho, st.a2, st.b1);
  const double e22 = pauli_correlation(rho, st.a2, st.b2);
  const double lhs = 2.0 + 0.5 * (e11 + e12 + e21 - e22);
  WitnessReport rep = make_report(lhs, 3.0, 4.0);
  rep.quantum_reference = 2.0 + std::sqrt(2.0);
  return rep;
}

double horodecki_m(const DensityOperator& rho) {
  if (rho.dim() != 4)
    throw std::invalid_argument("horodecki_m expects a dimension-4 state");
  const Observable axes[3] = {observable_x(),
                              Observable({0.0, 1.0, 0.0}),
                              observable_z()};
  double t[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t[i][j] = pauli_correlation(rho, axes[i], axes[j]);

  std::vector<double> gram(9, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += t[k][i] * t[k][j];
      gram[i * 3 + j] = s;
    }
  const std::vector<double> ev = symmetric_eigenvalues(std::move(gram), 3);
  return ev[1] + ev[2];
}

BellOptimum optimize_bell_settings(const DensityOperator& rho, int restarts,
                                   std::uint64_t seed) {
  if (restarts < 1) throw std::domain_error("restarts must be at least 1");
  auto objective = [&rho](const std::vector<double>& angles) {
    return bell_functional(rho, settings_from_angles(angles)).lhs;
  };

  std::vector<double> best_angles;
  double best = -1.0;
  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<double> angles(8);
    for (auto& a : angles) a = rng.uniform() * 2.0 * kPi;
    const double v = coordinate_ascent(objective, angles, 2.0 * kPi);
    if (v > best) {
      best = v;
      best_angles = angles;
    }
  }
  const BellSettings settings = settings_from_angles(best_angles);
  return {settings, bell_functional(rho, settings)};
}

SteeringOptimum optimize_steering_settings(const DensityOperator& rho,
                                           int restarts, std::uint64_t seed) {
  if (restarts < 1) throw std::domain_error("restarts must be at least 1");
  auto objective = [&rho](const std::vector<double>& angles) {
    try {
      return steering_functional(scenario_from_plane_angles(rho, angles)).lhs;
    } catch (const std::domain_error&) {
      return -1.0;  // a designated branch lost all probability
    }
  };

  std::vector<double> best_angles;
  double best = -2.0;
  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<double> angles(5);
    for (auto& a : angles) a = rng.uniform() * 2.0 * kPi;
    const double v = coordinate_ascent(objective, angles, 2.0 * kPi);
    if (v > best) {
      best = v;
      best_angles = angles;
    }
  }
  const SteeringScenario scenario = scenario_from_plane_angles(rho, best_angles);
  return {scenario, steering_functional(scenario)};
}

ThetaMarginOptimum optimize_margin_over_theta(int grid_points) {
  if (grid_points < 2) throw std::domain_error("grid_points must be at least 2");
  auto margin = [](double theta) {
    const SteeringScenario s =
        aligned_three_term_scenario(make_psi({theta}), theta);
    return steering_functional(s).margin_ratio;
  };

  // Refine every interior grid local maximum, then pick the smallest theta
  // among values tied with the best.
  const double lo = 1e-6, hi = kPi / 2.0 - 1e-6;
  const double step = (hi - lo) / grid_points;
  std::vector<double> grid(grid_points + 1);
  std::vector<double> val(grid_points + 1);
  for (int i = 0; i <= grid_points; ++i) {
    grid[i] = lo + i * step;
    val[i] = margin(grid[i]);
  }
  std::vector<double> candidates;
  for (int i = 0; i <= grid_points; ++i) {
    const bool left_ok = i == 0 || val[i] >= val[i - 1];
    const bool right_ok = i == grid_points || val[i] >= val[i + 1];
    if (left_ok && right_ok) {
      const double a = i == 0 ? lo : grid[i - 1];
      const double b = i == grid_points ? hi : grid[i + 1];
      candidates.push_back(golden_max(margin, a, b, 1e-8));
    }
  }
  double best_val = -1.0;
  for (double c : candidates) best_val = std::max(best_val, margin(c));
  double best_theta = hi;
  for (double c : candidates)
    if (margin(c) >= best_val - 1e-9 && c < best_theta) best_theta = c;

  const SteeringScenario s =
      aligned_three_term_scenario(make_psi({best_theta}), best_theta);
  return {best_theta, steering_functional(s)};
}

}  // namespace qsteer
