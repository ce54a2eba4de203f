// qsteer: two-qubit nonlocality workbench.
//
// Subcommands:
//   reproduce   evaluate the closed-form reference values and compare
//   scan        sweep theta or f and emit witness columns (table/CSV/JSON)
//   protocol    distinguishability signals for a local or joint measurement
//   sample      Monte Carlo run of the three-term steering experiment
//
// Identical invocations (including --seed) produce byte-identical output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsteer/ornl.hpp"
#include "qsteer/rng.hpp"
#include "qsteer/version.hpp"

using json = nlohmann::ordered_json;
using namespace qsteer;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Round through the 9-significant-digit representation so CSV cells and JSON
// numbers parse back to the same double.
double round9(double v) { return std::strtod(fmt9(v).c_str(), nullptr); }

void print_kv(const std::string& key, const std::string& value) {
  std::printf("  %-28s %s\n", key.c_str(), value.c_str());
}

struct ReproduceRow {
  std::string name;
  double computed;
  double reference;
};

int run_reproduce(double tolerance, std::uint64_t seed, bool as_json) {
  const double theta = kPi / 6.0;
  std::vector<ReproduceRow> rows;

  const SteeringScenario aligned =
      aligned_three_term_scenario(make_psi({theta}), theta);
  const WitnessReport steer = steering_functional(aligned);
  rows.push_back({"upsilon_bound", steer.classical_bound, 2.5});
  rows.push_back({"steering_sum_max", steer.lhs, 3.0});
  rows.push_back({"steering_margin", steer.margin_ratio, 1.2});

  const WitnessReport two = two_term_steering(
      two_term_scenario(make_psi({kPi / 4.0}), observable_z(), observable_z(),
                        observable_x(), observable_x()));
  rows.push_back({"two_term_bound", two.classical_bound, 1.0 + std::sqrt(0.5)});
  rows.push_back(
      {"two_term_margin", two.margin_ratio, 4.0 - 2.0 * std::sqrt(2.0)});

  const WernerThresholds th = werner_thresholds(theta);
  rows.push_back({"werner_steering_threshold", th.steering, 2.0 / 3.0});
  rows.push_back({"werner_bell_threshold", th.bell, 2.0 / std::sqrt(7.0)});

  const BellOptimum bell = optimize_bell_settings(make_psi({kPi / 4.0}), 6, seed);
  rows.push_back({"bell_quantum_max", bell.report.lhs, 2.0 + std::sqrt(2.0)});
  rows.push_back({"bell_classical_bound", bell.report.classical_bound, 3.0});

  const WitnessReport werner08 = steering_functional(
      aligned_three_term_scenario(make_werner({0.8, theta}), theta));
  rows.push_back({"or_fraction_werner_f08",
                  certify_steering_violation(werner08, 3.0, true).f_min, 0.8});

  const WitnessReport mixed = steering_functional(
      aligned_three_term_scenario(maximally_mixed(4), theta));
  rows.push_back({"steering_sum_mixed", mixed.lhs, 1.5});

  bool all_ok = true;
  json jrows = json::array();
  if (!as_json)
    std::printf("%-28s %15s %15s %12s  %s\n", "name", "computed", "reference",
                "abs_diff", "status");
  for (const auto& row : rows) {
    const double diff = std::abs(row.computed - row.reference);
    const bool ok = diff <= tolerance;
    all_ok = all_ok && ok;
    if (as_json) {
      jrows.push_back({{"name", row.name},
                       {"computed", round9(row.computed)},
                       {"reference", round9(row.reference)},
                       {"abs_diff", round9(diff)},
                       {"pass", ok}});
    } else {
      std::printf("%-28s %15s %15s %12s  %s\n", row.name.c_str(),
                  fmt9(row.computed).c_str(), fmt9(row.reference).c_str(),
                  fmt9(diff).c_str(), ok ? "PASS" : "FAIL");
    }
  }
  if (as_json) {
    json manifest = {{"command", "reproduce"},
                     {"parameters", {{"tolerance", tolerance}}},
                     {"seed", seed},
                     {"library_version", kVersion},
                     {"results", {{"rows", jrows}, {"all_pass", all_ok}}}};
    std::printf("%s\n", manifest.dump(2).c_str());
  } else {
    std::printf("%s\n", all_ok ? "all values reproduced" : "REPRODUCTION FAILED");
  }
  return all_ok ? 0 : 2;
}

struct ScanRow {
  double theta, f, lhs, bound, margin, f_min;
  std::string werner_class;
};

int run_scan(const std::string& axis, double lo, double hi, int steps,
             double theta_fixed, double f_fixed, bool as_json,
             const std::string& csv_path) {
  std::vector<ScanRow> rows;
  for (int i = 0; i < steps; ++i) {
    const double v = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(steps - 1);
    const double theta = axis == "theta" ? v : theta_fixed;
    const double f = axis == "f" ? v : f_fixed;
    const DensityOperator state = make_werner({f, theta});
    const WitnessReport rep =
        steering_functional(aligned_three_term_scenario(state, theta));
    ScanRow row;
    row.theta = round9(theta);
    row.f = round9(f);
    row.lhs = round9(rep.lhs);
    row.bound = round9(rep.classical_bound);
    row.margin = round9(rep.margin_ratio);
    const double fmin_raw = (rep.lhs - 1.5) / 1.5;
    row.f_min = round9(fmin_raw < 0.0 ? 0.0 : (fmin_raw > 1.0 ? 1.0 : fmin_raw));
    row.werner_class = to_string(classify_werner(f, theta));
    rows.push_back(row);
  }

  const char* header = "theta,f,lhs,bound,margin,f_min,werner_class";
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open CSV path: " + csv_path);
    out << header << "\n";
    for (const auto& r : rows)
      out << fmt9(r.theta) << ',' << fmt9(r.f) << ',' << fmt9(r.lhs) << ','
          << fmt9(r.bound) << ',' << fmt9(r.margin) << ',' << fmt9(r.f_min)
          << ',' << r.werner_class << "\n";
  }

  if (as_json) {
    json jrows = json::array();
    for (const auto& r : rows)
      jrows.push_back({{"theta", r.theta},
                       {"f", r.f},
                       {"lhs", r.lhs},
                       {"bound", r.bound},
                       {"margin", r.margin},
                       {"f_min", r.f_min},
                       {"werner_class", r.werner_class}});
    json manifest = {{"command", "scan"},
                     {"parameters",
                      {{"axis", axis},
                       {"min", lo},
                       {"max", hi},
                       {"steps", steps},
                       {"theta", theta_fixed},
                       {"f", f_fixed}}},
                     {"library_version", kVersion},
                     {"results", {{"rows", jrows}}}};
    std::printf("%s\n", manifest.dump(2).c_str());
  } else {
    std::printf("%s\n", header);
    for (const auto& r : rows)
      std::printf("%s,%s,%s,%s,%s,%s,%s\n", fmt9(r.theta).c_str(),
                  fmt9(r.f).c_str(), fmt9(r.lhs).c_str(), fmt9(r.bound).c_str(),
                  fmt9(r.margin).c_str(), fmt9(r.f_min).c_str(),
                  r.werner_class.c_str());
  }
  return 0;
}

Observable parse_observable(const std::string& name, double polar,
                            double azimuth) {
  if (name == "z") return observable_z();
  if (name == "x") return observable_x();
  return observable_from_angles(polar, azimuth);
}

int run_protocol(const std::string& which, double theta, double f, bool mixed,
                 const std::string& obs_name, double polar, double azimuth,
                 bool as_json) {
  const Observable obs = parse_observable(obs_name, polar, azimuth);
  SignalReport rep;
  std::string state_desc;
  if (which == "p1") {
    const DensityOperator state =
        mixed ? maximally_mixed(2)
              : DensityOperator::from_matrix(ComplexMatrix::from_rows(
                    {{complexd{std::cos(theta / 2) * std::cos(theta / 2), 0.0},
                      complexd{0.0, 0.0}},
                     {complexd{0.0, 0.0},
                      complexd{std::sin(theta / 2) * std::sin(theta / 2), 0.0}}}));
    state_desc = mixed ? "I/2" : "diag(cos^2(theta/2), sin^2(theta/2))";
    rep = signal_a_to_a(state, obs);
  } else {
    const DensityOperator state =
        mixed ? maximally_mixed(4) : make_werner({f, theta});
    state_desc = mixed ? "I/4" : "W(f, theta)";
    rep = signal_a_to_ab(state, obs);
  }

  if (as_json) {
    json manifest = {
        {"command", "protocol"},
        {"parameters",
         {{"protocol", which},
          {"state", state_desc},
          {"theta", theta},
          {"f", f},
          {"mixed", mixed},
          {"observable", obs_name},
          {"polar", polar},
          {"azimuth", azimuth}}},
        {"library_version", kVersion},
        {"results",
         {{"trace_distance", round9(rep.trace_distance)},
          {"helstrom_success", round9(rep.helstrom_success)},
          {"holevo_bits", round9(rep.holevo_bits)},
          {"operationally_real", rep.operationally_real()}}}};
    std::printf("%s\n", manifest.dump(2).c_str());
  } else {
    std::printf("protocol %s on %s\n", which.c_str(), state_desc.c_str());
    print_kv("trace_distance", fmt9(rep.trace_distance));
    print_kv("helstrom_success", fmt9(rep.helstrom_success));
    print_kv("holevo_bits", fmt9(rep.holevo_bits));
    print_kv("operationally_real", rep.operationally_real() ? "true" : "false");
  }
  return 0;
}

int run_sample(double theta, double f, bool mixed, std::uint64_t n,
               std::uint64_t seed, bool as_json) {
  const DensityOperator state =
      mixed ? maximally_mixed(4) : make_werner({f, theta});
  const SteeringScenario scenario = aligned_three_term_scenario(state, theta);
  const std::vector<double> exact = conditional_certainties(scenario);
  const SampleCounts counts = sample_experiment(scenario, n, seed);
  const FunctionalEstimate est = estimate_from_counts(scenario, counts);

  double exact_sum = 0.0;
  for (double v : exact) exact_sum += v;
  const double diff = est.sum - exact_sum;
  const double z = est.sum_std_error > 0.0
                       ? diff / est.sum_std_error
                       : (std::abs(diff) < 1e-15 ? 0.0 : INFINITY);

  if (as_json) {
    json jterms = json::array();
    for (std::size_t j = 0; j < exact.size(); ++j)
      jterms.push_back({{"term", j},
                        {"exact", round9(exact[j])},
                        {"empirical", round9(est.terms[j].value)},
                        {"std_error", round9(est.terms[j].std_error)},
                        {"shots", est.terms[j].effective_shots}});
    json manifest = {{"command", "sample"},
                     {"parameters",
                      {{"theta", theta},
                       {"f", f},
                       {"mixed", mixed},
                       {"n", n},
                       {"rng", kRngAlgorithm}}},
                     {"seed", seed},
                     {"library_version", kVersion},
                     {"results",
                      {{"terms", jterms},
                       {"empirical_sum", round9(est.sum)},
                       {"exact_sum", round9(exact_sum)},
                       {"sum_std_error", round9(est.sum_std_error)},
                       {"z_score", round9(z)}}}};
    std::printf("%s\n", manifest.dump(2).c_str());
  } else {
    std::printf("sample: n=%llu per term, seed=%llu, rng=%s\n",
                static_cast<unsigned long long>(n),
                static_cast<unsigned long long>(seed), kRngAlgorithm);
    std::printf("  %-6s %12s %12s %12s\n", "term", "exact", "empirical",
                "std_error");
    for (std::size_t j = 0; j < exact.size(); ++j)
      std::printf("  %-6zu %12s %12s %12s\n", j, fmt9(exact[j]).c_str(),
                  fmt9(est.terms[j].value).c_str(),
                  fmt9(est.terms[j].std_error).c_str());
    print_kv("empirical_sum", fmt9(est.sum));
    print_kv("exact_sum", fmt9(exact_sum));
    print_kv("z_score", fmt9(z));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit nonlocality workbench"};
  app.require_subcommand(1);

  double tolerance = 1e-6;
  double theta = kPi / 6.0;
  double f = 1.0;
  double lo = NAN, hi = NAN;
  int steps = 101;
  std::uint64_t n = 1000000;
  std::uint64_t seed = 1;
  bool as_json = false;
  bool mixed = false;
  std::string axis, csv_path, obs_name = "x";
  double polar = 0.0, azimuth = 0.0;

  auto* reproduce = app.add_subcommand(
      "reproduce", "recompute the closed-form reference values");
  reproduce->add_option("--tolerance", tolerance, "comparison tolerance");
  reproduce->add_option("--seed", seed, "optimizer seed");
  reproduce->add_flag("--json", as_json, "emit a JSON report");

  auto* scan = app.add_subcommand("scan", "sweep theta or f");
  scan->add_option("--axis", axis, "scan axis")
      ->required()
      ->check(CLI::IsMember({"theta", "f"}));
  scan->add_option("--min", lo, "axis lower end");
  scan->add_option("--max", hi, "axis upper end");
  scan->add_option("--steps", steps, "grid points")->check(CLI::Range(2, 100000));
  scan->add_option("--theta", theta, "fixed theta when scanning f");
  scan->add_option("--f", f, "fixed f when scanning theta");
  scan->add_option("--csv", csv_path, "write rows as CSV to this path");
  scan->add_flag("--json", as_json, "emit a JSON report");

  auto* protocol = app.add_subcommand(
      "protocol", "distinguishability signal of a measurement");
  std::string which;
  protocol->add_option("name", which, "p1 (single system) or p2 (joint)")
      ->required()
      ->check(CLI::IsMember({"p1", "p2"}));
  protocol->add_option("--theta", theta, "state angle");
  protocol->add_option("--f", f, "Werner mixing probability (p2)");
  protocol->add_flag("--mixed", mixed, "use the maximally mixed state");
  protocol->add_option("--obs", obs_name, "measurement: z, x, or custom")
      ->check(CLI::IsMember({"z", "x", "custom"}));
  protocol->add_option("--polar", polar, "custom observable polar angle");
  protocol->add_option("--azimuth", azimuth, "custom observable azimuth");
  protocol->add_flag("--json", as_json, "emit a JSON report");

  auto* sample = app.add_subcommand(
      "sample", "Monte Carlo run of the three-term steering experiment");
  sample->add_option("--theta", theta, "state and settings angle");
  sample->add_option("--f", f, "Werner mixing probability");
  sample->add_flag("--mixed", mixed, "use the maximally mixed state");
  sample->add_option("--n", n, "shots per term")->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "RNG seed");
  sample->add_flag("--json", as_json, "emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (reproduce->parsed()) return run_reproduce(tolerance, seed, as_json);
    if (scan->parsed()) {
      if (std::isnan(lo)) lo = axis == "f" ? 0.0 : 0.0;
      if (std::isnan(hi)) hi = axis == "f" ? 1.0 : kPi / 2.0;
      if (!(lo < hi)) throw CLI::ValidationError("scan", "--min must be < --max");
      return run_scan(axis, lo, hi, steps, theta, f, as_json, csv_path);
    }
    if (protocol->parsed())
      return run_protocol(which, theta, f, mixed, obs_name, polar, azimuth,
                          as_json);
    if (sample->parsed()) return run_sample(theta, f, mixed, n, seed, as_json);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
