// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit when
// any fails. Runs the library in-process except for the reproducibility
// criterion, which shells out to the installed CLI binary twice per command.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qrelay/channels.hpp"
#include "qrelay/entropy.hpp"
#include "qrelay/fqsw.hpp"
#include "qrelay/linalg.hpp"
#include "qrelay/optimize.hpp"
#include "qrelay/rates.hpp"
#include "qrelay/rng.hpp"

namespace {

using namespace qrelay;
using Clock = std::chrono::steady_clock;

int failures = 0;
std::vector<std::string> details;

bool expect(bool ok, const std::string& what) {
  if (!ok) details.push_back(what);
  return ok;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double h2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f.good()) return "<unreadable: " + path + ">";
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

// Mixed bag of relay families for the randomized feasibility criteria.
RelayChannel sampled_relay(int t) {
  const std::uint64_t s = 4000 + static_cast<std::uint64_t>(t);
  switch (t % 5) {
    case 0: {
      InteractionRelay spec{
          partial_swap(2, 0.2 + 0.1 * static_cast<double>(t % 13)),
          make_channel("depolarizing", {.d = 2, .p = 0.05 + 0.01 * static_cast<double>(t % 7)}),
          make_channel("depolarizing", {.d = 2, .p = 0.02 * static_cast<double>(t % 9)})};
      return compose_relay(spec);
    }
    case 1:
      return compose_relay(OrthogonalLinks{random_channel(2, 2, 2, s),
                                           random_channel(2, 2, 2, s ^ 0x5bd1e995)});
    case 2:
      return direct_link_relay(make_channel(
          "amplitude_damping", {.d = 2, .gamma = 0.1 + 0.05 * static_cast<double>(t % 10)}));
    case 3: {
      InteractionRelay spec{
          partial_swap(2, M_PI / 2),
          make_channel("amplitude_damping", {.d = 2, .gamma = 0.3}),
          make_channel("dephasing", {.d = 2, .p = 0.05 + 0.03 * static_cast<double>(t % 8)})};
      return compose_relay(spec);
    }
    default: {
      InteractionRelay spec{haar_unitary(4, s).data, make_channel("identity", {.d = 2}),
                            make_channel("identity", {.d = 2})};
      return compose_relay(spec);
    }
  }
}

bool entropic_identities() {
  const auto t0 = Clock::now();
  bool ok = true;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index da1 = 2 + t % 3;
    const Eigen::Index dd = 2 + (t / 3) % 3;
    const Eigen::Index da = 2 + (t / 9) % 3;
    const std::string tag = ", trial " + std::to_string(t);
    const PureState psi = random_state({{"A1", da1}, {"D", dd}, {"A", da}},
                                       1000 + static_cast<std::uint64_t>(t));
    const DensityOperator rho = density(psi);

    const DensityOperator rho_a1 = partial_trace(rho, {"A1"});
    const DensityOperator rho_d = partial_trace(rho, {"D"});
    const double h_a1 = von_neumann_entropy(rho_a1);
    const double h_d = von_neumann_entropy(rho_d);
    const double h_a = von_neumann_entropy(partial_trace(rho, {"A"}));
    ok &= expect(h_a1 >= -1e-8 && h_a1 <= std::log2(static_cast<double>(da1)) + 1e-8,
                 "entropy bounds" + tag);
    ok &= expect(h_d >= -1e-8 && h_d <= std::log2(static_cast<double>(dd)) + 1e-8,
                 "entropy bounds" + tag);
    ok &= expect(h_a >= -1e-8 && h_a <= std::log2(static_cast<double>(da)) + 1e-8,
                 "entropy bounds" + tag);

    const double h_prod = von_neumann_entropy(tensor(rho_a1, rho_d));
    ok &= expect(std::abs(h_prod - (h_a1 + h_d)) < 1e-8, "additivity" + tag);

    ok &= expect(std::abs(h_a1 - von_neumann_entropy(partial_trace(rho, {"D", "A"}))) < 1e-8,
                 "marginal symmetry" + tag);
    ok &= expect(std::abs(h_d - von_neumann_entropy(partial_trace(rho, {"A1", "A"}))) < 1e-8,
                 "marginal symmetry" + tag);

    const double cond = conditional_entropy(rho, {"A1"}, {"D"});
    const double coh = coherent_information(rho, {"A1"}, {"A"});
    ok &= expect(std::abs(cond - coh) < 1e-8, "duality" + tag);

    const QuantumChannel noise = random_channel(da, da, 2, 5000 + static_cast<std::uint64_t>(t),
                                                "A", "B");
    const DensityOperator rho_a1a = partial_trace(rho, {"A1", "A"});
    const double before = coherent_information(rho_a1a, {"A1"}, {"A"});
    const double after =
        coherent_information(apply_channel(noise, rho_a1a, {"A"}), {"A1"}, {"B"});
    ok &= expect(after <= before + 1e-8, "data processing" + tag);
  }
  ok &= expect(seconds_since(t0) < 10.0, "runtime under 10 s");
  return ok;
}

bool decoupling_bound() {
  const auto t0 = Clock::now();
  bool ok = true;
  struct Setup {
    Eigen::Index a, b, c, a1;
    bool decoupled;
  };
  const Setup setups[] = {
      {4, 2, 2, 2, false}, {4, 2, 4, 2, false}, {8, 2, 2, 2, false},
      {8, 2, 4, 4, false}, {4, 4, 2, 2, true},
  };
  int idx = 0;
  for (const auto& s : setups) {
    const std::string tag = ", config " + std::to_string(idx);
    PureState psi =
        s.decoupled
            ? tensor(maximally_entangled(s.a, "A", "B"),
                     random_state({{"C", s.c}}, 77))
            : random_state({{"A", s.a}, {"B", s.b}, {"C", s.c}},
                           9000 + static_cast<std::uint64_t>(idx));
    DecouplingConfig cfg{std::move(psi), s.a1, s.a / s.a1, 1000,
                         7000 + static_cast<std::uint64_t>(idx)};
    const DecouplingResult res = monte_carlo(cfg);
    ok &= expect(res.bound_satisfied, "mean exceeds bound plus three standard errors" + tag);
    if (s.decoupled) ok &= expect(res.lhs_mean < 1e-10, "decoupled mean not negligible" + tag);
    ++idx;
  }
  ok &= expect(seconds_since(t0) < 60.0, "runtime under 60 s");
  return ok;
}

bool zero_rate_threshold() {
  bool ok = true;
  CounterRng rng(31337);
  for (int t = 0; t < 100; ++t) {
    const RelayChannel relay = sampled_relay(t);
    const Eigen::Index da = relay.channel.input_shape.dim_of("A");
    const Eigen::Index dd = relay.channel.input_shape.dim_of("D");
    const Eigen::Index da1 = 1 + t % 3;
    const PureState sigma = random_state({{"A1", da1}, {"A", da}, {"D", dd}},
                                         600 + static_cast<std::uint64_t>(t));
    const RateReport rep = evaluate_state_rates(relay, sigma);
    const double q = 1.5 * rng.uniform();
    const DecouplingExponents ex = decoupling_exponents(rep, RatePoint{}, q, 0.0);
    const bool by_exponents = ex.feasible1 && ex.feasible2 && ex.feasible3;
    const bool by_threshold = q < std::min(rep.coh_a1_e, rep.coh_a1_b);
    ok &= expect(by_exponents == by_threshold, "trial " + std::to_string(t));
  }
  return ok;
}

bool input_structure_reductions() {
  bool ok = true;
  for (int t = 0; t < 8; ++t) {
    const std::string tag = ", trial " + std::to_string(t);
    const RelayChannel relay = sampled_relay(t);
    const Eigen::Index da = relay.channel.input_shape.dim_of("A");
    const Eigen::Index dd = relay.channel.input_shape.dim_of("D");
    const PureState phi =
        random_state({{"A1", da}, {"A", da}}, 80 + static_cast<std::uint64_t>(t));
    const PureState psi_d = random_state({{"D", dd}}, 280 + static_cast<std::uint64_t>(t));
    const RateReport rep = evaluate_state_rates(relay, tensor(phi, psi_d));

    const QuantumChannel induced =
        discard_output(fix_input(relay.channel, "D", psi_d), {"E"});
    const double coh =
        coherent_information(apply_channel(induced, density(phi), {"A"}), {"A1"}, {"B"});
    ok &= expect(std::abs(rep.coh_a1_b - coh) < 1e-8, "induced direct link" + tag);
  }

  const int entangling[] = {0, 1, 3, 4, 5, 6, 8, 9};
  for (int t : entangling) {
    const std::string tag = ", trial " + std::to_string(t);
    const RelayChannel relay = sampled_relay(t);
    const Eigen::Index da = relay.channel.input_shape.dim_of("A");
    const Eigen::Index dd = relay.channel.input_shape.dim_of("D");
    const PureState xi =
        random_state({{"A1", 2}, {"D", dd}}, 360 + static_cast<std::uint64_t>(t));
    const PureState psi_a = random_state({{"A", da}}, 460 + static_cast<std::uint64_t>(t));
    const PureState sigma =
        permute_subsystems(tensor(xi, psi_a), {"A1", "A", "D"});
    const RateReport rep = evaluate_state_rates(relay, sigma);
    ok &= expect(rep.h_a1_given_d <= 1e-9, "conditional entropy not <= 0" + tag);
    for (double q : {0.01, 0.1, 0.5, 1.0, 2.0}) {
      const FeasibilityRecord fr = check_rate_point(rep, RatePoint{.q = q});
      ok &= expect(!fr.feasible, "feasible at positive rate" + tag);
    }
  }
  return ok;
}

bool named_channel_capacities() {
  const auto t0 = Clock::now();
  bool ok = true;
  OptimizerConfig oc;
  oc.restarts = 8;
  oc.max_evals = 4000;
  oc.seed = 42;
  for (double p : {0.0, 0.1, 0.25, 0.4}) {
    const double got = channel_coherent_information(make_channel("erasure", {.d = 2, .p = p}), oc);
    ok &= expect(std::abs(got - (1.0 - 2.0 * p)) < 1e-3,
                 "erasure p=" + std::to_string(p) + " gave " + std::to_string(got));
  }
  for (double p : {0.05, 0.1}) {
    const double target = 1.0 - h2(0.75 * p) - 0.75 * p * std::log2(3.0);
    const double got =
        channel_coherent_information(make_channel("depolarizing", {.d = 2, .p = p}), oc);
    ok &= expect(std::abs(got - target) < 1e-3,
                 "depolarizing p=" + std::to_string(p) + " gave " + std::to_string(got));
  }
  ok &= expect(seconds_since(t0) < 120.0, "runtime under 120 s");
  return ok;
}

bool swap_relay_optimization() {
  const InteractionRelay spec{partial_swap(2, M_PI / 2), make_channel("identity", {.d = 2}),
                              make_channel("identity", {.d = 2})};
  OptimizerConfig oc;
  oc.a1_dim = 2;
  oc.restarts = 8;
  oc.max_evals = 4000;
  oc.seed = 42;
  const OptimizationResult res = maximize(Objective::ea_df, compose_relay(spec), oc);
  bool ok = expect(res.objective_value >= 1.0 - 1e-3,
                   "assisted rate " + std::to_string(res.objective_value));
  ok &= expect(superdense_classical_rate(res.best_report) >= 2.0 - 2e-3,
               "superdense rate " + std::to_string(superdense_classical_rate(res.best_report)));
  return ok;
}

bool cli_reproducibility() {
  bool ok = true;
  const std::string cli = QRELAY_CLI_PATH;
  const char* const configs[] = {
      R"({"command": "rates",
          "channel": {"relay": "interaction", "theta": 1.1,
                      "noise_e": {"kind": "amplitude_damping", "params": {"gamma": 0.2}}},
          "state": {"name": "random", "seed": 3}})",
      R"({"command": "optimize", "objective": "direct",
          "channel": {"kind": "depolarizing", "params": {"p": 0.05}},
          "optimizer": {"restarts": 2, "max_evals": 150, "a1_dim": 2}, "seed": 7})",
      R"({"command": "feasible",
          "report": {"h_a1_given_d": 0.75, "coh_a1_E": 0.5, "coh_a1_B": 0.25,
                     "mi_a1_B": 1.5, "mi_a1_D": 0.5, "q_df": 0.25, "q_ea_df": 0.5},
          "rate_point": {"Q": 0.125, "L_B": 0.25, "Lhat_B": 0.0625}, "delta": 0.01})",
      R"({"command": "sweep",
          "channel": {"kind": "erasure", "params": {"p": 0.0}},
          "state": "maxent_a1a",
          "sweep": {"param": "p", "start": 0.0, "stop": 0.5, "steps": 3}})",
      R"({"command": "fqsw",
          "state": {"name": "haar", "dims": [4, 2, 2]},
          "fqsw": {"a1_dim": 2, "trials": 50}, "seed": 11})",
  };

  int idx = 0;
  for (const char* text : configs) {
    const std::string tag = ", command " + std::to_string(idx);
    const std::string base = tmp_path("qrelay_accept_" + std::to_string(idx));
    const std::string cfg_path = base + "_cfg.json";
    write_text(cfg_path, text);

    std::array<std::string, 2> out_paths, stdout_paths;
    for (int r = 0; r < 2; ++r) {
      out_paths[r] = base + "_" + std::to_string(r) + "_out.json";
      stdout_paths[r] = base + "_" + std::to_string(r) + "_stdout.txt";
      const std::string cmd = "'" + cli + "' --config '" + cfg_path + "' --out '" +
                              out_paths[r] + "' > '" + stdout_paths[r] + "' 2> /dev/null";
      ok &= expect(std::system(cmd.c_str()) == 0, "nonzero exit" + tag);
    }
    ok &= expect(read_text(out_paths[0]) == read_text(out_paths[1]), "output files differ" + tag);
    ok &= expect(read_text(stdout_paths[0]) == read_text(stdout_paths[1]),
                 "stdout differs" + tag);
    if (idx == 4) {
      const auto csv = [&](int r) {
        return read_text(base + "_" + std::to_string(r) + "_out.trials.csv");
      };
      ok &= expect(csv(0) == csv(1) && csv(0).rfind("trial_index,", 0) == 0,
                   "trial tables differ" + tag);
    }
    ++idx;
  }
  return ok;
}

bool slack_sensitivities() {
  bool ok = true;
  const RateReport rep{0.75, 0.5, 0.25, 1.5, 0.5, 0.25, 0.5};
  const RatePoint base{.q = 0.125, .l_b = 0.5, .lhat_b = 0.25, .l_e = 0.375, .lhat_e = 0.0625};
  const double step = 0.25;

  const auto slacks = [&](double l_b, double lhat_b) {
    RatePoint pt = base;
    pt.l_b = l_b;
    pt.lhat_b = lhat_b;
    const FeasibilityRecord fr = check_rate_point(rep, pt);
    return std::array<double, 3>{fr.slack1, fr.slack2, fr.slack3};
  };

  const auto s0 = slacks(base.l_b, base.lhat_b);
  const auto s_l = slacks(base.l_b + step, base.lhat_b);
  const auto s_lhat = slacks(base.l_b, base.lhat_b + step);

  const double want_l[3] = {-1.0, -1.0, 1.0};
  const double want_lhat[3] = {1.0, -1.0, -1.0};
  for (int i = 0; i < 3; ++i) {
    ok &= expect((s_l[i] - s0[i]) / step == want_l[i],
                 "consumption sensitivity, slack " + std::to_string(i + 1));
    ok &= expect((s_lhat[i] - s0[i]) / step == want_lhat[i],
                 "generation sensitivity, slack " + std::to_string(i + 1));
  }
  return ok;
}

void report(int n, bool (*fn)(), const char* desc) {
  bool ok = false;
  try {
    ok = fn();
  } catch (const std::exception& e) {
    details.push_back(std::string("unexpected exception: ") + e.what());
  }
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, desc);
  if (!ok) {
    ++failures;
    for (const auto& d : details) std::printf("       %s\n", d.c_str());
  }
  details.clear();
  std::fflush(stdout);
}

}  // namespace

int main() {
  report(1, entropic_identities, "entropic identities on random tripartite states");
  report(2, decoupling_bound, "randomized decoupling stays within the analytic bound");
  report(3, zero_rate_threshold, "zero-rate feasibility matches the coherent-information threshold");
  report(4, input_structure_reductions, "product and relay-entangled input reductions");
  report(5, named_channel_capacities, "optimized coherent information of named channels");
  report(6, swap_relay_optimization, "entanglement-assisted rates of the noiseless swap relay");
  report(7, cli_reproducibility, "command line runs repeat byte for byte");
  report(8, slack_sensitivities, "slack sensitivities to destination entanglement rates");
  return failures == 0 ? 0 : 1;
}
