#include "qrelay/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <utility>

#include "qrelay/errors.hpp"

namespace qrelay {

namespace {

const char* const kCommands[] = {"rates", "optimize", "feasible", "sweep", "fqsw"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::vector<double> sweep_grid(const Json& sweep) {
  const double start = sweep.at("start").get<double>();
  const double stop = sweep.at("stop").get<double>();
  const long steps = sweep.at("steps").get<long>();
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (long k = 0; k < steps; ++k)
    grid[static_cast<std::size_t>(k)] =
        start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
  return grid;
}

DecouplingConfig decoupling_config(const RunConfig& cfg, PureState psi) {
  const Eigen::Index da = psi.shape[0].dim;
  Eigen::Index a1 = da, a2 = 1;
  long trials = 1000;
  if (cfg.fqsw.is_object()) {
    if (cfg.fqsw.contains("a1_dim"))
      a1 = static_cast<Eigen::Index>(cfg.fqsw.at("a1_dim").get<long long>());
    if (cfg.fqsw.contains("a2_dim"))
      a2 = static_cast<Eigen::Index>(cfg.fqsw.at("a2_dim").get<long long>());
    else if (a1 >= 1 && da % a1 == 0)
      a2 = da / a1;
    if (cfg.fqsw.contains("trials")) trials = cfg.fqsw.at("trials").get<long>();
  }
  return DecouplingConfig{std::move(psi), a1, a2, trials, cfg.seed};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot open output file " + path);
  f << text;
}

void emit(const Json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_file(out_path, text);
}

std::string trial_csv_path(const std::string& out) {
  std::string base = out;
  if (base.size() >= 5 && base.compare(base.size() - 5, 5, ".json") == 0)
    base.resize(base.size() - 5);
  return base + ".trials.csv";
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "rates") {
    const RelayChannel relay = relay_from_json(cfg.channel);
    const OptimizerConfig oc = optimizer_config_from_json(cfg.optimizer, cfg.seed);
    const PureState sigma = rates_state_from_json(cfg.state, relay, oc.a1_dim, cfg.seed);
    emit(report_to_json(evaluate_state_rates(relay, sigma)), cfg.out_path);
    return 0;
  }

  if (cfg.command == "optimize") {
    const RelayChannel relay = relay_from_json(cfg.channel);
    const OptimizerConfig oc = optimizer_config_from_json(cfg.optimizer, cfg.seed);
    const Objective obj = objective_from_name(cfg.objective);
    emit(optimization_to_json(maximize(obj, relay, oc)), cfg.out_path);
    return 0;
  }

  if (cfg.command == "feasible") {
    const RatePoint pt = rate_point_from_json(cfg.rate_point);
    const RateReport rep = !cfg.report.is_null() ? report_from_json(cfg.report) : [&] {
      const RelayChannel relay = relay_from_json(cfg.channel);
      const OptimizerConfig oc = optimizer_config_from_json(cfg.optimizer, cfg.seed);
      const PureState sigma = rates_state_from_json(cfg.state, relay, oc.a1_dim, cfg.seed);
      return evaluate_state_rates(relay, sigma);
    }();
    Json doc = feasibility_to_json(check_rate_point(rep, pt));
    doc["exponents"] = exponents_to_json(decoupling_exponents(rep, pt, pt.q, cfg.delta));
    emit(doc, cfg.out_path);
    return 0;
  }

  if (cfg.command == "sweep") {
    const std::string param = cfg.sweep.at("param").get<std::string>();
    const auto grid = sweep_grid(cfg.sweep);
    std::vector<RelayChannel> relays;
    relays.reserve(grid.size());
    for (double v : grid) {
      Json spec = cfg.channel;
      if (substitute(spec, param, v) == 0)
        throw ParameterError("sweep: parameter \"" + param +
                             "\" not present in the channel spec");
      relays.push_back(relay_from_json(spec));
    }
    const OptimizerConfig oc = optimizer_config_from_json(cfg.optimizer, cfg.seed);
    const PureState sigma =
        rates_state_from_json(cfg.state, relays.front(), oc.a1_dim, cfg.seed);

    std::string csv =
        "param_value,h_a1_given_d,coh_a1_E,coh_a1_B,mi_a1_B,mi_a1_D,q_df,q_ea_df\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const RateReport r = evaluate_state_rates(relays[k], sigma);
      csv += fmt(grid[k]) + ',' + fmt(r.h_a1_given_d) + ',' + fmt(r.coh_a1_e) + ',' +
             fmt(r.coh_a1_b) + ',' + fmt(r.mi_a1_b) + ',' + fmt(r.mi_a1_d) + ',' +
             fmt(r.q_df) + ',' + fmt(r.q_ea_df) + '\n';
    }
    std::cout << csv;
    if (!cfg.out_path.empty()) write_file(cfg.out_path, csv);
    return 0;
  }

  if (cfg.command == "fqsw") {
    PureState psi = fqsw_state_from_json(cfg.state, cfg.seed);
    const DecouplingConfig dc = decoupling_config(cfg, std::move(psi));
    const DecouplingResult res = monte_carlo(dc);
    emit(decoupling_to_json(res), cfg.out_path);
    if (!cfg.out_path.empty()) {
      std::string csv = "trial_index,lhs_value\n";
      for (std::size_t t = 0; t < res.trial_values.size(); ++t)
        csv += std::to_string(t) + ',' + fmt(res.trial_values[t]) + '\n';
      write_file(trial_csv_path(cfg.out_path), csv);
    }
    return 0;
  }

  throw ParameterError("config: unknown command \"" + cfg.command + "\"");
}

}  // namespace

RunConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParameterError("config: document must be a JSON object");
  RunConfig cfg;
  cfg.command = doc.value("command", "");
  cfg.channel = doc.value("channel", Json());
  cfg.state = doc.value("state", Json());
  cfg.rate_point = doc.value("rate_point", Json());
  cfg.optimizer = doc.value("optimizer", Json());
  cfg.sweep = doc.value("sweep", Json());
  cfg.fqsw = doc.value("fqsw", Json());
  cfg.report = doc.value("report", Json());
  cfg.objective = doc.value("objective", "df");
  cfg.out_path = doc.value("out", "");
  cfg.seed = doc.value("seed", std::uint64_t{0});
  cfg.delta = doc.value("delta", 0.0);
  return cfg;
}

long substitute(Json& j, const std::string& key, const Json& value) {
  long hits = 0;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == key) {
        it.value() = value;
        ++hits;
      } else {
        hits += substitute(it.value(), key, value);
      }
    }
  } else if (j.is_array()) {
    for (auto& v : j) hits += substitute(v, key, value);
  }
  return hits;
}

std::vector<std::string> validate(const RunConfig& cfg) {
  std::vector<std::string> diags;
  auto check = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      diags.emplace_back(e.what());
    } catch (const Json::exception& e) {
      diags.emplace_back(std::string("config: ") + e.what());
    }
  };

  if (std::find_if(std::begin(kCommands), std::end(kCommands), [&](const char* c) {
        return cfg.command == c;
      }) == std::end(kCommands)) {
    diags.push_back("config: unknown command \"" + cfg.command + "\"");
    return diags;
  }

  const bool computes_report =
      cfg.command == "rates" || cfg.command == "optimize" || cfg.command == "sweep" ||
      (cfg.command == "feasible" && cfg.report.is_null());
  if (computes_report && cfg.channel.is_null())
    diags.push_back("config: command \"" + cfg.command + "\" needs a channel spec");

  std::optional<RelayChannel> relay;
  if (!cfg.channel.is_null()) check([&] { relay.emplace(relay_from_json(cfg.channel)); });

  OptimizerConfig oc;
  check([&] { oc = optimizer_config_from_json(cfg.optimizer, cfg.seed); });
  if (oc.restarts < 1) diags.push_back("optimizer: restarts must be positive");
  if (oc.max_evals < 1) diags.push_back("optimizer: max_evals must be positive");
  if (!(oc.convergence_tol > 0.0))
    diags.push_back("optimizer: convergence_tol must be positive");
  if (oc.a1_dim < 0) diags.push_back("optimizer: a1_dim must not be negative");

  const bool needs_state = cfg.command == "rates" || cfg.command == "sweep" ||
                           (cfg.command == "feasible" && cfg.report.is_null());
  if (needs_state) {
    if (cfg.state.is_null())
      diags.push_back("config: command \"" + cfg.command + "\" needs a state spec");
    else if (relay)
      check([&] { rates_state_from_json(cfg.state, *relay, oc.a1_dim, cfg.seed); });
  }

  if (cfg.command == "optimize") check([&] { objective_from_name(cfg.objective); });

  if (cfg.command == "feasible") {
    if (!cfg.report.is_null()) check([&] { report_from_json(cfg.report); });
    check([&] { rate_point_from_json(cfg.rate_point); });
    if (cfg.delta < 0.0) diags.push_back("config: delta must not be negative");
  }

  if (cfg.command == "sweep") {
    check([&] {
      if (!cfg.sweep.is_object())
        throw ParameterError("sweep: spec must carry param, start, stop, steps");
      const std::string param = cfg.sweep.at("param").get<std::string>();
      cfg.sweep.at("start").get<double>();
      cfg.sweep.at("stop").get<double>();
      if (cfg.sweep.at("steps").get<long>() < 2)
        throw ParameterError("sweep: steps must be at least 2");
      if (!cfg.channel.is_null()) {
        for (double v : sweep_grid(cfg.sweep)) {
          Json spec = cfg.channel;
          if (substitute(spec, param, v) == 0)
            throw ParameterError("sweep: parameter \"" + param +
                                 "\" not present in the channel spec");
          try {
            relay_from_json(spec);
          } catch (const Error& e) {
            throw ParameterError("sweep: value " + fmt(v) + ": " + e.what());
          }
        }
      }
    });
  }

  if (cfg.command == "fqsw") {
    if (cfg.state.is_null()) {
      diags.push_back("config: fqsw needs a state spec");
    } else {
      check([&] {
        PureState psi = fqsw_state_from_json(cfg.state, cfg.seed);
        fqsw_bound(decoupling_config(cfg, std::move(psi)));
      });
    }
  }

  return diags;
}

int run(const RunConfig& cfg) {
  {
    const auto diags = validate(cfg);
    std::ostream& sink = cfg.validate_only ? std::cout : std::cerr;
    for (const auto& d : diags) sink << d << '\n';
    if (cfg.validate_only || !diags.empty()) return diags.empty() ? 0 : 2;
  }
  try {
    return dispatch(cfg);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "config: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qrelay
