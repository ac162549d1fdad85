#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qrelay/cli.hpp"
#include "qrelay/errors.hpp"

using qrelay::Json;

int main(int argc, char** argv) {
  CLI::App app{"quantum relay rate calculator"};

  std::string config_path, out_path, command, channel_name;
  std::uint64_t seed = 0;
  double p = 0.0, delta = 0.0;
  long trials = 0;
  int restarts = 0;
  long long a1_dim = -1;
  bool validate_only = false;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "output file path");
  auto* seed_opt = app.add_option("--seed", seed, "seed override, applies everywhere");
  app.add_option("--command", command, "rates | optimize | feasible | sweep | fqsw");
  app.add_option("--channel", channel_name, "named channel, wrapped as a direct link");
  auto* p_opt = app.add_option("--p", p, "channel parameter p");
  auto* trials_opt = app.add_option("--trials", trials, "fqsw trial count");
  auto* restarts_opt = app.add_option("--restarts", restarts, "optimizer restarts");
  auto* a1_opt = app.add_option("--a1-dim", a1_dim, "dimension of the code system A1");
  auto* delta_opt = app.add_option("--delta", delta, "exponent feasibility margin");
  app.add_flag("--validate-only", validate_only, "check the config and exit");

  CLI11_PARSE(app, argc, argv);

  Json doc = Json::object();
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) {
      std::cerr << "config: cannot open " << config_path << '\n';
      return 2;
    }
    try {
      f >> doc;
    } catch (const Json::exception& e) {
      std::cerr << "config: " << e.what() << '\n';
      return 2;
    }
  }

  // Flags override whatever the file said.
  if (!command.empty()) doc["command"] = command;
  if (!channel_name.empty())
    doc["channel"] = Json{{"kind", channel_name}, {"params", Json::object()}};
  if (p_opt->count() > 0) {
    if (doc.contains("channel") && qrelay::substitute(doc["channel"], "p", p) == 0 &&
        doc["channel"].contains("kind"))
      doc["channel"]["params"]["p"] = p;
  }
  if (seed_opt->count() > 0) {
    qrelay::substitute(doc, "seed", seed);
    doc["seed"] = seed;
  }
  if (trials_opt->count() > 0) doc["fqsw"]["trials"] = trials;
  if (restarts_opt->count() > 0) doc["optimizer"]["restarts"] = restarts;
  if (a1_opt->count() > 0) {
    doc["optimizer"]["a1_dim"] = a1_dim;
    doc["fqsw"]["a1_dim"] = a1_dim;
  }
  if (delta_opt->count() > 0) doc["delta"] = delta;
  if (!out_path.empty()) doc["out"] = out_path;

  qrelay::RunConfig cfg;
  try {
    cfg = qrelay::config_from_json(doc);
  } catch (const qrelay::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "config: " << e.what() << '\n';
    return 2;
  }
  cfg.validate_only = validate_only;
  return qrelay::run(cfg);
}
