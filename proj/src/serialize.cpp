#include "qrelay/serialize.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "qrelay/errors.hpp"

namespace qrelay {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParameterError(ctx + ": complex entries must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) throw ParameterError(ctx + ": matrix must be a nonempty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParameterError(ctx + ": ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], ctx);
  }
  return m;
}

std::vector<Eigen::Index> dims_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) throw ParameterError(ctx + ": dimension list must be a nonempty array");
  std::vector<Eigen::Index> dims;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 1)
      throw ParameterError(ctx + ": dimensions must be positive integers");
    dims.push_back(static_cast<Eigen::Index>(v.get<long long>()));
  }
  return dims;
}

Eigen::Index product(const std::vector<Eigen::Index>& dims) {
  Eigen::Index p = 1;
  for (auto d : dims) p *= d;
  return p;
}

Vector amps_from_json(const Json& j, Eigen::Index dim, const std::string& ctx) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim)
    throw ShapeError(ctx + ": amplitude count does not match the state dimension");
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = complex_from_json(j[static_cast<std::size_t>(i)], ctx);
  return v;
}

QuantumChannel identity_channel(Eigen::Index d) {
  return make_channel("identity", ChannelParams{d, 0.0, 0.0});
}

}  // namespace

Json channel_to_json(const QuantumChannel& ch) {
  Json kraus = Json::array();
  for (const auto& k : ch.kraus_ops) kraus.push_back(matrix_to_json(k));
  Json in_dims = Json::array(), out_dims = Json::array();
  for (const auto& s : ch.input_shape.parts()) in_dims.push_back(s.dim);
  for (const auto& s : ch.output_shape.parts()) out_dims.push_back(s.dim);
  return Json{{"kraus", std::move(kraus)},
              {"input_dims", std::move(in_dims)},
              {"output_dims", std::move(out_dims)}};
}

QuantumChannel channel_from_json(const Json& j, const std::string& context) {
  if (!j.is_object())
    throw ParameterError(context + ": channel spec must be an object");
  if (j.contains("kind")) {
    ChannelParams params;
    if (j.contains("params")) {
      const auto& p = j.at("params");
      if (!p.is_object()) throw ParameterError(context + ": params must be an object");
      if (p.contains("d")) params.d = static_cast<Eigen::Index>(p.at("d").get<long long>());
      if (p.contains("p")) params.p = p.at("p").get<double>();
      if (p.contains("gamma")) params.gamma = p.at("gamma").get<double>();
    }
    try {
      return make_channel(j.at("kind").get<std::string>(), params);
    } catch (const Error& e) {
      throw ParameterError(context + ": " + e.what());
    }
  }
  if (j.contains("kraus")) {
    const auto in_dims = dims_from_json(j.at("input_dims"), context + " input_dims");
    const auto out_dims = dims_from_json(j.at("output_dims"), context + " output_dims");
    std::vector<Matrix> kraus;
    if (!j.at("kraus").is_array() || j.at("kraus").empty())
      throw ParameterError(context + ": kraus must be a nonempty array of matrices");
    for (const auto& km : j.at("kraus")) kraus.push_back(matrix_from_json(km, context + " kraus"));
    try {
      return QuantumChannel(std::move(kraus),
                            SubsystemShape{{"X", product(in_dims)}},
                            SubsystemShape{{"Y", product(out_dims)}});
    } catch (const Error& e) {
      throw ParameterError(context + ": " + e.what());
    }
  }
  throw ParameterError(context + ": channel spec needs either \"kind\" or \"kraus\"");
}

RelayChannel relay_from_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("relay: spec must be an object");
  if (!j.contains("relay"))
    return direct_link_relay(channel_from_json(j, "channel"));

  const std::string kind = j.at("relay").get<std::string>();
  if (kind == "direct")
    return direct_link_relay(channel_from_json(j.at("channel"), "channel"));

  if (kind == "orthogonal") {
    OrthogonalLinks links{channel_from_json(j.at("sender_relay"), "sender_relay"),
                          channel_from_json(j.at("relay_dest"), "relay_dest")};
    return compose_relay(links);
  }

  if (kind == "interaction") {
    const Eigen::Index dkey = j.contains("d")
                                  ? static_cast<Eigen::Index>(j.at("d").get<long long>())
                                  : 2;
    QuantumChannel noise_e = j.contains("noise_e")
                                 ? channel_from_json(j.at("noise_e"), "noise_e")
                                 : identity_channel(dkey);
    QuantumChannel noise_b = j.contains("noise_b")
                                 ? channel_from_json(j.at("noise_b"), "noise_b")
                                 : identity_channel(dkey);
    const Eigen::Index da = noise_e.input_dim();
    const Eigen::Index dd = noise_b.input_dim();
    Matrix u;
    if (j.contains("unitary")) {
      u = matrix_from_json(j.at("unitary"), "interaction unitary");
    } else if (j.contains("theta")) {
      if (da != dd)
        throw ParameterError("interaction: theta form needs equal slot dimensions");
      u = partial_swap(da, j.at("theta").get<double>());
    } else {
      throw ParameterError("interaction: spec needs \"theta\" or \"unitary\"");
    }
    if (u.rows() != da * dd)
      throw ShapeError("interaction: unitary dimension must match |A|*|D|");
    return compose_relay(InteractionRelay{std::move(u), std::move(noise_e), std::move(noise_b)});
  }

  throw ParameterError("relay: unknown relay kind \"" + kind + "\"");
}

PureState rates_state_from_json(const Json& j, const RelayChannel& relay,
                                Eigen::Index a1_dim, std::uint64_t seed) {
  const Eigen::Index da = relay.dim_a();
  const Eigen::Index dd = relay.dim_d();
  const Eigen::Index a1 = a1_dim == 0 ? da * dd : a1_dim;

  std::string name;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object() && j.contains("name")) {
    name = j.at("name").get<std::string>();
    if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
  } else if (j.is_object() && j.contains("amps")) {
    const auto dims = dims_from_json(j.at("dims"), "state dims");
    if (dims.size() != 3)
      throw ShapeError("state: explicit dims must be [A1, A, D]");
    if (dims[1] != da || dims[2] != dd)
      throw ShapeError("state: dims do not match the relay input");
    Vector amps = amps_from_json(j.at("amps"), dims[0] * dims[1] * dims[2], "state amps");
    return PureState(std::move(amps),
                     SubsystemShape{{"A1", dims[0]}, {"A", dims[1]}, {"D", dims[2]}});
  } else {
    throw ParameterError("state: spec must be a family name or {\"amps\", \"dims\"}");
  }

  if (name == "maxent_a1a")
    return tensor(maximally_entangled(da, "A1", "A"), basis_ket(dd, 0, "D"));
  if (name == "product")
    return tensor(tensor(basis_ket(a1, 0, "A1"), basis_ket(da, 0, "A")),
                  basis_ket(dd, 0, "D"));
  if (name == "random")
    return random_state(SubsystemShape{{"A1", a1}, {"A", da}, {"D", dd}}, seed);
  throw ParameterError("state: unknown family \"" + name + "\"");
}

PureState fqsw_state_from_json(const Json& j, std::uint64_t seed) {
  if (j.is_object() && j.contains("amps")) {
    const auto dims = dims_from_json(j.at("dims"), "fqsw state dims");
    if (dims.size() != 3) throw ShapeError("fqsw state: explicit dims must be [A, B, C]");
    Vector amps = amps_from_json(j.at("amps"), product(dims), "fqsw state amps");
    return PureState(std::move(amps),
                     SubsystemShape{{"A", dims[0]}, {"B", dims[1]}, {"C", dims[2]}});
  }
  if (!j.is_object() || !j.contains("name"))
    throw ParameterError("fqsw state: spec must carry a name or explicit amplitudes");
  const std::string name = j.at("name").get<std::string>();
  if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
  const auto dims = dims_from_json(j.at("dims"), "fqsw state dims");

  if (name == "haar") {
    if (dims.size() != 3) throw ShapeError("fqsw state: haar dims must be [A, B, C]");
    return random_state(SubsystemShape{{"A", dims[0]}, {"B", dims[1]}, {"C", dims[2]}}, seed);
  }
  if (name == "decoupled") {
    if (dims.size() != 2) throw ShapeError("fqsw state: decoupled dims must be [A, C]");
    const Eigen::Index a = dims[0], c = dims[1], b = a * c;
    Vector amps = Vector::Zero(a * b * c);
    const double w = 1.0 / std::sqrt(static_cast<double>(a * c));
    for (Eigen::Index i = 0; i < a; ++i)
      for (Eigen::Index k = 0; k < c; ++k)
        amps(i * b * c + (i * c + k) * c + k) = w;
    return PureState(std::move(amps), SubsystemShape{{"A", a}, {"B", b}, {"C", c}});
  }
  throw ParameterError("fqsw state: unknown family \"" + name + "\"");
}

Json state_to_json(const PureState& psi) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < psi.data.size(); ++i)
    amps.push_back(complex_to_json(psi.data(i)));
  Json dims = Json::array(), labels = Json::array();
  for (const auto& s : psi.shape.parts()) {
    dims.push_back(s.dim);
    labels.push_back(s.label);
  }
  return Json{{"amps", std::move(amps)},
              {"dims", std::move(dims)},
              {"labels", std::move(labels)}};
}

Json report_to_json(const RateReport& report) {
  return Json{{"h_a1_given_d", report.h_a1_given_d}, {"coh_a1_E", report.coh_a1_e},
              {"coh_a1_B", report.coh_a1_b},         {"mi_a1_B", report.mi_a1_b},
              {"mi_a1_D", report.mi_a1_d},           {"q_df", report.q_df},
              {"q_ea_df", report.q_ea_df}};
}

RateReport report_from_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("report: spec must be an object");
  RateReport r;
  auto need = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
      throw ParameterError(std::string("report: missing numeric field \"") + key + "\"");
    return j.at(key).get<double>();
  };
  r.h_a1_given_d = need("h_a1_given_d");
  r.coh_a1_e = need("coh_a1_E");
  r.coh_a1_b = need("coh_a1_B");
  r.mi_a1_b = need("mi_a1_B");
  r.mi_a1_d = need("mi_a1_D");
  r.q_df = need("q_df");
  r.q_ea_df = need("q_ea_df");
  return r;
}

RatePoint rate_point_from_json(const Json& j) {
  RatePoint pt;
  if (j.is_null()) return pt;
  if (!j.is_object()) throw ParameterError("rate_point: spec must be an object");
  pt.q = j.value("Q", 0.0);
  pt.l_b = j.value("L_B", 0.0);
  pt.lhat_b = j.value("Lhat_B", 0.0);
  pt.l_e = j.value("L_E", 0.0);
  pt.lhat_e = j.value("Lhat_E", 0.0);
  return pt;
}

Json rate_point_to_json(const RatePoint& pt) {
  return Json{{"Q", pt.q},
              {"L_B", pt.l_b},
              {"Lhat_B", pt.lhat_b},
              {"L_E", pt.l_e},
              {"Lhat_E", pt.lhat_e}};
}

Json feasibility_to_json(const FeasibilityRecord& rec) {
  return Json{{"slack1", rec.slack1},       {"slack2", rec.slack2},
              {"slack3", rec.slack3},       {"feasible1", rec.feasible1},
              {"feasible2", rec.feasible2}, {"feasible3", rec.feasible3},
              {"feasible", rec.feasible},   {"delta_L_B", rec.delta_l_b}};
}

Json exponents_to_json(const DecouplingExponents& ex) {
  return Json{{"e1", ex.e1},
              {"e2", ex.e2},
              {"e3", ex.e3},
              {"feasible1", ex.feasible1},
              {"feasible2", ex.feasible2},
              {"feasible3", ex.feasible3},
              {"feasible", ex.feasible1 && ex.feasible2 && ex.feasible3},
              {"delta", ex.delta}};
}

OptimizerConfig optimizer_config_from_json(const Json& j, std::uint64_t default_seed) {
  OptimizerConfig cfg;
  cfg.seed = default_seed;
  if (j.is_null()) return cfg;
  if (!j.is_object()) throw ParameterError("optimizer: spec must be an object");
  if (j.contains("a1_dim"))
    cfg.a1_dim = static_cast<Eigen::Index>(j.at("a1_dim").get<long long>());
  if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
  if (j.contains("max_evals")) cfg.max_evals = j.at("max_evals").get<int>();
  if (j.contains("convergence_tol"))
    cfg.convergence_tol = j.at("convergence_tol").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

Objective objective_from_name(const std::string& name) {
  if (name == "df") return Objective::df;
  if (name == "ea_df") return Objective::ea_df;
  if (name == "direct") return Objective::direct;
  throw ParameterError("objective: unknown name \"" + name + "\"");
}

Json optimization_to_json(const OptimizationResult& result) {
  return Json{{"objective_value", result.objective_value},
              {"evals_used", result.evals_used},
              {"converged", result.converged},
              {"report", report_to_json(result.best_report)},
              {"state", state_to_json(result.best_state)}};
}

Json decoupling_to_json(const DecouplingResult& result) {
  return Json{{"lhs_mean", result.lhs_mean},
              {"lhs_stderr", result.lhs_stderr},
              {"lhs_min", result.lhs_min},
              {"lhs_max", result.lhs_max},
              {"rhs_bound", result.rhs_bound},
              {"bound_satisfied", result.bound_satisfied},
              {"trials", static_cast<long>(result.trial_values.size())}};
}

}  // namespace qrelay
