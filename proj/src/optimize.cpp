#include "qrelay/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "qrelay/errors.hpp"
#include "qrelay/rng.hpp"

namespace qrelay {

namespace {

double objective_from_report(Objective objective, const RateReport& report) {
  switch (objective) {
    case Objective::df:
      return std::min(report.coh_a1_b, report.coh_a1_e);
    case Objective::ea_df:
      return 0.5 * report.mi_a1_b - 0.5 * report.mi_a1_d;
    case Objective::direct:
      return report.coh_a1_b;
  }
  throw ParameterError("unknown objective");
}

struct RestartOutcome {
  double objective = -std::numeric_limits<double>::infinity();
  std::vector<double> params;
  long evals = 0;
  bool converged = false;
};

struct Vertex {
  std::vector<double> x;
  double f = 0.0;  // negated objective, the simplex minimizes
};

// Start vector entangling A1 with the joint A*D register. With the default
// a1_dim this is the canonical maximally entangled input.
std::vector<double> joint_maxent_params(Eigen::Index a1, Eigen::Index da,
                                        Eigen::Index dd) {
  std::vector<double> p(static_cast<std::size_t>(2 * a1 * da * dd), 0.0);
  const Eigen::Index r = std::min(a1, da * dd);
  for (Eigen::Index i = 0; i < r; ++i)
    p[static_cast<std::size_t>(2 * (i * da * dd + i))] = 1.0;
  return p;
}

// Start vector entangling A1 with A alone, D held at |0>. Seeds the searches
// whose optimum leaves the relay input unentangled.
std::vector<double> sender_maxent_params(Eigen::Index a1, Eigen::Index da,
                                         Eigen::Index dd) {
  std::vector<double> p(static_cast<std::size_t>(2 * a1 * da * dd), 0.0);
  const Eigen::Index r = std::min(a1, da);
  for (Eigen::Index i = 0; i < r; ++i)
    p[static_cast<std::size_t>(2 * (i * da * dd + i * dd))] = 1.0;
  return p;
}

std::vector<double> random_params(std::size_t n, CounterRng& rng) {
  std::vector<double> p(n);
  while (true) {
    double sq = 0.0;
    for (auto& v : p) {
      v = rng.normal();
      sq += v * v;
    }
    if (std::sqrt(sq) >= 1e-12) return p;
  }
}

template <typename F>
RestartOutcome nelder_mead(const std::vector<double>& start, F&& objective,
                           int max_evals, double tol) {
  const std::size_t n = start.size();
  RestartOutcome out;

  // Negate so the classic descent form applies.
  auto g = [&](const std::vector<double>& x) {
    ++out.evals;
    return -objective(x);
  };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    auto x = start;
    x[i] += 0.5;
    simplex.push_back({std::move(x), 0.0});
  }
  for (auto& v : simplex) {
    if (out.evals >= max_evals) break;
    v.f = g(v.x);
  }
  if (out.evals < static_cast<long>(n + 1)) {  // budget died during setup
    out.params = start;
    out.objective = -simplex[0].f;
    return out;
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::stable_sort(simplex.begin(), simplex.end(), by_value);

  std::vector<double> centroid(n), xr(n), xt(n);
  while (true) {
    if (simplex[n].f - simplex[0].f <= tol) {
      out.converged = true;
      break;
    }
    if (out.evals >= max_evals) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i].x[k];
    for (auto& c : centroid) c /= static_cast<double>(n);

    for (std::size_t k = 0; k < n; ++k) xr[k] = 2.0 * centroid[k] - simplex[n].x[k];
    const double fr = g(xr);

    if (fr < simplex[0].f) {
      if (out.evals < max_evals) {
        for (std::size_t k = 0; k < n; ++k) xt[k] = 3.0 * centroid[k] - 2.0 * simplex[n].x[k];
        const double fe = g(xt);
        if (fe < fr)
          simplex[n] = {xt, fe};
        else
          simplex[n] = {xr, fr};
      } else {
        simplex[n] = {xr, fr};
      }
    } else if (fr < simplex[n - 1].f) {
      simplex[n] = {xr, fr};
    } else if (out.evals < max_evals) {
      bool shrink = false;
      if (fr < simplex[n].f) {
        for (std::size_t k = 0; k < n; ++k) xt[k] = 0.5 * (centroid[k] + xr[k]);
        const double fc = g(xt);
        if (fc <= fr)
          simplex[n] = {xt, fc};
        else
          shrink = true;
      } else {
        for (std::size_t k = 0; k < n; ++k) xt[k] = 0.5 * (centroid[k] + simplex[n].x[k]);
        const double fc = g(xt);
        if (fc < simplex[n].f)
          simplex[n] = {xt, fc};
        else
          shrink = true;
      }
      if (shrink) {
        for (std::size_t i = 1; i <= n; ++i) {
          if (out.evals >= max_evals) break;
          for (std::size_t k = 0; k < n; ++k)
            simplex[i].x[k] = 0.5 * (simplex[0].x[k] + simplex[i].x[k]);
          simplex[i].f = g(simplex[i].x);
        }
      }
    } else {
      break;  // contraction would exceed the budget
    }
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
  }

  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  out.params = simplex[0].x;
  out.objective = -simplex[0].f;
  return out;
}

}  // namespace

PureState params_to_state(const std::vector<double>& params,
                          const std::vector<Eigen::Index>& dims) {
  if (dims.size() != 3)
    throw ShapeError("params_to_state expects dimensions [A1, A, D]");
  const Eigen::Index dim = dims[0] * dims[1] * dims[2];
  if (static_cast<Eigen::Index>(params.size()) != 2 * dim)
    throw ShapeError("parameter vector length does not match 2*|A1|*|A|*|D|");
  Vector amps(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    amps(i) = Complex(params[static_cast<std::size_t>(2 * i)],
                      params[static_cast<std::size_t>(2 * i + 1)]);
  const double norm = amps.norm();
  if (norm < 1e-12)
    throw NumericError("parameter vector is numerically zero");
  amps /= norm;
  return PureState(std::move(amps),
                   SubsystemShape{{"A1", dims[0]}, {"A", dims[1]}, {"D", dims[2]}});
}

OptimizationResult maximize(Objective objective, const RelayChannel& relay,
                            const OptimizerConfig& config, Exec exec) {
  if (config.restarts < 1) throw ParameterError("restarts must be positive");
  if (config.max_evals < 1) throw ParameterError("max_evals must be positive");
  if (!(config.convergence_tol > 0.0))
    throw ParameterError("convergence_tol must be positive");
  if (config.a1_dim < 0) throw ParameterError("a1_dim must not be negative");

  const Eigen::Index da = relay.dim_a();
  const Eigen::Index dd = relay.dim_d();
  const Eigen::Index a1 = config.a1_dim == 0 ? da * dd : config.a1_dim;
  const std::vector<Eigen::Index> dims{a1, da, dd};
  const std::size_t nparams = static_cast<std::size_t>(2 * a1 * da * dd);

  auto score = [&](const std::vector<double>& params) -> double {
    try {
      const PureState sigma = params_to_state(params, dims);
      return objective_from_report(objective, evaluate_state_rates(relay, sigma));
    } catch (const NumericError&) {
      // A simplex move landed on a numerically zero ray; rank it last.
      return -std::numeric_limits<double>::infinity();
    }
  };

  auto run_restart = [&](int r) -> RestartOutcome {
    std::vector<double> start;
    if (r == 0) {
      start = joint_maxent_params(a1, da, dd);
    } else if (r == 1) {
      start = sender_maxent_params(a1, da, dd);
    } else {
      CounterRng rng(config.seed ^ static_cast<std::uint64_t>(r));
      start = random_params(nparams, rng);
    }
    return nelder_mead(start, score, config.max_evals, config.convergence_tol);
  };

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < config.restarts; ++r)
      outcomes[static_cast<std::size_t>(r)] = run_restart(r);
  } else {
    for (int r = 0; r < config.restarts; ++r)
      outcomes[static_cast<std::size_t>(r)] = run_restart(r);
  }

  std::size_t best = 0;
  long total_evals = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    total_evals += outcomes[r].evals;
    if (outcomes[r].objective > outcomes[best].objective) best = r;
  }

  PureState best_state = params_to_state(outcomes[best].params, dims);
  RateReport best_report = evaluate_state_rates(relay, best_state);
  return OptimizationResult{std::move(best_state), best_report,
                            objective_from_report(objective, best_report),
                            total_evals, outcomes[best].converged};
}

double channel_coherent_information(const QuantumChannel& channel,
                                    const OptimizerConfig& config, Exec exec) {
  const auto result = maximize(Objective::direct, direct_link_relay(channel),
                               config, exec);
  return std::max(0.0, result.objective_value);
}

}  // namespace qrelay
