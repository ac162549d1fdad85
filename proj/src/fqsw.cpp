#include "qrelay/fqsw.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "qrelay/channels.hpp"
#include "qrelay/entropy.hpp"
#include "qrelay/errors.hpp"

namespace qrelay {

namespace {

void validate(const DecouplingConfig& cfg) {
  const auto& sh = cfg.psi.shape;
  if (sh.size() != 3 || sh[0].label != "A" || sh[1].label != "B" || sh[2].label != "C")
    throw ShapeError("decoupling state must carry subsystems [A, B, C]");
  if (cfg.a1_dim < 1 || cfg.a2_dim < 1 || cfg.a1_dim * cfg.a2_dim != sh[0].dim)
    throw ShapeError("a1_dim * a2_dim must factor |A| exactly");
  if (cfg.trials < 1) throw ParameterError("trials must be positive");
}

// Applies the splitting unitary and reshapes A into [A1, A2].
PureState split_state(const DecouplingConfig& cfg, const Matrix& u) {
  const PureState rotated = apply_unitary(cfg.psi, u, {"A"});
  return split_subsystem(rotated, "A",
                         SubsystemShape{{"A1", cfg.a1_dim}, {"A2", cfg.a2_dim}});
}

Matrix decoupled_target(const DecouplingConfig& cfg) {
  const DensityOperator psi_c = partial_trace(density(cfg.psi), {"C"});
  const Matrix eye = Matrix::Identity(cfg.a1_dim, cfg.a1_dim) /
                     static_cast<double>(cfg.a1_dim);
  return Eigen::kroneckerProduct(eye, psi_c.data()).eval();
}

}  // namespace

double fqsw_bound(const DecouplingConfig& cfg) {
  validate(cfg);
  const double da = static_cast<double>(cfg.psi.shape[0].dim);
  const double dc = static_cast<double>(cfg.psi.shape[2].dim);
  const double da2 = static_cast<double>(cfg.a2_dim);
  const DensityOperator psi_ac = partial_trace(density(cfg.psi), {"A", "C"});
  return da * dc / (da2 * da2) * purity(psi_ac);
}

double decoupling_trial(const DecouplingConfig& cfg, long trial_index) {
  validate(cfg);
  const Matrix u =
      haar_unitary(cfg.psi.shape[0].dim,
                   cfg.seed ^ static_cast<std::uint64_t>(trial_index))
          .data;
  const PureState split = split_state(cfg, u);
  const DensityOperator rho_a1c = partial_trace(density(split), {"A1", "C"});
  const double dist = trace_norm(Matrix(rho_a1c.data() - decoupled_target(cfg)));
  return dist * dist;
}

DecouplingResult monte_carlo(const DecouplingConfig& cfg, Exec exec) {
  validate(cfg);
  const long n = cfg.trials;
  std::vector<double> values(static_cast<std::size_t>(n));

  if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long t = 0; t < n; ++t)
      values[static_cast<std::size_t>(t)] = decoupling_trial(cfg, t);
  } else {
    for (long t = 0; t < n; ++t)
      values[static_cast<std::size_t>(t)] = decoupling_trial(cfg, t);
  }

  DecouplingResult res;
  res.trial_values = values;
  res.lhs_min = values[0];
  res.lhs_max = values[0];
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    res.lhs_min = std::min(res.lhs_min, v);
    res.lhs_max = std::max(res.lhs_max, v);
  }
  res.lhs_mean = sum / static_cast<double>(n);
  if (n > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - res.lhs_mean) * (v - res.lhs_mean);
    res.lhs_stderr = std::sqrt(sq / static_cast<double>(n - 1)) /
                     std::sqrt(static_cast<double>(n));
  }
  res.rhs_bound = fqsw_bound(cfg);
  res.bound_satisfied = res.lhs_mean <= res.rhs_bound + 3.0 * res.lhs_stderr;
  return res;
}

ByproductReport entanglement_byproduct(const DecouplingConfig& cfg, const Matrix& u) {
  validate(cfg);
  const Eigen::Index da = cfg.psi.shape[0].dim;
  if (u.rows() != da || u.cols() != da)
    throw ShapeError("splitting unitary dimension must match |A|");
  const Matrix gram = u.adjoint() * u;
  if ((gram - Matrix::Identity(da, da)).cwiseAbs().maxCoeff() > kCptpTol)
    throw ParameterError("splitting matrix is not unitary");

  const PureState split = split_state(cfg, u);
  ByproductReport rep;
  rep.purity_a1 = purity(partial_trace(density(split), {"A1"}));

  const PureState target = maximally_entangled(cfg.a1_dim, "A1", "G");
  // uhlmann_isometry maps the smaller purifying system into the larger one.
  const Eigen::Index rest = cfg.a2_dim * cfg.psi.shape[1].dim * cfg.psi.shape[2].dim;
  rep.maxent_fidelity = rest >= cfg.a1_dim
                            ? uhlmann_isometry(split, target).overlap
                            : uhlmann_isometry(target, split).overlap;
  return rep;
}

}  // namespace qrelay
