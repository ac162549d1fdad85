#pragma once

#include <cstdint>
#include <vector>

#include "qrelay/exec.hpp"
#include "qrelay/linalg.hpp"

namespace qrelay {

// One randomized decoupling experiment: a Haar unitary splits A into A1*A2,
// A2 and B are discarded, and the residual correlation between A1 and the
// reference C is measured against the analytic expectation bound.
struct DecouplingConfig {
  PureState psi;  // tripartite state on [A, B, C]; B or C may have dim 1
  Eigen::Index a1_dim = 1;
  Eigen::Index a2_dim = 1;  // a1_dim * a2_dim must equal |A|
  long trials = 1;
  std::uint64_t seed = 0;
};

struct DecouplingResult {
  double lhs_mean = 0.0;
  double lhs_stderr = 0.0;
  double lhs_min = 0.0;
  double lhs_max = 0.0;
  double rhs_bound = 0.0;
  bool bound_satisfied = false;  // lhs_mean <= rhs_bound + 3 * lhs_stderr
  std::vector<double> trial_values;
};

struct ByproductReport {
  double purity_a1 = 0.0;
  double maxent_fidelity = 0.0;
};

// Analytic right-hand side (|A| |C| / |A2|^2) * purity(psi_AC).
double fqsw_bound(const DecouplingConfig& config);

// Squared trace distance between rho_{A1 C} and I/|A1| (x) psi_C for the
// Haar unitary drawn from seed ^ trial_index.
double decoupling_trial(const DecouplingConfig& config, long trial_index);

DecouplingResult monte_carlo(const DecouplingConfig& config,
                             Exec exec = Exec::parallel);

// Residual entanglement left after one concrete splitting unitary: purity of
// rho_{A1} plus the Uhlmann fidelity between the rotated state, seen as a
// purification of rho_{A1}, and a maximally entangled pair of dimension |A1|.
ByproductReport entanglement_byproduct(const DecouplingConfig& config,
                                       const Matrix& u);

}  // namespace qrelay
