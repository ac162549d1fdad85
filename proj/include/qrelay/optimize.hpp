#pragma once

#include <cstdint>
#include <vector>

#include "qrelay/channels.hpp"
#include "qrelay/exec.hpp"
#include "qrelay/linalg.hpp"
#include "qrelay/rates.hpp"

namespace qrelay {

// Objective functionals over the relay rate report:
//   df      min(I(A1>B), I(A1>E)), the decode-forward rate before clipping
//   ea_df   (1/2) I(A1;B) - (1/2) I(A1;D)
//   direct  I(A1>B) alone, used for single-channel coherent information
enum class Objective { df, ea_df, direct };

struct OptimizerConfig {
  Eigen::Index a1_dim = 0;  // 0 picks the default |A|*|D|
  int restarts = 16;
  int max_evals = 5000;  // objective evaluations per restart
  double convergence_tol = 1e-6;
  std::uint64_t seed = 0;
};

struct OptimizationResult {
  PureState best_state;
  RateReport best_report;
  double objective_value;  // raw objective at best_state, no clipping
  long evals_used;         // summed over all restarts
  bool converged;          // true when the winning restart met the tolerance
};

// Decodes a flat parameter vector of interleaved real/imaginary parts into a
// normalized pure state on [A1, A, D] with the given dimensions.
PureState params_to_state(const std::vector<double>& params,
                          const std::vector<Eigen::Index>& dims);

// Multi-restart Nelder-Mead ascent over input states sigma_{A1 A D}.
// Deterministic for a fixed config: restart r draws its start from
// CounterRng(seed ^ r), ties across restarts go to the lowest index.
OptimizationResult maximize(Objective objective, const RelayChannel& relay,
                            const OptimizerConfig& config,
                            Exec exec = Exec::parallel);

// Optimized coherent information of a single channel, clipped at zero.
// Wraps the channel as a relay with trivial D and E legs and maximizes
// I(A1>B) over pure inputs phi_{A1 X}.
double channel_coherent_information(const QuantumChannel& channel,
                                    const OptimizerConfig& config,
                                    Exec exec = Exec::parallel);

}  // namespace qrelay
