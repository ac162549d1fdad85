#pragma once

#include "qrelay/channels.hpp"
#include "qrelay/entropy.hpp"

namespace qrelay {

struct OptimizerConfig;  // defined in optimize.hpp

// Qubit rate Q plus entanglement consumption (L) and generation (Lhat) rates
// for the destination link (B) and the relay link (E). All nonnegative.
struct RatePoint {
  double q = 0.0;
  double l_b = 0.0;
  double lhat_b = 0.0;
  double l_e = 0.0;
  double lhat_e = 0.0;
};

// Entropic functionals of one (channel, input state) pair, in bits per use.
// The five raw fields may be negative; only the achievable rates are clipped.
struct RateReport {
  double h_a1_given_d = 0.0;  // H(A1|D) on the input state
  double coh_a1_e = 0.0;      // I(A1>E) on the channel output
  double coh_a1_b = 0.0;      // I(A1>B) on the channel output
  double mi_a1_b = 0.0;       // I(A1;B) on the channel output
  double mi_a1_d = 0.0;       // I(A1;D) on the input state
  double q_df = 0.0;          // max(0, min(coh_a1_e, coh_a1_b))
  double q_ea_df = 0.0;       // max(0, mi_a1_b/2 - mi_a1_d/2)
};

struct FeasibilityRecord {
  double slack1 = 0.0;  // h_a1_given_d - l_b + lhat_b - q
  double slack2 = 0.0;  // coh_a1_e - l_b - lhat_b - q
  double slack3 = 0.0;  // coh_a1_b + l_b - lhat_b - q
  bool feasible1 = false;
  bool feasible2 = false;
  bool feasible3 = false;
  bool feasible = false;     // conjunction
  double delta_l_b = 0.0;    // net entanglement consumption l_b - lhat_b
};

struct DecouplingExponents {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  bool feasible1 = false;  // e1 > delta, and so on
  bool feasible2 = false;
  bool feasible3 = false;
  double delta = 0.0;
};

// sigma is a pure state on [A1, A, D]; the channel eats A and D. Computes the
// output omega = N(sigma) and all report fields.
RateReport evaluate_state_rates(const RelayChannel& ch, const PureState& sigma);

FeasibilityRecord check_rate_point(const RateReport& report, const RatePoint& pt);

// Error exponents of the three decoupling conditions at block length 1; the
// rate point supplies all four entanglement rates, q is passed separately.
DecouplingExponents decoupling_exponents(const RateReport& report, const RatePoint& pt,
                                         double q, double delta = 0.0);

// Classical bits per use via superdense coding on the EA rate.
double superdense_classical_rate(const RateReport& report);

// Benchmark for a relay made of two orthogonal links: min of the two link
// coherent informations (each optimized separately, each clipped at 0).
double orthogonal_links_bound(const QuantumChannel& sender_to_relay,
                              const QuantumChannel& relay_to_dest,
                              const OptimizerConfig& opt);

}  // namespace qrelay
