#include "qrelay/rates.hpp"

#include <algorithm>

#include "qrelay/optimize.hpp"

namespace qrelay {

RateReport evaluate_state_rates(const RelayChannel& ch, const PureState& sigma) {
  const auto& sh = sigma.shape;
  if (sh.size() != 3 || sh[0].label != "A1" || sh[1].label != "A" || sh[2].label != "D")
    throw ShapeError("evaluate_state_rates: state must live on [A1, A, D]");
  if (sh[1].dim != ch.dim_a() || sh[2].dim != ch.dim_d())
    throw ShapeError("evaluate_state_rates: state dimensions do not match the channel");

  const DensityOperator input = density(sigma);
  const DensityOperator omega = apply_channel(ch.channel, input, {"A", "D"});

  RateReport r;
  r.h_a1_given_d = conditional_entropy(input, {"A1"}, {"D"});
  r.mi_a1_d = mutual_information(input, {"A1"}, {"D"});
  r.coh_a1_e = coherent_information(omega, {"A1"}, {"E"});
  r.coh_a1_b = coherent_information(omega, {"A1"}, {"B"});
  r.mi_a1_b = mutual_information(omega, {"A1"}, {"B"});
  r.q_df = std::max(0.0, std::min(r.coh_a1_e, r.coh_a1_b));
  r.q_ea_df = std::max(0.0, 0.5 * r.mi_a1_b - 0.5 * r.mi_a1_d);
  return r;
}

FeasibilityRecord check_rate_point(const RateReport& report, const RatePoint& pt) {
  FeasibilityRecord rec;
  rec.slack1 = report.h_a1_given_d - pt.l_b + pt.lhat_b - pt.q;
  rec.slack2 = report.coh_a1_e - pt.l_b - pt.lhat_b - pt.q;
  rec.slack3 = report.coh_a1_b + pt.l_b - pt.lhat_b - pt.q;
  rec.feasible1 = rec.slack1 >= 0.0;
  rec.feasible2 = rec.slack2 >= 0.0;
  rec.feasible3 = rec.slack3 >= 0.0;
  rec.feasible = rec.feasible1 && rec.feasible2 && rec.feasible3;
  rec.delta_l_b = pt.l_b - pt.lhat_b;
  return rec;
}

DecouplingExponents decoupling_exponents(const RateReport& report, const RatePoint& pt,
                                         double q, double delta) {
  if (delta < 0.0) throw ParameterError("decoupling_exponents: delta must be >= 0");
  DecouplingExponents ex;
  ex.e1 = report.h_a1_given_d - pt.l_e - pt.l_b + pt.lhat_e + pt.lhat_b - q;
  ex.e2 = report.coh_a1_e + pt.l_e - pt.l_b - pt.lhat_e - pt.lhat_b - q;
  ex.e3 = report.coh_a1_b - pt.l_e + pt.l_b - pt.lhat_e - pt.lhat_b - q;
  ex.feasible1 = ex.e1 > delta;
  ex.feasible2 = ex.e2 > delta;
  ex.feasible3 = ex.e3 > delta;
  ex.delta = delta;
  return ex;
}

double superdense_classical_rate(const RateReport& report) {
  return 2.0 * report.q_ea_df;
}

double orthogonal_links_bound(const QuantumChannel& sender_to_relay,
                              const QuantumChannel& relay_to_dest,
                              const OptimizerConfig& opt) {
  return std::min(channel_coherent_information(relay_to_dest, opt),
                  channel_coherent_information(sender_to_relay, opt));
}

}  // namespace qrelay
