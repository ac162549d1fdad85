#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrelay/linalg.hpp"

namespace qrelay {

// Completeness tolerance for Kraus sets and dilations.
inline constexpr double kCptpTol = 1e-8;
// Two channels are considered equal when their Choi matrices are this close
// in trace distance.
inline constexpr double kChoiTol = 1e-7;

// CPTP map in Kraus form. Kraus operators are output_dim x input_dim.
struct QuantumChannel {
  std::vector<Matrix> kraus_ops;
  SubsystemShape input_shape;
  SubsystemShape output_shape;

  QuantumChannel(std::vector<Matrix> kraus, SubsystemShape in, SubsystemShape out);

  Eigen::Index input_dim() const { return input_shape.total_dim(); }
  Eigen::Index output_dim() const { return output_shape.total_dim(); }

  QuantumChannel relabeled(const std::vector<std::string>& in_labels,
                           const std::vector<std::string>& out_labels) const;
};

// N_{AD->BE}: two senders in, two receivers out, fixed labels.
struct RelayChannel {
  QuantumChannel channel;

  explicit RelayChannel(QuantumChannel ch);

  Eigen::Index dim_a() const { return channel.input_shape[0].dim; }
  Eigen::Index dim_d() const { return channel.input_shape[1].dim; }
  Eigen::Index dim_b() const { return channel.output_shape[0].dim; }
  Eigen::Index dim_e() const { return channel.output_shape[1].dim; }
};

struct StinespringDilation {
  LabeledMatrix isometry;  // input -> output tensor environment (env last)
  std::string env_label;
  Eigen::Index env_dim;
};

struct ChannelParams {
  Eigen::Index d = 2;
  double p = 0.0;
  double gamma = 0.0;
};

// kind: identity | depolarizing | erasure | amplitude_damping | dephasing.
// Depolarizing convention: rho -> (1-p) rho + p I/d. Erasure appends the flag
// as the last basis vector of the (d+1)-dimensional output.
QuantumChannel make_channel(const std::string& kind, const ChannelParams& params,
                            const std::string& in_label = "X",
                            const std::string& out_label = "Y");

// Haar-random isometry dilation sliced into env_dim Kraus operators.
QuantumChannel random_channel(Eigen::Index in_dim, Eigen::Index out_dim,
                              Eigen::Index env_dim, std::uint64_t seed,
                              const std::string& in_label = "X",
                              const std::string& out_label = "Y");

// Applies the channel to the subsystems named in acting_on (which must be
// exactly the channel's input labels); everything else is carried through.
// The channel's output labels take the place of the first acting label.
DensityOperator apply_channel(const QuantumChannel& ch, const DensityOperator& rho,
                              const std::vector<std::string>& acting_on);

StinespringDilation stinespring_isometry(const QuantumChannel& ch,
                                         const std::string& env_label = "J");

// rho -> Tr_output(V rho V'); output dimension equals the Kraus count.
QuantumChannel complementary_channel(const QuantumChannel& ch,
                                     const std::string& env_label = "J");

struct OrthogonalLinks {
  QuantumChannel sender_to_relay;  // P: A -> E
  QuantumChannel relay_to_dest;    // M: D -> B
};

struct InteractionRelay {
  Matrix unitary;           // joint rotation of A tensor D
  QuantumChannel noise_e;   // former-A slot, toward the relay receiver E
  QuantumChannel noise_b;   // former-D slot, toward the destination B
};

RelayChannel compose_relay(const OrthogonalLinks& links);
RelayChannel compose_relay(const InteractionRelay& spec);

// Degenerate relay with one-dimensional D and E wrapping a point-to-point
// channel A -> B; used for direct-transmission quantities.
RelayChannel direct_link_relay(const QuantumChannel& ch);

// Normalized Choi state (ch tensor id)(Phi); reference factors carry primed
// input labels.
DensityOperator choi_matrix(const QuantumChannel& ch);

double choi_distance(const QuantumChannel& a, const QuantumChannel& b);
bool channels_equal(const QuantumChannel& a, const QuantumChannel& b,
                    double tol = kChoiTol);

// Pins one input subsystem to a pure state, yielding a channel on the rest.
QuantumChannel fix_input(const QuantumChannel& ch, const std::string& label,
                         const PureState& ket);

// Traces out part of the output.
QuantumChannel discard_output(const QuantumChannel& ch,
                              const std::vector<std::string>& labels);

Matrix swap_matrix(Eigen::Index d1, Eigen::Index d2);
// cos(theta) I + i sin(theta) SWAP on a d x d pair; theta = pi/2 is a full swap.
Matrix partial_swap(Eigen::Index d, double theta);

}  // namespace qrelay
