#include "qrelay/channels.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "qrelay/detail/indexing.hpp"
#include "qrelay/rng.hpp"

namespace qrelay {

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, SubsystemShape in,
                               SubsystemShape out)
    : kraus_ops(std::move(kraus)),
      input_shape(std::move(in)),
      output_shape(std::move(out)) {
  if (kraus_ops.empty()) throw ParameterError("channel needs at least one Kraus operator");
  const Eigen::Index din = input_shape.total_dim();
  const Eigen::Index dout = output_shape.total_dim();
  Matrix comp = Matrix::Zero(din, din);
  for (const auto& k : kraus_ops) {
    if (k.rows() != dout || k.cols() != din)
      throw ShapeError("Kraus operator dimensions do not match channel shapes");
    if (!k.allFinite()) throw NumericError("Kraus operator has non-finite entries");
    comp += k.adjoint() * k;
  }
  if ((comp - Matrix::Identity(din, din)).cwiseAbs().maxCoeff() > kCptpTol)
    throw NumericError("Kraus operators do not satisfy the completeness relation");
}

QuantumChannel QuantumChannel::relabeled(const std::vector<std::string>& in_labels,
                                         const std::vector<std::string>& out_labels) const {
  if (in_labels.size() != input_shape.size() || out_labels.size() != output_shape.size())
    throw LabelError("relabeled: label count does not match subsystem count");
  std::vector<Subsystem> in_parts, out_parts;
  for (std::size_t i = 0; i < in_labels.size(); ++i)
    in_parts.push_back({in_labels[i], input_shape[i].dim});
  for (std::size_t i = 0; i < out_labels.size(); ++i)
    out_parts.push_back({out_labels[i], output_shape[i].dim});
  return QuantumChannel(kraus_ops, SubsystemShape(std::move(in_parts)),
                        SubsystemShape(std::move(out_parts)));
}

RelayChannel::RelayChannel(QuantumChannel ch) : channel(std::move(ch)) {
  const auto& in = channel.input_shape;
  const auto& out = channel.output_shape;
  if (in.size() != 2 || in[0].label != "A" || in[1].label != "D")
    throw LabelError("relay channel input must be [A, D]");
  if (out.size() != 2 || out[0].label != "B" || out[1].label != "E")
    throw LabelError("relay channel output must be [B, E]");
}

namespace {

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ParameterError(std::string(name) + " must lie in [0, 1]");
}

// Discrete Weyl operators X^a Z^b used for the d-dimensional depolarizing set.
Matrix weyl(Eigen::Index d, Eigen::Index a, Eigen::Index b) {
  Matrix w = Matrix::Zero(d, d);
  const double step = 2.0 * M_PI / static_cast<double>(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex phase = std::polar(1.0, step * static_cast<double>(b * j));
    w((j + a) % d, j) = phase;
  }
  return w;
}

}  // namespace

QuantumChannel make_channel(const std::string& kind, const ChannelParams& params,
                            const std::string& in_label, const std::string& out_label) {
  const Eigen::Index d = params.d;
  std::vector<Matrix> kraus;

  if (kind == "identity") {
    if (d < 2) throw ParameterError("identity: d must be >= 2");
    kraus.push_back(Matrix::Identity(d, d));
    return QuantumChannel(std::move(kraus), single(in_label, d), single(out_label, d));
  }
  if (kind == "depolarizing") {
    if (d < 2) throw ParameterError("depolarizing: d must be >= 2");
    check_prob(params.p, "depolarizing p");
    const double dd = static_cast<double>(d * d);
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) {
        const double w =
            (a == 0 && b == 0) ? 1.0 - params.p + params.p / dd : params.p / dd;
        if (w == 0.0) continue;
        kraus.push_back(std::sqrt(w) * weyl(d, a, b));
      }
    return QuantumChannel(std::move(kraus), single(in_label, d), single(out_label, d));
  }
  if (kind == "erasure") {
    if (d < 2) throw ParameterError("erasure: d must be >= 2");
    check_prob(params.p, "erasure p");
    if (params.p < 1.0) {
      Matrix keep = Matrix::Zero(d + 1, d);
      keep.topRows(d) = Matrix::Identity(d, d);
      kraus.push_back(std::sqrt(1.0 - params.p) * keep);
    }
    if (params.p > 0.0) {
      for (Eigen::Index i = 0; i < d; ++i) {
        Matrix flag = Matrix::Zero(d + 1, d);
        flag(d, i) = std::sqrt(params.p);
        kraus.push_back(std::move(flag));
      }
    }
    return QuantumChannel(std::move(kraus), single(in_label, d), single(out_label, d + 1));
  }
  if (kind == "amplitude_damping") {
    check_prob(params.gamma, "amplitude_damping gamma");
    Matrix k0(2, 2), k1(2, 2);
    k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - params.gamma);
    k1 << 0.0, std::sqrt(params.gamma), 0.0, 0.0;
    kraus.push_back(std::move(k0));
    if (params.gamma > 0.0) kraus.push_back(std::move(k1));
    return QuantumChannel(std::move(kraus), single(in_label, 2), single(out_label, 2));
  }
  if (kind == "dephasing") {
    check_prob(params.p, "dephasing p");
    Matrix z(2, 2);
    z << 1.0, 0.0, 0.0, -1.0;
    if (params.p < 1.0) kraus.push_back(std::sqrt(1.0 - params.p) * Matrix::Identity(2, 2));
    if (params.p > 0.0) kraus.push_back(std::sqrt(params.p) * z);
    return QuantumChannel(std::move(kraus), single(in_label, 2), single(out_label, 2));
  }
  throw ParameterError("unknown channel kind '" + kind + "'");
}

QuantumChannel random_channel(Eigen::Index in_dim, Eigen::Index out_dim,
                              Eigen::Index env_dim, std::uint64_t seed,
                              const std::string& in_label, const std::string& out_label) {
  if (in_dim < 1 || out_dim < 1 || env_dim < 1)
    throw ParameterError("random_channel: dimensions must be positive");
  if (out_dim * env_dim < in_dim)
    throw ParameterError("random_channel: output x environment too small for an isometry");
  const Matrix u = haar_unitary(out_dim * env_dim, seed).data;
  std::vector<Matrix> kraus(static_cast<std::size_t>(env_dim));
  for (Eigen::Index k = 0; k < env_dim; ++k) {
    Matrix kk(out_dim, in_dim);
    for (Eigen::Index o = 0; o < out_dim; ++o)
      kk.row(o) = u.block(o * env_dim + k, 0, 1, in_dim);
    kraus[static_cast<std::size_t>(k)] = std::move(kk);
  }
  return QuantumChannel(std::move(kraus), single(in_label, in_dim),
                        single(out_label, out_dim));
}

DensityOperator apply_channel(const QuantumChannel& ch, const DensityOperator& rho,
                              const std::vector<std::string>& acting_on) {
  const SubsystemShape& in = ch.input_shape;
  if (acting_on.size() != in.size())
    throw ShapeError("apply_channel: acting_on does not match channel arity");
  for (const auto& l : acting_on)
    if (!in.has(l)) throw LabelError("apply_channel: channel has no input '" + l + "'");
  for (const auto& part : in.parts()) {
    if (!rho.shape().has(part.label))
      throw ShapeError("apply_channel: state lacks subsystem '" + part.label + "'");
    if (rho.shape().dim_of(part.label) != part.dim)
      throw ShapeError("apply_channel: dimension mismatch on '" + part.label + "'");
  }

  std::vector<std::string> order;
  std::vector<Subsystem> rest;
  for (const auto& part : in.parts()) order.push_back(part.label);
  for (const auto& part : rho.shape().parts()) {
    if (!in.has(part.label)) {
      order.push_back(part.label);
      rest.push_back(part);
    }
  }
  const DensityOperator fronted = permute_subsystems(rho, order);
  const Eigen::Index dr = rho.dim() / in.total_dim();
  const Matrix eye = Matrix::Identity(dr, dr);
  const Eigen::Index dout = ch.output_dim() * dr;
  Matrix acc = Matrix::Zero(dout, dout);
  for (const auto& k : ch.kraus_ops) {
    const Matrix lifted = Eigen::kroneckerProduct(k, eye);
    acc += lifted * fronted.data() * lifted.adjoint();
  }

  DensityOperator result(std::move(acc), ch.output_shape + SubsystemShape(rest));

  // Outputs take the place of the first acting subsystem.
  std::vector<std::string> final_order;
  bool placed = false;
  for (const auto& part : rho.shape().parts()) {
    if (in.has(part.label)) {
      if (!placed) {
        for (const auto& o : ch.output_shape.parts()) final_order.push_back(o.label);
        placed = true;
      }
    } else {
      final_order.push_back(part.label);
    }
  }
  return permute_subsystems(result, final_order);
}

StinespringDilation stinespring_isometry(const QuantumChannel& ch,
                                         const std::string& env_label) {
  const Eigen::Index din = ch.input_dim();
  const Eigen::Index dout = ch.output_dim();
  const Eigen::Index env = static_cast<Eigen::Index>(ch.kraus_ops.size());
  Matrix v = Matrix::Zero(dout * env, din);
  for (Eigen::Index k = 0; k < env; ++k)
    for (Eigen::Index o = 0; o < dout; ++o)
      v.row(o * env + k) = ch.kraus_ops[static_cast<std::size_t>(k)].row(o);
  if ((v.adjoint() * v - Matrix::Identity(din, din)).cwiseAbs().maxCoeff() > kCptpTol)
    throw NumericError("stinespring_isometry: V is not an isometry");
  LabeledMatrix iso(std::move(v), ch.output_shape + single(env_label, env),
                    ch.input_shape);
  return StinespringDilation{std::move(iso), env_label, env};
}

QuantumChannel complementary_channel(const QuantumChannel& ch,
                                     const std::string& env_label) {
  const Eigen::Index din = ch.input_dim();
  const Eigen::Index dout = ch.output_dim();
  const Eigen::Index env = static_cast<Eigen::Index>(ch.kraus_ops.size());
  std::vector<Matrix> kraus(static_cast<std::size_t>(dout));
  for (Eigen::Index o = 0; o < dout; ++o) {
    Matrix l(env, din);
    for (Eigen::Index k = 0; k < env; ++k)
      l.row(k) = ch.kraus_ops[static_cast<std::size_t>(k)].row(o);
    kraus[static_cast<std::size_t>(o)] = std::move(l);
  }
  return QuantumChannel(std::move(kraus), ch.input_shape, single(env_label, env));
}

Matrix swap_matrix(Eigen::Index d1, Eigen::Index d2) {
  Matrix s = Matrix::Zero(d1 * d2, d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d2; ++j) s(j * d1 + i, i * d2 + j) = 1.0;
  return s;
}

Matrix partial_swap(Eigen::Index d, double theta) {
  const Eigen::Index n = d * d;
  return std::cos(theta) * Matrix::Identity(n, n) +
         Complex(0.0, std::sin(theta)) * swap_matrix(d, d);
}

RelayChannel compose_relay(const OrthogonalLinks& links) {
  const QuantumChannel& p = links.sender_to_relay;
  const QuantumChannel& m = links.relay_to_dest;
  const Matrix shuffle = swap_matrix(p.output_dim(), m.output_dim());
  std::vector<Matrix> kraus;
  kraus.reserve(p.kraus_ops.size() * m.kraus_ops.size());
  for (const auto& pi : p.kraus_ops)
    for (const auto& mj : m.kraus_ops)
      kraus.push_back(shuffle * Eigen::kroneckerProduct(pi, mj));
  SubsystemShape in{{"A", p.input_dim()}, {"D", m.input_dim()}};
  SubsystemShape out{{"B", m.output_dim()}, {"E", p.output_dim()}};
  return RelayChannel(QuantumChannel(std::move(kraus), std::move(in), std::move(out)));
}

RelayChannel compose_relay(const InteractionRelay& spec) {
  const Eigen::Index da = spec.noise_e.input_dim();
  const Eigen::Index dd = spec.noise_b.input_dim();
  const Eigen::Index n = da * dd;
  if (spec.unitary.rows() != n || spec.unitary.cols() != n)
    throw ShapeError("interaction relay: unitary does not match A x D dimensions");
  if ((spec.unitary.adjoint() * spec.unitary - Matrix::Identity(n, n))
          .cwiseAbs()
          .maxCoeff() > kCptpTol)
    throw ParameterError("interaction relay: matrix is not unitary");

  // After the joint rotation the former-A slot continues to the relay receiver
  // E and the former-D slot continues to the destination B.
  const Matrix shuffle = swap_matrix(spec.noise_e.output_dim(), spec.noise_b.output_dim());
  std::vector<Matrix> kraus;
  kraus.reserve(spec.noise_e.kraus_ops.size() * spec.noise_b.kraus_ops.size());
  for (const auto& ke : spec.noise_e.kraus_ops)
    for (const auto& kb : spec.noise_b.kraus_ops)
      kraus.push_back(shuffle * Eigen::kroneckerProduct(ke, kb) * spec.unitary);
  SubsystemShape in{{"A", da}, {"D", dd}};
  SubsystemShape out{{"B", spec.noise_b.output_dim()}, {"E", spec.noise_e.output_dim()}};
  return RelayChannel(QuantumChannel(std::move(kraus), std::move(in), std::move(out)));
}

RelayChannel direct_link_relay(const QuantumChannel& ch) {
  SubsystemShape in{{"A", ch.input_dim()}, {"D", 1}};
  SubsystemShape out{{"B", ch.output_dim()}, {"E", 1}};
  return RelayChannel(QuantumChannel(ch.kraus_ops, std::move(in), std::move(out)));
}

DensityOperator choi_matrix(const QuantumChannel& ch) {
  const Eigen::Index din = ch.input_dim();
  Vector phi = Vector::Zero(din * din);
  const double amp = 1.0 / std::sqrt(static_cast<double>(din));
  for (Eigen::Index i = 0; i < din; ++i) phi(i * din + i) = amp;
  const Matrix phimat = phi * phi.adjoint();

  const Matrix eye = Matrix::Identity(din, din);
  const Eigen::Index dtot = ch.output_dim() * din;
  Matrix acc = Matrix::Zero(dtot, dtot);
  for (const auto& k : ch.kraus_ops) {
    const Matrix lifted = Eigen::kroneckerProduct(k, eye);
    acc += lifted * phimat * lifted.adjoint();
  }
  std::vector<Subsystem> ref;
  for (const auto& part : ch.input_shape.parts()) ref.push_back({part.label + "'", part.dim});
  return DensityOperator(std::move(acc), ch.output_shape + SubsystemShape(std::move(ref)));
}

double choi_distance(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.input_dim() != b.input_dim() || a.output_dim() != b.output_dim())
    throw ShapeError("choi_distance: channels have different dimensions");
  return trace_norm(Matrix(choi_matrix(a).data() - choi_matrix(b).data()));
}

bool channels_equal(const QuantumChannel& a, const QuantumChannel& b, double tol) {
  return choi_distance(a, b) <= tol;
}

QuantumChannel fix_input(const QuantumChannel& ch, const std::string& label,
                         const PureState& ket) {
  const SubsystemShape& in = ch.input_shape;
  const std::size_t at = in.index_of(label);
  if (ket.dim() != in[at].dim)
    throw ShapeError("fix_input: state dimension does not match subsystem");

  const auto dims = detail::dims_of(in);
  const auto strides = detail::strides_of(dims);
  std::vector<std::size_t> rest_pos;
  std::vector<Subsystem> rest_parts;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i == at) continue;
    rest_pos.push_back(i);
    rest_parts.push_back(in[i]);
  }
  const auto roff = detail::offsets_for(rest_pos, dims, strides);
  const Eigen::Index drest = static_cast<Eigen::Index>(roff.size());

  Matrix w = Matrix::Zero(in.total_dim(), drest);
  for (Eigen::Index r = 0; r < drest; ++r)
    for (Eigen::Index t = 0; t < dims[at]; ++t)
      w(roff[r] + t * strides[at], r) = ket.data(t);

  std::vector<Matrix> kraus;
  kraus.reserve(ch.kraus_ops.size());
  for (const auto& k : ch.kraus_ops) kraus.push_back(k * w);
  return QuantumChannel(std::move(kraus), SubsystemShape(std::move(rest_parts)),
                        ch.output_shape);
}

QuantumChannel discard_output(const QuantumChannel& ch,
                              const std::vector<std::string>& labels) {
  const SubsystemShape& out = ch.output_shape;
  std::vector<bool> drop(out.size(), false);
  for (const auto& l : labels) drop[out.index_of(l)] = true;

  const auto dims = detail::dims_of(out);
  const auto strides = detail::strides_of(dims);
  std::vector<std::size_t> kpos, dpos;
  std::vector<Subsystem> kparts;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (drop[i]) {
      dpos.push_back(i);
    } else {
      kpos.push_back(i);
      kparts.push_back(out[i]);
    }
  }
  const auto koff = detail::offsets_for(kpos, dims, strides);
  const auto doff = detail::offsets_for(dpos, dims, strides);

  std::vector<Matrix> kraus;
  kraus.reserve(ch.kraus_ops.size() * doff.size());
  for (const auto& k : ch.kraus_ops) {
    for (const auto e : doff) {
      Matrix sliced(static_cast<Eigen::Index>(koff.size()), ch.input_dim());
      for (std::size_t m = 0; m < koff.size(); ++m)
        sliced.row(static_cast<Eigen::Index>(m)) = k.row(koff[m] + e);
      kraus.push_back(std::move(sliced));
    }
  }
  return QuantumChannel(std::move(kraus), ch.input_shape,
                        SubsystemShape(std::move(kparts)));
}

}  // namespace qrelay
