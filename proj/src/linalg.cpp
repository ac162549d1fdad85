#include "qrelay/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "qrelay/detail/indexing.hpp"
#include "qrelay/rng.hpp"

namespace qrelay {
namespace {

using detail::dims_of;
using detail::offsets_for;
using detail::strides_of;

void require_finite(const Matrix& m) {
  if (!m.allFinite()) throw NumericError("matrix has non-finite entries");
}

void require_hermitian(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) throw ShapeError(std::string(who) + ": matrix not square");
  if (m.size() > 0 && (m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw NumericError(std::string(who) + ": matrix not Hermitian within tolerance");
}

}  // namespace

LabeledMatrix::LabeledMatrix(Matrix m, SubsystemShape rows, SubsystemShape cols)
    : data(std::move(m)), row_shape(std::move(rows)), col_shape(std::move(cols)) {
  if (data.rows() != row_shape.total_dim() || data.cols() != col_shape.total_dim())
    throw ShapeError("matrix dimensions do not match shape");
  require_finite(data);
}

LabeledMatrix::LabeledMatrix(Matrix m, SubsystemShape shape)
    : LabeledMatrix(std::move(m), shape, shape) {}

const SubsystemShape& LabeledMatrix::shape() const {
  if (!square()) throw ShapeError("matrix is rectangular; no single shape");
  return row_shape;
}

PureState::PureState(Vector v, SubsystemShape s) : data(std::move(v)), shape(std::move(s)) {
  if (data.size() != shape.total_dim())
    throw ShapeError("state vector length does not match shape");
  if (!data.allFinite()) throw NumericError("state vector has non-finite entries");
  if (std::abs(data.norm() - 1.0) > kHermitianTol)
    throw NumericError("state vector is not normalized");
}

DensityOperator::DensityOperator(LabeledMatrix m) : op(std::move(m)) {
  if (!op.square()) throw ShapeError("density operator must be square");
  require_hermitian(op.data, "density operator");
  const Complex tr = op.data.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kHermitianTol)
    throw NumericError("density operator trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (op.data + op.data.adjoint()),
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kHermitianTol)
    throw NumericError("density operator has a negative eigenvalue");
}

DensityOperator::DensityOperator(Matrix m, SubsystemShape shape)
    : DensityOperator(LabeledMatrix(std::move(m), std::move(shape))) {}

PureState basis_ket(Eigen::Index d, Eigen::Index i, const std::string& label) {
  if (i < 0 || i >= d) throw ParameterError("basis index out of range");
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return PureState(std::move(v), single(label, d));
}

PureState maximally_entangled(Eigen::Index d, const std::string& label_a,
                              const std::string& label_b) {
  Vector v = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = amp;
  return PureState(std::move(v), SubsystemShape{{label_a, d}, {label_b, d}});
}

PureState random_state(const SubsystemShape& shape, std::uint64_t seed) {
  CounterRng rng(seed);
  Vector v(shape.total_dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.cnormal();
  const double n = v.norm();
  if (n < 1e-12) throw NumericError("degenerate random draw");
  return PureState(v / n, shape);
}

DensityOperator density(const PureState& psi) {
  Matrix m = psi.data * psi.data.adjoint();
  m /= m.trace().real();
  return DensityOperator(std::move(m), psi.shape);
}

DensityOperator maximally_mixed(const SubsystemShape& shape) {
  const Eigen::Index d = shape.total_dim();
  return DensityOperator(Matrix::Identity(d, d) / static_cast<double>(d), shape);
}

LabeledMatrix tensor(const LabeledMatrix& a, const LabeledMatrix& b) {
  Matrix m = Eigen::kroneckerProduct(a.data, b.data);
  return LabeledMatrix(std::move(m), a.row_shape + b.row_shape, a.col_shape + b.col_shape);
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(tensor(a.op, b.op));
}

PureState tensor(const PureState& a, const PureState& b) {
  Vector v = Eigen::kroneckerProduct(a.data, b.data);
  return PureState(std::move(v), a.shape + b.shape);
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep) {
  if (keep.empty()) throw LabelError("partial_trace: keep set is empty");
  const SubsystemShape& sh = rho.shape();
  std::vector<bool> kept(sh.size(), false);
  for (const auto& l : keep) {
    const std::size_t i = sh.index_of(l);
    if (kept[i]) throw LabelError("partial_trace: repeated label '" + l + "'");
    kept[i] = true;
  }
  // Kept subsystems stay in their original order regardless of keep-set order.
  std::vector<std::size_t> kpos, tpos;
  std::vector<Subsystem> kparts;
  for (std::size_t i = 0; i < sh.size(); ++i) {
    if (kept[i]) {
      kpos.push_back(i);
      kparts.push_back(sh[i]);
    } else {
      tpos.push_back(i);
    }
  }
  const auto dims = dims_of(sh);
  const auto strides = strides_of(dims);
  const auto koff = offsets_for(kpos, dims, strides);
  const auto toff = offsets_for(tpos, dims, strides);

  const Eigen::Index dk = static_cast<Eigen::Index>(koff.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (const auto t : toff) acc += rho.data()(koff[r] + t, koff[c] + t);
      out(r, c) = acc;
    }
  return DensityOperator(std::move(out), SubsystemShape(std::move(kparts)));
}

Eigendecomposition hermitian_eigendecomposition(const Matrix& m) {
  require_hermitian(m, "eigendecomposition");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  Eigendecomposition out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

Eigendecomposition hermitian_eigendecomposition(const LabeledMatrix& m) {
  if (!m.square()) throw ShapeError("eigendecomposition: matrix not square");
  return hermitian_eigendecomposition(m.data);
}

double trace_norm(const Matrix& m) {
  require_hermitian(m, "trace_norm");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_norm(const LabeledMatrix& m) { return trace_norm(m.data); }

PureState purify(const DensityOperator& rho, const std::string& ref_label) {
  const Eigen::Index d = rho.dim();
  const Eigendecomposition eig = hermitian_eigendecomposition(rho.data());
  Vector v = Vector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lam = std::max(eig.values(i), 0.0);
    if (lam == 0.0) continue;
    const double root = std::sqrt(lam);
    for (Eigen::Index s = 0; s < d; ++s) v(s * d + i) = root * eig.vectors(s, i);
  }
  return PureState(std::move(v), rho.shape() + single(ref_label, d));
}

LabeledMatrix haar_unitary(Eigen::Index d, std::uint64_t seed, const std::string& label) {
  if (d < 1) throw ParameterError("haar_unitary: d must be >= 1");
  CounterRng rng(seed);
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.cnormal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  // Phase correction makes the QR factorization unique, hence Haar.
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double a = std::abs(r);
    q.col(j) *= (a > 0.0) ? (r / a) : Complex(1.0, 0.0);
  }
  return LabeledMatrix(std::move(q), single(label, d));
}

UhlmannResult uhlmann_isometry(const PureState& phi, const PureState& psi) {
  std::vector<std::string> shared, only_phi, only_psi;
  for (const auto& p : phi.shape.parts()) {
    if (psi.shape.has(p.label)) {
      if (psi.shape.dim_of(p.label) != p.dim)
        throw ShapeError("uhlmann_isometry: shared subsystem '" + p.label +
                         "' has mismatched dimensions");
      shared.push_back(p.label);
    } else {
      only_phi.push_back(p.label);
    }
  }
  for (const auto& p : psi.shape.parts())
    if (!phi.shape.has(p.label)) only_psi.push_back(p.label);

  std::vector<std::string> phi_order = shared, psi_order = shared;
  phi_order.insert(phi_order.end(), only_phi.begin(), only_phi.end());
  psi_order.insert(psi_order.end(), only_psi.begin(), only_psi.end());
  const PureState phi_p = permute_subsystems(phi, phi_order);
  const PureState psi_p = permute_subsystems(psi, psi_order);

  Eigen::Index da = 1;
  for (const auto& l : shared) da *= phi.shape.dim_of(l);
  const Eigen::Index db = phi.dim() / da;
  const Eigen::Index dc = psi.dim() / da;
  if (dc > db)
    throw ShapeError("uhlmann_isometry: psi's private factor exceeds phi's");

  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> phim(phi_p.data.data(), da, db);
  Eigen::Map<const RowMajor> psim(psi_p.data.data(), da, dc);

  // Overlap operator N with <phi|(1 x V)|psi> = Tr[V N]; the optimum over
  // partial isometries V is reached on N's singular vectors and attains the
  // singular value sum, which is the fidelity of the shared marginals.
  Matrix n = psim.transpose() * phim.conjugate();
  Eigen::JacobiSVD<Matrix> svd(n, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix v = svd.matrixV().leftCols(dc) * svd.matrixU().adjoint();
  const double overlap = std::min(svd.singularValues().sum(), 1.0);

  SubsystemShape row_sh, col_sh;
  {
    std::vector<Subsystem> rows, cols;
    for (const auto& l : only_phi) rows.push_back({l, phi.shape.dim_of(l)});
    for (const auto& l : only_psi) cols.push_back({l, psi.shape.dim_of(l)});
    if (rows.empty()) rows.push_back({"triv", 1});
    if (cols.empty()) cols.push_back({"triv", 1});
    row_sh = SubsystemShape(std::move(rows));
    col_sh = SubsystemShape(std::move(cols));
  }
  return UhlmannResult{LabeledMatrix(std::move(v), row_sh, col_sh), overlap};
}

namespace {

// Flat index map realizing a subsystem permutation: new_of[old_index].
std::vector<Eigen::Index> permutation_map(const SubsystemShape& sh,
                                          const std::vector<std::string>& order) {
  if (order.size() != sh.size())
    throw LabelError("permutation must mention every subsystem exactly once");
  std::vector<std::size_t> perm(order.size());
  std::vector<bool> seen(sh.size(), false);
  for (std::size_t k = 0; k < order.size(); ++k) {
    perm[k] = sh.index_of(order[k]);
    if (seen[perm[k]]) throw LabelError("permutation repeats label '" + order[k] + "'");
    seen[perm[k]] = true;
  }
  const auto dims = dims_of(sh);
  const auto strides = strides_of(dims);
  std::vector<Eigen::Index> new_dims(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims[perm[k]];
  const auto new_strides = strides_of(new_dims);

  const Eigen::Index total = sh.total_dim();
  std::vector<Eigen::Index> map(static_cast<std::size_t>(total));
  for (Eigen::Index i = 0; i < total; ++i) {
    Eigen::Index ni = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      const Eigen::Index digit = (i / strides[perm[k]]) % dims[perm[k]];
      ni += digit * new_strides[k];
    }
    map[static_cast<std::size_t>(i)] = ni;
  }
  return map;
}

SubsystemShape permuted_shape(const SubsystemShape& sh,
                              const std::vector<std::string>& order) {
  std::vector<Subsystem> parts;
  for (const auto& l : order) parts.push_back({l, sh.dim_of(l)});
  return SubsystemShape(std::move(parts));
}

}  // namespace

PureState permute_subsystems(const PureState& psi, const std::vector<std::string>& order) {
  const auto map = permutation_map(psi.shape, order);
  Vector v(psi.dim());
  for (Eigen::Index i = 0; i < psi.dim(); ++i) v(map[i]) = psi.data(i);
  return PureState(std::move(v), permuted_shape(psi.shape, order));
}

DensityOperator permute_subsystems(const DensityOperator& rho,
                                   const std::vector<std::string>& order) {
  const auto map = permutation_map(rho.shape(), order);
  const Eigen::Index d = rho.dim();
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(map[i], map[j]) = rho.data()(i, j);
  return DensityOperator(std::move(m), permuted_shape(rho.shape(), order));
}

PureState apply_unitary(const PureState& psi, const Matrix& u,
                        const std::vector<std::string>& targets) {
  std::vector<std::string> order = targets;
  for (const auto& p : psi.shape.parts()) {
    if (std::find(targets.begin(), targets.end(), p.label) == targets.end())
      order.push_back(p.label);
  }
  const PureState front = permute_subsystems(psi, order);
  Eigen::Index dt = 1;
  for (const auto& l : targets) dt *= psi.shape.dim_of(l);
  if (u.rows() != dt || u.cols() != dt)
    throw ShapeError("apply_unitary: operator does not match target dimensions");
  const Eigen::Index dr = psi.dim() / dt;

  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> block(front.data.data(), dt, dr);
  RowMajor moved = u * block;
  Vector v = Eigen::Map<Vector>(moved.data(), psi.dim());

  std::vector<std::string> original;
  for (const auto& p : psi.shape.parts()) original.push_back(p.label);
  return permute_subsystems(PureState(std::move(v), front.shape), original);
}

namespace {

SubsystemShape split_shape(const SubsystemShape& sh, const std::string& label,
                           const SubsystemShape& replacement) {
  const std::size_t at = sh.index_of(label);
  if (replacement.total_dim() != sh[at].dim)
    throw ShapeError("split_subsystem: replacement dimensions do not multiply to " +
                     std::to_string(sh[at].dim));
  std::vector<Subsystem> parts;
  for (std::size_t i = 0; i < sh.size(); ++i) {
    if (i == at)
      for (const auto& p : replacement.parts()) parts.push_back(p);
    else
      parts.push_back(sh[i]);
  }
  return SubsystemShape(std::move(parts));
}

}  // namespace

PureState split_subsystem(const PureState& psi, const std::string& label,
                          const SubsystemShape& replacement) {
  return PureState(psi.data, split_shape(psi.shape, label, replacement));
}

DensityOperator split_subsystem(const DensityOperator& rho, const std::string& label,
                                const SubsystemShape& replacement) {
  return DensityOperator(rho.data(), split_shape(rho.shape(), label, replacement));
}

PureState relabel(const PureState& psi, const std::string& from, const std::string& to) {
  std::vector<Subsystem> parts = psi.shape.parts();
  parts[psi.shape.index_of(from)].label = to;
  return PureState(psi.data, SubsystemShape(std::move(parts)));
}

}  // namespace qrelay
