#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qrelay/errors.hpp"
#include "qrelay/shape.hpp"

namespace qrelay {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Hermiticity / PSD / trace tolerance, absolute.
inline constexpr double kHermitianTol = 1e-9;
// Eigenvalues below this are treated as exact zeros before taking logs.
inline constexpr double kEigenvalueClip = 1e-12;

// Complex matrix with labeled row and column factorizations. Square operators
// have row_shape == col_shape; isometries and other rectangular maps carry a
// distinct shape on each side.
struct LabeledMatrix {
  Matrix data;
  SubsystemShape row_shape;
  SubsystemShape col_shape;

  LabeledMatrix() = default;
  LabeledMatrix(Matrix m, SubsystemShape rows, SubsystemShape cols);
  // Square convenience.
  LabeledMatrix(Matrix m, SubsystemShape shape);

  bool square() const { return row_shape == col_shape; }
  const SubsystemShape& shape() const;
};

struct PureState {
  Vector data;
  SubsystemShape shape;

  PureState(Vector v, SubsystemShape s);

  Eigen::Index dim() const { return data.size(); }
};

// Validated on construction: Hermitian, unit trace, positive semidefinite,
// each within kHermitianTol.
struct DensityOperator {
  LabeledMatrix op;

  DensityOperator(Matrix m, SubsystemShape shape);
  explicit DensityOperator(LabeledMatrix m);

  const Matrix& data() const { return op.data; }
  const SubsystemShape& shape() const { return op.row_shape; }
  Eigen::Index dim() const { return op.data.rows(); }
};

// --- construction helpers ---

PureState basis_ket(Eigen::Index d, Eigen::Index i, const std::string& label);
PureState maximally_entangled(Eigen::Index d, const std::string& label_a,
                              const std::string& label_b);
// Gaussian amplitudes, normalized (Haar-distributed on the unit sphere).
PureState random_state(const SubsystemShape& shape, std::uint64_t seed);
DensityOperator density(const PureState& psi);
DensityOperator maximally_mixed(const SubsystemShape& shape);

// --- core operations ---

LabeledMatrix tensor(const LabeledMatrix& a, const LabeledMatrix& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
PureState tensor(const PureState& a, const PureState& b);

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep);

struct Eigendecomposition {
  Eigen::VectorXd values;  // descending
  Matrix vectors;          // orthonormal columns, matching order
};
Eigendecomposition hermitian_eigendecomposition(const LabeledMatrix& m);
Eigendecomposition hermitian_eigendecomposition(const Matrix& m);

double trace_norm(const LabeledMatrix& m);
double trace_norm(const Matrix& m);  // Hermitian inputs only

PureState purify(const DensityOperator& rho, const std::string& ref_label);

LabeledMatrix haar_unitary(Eigen::Index d, std::uint64_t seed,
                           const std::string& label = "U");

struct UhlmannResult {
  LabeledMatrix isometry;  // maps psi's private factors into phi's
  double overlap;          // = fidelity of the shared-subsystem marginals
};
// The shared subsystem is the set of labels common to phi and psi.
UhlmannResult uhlmann_isometry(const PureState& phi, const PureState& psi);

// --- shape plumbing ---

PureState permute_subsystems(const PureState& psi,
                             const std::vector<std::string>& order);
DensityOperator permute_subsystems(const DensityOperator& rho,
                                   const std::vector<std::string>& order);

// Applies u to the listed subsystems (in the listed order), identity elsewhere.
PureState apply_unitary(const PureState& psi, const Matrix& u,
                        const std::vector<std::string>& targets);

// Reinterprets one subsystem as a tensor product of finer factors (first factor
// most significant). Amplitudes are untouched; only the shape changes.
PureState split_subsystem(const PureState& psi, const std::string& label,
                          const SubsystemShape& replacement);
DensityOperator split_subsystem(const DensityOperator& rho, const std::string& label,
                                const SubsystemShape& replacement);

PureState relabel(const PureState& psi, const std::string& from, const std::string& to);

}  // namespace qrelay
