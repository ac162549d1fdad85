#pragma once

#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <Eigen/SVD>

#include "qrelay/linalg.hpp"
#include "qrelay/rng.hpp"

namespace test_util {

using qrelay::Complex;
using qrelay::DensityOperator;
using qrelay::Matrix;
using qrelay::SubsystemShape;
using qrelay::Vector;

inline double h2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

inline Matrix random_hermitian(Eigen::Index d, qrelay::CounterRng& rng) {
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.cnormal();
  return Matrix((g + g.adjoint()) / 2.0);
}

// Gram-matrix construction, full rank with probability one.
inline DensityOperator random_density(Eigen::Index d, std::uint64_t seed,
                                      const std::string& label) {
  qrelay::CounterRng rng(seed);
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.cnormal();
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityOperator(rho, SubsystemShape{{label, d}});
}

inline Matrix sqrtm_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * vals.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

// Uhlmann fidelity Tr|sqrt(rho) sqrt(sigma)| as a sum of singular values.
inline double fidelity_oracle(const Matrix& rho, const Matrix& sigma) {
  const Matrix prod = sqrtm_psd(rho) * sqrtm_psd(sigma);
  return Eigen::JacobiSVD<Matrix>(prod).singularValues().sum();
}

// Redirects std::cout into a buffer for the lifetime of the object.
class CoutCapture {
 public:
  CoutCapture() : old_(std::cout.rdbuf(buffer_.rdbuf())) {}
  ~CoutCapture() { std::cout.rdbuf(old_); }
  std::string text() const { return buffer_.str(); }

 private:
  std::ostringstream buffer_;
  std::streambuf* old_;
};

}  // namespace test_util
