#include "qrelay/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace qrelay {
namespace {

double entropy_of_spectrum(const Eigen::VectorXd& lam) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double v = lam(i);
    if (v < kEigenvalueClip) continue;  // [-1e-9, 1e-12) counts as exact zero
    h -= v * std::log2(v);
  }
  return h;
}

// Joined label list; overlap is a caller bug.
std::vector<std::string> join_disjoint(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& l : b) {
    if (std::find(a.begin(), a.end(), l) != a.end())
      throw LabelError("label sets overlap on '" + l + "'");
    out.push_back(l);
  }
  return out;
}

double entropy_of_marginal(const DensityOperator& rho,
                           const std::vector<std::string>& keep) {
  if (keep.size() == rho.shape().size()) {
    bool all = true;
    for (const auto& l : keep) all = all && rho.shape().has(l);
    if (all) return von_neumann_entropy(rho);
  }
  return von_neumann_entropy(partial_trace(rho, keep));
}

}  // namespace

double von_neumann_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho.data() + rho.data().adjoint()),
                                           Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues());
}

double conditional_entropy(const DensityOperator& rho,
                           const std::vector<std::string>& sys_a,
                           const std::vector<std::string>& sys_b) {
  const auto ab = join_disjoint(sys_a, sys_b);
  return entropy_of_marginal(rho, ab) - entropy_of_marginal(rho, sys_b);
}

double mutual_information(const DensityOperator& rho,
                          const std::vector<std::string>& sys_a,
                          const std::vector<std::string>& sys_b) {
  const auto ab = join_disjoint(sys_a, sys_b);
  const double mi = entropy_of_marginal(rho, sys_a) + entropy_of_marginal(rho, sys_b) -
                    entropy_of_marginal(rho, ab);
  return (mi < 0.0 && mi >= -kHermitianTol) ? 0.0 : mi;
}

double coherent_information(const DensityOperator& rho,
                            const std::vector<std::string>& sys_a,
                            const std::vector<std::string>& sys_b) {
  const auto ab = join_disjoint(sys_a, sys_b);
  return entropy_of_marginal(rho, sys_b) - entropy_of_marginal(rho, ab);
}

double purity(const DensityOperator& rho) {
  return (rho.data() * rho.data()).trace().real();
}

}  // namespace qrelay
