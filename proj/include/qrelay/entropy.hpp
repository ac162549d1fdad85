#pragma once

#include <vector>

#include "qrelay/linalg.hpp"

namespace qrelay {

// All entropic quantities in bits (base-2 logs).

double von_neumann_entropy(const DensityOperator& rho);

// H(A|B) = H(AB) - H(B). Subsystems outside sysA ∪ sysB are traced out first.
double conditional_entropy(const DensityOperator& rho,
                           const std::vector<std::string>& sys_a,
                           const std::vector<std::string>& sys_b);

// I(A;B) = H(A) + H(B) - H(AB), clipped to 0 when within -1e-9 of 0.
double mutual_information(const DensityOperator& rho,
                          const std::vector<std::string>& sys_a,
                          const std::vector<std::string>& sys_b);

// I(A>B) = H(B) - H(AB); legitimately negative, never clipped.
double coherent_information(const DensityOperator& rho,
                            const std::vector<std::string>& sys_a,
                            const std::vector<std::string>& sys_b);

double purity(const DensityOperator& rho);

}  // namespace qrelay
