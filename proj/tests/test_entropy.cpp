#include <cmath>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "qrelay/channels.hpp"
#include "qrelay/entropy.hpp"

using namespace qrelay;
using test_util::h2;
using test_util::random_density;

namespace {

DensityOperator diag_qubit(double p0) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = p0;
  m(1, 1) = 1.0 - p0;
  return DensityOperator(m, SubsystemShape{{"A", 2}});
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("von Neumann entropy on known spectra") {
  CHECK(std::abs(von_neumann_entropy(density(basis_ket(3, 1, "A")))) < 1e-12);
  CHECK(std::abs(von_neumann_entropy(maximally_mixed(SubsystemShape{{"A", 2}})) - 1.0) < 1e-12);
  CHECK(std::abs(von_neumann_entropy(diag_qubit(0.7)) - 0.8812908992306927) < 1e-6);
  CHECK(std::abs(von_neumann_entropy(diag_qubit(0.7)) - h2(0.7)) < 1e-12);
  CHECK(std::abs(von_neumann_entropy(maximally_mixed(SubsystemShape{{"A", 5}})) -
                 std::log2(5.0)) < 1e-12);
}

TEST_CASE("conditional entropy distinguishes product, entangled, classical") {
  auto prod = tensor(random_density(2, 5, "A"), random_density(3, 6, "B"));
  const double h_a = von_neumann_entropy(partial_trace(prod, {"A"}));
  CHECK(std::abs(conditional_entropy(prod, {"A"}, {"B"}) - h_a) < 1e-10);

  auto phi = density(maximally_entangled(2, "A", "B"));
  CHECK(std::abs(conditional_entropy(phi, {"A"}, {"B"}) - (-1.0)) < 1e-10);

  Matrix cc = Matrix::Zero(4, 4);
  cc(0, 0) = 0.5;
  cc(3, 3) = 0.5;
  DensityOperator classical(cc, SubsystemShape{{"A", 2}, {"B", 2}});
  CHECK(std::abs(conditional_entropy(classical, {"A"}, {"B"})) < 1e-10);
}

TEST_CASE("mutual information values") {
  auto prod = tensor(random_density(3, 7, "A"), random_density(2, 8, "B"));
  const double mi_prod = mutual_information(prod, {"A"}, {"B"});
  CHECK(mi_prod >= 0.0);
  CHECK(mi_prod < 1e-9);

  auto phi = density(maximally_entangled(2, "A", "B"));
  CHECK(std::abs(mutual_information(phi, {"A"}, {"B"}) - 2.0) < 1e-10);

  // Half-depolarized maximally entangled pair; spectrum is known in closed form.
  Matrix iso = 0.5 * phi.data() + 0.5 * Matrix::Identity(4, 4) / 4.0;
  DensityOperator rho(iso, SubsystemShape{{"A", 2}, {"B", 2}});
  const std::vector<double> lam = {0.625, 0.125, 0.125, 0.125};
  double h_ab = 0.0;
  for (double v : lam) h_ab -= v * std::log2(v);
  CHECK(std::abs(mutual_information(rho, {"A"}, {"B"}) - (2.0 - h_ab)) < 1e-10);
}

TEST_CASE("coherent information examples") {
  auto phi = density(maximally_entangled(2, "A", "B"));
  CHECK(std::abs(coherent_information(phi, {"A"}, {"B"}) - 1.0) < 1e-10);

  auto rho_a = random_density(3, 9, "A");
  auto prod = tensor(rho_a, random_density(2, 10, "B"));
  CHECK(std::abs(coherent_information(prod, {"A"}, {"B"}) + von_neumann_entropy(rho_a)) <
        1e-10);
}

TEST_CASE("coherent information duality on pure tripartite states") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto psi = random_state(SubsystemShape{{"A", 2}, {"B", 3}, {"C", 2}}, 100 + seed);
    auto rho = density(psi);
    const double to_b = coherent_information(rho, {"A"}, {"B"});
    const double to_c = coherent_information(rho, {"A"}, {"C"});
    CHECK(std::abs(to_b + to_c) < 1e-9);
  }
}

TEST_CASE("purity examples and multiplicativity") {
  CHECK(std::abs(purity(density(random_state(SubsystemShape{{"A", 4}}, 3))) - 1.0) < 1e-12);
  CHECK(std::abs(purity(maximally_mixed(SubsystemShape{{"A", 4}})) - 0.25) < 1e-12);
  CHECK(std::abs(purity(diag_qubit(0.7)) - 0.58) < 1e-12);

  auto rho = random_density(3, 11, "A");
  auto rho_b = DensityOperator(rho.data(), SubsystemShape{{"B", 3}});
  const double p1 = purity(rho);
  CHECK(std::abs(purity(tensor(rho, rho_b)) - p1 * p1) < 1e-12);
}

TEST_CASE("entropy bounds on random states") {
  for (Eigen::Index d = 2; d <= 4; ++d) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const double h = von_neumann_entropy(random_density(d, 200 + 16 * d + seed, "A"));
      CHECK(h >= 0.0);
      CHECK(h <= std::log2(double(d)) + 1e-9);
    }
  }
}

TEST_CASE("entropy additivity on product states") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto a = random_density(3, 300 + seed, "A");
    auto b = random_density(2, 400 + seed, "B");
    const double lhs = von_neumann_entropy(tensor(a, b));
    const double rhs = von_neumann_entropy(a) + von_neumann_entropy(b);
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("marginal entropies of a pure bipartite state agree") {
  for (Eigen::Index da = 2; da <= 4; ++da) {
    for (Eigen::Index db = 2; db <= 4; ++db) {
      auto psi = random_state(SubsystemShape{{"A", da}, {"B", db}},
                              500 + 16 * da + std::uint64_t(db));
      auto rho = density(psi);
      const double h_a = von_neumann_entropy(partial_trace(rho, {"A"}));
      const double h_b = von_neumann_entropy(partial_trace(rho, {"B"}));
      CHECK(std::abs(h_a - h_b) < 1e-8);
    }
  }
}

TEST_CASE("conditional entropy equals coherent information toward the purifier") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Eigen::Index d1 = 2 + Eigen::Index(seed % 3);
    const Eigen::Index d2 = 2 + Eigen::Index((seed / 3) % 3);
    auto psi = random_state(SubsystemShape{{"A1", d1}, {"A", d2}, {"D", 2}}, 600 + seed);
    auto rho = density(psi);
    const double h_cond = conditional_entropy(rho, {"A1"}, {"D"});
    const double coh = coherent_information(rho, {"A1"}, {"A"});
    CHECK(std::abs(h_cond - coh) < 1e-8);
  }
}

TEST_CASE("coherent information never grows under a channel on the target") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::Index da = 2 + Eigen::Index(seed % 3);
    const Eigen::Index db = 2 + Eigen::Index((seed / 2) % 3);
    auto sigma = density(random_state(SubsystemShape{{"A1", 2}, {"A", da}}, 700 + seed));
    auto n = random_channel(da, db, 3, 800 + seed, "A", "B");
    auto omega = apply_channel(n, sigma, {"A"});
    const double before = coherent_information(sigma, {"A1"}, {"A"});
    const double after = coherent_information(omega, {"A1"}, {"B"});
    CHECK(after <= before + 1e-8);
  }
}

TEST_CASE("mutual information is clipped, never negative") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto rho = random_density(6, 900 + seed, "F");
    DensityOperator split(rho.data(), SubsystemShape{{"A", 2}, {"B", 3}});
    CHECK(mutual_information(split, {"A"}, {"B"}) >= 0.0);
  }
}

TEST_CASE("overlapping label sets are rejected") {
  auto rho = density(maximally_entangled(2, "A", "B"));
  CHECK_THROWS_AS(conditional_entropy(rho, {"A"}, {"A"}), LabelError);
  CHECK_THROWS_AS(mutual_information(rho, {"A", "B"}, {"B"}), LabelError);
  CHECK_THROWS_AS(coherent_information(rho, {"B"}, {"B"}), LabelError);
}

}  // TEST_SUITE
