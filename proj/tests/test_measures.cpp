#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpfock/measures.hpp"
#include "mpfock/states.hpp"
#include "oracles.hpp"

using namespace mpfock;

TEST_CASE("entropy of pure and thermal states") {
  TwoModeState pure = tmsv(SqueezingParam::from_r(0.7));
  CHECK(von_neumann_entropy(pure) <= 1e-12);
  CHECK(purity(pure) == doctest::Approx(1.0).epsilon(1e-13));

  SingleModeState t = thermal(1.0);
  // (nbar+1) ln(nbar+1) - nbar ln nbar
  CHECK(von_neumann_entropy(t) ==
        doctest::Approx(2 * std::log(2.0)).epsilon(1e-9));
  CHECK(purity(t) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  // dense two-mode path against the single-mode value on a product state
  TwoModeState prod = product(thermal(0.5), thermal(0.5));
  CHECK(von_neumann_entropy(prod) ==
        doctest::Approx(2 * von_neumann_entropy(thermal(0.5))).epsilon(1e-8));
}

TEST_CASE("entanglement entropy of the pair state") {
  TwoModeState s = tmsv(SqueezingParam::from_r(1.0));
  CHECK(entanglement_entropy(s) ==
        doctest::Approx(oracles::kPairEntropyOne).epsilon(1e-8));
  // both reduced modes carry the same entropy
  CHECK(von_neumann_entropy(partial_trace(s, 1)) ==
        doctest::Approx(von_neumann_entropy(partial_trace(s, 2)))
            .epsilon(1e-12));
  CHECK_THROWS_AS(entanglement_entropy(product(thermal(0.5), thermal(0.5))),
                  SpecError);
}

TEST_CASE("sector order leaves the entanglement entropy alone") {
  for (double gamma : {0.2, 0.5, 0.8}) {
    SqueezingParam p = SqueezingParam::from_gamma(gamma);
    double base = entanglement_entropy(tmsv(p));
    for (int k : {2, 3}) {
      double sk = entanglement_entropy(mp_tmsv(p, k));
      CHECK(std::abs(sk - base) <= 1e-10);
    }
    CHECK(base == doctest::Approx(oracles::geometric_entropy(
                      gamma * gamma, geometric_tail_levels(gamma * gamma)))
                      .epsilon(1e-11));
  }
}

TEST_CASE("mean energies") {
  TwoModeState s = tmsv(SqueezingParam::from_r(0.5));
  EnergyReport e = mean_energy(s, 1);
  CHECK(e.total == doctest::Approx(oracles::kPairEnergyHalf).epsilon(1e-7));
  CHECK(e.per_mode[0] == doctest::Approx(e.total / 2).epsilon(1e-12));
  CHECK(e.per_mode[1] == doctest::Approx(e.total / 2).epsilon(1e-12));

  TwoModeState mp = mp_tmsv(SqueezingParam::from_r(0.5), 3);
  CHECK(mean_energy(mp, 1).total ==
        doctest::Approx(oracles::kPairEnergyHalfTimes3).epsilon(1e-7));
  // counted on its own ladder the pair occupation is unchanged
  CHECK(mean_energy(mp, 3).total ==
        doctest::Approx(oracles::kPairEnergyHalf).epsilon(1e-7));
  // exact integer ratio between the two frames
  CHECK(mean_energy(mp, 1).total / mean_energy(mp, 3).total ==
        doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("purity floor") {
  CHECK(p_min(1.0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p_min(1.0, 2) == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(p_min(1.0, 3) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(p_min(0.0, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(p_min(-1.0, 1), SpecError);
  CHECK_THROWS_AS(p_min(1.0, 0), SpecError);

  // the floor is attained by the equal split and respected nearby
  for (int k : {1, 2, 3}) {
    double E = 1.0;
    auto purity_at = [&](double e1) {
      SingleModeState m1 = mp_thermal(e1 / k, k, 0);
      SingleModeState m2 = mp_thermal((E - e1) / k, k, 0);
      return purity(m1) * purity(m2);
    };
    CHECK(purity_at(E / 2) == doctest::Approx(p_min(E, k)).epsilon(1e-9));
    CHECK(purity_at(0.3 * E) > p_min(E, k) - 1e-12);
    CHECK(purity_at(0.0) > purity_at(E / 2));
  }
}

TEST_CASE("entropy matches an independent eigensolve on a mixed state") {
  TruncationConfig c(7);
  Matrix rho = oracles::random_density(c.dim(), 5, 99);
  SingleModeState s{rho, c};
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  double ref = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double v = es.eigenvalues()(i);
    if (v > 1e-15) ref -= v * std::log(v);
  }
  CHECK(von_neumann_entropy(s) == doctest::Approx(ref).epsilon(1e-10));
  double p2 = (rho * rho).trace().real();
  CHECK(purity(s) == doctest::Approx(p2).epsilon(1e-12));
}
