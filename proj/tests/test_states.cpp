#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpfock/measures.hpp"
#include "mpfock/states.hpp"
#include "oracles.hpp"

using namespace mpfock;

TEST_CASE("squeezing parameter conversions") {
  CHECK(SqueezingParam::from_r(0.5).gamma ==
        doctest::Approx(oracles::kTanhHalf).epsilon(1e-15));
  CHECK(SqueezingParam::from_gamma(0.6).r ==
        doctest::Approx(oracles::kAtanhSixTenths).epsilon(1e-15));
  CHECK(SqueezingParam::from_gamma(0.0).r == 0.0);
  CHECK_THROWS_AS(SqueezingParam::from_gamma(1.0), SpecError);
  CHECK_THROWS_AS(SqueezingParam::from_gamma(-0.1), SpecError);
  CHECK_THROWS_AS(SqueezingParam::from_r(-0.5), SpecError);
}

TEST_CASE("geometric tail levels") {
  auto q_of_r = [](double r) {
    double g = std::tanh(r);
    return g * g;
  };
  CHECK(geometric_tail_levels(q_of_r(0.2)) == 7);
  CHECK(geometric_tail_levels(q_of_r(0.5)) == 14);
  CHECK(geometric_tail_levels(q_of_r(1.0)) == 42);
  CHECK(geometric_tail_levels(0.36) == 22);   // gamma = 0.6
  CHECK(geometric_tail_levels(0.04) == 7);    // gamma = 0.2
  CHECK(geometric_tail_levels(0.25) == 16);   // gamma = 0.5
  CHECK(geometric_tail_levels(0.64) == 51);   // gamma = 0.8
  CHECK(geometric_tail_levels(1.0 / 3.0) == 20);  // nbar = 0.5
  CHECK(geometric_tail_levels(0.5) == 33);        // nbar = 1.0
  CHECK(geometric_tail_levels(0.0) == 0);
  // defining property: smallest N with q^(N+1) < budget
  for (double q : {0.1, 0.36, 0.64, 0.9}) {
    int n = geometric_tail_levels(q);
    CHECK(std::pow(q, n + 1) < kTailBudget);
    if (n > 0) CHECK(std::pow(q, n) >= kTailBudget);
  }
  CHECK_THROWS_AS(geometric_tail_levels(1.0), SpecError);
  CHECK_THROWS_AS(geometric_tail_levels(0.5, 0.0), SpecError);
}

TEST_CASE("automatic truncation levels") {
  CHECK(tmsv(SqueezingParam::from_r(0.5)).config().n_max == 14);
  CHECK(mp_tmsv(SqueezingParam::from_r(0.5), 3).config().n_max == 42);
  CHECK(mp_tmsv(SqueezingParam::from_gamma(0.6), 3).config().n_max == 66);
  CHECK(thermal(1.0).config.n_max == 33);
  CHECK(mp_thermal(0.5, 2, 1).config.n_max == 2 * 20 + 1);
  // vacuum limit keeps at least one excited level
  CHECK(tmsv(SqueezingParam::from_r(0.0)).config().n_max == 1);
}

TEST_CASE("pair state amplitudes and normalization") {
  SqueezingParam p = SqueezingParam::from_gamma(0.4);
  TwoModeState s = tmsv(p);
  const int d = s.mode_dim();
  const Vector& psi = s.ket();
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
  double ratio = (psi(joint_index(3, 3, d)) / psi(joint_index(2, 2, d))).real();
  CHECK(ratio == doctest::Approx(0.4).epsilon(1e-13));
  // nothing off the pair diagonal
  double off = 0.0;
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2)
      if (n1 != n2) off += std::abs(psi(joint_index(n1, n2, d)));
  CHECK(off == 0.0);
  CHECK(psi(0).real() == doctest::Approx(std::sqrt(1 - 0.16)).epsilon(1e-10));
}

TEST_CASE("k-photon pair state lives on |kn,kn>") {
  SqueezingParam p = SqueezingParam::from_gamma(0.5);
  TwoModeState s = mp_tmsv(p, 3);
  const int d = s.mode_dim();
  const Vector& psi = s.ket();
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2) {
      Complex amp = psi(joint_index(n1, n2, d));
      if (n1 != n2 || n1 % 3 != 0)
        CHECK(std::abs(amp) == 0.0);
    }
  // same Schmidt profile as the plain pair state
  TwoModeState plain = tmsv(p);
  CHECK(std::abs(psi(joint_index(3, 3, d)) - plain.ket()(joint_index(1, 1, plain.mode_dim()))) <= 1e-13);
}

TEST_CASE("truncation budget is enforced") {
  CHECK_THROWS_AS(tmsv(SqueezingParam::from_gamma(0.9), TruncationConfig(2)),
                  TruncationError);
  CHECK_THROWS_AS(mp_tmsv(SqueezingParam::from_gamma(0.9), 2,
                          TruncationConfig(8)),
                  TruncationError);
  CHECK_THROWS_AS(thermal(5.0, TruncationConfig(3)), TruncationError);
  CHECK_NOTHROW(tmsv(SqueezingParam::from_gamma(0.9), TruncationConfig(2),
                     /*budget=*/0.9));
}

TEST_CASE("thermal states") {
  SingleModeState t = thermal(1.0);
  double q = 0.5;
  CHECK(t.rho(1, 1).real() / t.rho(0, 0).real() ==
        doctest::Approx(q).epsilon(1e-13));
  CHECK(t.rho.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean_energy(t, 1) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(purity(t) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  SingleModeState mp = mp_thermal(0.7, 3, 2);
  for (int level = 0; level <= mp.config.n_max; ++level)
    if (level % 3 != 2)
      CHECK(mp.rho(level, level).real() == 0.0);
  // ladder-frame energy is nu, ordinary energy is k*nu + j
  CHECK(mean_energy(mp, 3) == doctest::Approx(0.7).epsilon(1e-7));
  CHECK(mean_energy(mp, 1) == doctest::Approx(3 * 0.7 + 2).epsilon(1e-7));

  // k=1 thermal is the j=0 sector-thermal
  SingleModeState t2 = mp_thermal(1.0, 1, 0);
  CHECK((t.rho - t2.rho).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("reduced pair state is thermal") {
  SqueezingParam p = SqueezingParam::from_gamma(0.6);
  TwoModeState s = tmsv(p);
  SingleModeState red = partial_trace(s, 1);
  NumberDistribution nd = number_distribution(red);
  CHECK(nd.mean == doctest::Approx(0.5625).epsilon(1e-7));  // q/(1-q), q=0.36
  double q = 0.36;
  CHECK(nd.probabilities[1] / nd.probabilities[0] ==
        doctest::Approx(q).epsilon(1e-12));

  // sector-frame distribution of the k=3 analogue matches
  TwoModeState mp = mp_tmsv(p, 3);
  NumberDistribution nd3 = number_distribution(partial_trace(mp, 1), 3, 0);
  REQUIRE(nd3.probabilities.size() == nd.probabilities.size());
  for (size_t i = 0; i < nd.probabilities.size(); ++i)
    CHECK(nd3.probabilities[i] ==
          doctest::Approx(nd.probabilities[i]).epsilon(1e-12));
}

TEST_CASE("energy-targeted squeezing") {
  SqueezingParam p1 = gamma_for_energy(oracles::kPairEnergyHalf, 1);
  CHECK(p1.gamma == doctest::Approx(oracles::kTanhHalf).epsilon(1e-13));
  CHECK(p1.r == doctest::Approx(0.5).epsilon(1e-13));

  for (int k : {1, 2, 3}) {
    double E = 1.7;
    TwoModeState s = mp_tmsv(gamma_for_energy(E, k), k);
    CHECK(mean_energy(s, 1).total == doctest::Approx(E).epsilon(1e-8));
  }
  CHECK_THROWS_AS(gamma_for_energy(-1.0, 2), SpecError);
  CHECK_THROWS_AS(gamma_for_energy(1.0, 0), SpecError);
}

TEST_CASE("product states and padding") {
  SingleModeState a = thermal(0.4, TruncationConfig(25));
  SingleModeState b = thermal(0.8, TruncationConfig(30));
  TwoModeState s = product(a, b);
  CHECK(s.config().n_max == 30);
  CHECK(s.density().trace().real() == doctest::Approx(1.0).epsilon(1e-13));
  EnergyReport e = mean_energy(s, 1);
  CHECK(e.per_mode[0] == doctest::Approx(0.4).epsilon(1e-8));
  CHECK(e.per_mode[1] == doctest::Approx(0.8).epsilon(1e-8));

  SingleModeState ap = pad_to(a, 30);
  CHECK(ap.config.n_max == 30);
  CHECK(mean_energy(ap, 1) == doctest::Approx(mean_energy(a, 1)).epsilon(1e-14));
  CHECK_THROWS_AS(pad_to(a, 5), SpecError);
}

TEST_CASE("number distribution in offset sectors") {
  SingleModeState t = mp_thermal(0.9, 2, 1);
  NumberDistribution nd = number_distribution(t, 2, 1);
  CHECK(nd.mean == doctest::Approx(0.9).epsilon(1e-7));
  double q = 0.9 / 1.9;
  CHECK(nd.probabilities[1] / nd.probabilities[0] ==
        doctest::Approx(q).epsilon(1e-12));
  double sum = 0.0;
  for (double v : nd.probabilities) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
}
