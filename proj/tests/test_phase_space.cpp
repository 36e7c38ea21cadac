#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpfock/measures.hpp"
#include "mpfock/phase_space.hpp"
#include "mpfock/states.hpp"
#include "oracles.hpp"

using namespace mpfock;

namespace {

SingleModeState number_state(int n, int n_max) {
  TruncationConfig c(n_max);
  Matrix rho = Matrix::Zero(c.dim(), c.dim());
  rho(n, n) = 1.0;
  return {std::move(rho), c};
}

}  // namespace

TEST_CASE("vacuum covariance is the identity") {
  SingleModeState vac = thermal(0.0);
  SingleModeCovariance cov = covariance_single(vac, 1);
  CHECK((cov.sigma - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(cov.means.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("pair state covariance matches the closed form") {
  TwoModeState s = tmsv(SqueezingParam::from_r(0.5));
  CovarianceMatrix cm = covariance(s, 1);
  CHECK(cm.means.cwiseAbs().maxCoeff() <= 1e-12);
  for (int i = 0; i < 4; ++i)
    CHECK(cm.sigma(i, i) == doctest::Approx(oracles::kCoshOne).epsilon(1e-8));
  CHECK(cm.sigma(0, 2) == doctest::Approx(oracles::kSinhOne).epsilon(1e-8));
  CHECK(cm.sigma(1, 3) == doctest::Approx(-oracles::kSinhOne).epsilon(1e-8));
  CHECK(std::abs(cm.sigma(0, 1)) <= 1e-10);
  CHECK(std::abs(cm.sigma(0, 3)) <= 1e-10);
  CHECK((cm.sigma - cm.sigma.transpose()).cwiseAbs().maxCoeff() <= 1e-14);

  // explicit quadrature-set overload is the same computation
  QuadratureSet q = make_quadratures(1, s.config());
  CovarianceMatrix cm2 = covariance(s, q);
  CHECK((cm.sigma - cm2.sigma).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("k-frame covariance of the k-photon pair state") {
  TwoModeState s = mp_tmsv(SqueezingParam::from_r(0.5), 2);
  CovarianceMatrix cm = covariance(s, 2);
  for (int i = 0; i < 4; ++i)
    CHECK(cm.sigma(i, i) == doctest::Approx(oracles::kCoshOne).epsilon(1e-8));
  CHECK(cm.sigma(0, 2) == doctest::Approx(oracles::kSinhOne).epsilon(1e-8));
  CHECK(cm.sigma(1, 3) == doctest::Approx(-oracles::kSinhOne).epsilon(1e-8));

  // in the ordinary frame the same state shows no cross correlations and
  // an inflated diagonal: 2k sinh^2 r + 1
  CovarianceMatrix flat = covariance(s, 1);
  for (int i = 0; i < 4; ++i)
    CHECK(flat.sigma(i, i) ==
          doctest::Approx(oracles::kOrdinaryVarK2Half).epsilon(1e-8));
  CHECK(std::abs(flat.sigma(0, 2)) <= 1e-10);
  CHECK(std::abs(flat.sigma(1, 3)) <= 1e-10);
}

TEST_CASE("thermal covariance") {
  SingleModeCovariance cov = covariance_single(thermal(1.0), 1);
  CHECK((cov.sigma - 3.0 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <=
        1e-7);
}

TEST_CASE("vacuum Wigner function") {
  SingleModeState vac = thermal(0.0);
  WignerGrid w = wigner_single_mode(vac);
  const int mid = w.x_axis.size() / 2;
  CHECK(std::abs(w.x_axis(mid)) <= 1e-12);
  CHECK(w.values(mid, mid) ==
        doctest::Approx(oracles::kInvTwoPi).epsilon(1e-14));
  CHECK(std::abs(w.normalization_residual) <= 1e-6);
  CHECK(w.min_value >= 0.0);

  SingleModeCovariance cov = covariance_single(vac, 1);
  RealMatrix gauss = gaussian_wigner(cov, w.x_axis, w.p_axis);
  CHECK((w.values - gauss).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("single-photon Wigner dips negative at the origin") {
  WignerGrid w = wigner_single_mode(number_state(1, 4));
  const int mid = w.x_axis.size() / 2;
  CHECK(w.values(mid, mid) ==
        doctest::Approx(-oracles::kInvTwoPi).epsilon(1e-13));
  CHECK(w.min_value < 0.0);
  CHECK(std::abs(w.normalization_residual) <= 1e-6);
}

TEST_CASE("thermal Wigner matches its Gaussian") {
  SingleModeState t = thermal(1.0);
  WignerGrid w = wigner_single_mode(t);
  SingleModeCovariance cov;
  cov.sigma = 3.0 * Eigen::Matrix2d::Identity();
  cov.means.setZero();
  RealMatrix gauss = gaussian_wigner(cov, w.x_axis, w.p_axis);
  CHECK((w.values - gauss).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("Wigner agrees with the series reference on a full density") {
  TruncationConfig c(5);
  Matrix rho = oracles::random_density(c.dim(), 4, 77);
  SingleModeState s{rho, c};
  WignerGrid w = wigner_single_mode(s, {0.0, 61});
  for (int i = 0; i < 61; ++i)
    for (int j = 0; j < 61; ++j) {
      double ref = oracles::wigner_reference(rho, w.x_axis(i), w.p_axis(j));
      CHECK(std::abs(w.values(i, j) - ref) <= 1e-10);
    }
  double riemann = w.values.sum() * w.cell_area;
  CHECK(riemann - 1.0 == doctest::Approx(w.normalization_residual).epsilon(1e-12));
  CHECK(w.min_value == doctest::Approx(w.values.minCoeff()));
}

TEST_CASE("grid guards") {
  SingleModeState vac = thermal(0.0);
  CHECK_THROWS_AS(wigner_single_mode(vac, {60.0, 201}), GridError);
  CHECK_THROWS_AS(wigner_single_mode(thermal(1.0), {0.5, 51}), GridError);
  CHECK_THROWS_AS(wigner_single_mode(vac, {0.0, 1}), GridError);
}

TEST_CASE("sector-frame Wigner of confined states") {
  // reduced k-photon pair state: non-Gaussian in the ordinary frame,
  // exactly thermal in the sector frame
  TwoModeState pair = mp_tmsv(SqueezingParam::from_gamma(0.6), 3);
  SingleModeState red = partial_trace(pair, 1);

  WignerGrid flat = wigner_single_mode(red);
  CHECK(flat.min_value < 0.0);

  WignerGrid sector = wigner_multiphoton(red, 3, 0);
  CHECK(sector.min_value >= 0.0);
  SingleModeCovariance analytic;
  analytic.sigma = 2.125 * Eigen::Matrix2d::Identity();  // 2 q/(1-q) + 1, q = 0.36
  analytic.means.setZero();
  RealMatrix gauss = gaussian_wigner(analytic, sector.x_axis, sector.p_axis);
  CHECK((sector.values - gauss).cwiseAbs().maxCoeff() <= 1e-8);

  // k = 1 passthrough equals the plain evaluation
  WignerGrid w1 = wigner_multiphoton(red, 1, 0);
  CHECK((w1.values - flat.values).cwiseAbs().maxCoeff() == 0.0);

  // two-mode overload reduces the requested mode first
  WignerGrid via_two = wigner_multiphoton(pair, 1, 3, 0);
  CHECK((via_two.values - sector.values).cwiseAbs().maxCoeff() <= 1e-14);

  CHECK_THROWS_AS(wigner_multiphoton(red, 3, 1), SectorError);
}

TEST_CASE("gaussianity certificates") {
  GaussianityReport ok = gaussianity_check(thermal(0.5), 1, 0);
  CHECK(ok.certified);
  CHECK(ok.confined);
  CHECK(ok.residual <= 1e-8);

  GaussianityReport fock = gaussianity_check(number_state(1, 6), 1, 0);
  CHECK(fock.confined);
  CHECK_FALSE(fock.certified);
  CHECK(fock.residual > 0.1);

  TwoModeState pair = mp_tmsv(SqueezingParam::from_gamma(0.6), 3);
  GaussianityReport sector = gaussianity_check(partial_trace(pair, 1), 3, 0);
  CHECK(sector.certified);
  CHECK(sector.residual <= 1e-8);
  // the same state is not Gaussian in the ordinary frame
  GaussianityReport flat = gaussianity_check(partial_trace(pair, 1), 1, 0);
  CHECK_FALSE(flat.certified);

  // wrong sector: no certificate, flagged as unconfined
  GaussianityReport wrong = gaussianity_check(mp_thermal(0.5, 3, 1), 3, 0);
  CHECK_FALSE(wrong.confined);
  CHECK_FALSE(wrong.certified);
  CHECK_THROWS_AS(gaussianity_check(thermal(0.5), 3, 3), SpecError);
}

TEST_CASE("k=2 moment expansion") {
  // exact on even-sector states
  SingleModeState even = mp_thermal(0.8, 2, 0);
  MomentsK2 m = moments_k2_formula(even);
  CHECK(std::abs(m.x2_discrepancy) <= 1e-6);  // set by boundary population, not fp
  CHECK(std::abs(m.mean_sq_discrepancy) <= 1e-10);

  // the direct route equals the quadrature operator on any state
  for (unsigned seed : {5u, 6u}) {
    TruncationConfig c(10);
    Matrix rho = oracles::random_density(c.dim(), 6, seed);
    SingleModeState s{rho, c};
    MomentsK2 mm = moments_k2_formula(s);
    auto [X, P] = quadrature_pair(2, c);
    double x2 = expectation(s, Matrix(X * X)).real();
    double mean = expectation(s, X).real();
    CHECK(mm.x2_direct == doctest::Approx(x2).epsilon(1e-12));
    CHECK(mm.mean_sq_direct == doctest::Approx(mean * mean).epsilon(1e-12));
  }
  CHECK_THROWS_AS(moments_k2_formula(thermal(0.0)), SpecError);
}
