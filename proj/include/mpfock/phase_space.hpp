#pragma once

#include <string>

#include "mpfock/multiphoton.hpp"

namespace mpfock {

// Conventions: x = adag + a, p = i(adag - a), [x, p] = 2i, vacuum variance 1,
// integral of W over the plane is 1.
struct GridSpec {
  double half_width = 0.0;  // <= 0 selects 6 * max std dev automatically
  int points = 201;
  double center_x = 0.0;
  double center_p = 0.0;
};

struct WignerGrid {
  RealVector x_axis, p_axis;
  RealMatrix values;  // values(i, j) = W(x_i, p_j)
  double cell_area = 0.0;
  double normalization_residual = 0.0;  // riemann sum minus 1
  double min_value = 0.0;
  std::string convention;
};

struct SingleModeCovariance {
  Eigen::Matrix2d sigma;
  Eigen::Vector2d means;
  int k = 1;
};

struct CovarianceMatrix {
  Eigen::Matrix4d sigma;  // order (x1, p1, x2, p2)
  Eigen::Vector4d means;
  int k = 1;
};

CovarianceMatrix covariance(const TwoModeState& state, const QuadratureSet& q);
CovarianceMatrix covariance(const TwoModeState& state, int k);
SingleModeCovariance covariance_single(const SingleModeState& state, int k);

WignerGrid wigner_single_mode(const SingleModeState& state,
                              const GridSpec& grid = {});

// Wigner function in the relabeled sector picture: compress to (k, j), then
// evaluate the ordinary kernel on the compressed state
WignerGrid wigner_multiphoton(const SingleModeState& state, int k, int j,
                              const GridSpec& grid = {},
                              double sector_tol = 1e-10);
WignerGrid wigner_multiphoton(const TwoModeState& state, int mode, int k, int j,
                              const GridSpec& grid = {},
                              double sector_tol = 1e-10);

// Gaussian of the given covariance evaluated on the same axes
RealMatrix gaussian_wigner(const SingleModeCovariance& cov,
                           const RealVector& x_axis, const RealVector& p_axis);

struct GaussianityReport {
  bool certified = false;
  bool confined = false;
  double leakage = 0.0;
  double residual = 0.0;  // max |W - W_gaussian| over the grid
  int k = 1, j = 0;
};

GaussianityReport gaussianity_check(const SingleModeState& state, int k, int j,
                                    const GridSpec& grid = {},
                                    double threshold = 1e-6,
                                    double sector_tol = 1e-10);

// Printed second-moment expansion for the k=2 ladder next to the direct
// operator evaluation; the expansion is exact on the even sector only, so the
// discrepancies are reported, not asserted.
struct MomentsK2 {
  double x2_printed = 0.0;
  double mean_sq_printed = 0.0;
  double x2_direct = 0.0;
  double mean_sq_direct = 0.0;
  double x2_discrepancy = 0.0;
  double mean_sq_discrepancy = 0.0;
};

MomentsK2 moments_k2_formula(const SingleModeState& state);

}  // namespace mpfock
