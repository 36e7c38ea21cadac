#pragma once

#include <string>
#include <vector>

#include "mpfock/phase_space.hpp"

namespace mpfock {

// two-mode covariance in standard form:
// diag blocks diag(b1, b2), diag(d1, d2); off block diag(c1, c2)
struct StandardFormCM {
  double b1 = 1.0, b2 = 1.0;
  double d1 = 1.0, d2 = 1.0;
  double c1 = 0.0, c2 = 0.0;
  int k = 1;
};

struct StandardFormValidation {
  bool ok = false;
  StandardFormCM form;
  double pattern_residual = 0.0;  // largest entry outside the allowed pattern
  double ratio_residual = 0.0;    // (b1-1)(d2-1) - (b2-1)(d1-1)
  double balance_residual = 0.0;  // |c1|-|c2| - (sqrt((b1-1)(d1-1)) - sqrt((b2-1)(d2-1)))
  std::vector<std::string> violations;
};

StandardFormValidation validate_standard_form(const CovarianceMatrix& cm,
                                              double tol = 1e-8);

struct LocalTransform {
  double theta1 = 0.0, theta2 = 0.0;    // first rotations
  double mu1 = 1.0, mu2 = 1.0;          // symmetrizing squeezes
  double phi1 = 0.0, phi2 = 0.0;        // rotations aligning the cross block
  double lambda1 = 1.0, lambda2 = 1.0;  // constraint-solving squeezes
};

struct StandardizeResult {
  StandardFormCM form;
  CovarianceMatrix transformed;
  LocalTransform transform;
  double residual_ratio = 0.0;
  double residual_balance = 0.0;
  bool converged = false;
};

// reduce a physical two-mode covariance to standard form with per-mode
// rotations and squeezes
StandardizeResult standardize(const CovarianceMatrix& cm);

enum class Decision {
  Entangled,
  SeparableCertified,
  SeparableUncertified,
  Undecided,
};

const char* to_string(Decision d);

struct SeparabilityVerdict {
  Decision decision = Decision::Undecided;
  int branch = 0;       // 1: both b1-1, d1-1 >= 0; 2: signed branch; 0: undecided
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs; negative means entangled
  double q0 = 1.0;
  double general_lhs = 0.0;  // q0-weighted variance sum
  double general_rhs = 0.0;
  bool boundary = false;
  std::string diagnostics;
};

SeparabilityVerdict criterion(const StandardFormCM& form,
                              bool gaussian_certificate = false,
                              double boundary_tol = 1e-9);

struct PptResult {
  double min_eigenvalue = 0.0;
  bool entangled = false;
};

// eigenvalue oracle on the partial transpose; pure states go through the
// Schmidt route (no dense dim^2 matrix), mixed states through the pruned
// block solver
PptResult ppt_check(const TwoModeState& state, int mode = 2);

// ln of the trace norm of the partial transpose
double log_negativity(const TwoModeState& state, int mode = 2);

// full partial-transpose spectrum (ascending, zeros included)
RealVector partial_transpose_spectrum(const TwoModeState& state, int mode = 2);

}  // namespace mpfock
