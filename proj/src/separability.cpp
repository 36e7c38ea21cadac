#include "mpfock/separability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace mpfock {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Eigen::Matrix2d rot(double t) {
  Eigen::Matrix2d r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

Eigen::Matrix2d squeeze(double l) {
  Eigen::Matrix2d s;
  s << l, 0.0, 0.0, 1.0 / l;
  return s;
}

// proper-rotation SVD: m = rot(thl) * diag(s1, s2) * rot(thr)^T, s2 may be < 0
void rotation_svd(const Eigen::Matrix2d& m, double& thl, double& thr) {
  double e = 0.5 * (m(0, 0) + m(1, 1));
  double f = 0.5 * (m(0, 0) - m(1, 1));
  double g = 0.5 * (m(1, 0) + m(0, 1));
  double h = 0.5 * (m(1, 0) - m(0, 1));
  double a1 = std::atan2(g, f);  // thl + thr
  double a2 = std::atan2(h, e);  // thl - thr
  thl = 0.5 * (a1 + a2);
  thr = 0.5 * (a1 - a2);
}

double jacobi_angle(const Eigen::Matrix2d& a) {
  // zero the off-diagonal of rot(t) * a * rot(t)^T
  return 0.5 * std::atan2(2.0 * a(0, 1), a(1, 1) - a(0, 0));
}

struct PatternEntries {
  double b1, b2, d1, d2, c1, c2;
};

PatternEntries entries_of(const Eigen::Matrix4d& s) {
  return {s(0, 0), s(1, 1), s(2, 2), s(3, 3), s(0, 2), s(1, 3)};
}

double pattern_residual_of(const Eigen::Matrix4d& s) {
  double r = 0.0;
  r = std::max(r, std::abs(s(0, 1)));
  r = std::max(r, std::abs(s(2, 3)));
  r = std::max(r, std::abs(s(0, 3)));
  r = std::max(r, std::abs(s(1, 2)));
  return r;
}

double ratio_residual_of(const PatternEntries& e) {
  return (e.b1 - 1.0) * (e.d2 - 1.0) - (e.b2 - 1.0) * (e.d1 - 1.0);
}

double balance_residual_of(const PatternEntries& e) {
  double r1 = (e.b1 - 1.0) * (e.d1 - 1.0);
  double r2 = (e.b2 - 1.0) * (e.d2 - 1.0);
  if (r1 < 0.0 || r2 < 0.0) return kNaN;
  return (std::abs(e.c1) - std::abs(e.c2)) - (std::sqrt(r1) - std::sqrt(r2));
}

PatternEntries squeezed(const PatternEntries& e, double l1, double l2) {
  return {e.b1 * l1 * l1, e.b2 / (l1 * l1), e.d1 * l2 * l2,
          e.d2 / (l2 * l2), e.c1 * l1 * l2, e.c2 / (l1 * l2)};
}

}  // namespace

StandardFormValidation validate_standard_form(const CovarianceMatrix& cm,
                                              double tol) {
  StandardFormValidation v;
  PatternEntries e = entries_of(cm.sigma);
  v.form = {e.b1, e.b2, e.d1, e.d2, e.c1, e.c2, cm.k};
  v.pattern_residual = pattern_residual_of(cm.sigma);
  v.pattern_residual =
      std::max(v.pattern_residual,
               (cm.sigma - cm.sigma.transpose()).cwiseAbs().maxCoeff());
  v.ratio_residual = ratio_residual_of(e);
  v.balance_residual = balance_residual_of(e);
  if (v.pattern_residual > tol)
    v.violations.push_back("off-pattern entries present");
  if (std::abs(v.ratio_residual) > tol)
    v.violations.push_back("variance-ratio constraint violated");
  if (std::isnan(v.balance_residual))
    v.violations.push_back("balance constraint has a negative radicand");
  else if (std::abs(v.balance_residual) > tol)
    v.violations.push_back("correlation-balance constraint violated");
  v.ok = v.violations.empty();
  return v;
}

namespace {

// solve lambda2 for a fixed lambda1 so the variance-ratio constraint holds;
// returns NaN when no bracket exists in the search window
double solve_inner(const PatternEntries& e, double l1) {
  auto f = [&](double l2) { return ratio_residual_of(squeezed(e, l1, l2)); };
  const double lo_log = std::log(1e-3), hi_log = std::log(1e3);
  const int n_scan = 241;
  double prev_l = std::exp(lo_log), prev_f = f(prev_l);
  for (int i = 1; i < n_scan; ++i) {
    double l = std::exp(lo_log + (hi_log - lo_log) * i / (n_scan - 1));
    double fi = f(l);
    if (std::isfinite(prev_f) && std::isfinite(fi) &&
        ((prev_f <= 0.0 && fi >= 0.0) || (prev_f >= 0.0 && fi <= 0.0))) {
      double a = prev_l, b = l;
      double fa = prev_f;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b), fm = f(mid);
        if ((fa <= 0.0) == (fm <= 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    prev_l = l;
    prev_f = fi;
  }
  return kNaN;
}

}  // namespace

StandardizeResult standardize(const CovarianceMatrix& cm) {
  Eigen::Matrix4d sigma = cm.sigma;
  double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw StandardizeError("covariance is not symmetric");

  // uncertainty bound sigma + i*Omega >= 0; with [x, p] = 2i and vacuum
  // variance 1 the Gram matrix is sigma + i*Omega, Omega entries +-1
  Matrix bound = sigma.cast<Complex>();
  const Complex iw(0.0, 1.0);
  bound(0, 1) += iw;
  bound(1, 0) -= iw;
  bound(2, 3) += iw;
  bound(3, 2) -= iw;
  if (min_hermitian_eigenvalue(bound) < -1e-6 * scale)
    throw StandardizeError("covariance violates the uncertainty bound");

  StandardizeResult res;
  LocalTransform& t = res.transform;

  // 1. rotate each mode to diagonalize its block
  t.theta1 = jacobi_angle(sigma.block<2, 2>(0, 0));
  t.theta2 = jacobi_angle(sigma.block<2, 2>(2, 2));
  auto apply = [&sigma](const Eigen::Matrix2d& s1, const Eigen::Matrix2d& s2) {
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s.block<2, 2>(0, 0) = s1;
    s.block<2, 2>(2, 2) = s2;
    sigma = s * sigma * s.transpose();
  };
  apply(rot(t.theta1), rot(t.theta2));

  // 2. squeeze each mode so its block becomes a multiple of the identity
  double a1 = std::max(sigma(0, 0), 1e-300), a2 = std::max(sigma(1, 1), 1e-300);
  double b1 = std::max(sigma(2, 2), 1e-300), b2 = std::max(sigma(3, 3), 1e-300);
  t.mu1 = std::pow(a2 / a1, 0.25);
  t.mu2 = std::pow(b2 / b1, 0.25);
  apply(squeeze(t.mu1), squeeze(t.mu2));

  // 3. with both blocks scalar, rotations are free to align the cross block
  Eigen::Matrix2d c = sigma.block<2, 2>(0, 2);
  if (c.cwiseAbs().maxCoeff() > 1e-13 * scale) {
    double thl, thr;
    rotation_svd(c, thl, thr);
    t.phi1 = -thl;
    t.phi2 = -thr;
    apply(rot(t.phi1), rot(t.phi2));
  }

  if (pattern_residual_of(sigma) > 1e-8 * scale)
    throw StandardizeError(
        "local rotations could not reach the standard pattern (residual " +
        std::to_string(pattern_residual_of(sigma)) + ")");

  // 4. squeeze pair solving the two standard-form constraints
  PatternEntries e = entries_of(sigma);
  double r0 = ratio_residual_of(e);
  double s0 = balance_residual_of(e);
  if (std::abs(r0) <= 1e-12 * scale && std::isfinite(s0) &&
      std::abs(s0) <= 1e-12 * scale) {
    t.lambda1 = t.lambda2 = 1.0;
  } else {
    auto outer = [&](double l1) -> std::pair<double, double> {
      double l2 = solve_inner(e, l1);
      if (!std::isfinite(l2)) return {kNaN, kNaN};
      return {balance_residual_of(squeezed(e, l1, l2)), l2};
    };
    const double lo_log = std::log(1e-3), hi_log = std::log(1e3);
    const int n_scan = 241;
    double best_l1 = kNaN, best_l2 = kNaN;
    double prev_l = std::exp(lo_log);
    double prev_g = outer(prev_l).first;
    for (int i = 1; i < n_scan && !std::isfinite(best_l1); ++i) {
      double l = std::exp(lo_log + (hi_log - lo_log) * i / (n_scan - 1));
      auto [g, l2_here] = outer(l);
      (void)l2_here;
      if (std::isfinite(prev_g) && std::isfinite(g) &&
          ((prev_g <= 0.0 && g >= 0.0) || (prev_g >= 0.0 && g <= 0.0))) {
        double a = prev_l, b = l, ga = prev_g;
        for (int it = 0; it < 200; ++it) {
          double mid = 0.5 * (a + b);
          double gm = outer(mid).first;
          if (!std::isfinite(gm)) break;
          if ((ga <= 0.0) == (gm <= 0.0)) {
            a = mid;
            ga = gm;
          } else {
            b = mid;
          }
        }
        best_l1 = 0.5 * (a + b);
        best_l2 = solve_inner(e, best_l1);
      }
      prev_l = l;
      prev_g = g;
    }
    if (!std::isfinite(best_l1) || !std::isfinite(best_l2))
      throw StandardizeError(
          "constraint-solving squeezes did not converge (no bracket)");
    t.lambda1 = best_l1;
    t.lambda2 = best_l2;
  }
  apply(squeeze(t.lambda1), squeeze(t.lambda2));

  // means transform the same way
  Eigen::Matrix4d total = Eigen::Matrix4d::Zero();
  Eigen::Matrix2d m1 = squeeze(t.lambda1) * rot(t.phi1) * squeeze(t.mu1) * rot(t.theta1);
  Eigen::Matrix2d m2 = squeeze(t.lambda2) * rot(t.phi2) * squeeze(t.mu2) * rot(t.theta2);
  total.block<2, 2>(0, 0) = m1;
  total.block<2, 2>(2, 2) = m2;

  res.transformed.sigma = sigma;
  res.transformed.means = total * cm.means;
  res.transformed.k = cm.k;
  PatternEntries fin = entries_of(sigma);
  res.form = {fin.b1, fin.b2, fin.d1, fin.d2, fin.c1, fin.c2, cm.k};
  res.residual_ratio = ratio_residual_of(fin);
  res.residual_balance = balance_residual_of(fin);
  res.converged = std::abs(res.residual_ratio) <= 1e-8 * scale &&
                  std::isfinite(res.residual_balance) &&
                  std::abs(res.residual_balance) <= 1e-8 * scale;
  if (!res.converged)
    throw StandardizeError(
        "standard-form residuals did not converge: ratio " +
        std::to_string(res.residual_ratio) + ", balance " +
        std::to_string(res.residual_balance));
  return res;
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Entangled:
      return "Entangled";
    case Decision::SeparableCertified:
      return "SeparableCertified";
    case Decision::SeparableUncertified:
      return "SeparableUncertified";
    default:
      return "Undecided";
  }
}

SeparabilityVerdict criterion(const StandardFormCM& form,
                              bool gaussian_certificate, double boundary_tol) {
  SeparabilityVerdict v;
  const double eb1 = form.b1 - 1.0, ed1 = form.d1 - 1.0;
  const double eb2 = form.b2 - 1.0, ed2 = form.d2 - 1.0;
  const double r1 = eb1 * ed1, r2 = eb2 * ed2;
  std::ostringstream diag;

  const double degenerate_tol = 1e-12;
  if (std::abs(eb1) < degenerate_tol && std::abs(ed1) < degenerate_tol) {
    v.q0 = 1.0;
  } else {
    double ratio = ed1 / eb1;
    v.q0 = ratio > 0.0 ? std::pow(ratio, 0.25) : kNaN;
  }

  const double radicand_tol = 1e-12;
  if (eb1 >= -radicand_tol && ed1 >= -radicand_tol) {
    v.branch = 1;
    double s1 = std::sqrt(std::max(r1, 0.0));
    double s2v = r2 >= -radicand_tol ? std::sqrt(std::max(r2, 0.0)) : kNaN;
    if (std::isnan(s2v)) {
      v.branch = 0;
      diag << "mode-2 radicand negative inside the nonnegative branch";
    } else {
      v.lhs = s1 + s2v;
    }
  } else if (eb1 <= radicand_tol && ed1 <= radicand_tol) {
    v.branch = 2;
    if (r1 < -radicand_tol || r2 < -radicand_tol) {
      v.branch = 0;
      diag << "negative radicand in the signed branch";
    } else {
      v.lhs = std::sqrt(std::max(r2, 0.0)) - std::sqrt(std::max(r1, 0.0));
    }
  } else {
    v.branch = 0;
    diag << "b1-1 and d1-1 have opposite signs; no branch applies";
  }

  v.rhs = std::abs(form.c1) + std::abs(form.c2);
  if (v.branch == 0) {
    v.decision = Decision::Undecided;
    v.margin = kNaN;
    v.general_lhs = kNaN;
    v.general_rhs = kNaN;
    v.diagnostics = diag.str();
    return v;
  }

  v.margin = v.lhs - v.rhs;
  v.boundary = std::abs(v.margin) <= boundary_tol;
  if (v.margin < -boundary_tol) {
    v.decision = Decision::Entangled;
  } else {
    v.decision = gaussian_certificate ? Decision::SeparableCertified
                                      : Decision::SeparableUncertified;
  }

  if (std::isfinite(v.q0) && v.q0 > 0.0) {
    double q2 = v.q0 * v.q0;
    v.general_lhs = q2 * (form.b1 + form.b2) + (form.d1 + form.d2) / q2 -
                    2.0 * (std::abs(form.c1) + std::abs(form.c2));
    v.general_rhs = 2.0 * (q2 + 1.0 / q2);
  } else {
    v.general_lhs = kNaN;
    v.general_rhs = kNaN;
  }
  v.diagnostics = diag.str();
  return v;
}

RealVector partial_transpose_spectrum(const TwoModeState& state, int mode) {
  if (mode != 1 && mode != 2)
    throw SpecError("partial transpose mode must be 1 or 2");
  if (state.pure_form()) {
    // Schmidt route: spectrum is {p_i} plus pairs +-sqrt(p_i p_j), i < j
    Eigen::JacobiSVD<Matrix> svd(state.ket_matrix());
    RealVector sv = svd.singularValues();
    std::vector<double> probs;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 0.0) probs.push_back(sv(i) * sv(i));
    const int d2 = state.dim();
    RealVector out = RealVector::Zero(d2);
    int pos = 0;
    for (size_t i = 0; i < probs.size(); ++i) {
      out(pos++) = probs[i];
      for (size_t j = i + 1; j < probs.size(); ++j) {
        double s = std::sqrt(probs[i] * probs[j]);
        out(pos++) = s;
        out(pos++) = -s;
      }
    }
    std::sort(out.data(), out.data() + d2);
    return out;
  }
  return hermitian_eigenvalues(partial_transpose(state, mode));
}

PptResult ppt_check(const TwoModeState& state, int mode) {
  RealVector ev = partial_transpose_spectrum(state, mode);
  PptResult r;
  r.min_eigenvalue = ev.size() ? ev(0) : 0.0;
  r.entangled = r.min_eigenvalue < -state.config().tol_psd;
  return r;
}

double log_negativity(const TwoModeState& state, int mode) {
  RealVector ev = partial_transpose_spectrum(state, mode);
  double trace_norm = ev.cwiseAbs().sum();
  return std::log(trace_norm);
}

}  // namespace mpfock
