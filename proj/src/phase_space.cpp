#include "mpfock/phase_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace mpfock {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double real_expect(const TwoModeState& s, const TwoModeOperator& op) {
  return expectation(s, op).real();
}

}  // namespace

CovarianceMatrix covariance(const TwoModeState& state, const QuadratureSet& q) {
  if (!(q.config == state.config()))
    throw Error("covariance: quadratures and state use different truncations");
  std::array<const TwoModeOperator*, 4> ops = {&q.x1, &q.p1, &q.x2, &q.p2};
  CovarianceMatrix cm;
  cm.k = q.k;
  for (int i = 0; i < 4; ++i) cm.means(i) = real_expect(state, *ops[i]);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      double second = real_expect(state, (*ops[i]) * (*ops[j]));
      cm.sigma(i, j) = cm.sigma(j, i) = second - cm.means(i) * cm.means(j);
    }
  return cm;
}

CovarianceMatrix covariance(const TwoModeState& state, int k) {
  return covariance(state, make_quadratures(k, state.config()));
}

SingleModeCovariance covariance_single(const SingleModeState& state, int k) {
  auto [x, p] = quadrature_pair(k, state.config);
  SingleModeCovariance out;
  out.k = k;
  double mx = expectation(state, x).real();
  double mp = expectation(state, p).real();
  out.means << mx, mp;
  out.sigma(0, 0) = expectation(state, Matrix(x * x)).real() - mx * mx;
  out.sigma(1, 1) = expectation(state, Matrix(p * p)).real() - mp * mp;
  double xp = (expectation(state, Matrix(x * p)) +
               expectation(state, Matrix(p * x)))
                  .real() *
              0.5;
  out.sigma(0, 1) = out.sigma(1, 0) = xp - mx * mp;
  return out;
}

namespace {

struct ResolvedGrid {
  RealVector x_axis, p_axis;
  double step_x, step_p;
};

ResolvedGrid resolve_grid(const GridSpec& spec, const SingleModeState& state) {
  if (spec.points < 2) throw GridError("grid needs at least 2 points");
  double half = spec.half_width;
  if (half <= 0.0) {
    SingleModeCovariance cov = covariance_single(state, 1);
    double sx = std::sqrt(std::max(cov.sigma(0, 0), 0.0));
    double sp = std::sqrt(std::max(cov.sigma(1, 1), 0.0));
    double m = std::max(std::abs(cov.means(0)), std::abs(cov.means(1)));
    half = 6.0 * std::max({sx, sp, 1e-3}) + m;
  }
  ResolvedGrid g;
  g.x_axis.resize(spec.points);
  g.p_axis.resize(spec.points);
  for (int i = 0; i < spec.points; ++i) {
    double t = -half + 2.0 * half * i / (spec.points - 1);
    g.x_axis(i) = spec.center_x + t;
    g.p_axis(i) = spec.center_p + t;
  }
  g.step_x = 2.0 * half / (spec.points - 1);
  g.step_p = g.step_x;
  return g;
}

// displaced-parity series at one phase-space point; diagonals list has the
// superdiagonal offsets g with any nonzero rho_{n,n+g}
double wigner_point(const Matrix& rho, const std::vector<int>& offsets,
                    const std::vector<double>& lg,  // lgamma(n+1) table
                    double x, double p) {
  const int d = static_cast<int>(rho.rows());
  const double s = x * x + p * p;
  if (s > 1300.0)
    throw GridError("phase-space point too far out for the series kernel");
  const double abs_beta = std::sqrt(s);
  const Complex phase_step =
      abs_beta > 0.0 ? Complex(x / abs_beta, p / abs_beta) : Complex(1.0, 0.0);
  const double log_beta = abs_beta > 0.0 ? std::log(abs_beta) : 0.0;

  double acc = 0.0;
  for (int g : offsets) {
    if (g > 0 && abs_beta == 0.0) continue;
    // generalized Laguerre upward recurrence in n at fixed alpha = g
    double lm1 = 0.0, l = 1.0;  // L_{-1} = 0, L_0 = 1
    Complex phase_g = std::pow(phase_step, g);
    double sign = 1.0;
    for (int n = 0; n + g < d; ++n) {
      double contrib;
      if (g == 0) {
        contrib = rho(n, n).real() * l;
      } else {
        // sqrt(n!/(n+g)!) * |beta|^g, kept in log space
        double mag = std::exp(0.5 * (lg[n] - lg[n + g]) + g * log_beta);
        contrib = 2.0 * (rho(n, n + g) * phase_g).real() * mag * l;
      }
      acc += sign * contrib;
      sign = -sign;
      double lp1 = ((2.0 * n + 1.0 + g - s) * l - (n + g) * lm1) / (n + 1.0);
      lm1 = l;
      l = lp1;
    }
  }
  return acc * std::exp(-0.5 * s) / kTwoPi;
}

}  // namespace

WignerGrid wigner_single_mode(const SingleModeState& state,
                              const GridSpec& grid) {
  const int d = state.dim();
  ResolvedGrid g = resolve_grid(grid, state);

  std::vector<int> offsets;
  for (int off = 0; off < d; ++off) {
    bool any = false;
    for (int n = 0; n + off < d && !any; ++n)
      if (state.rho(n, n + off) != Complex(0.0, 0.0)) any = true;
    if (any) offsets.push_back(off);
  }
  std::vector<double> lg(d);
  for (int n = 0; n < d; ++n) lg[n] = std::lgamma(double(n) + 1.0);

  WignerGrid out;
  out.x_axis = g.x_axis;
  out.p_axis = g.p_axis;
  out.values.resize(g.x_axis.size(), g.p_axis.size());
  for (Eigen::Index i = 0; i < g.x_axis.size(); ++i)
    for (Eigen::Index j = 0; j < g.p_axis.size(); ++j)
      out.values(i, j) =
          wigner_point(state.rho, offsets, lg, g.x_axis(i), g.p_axis(j));

  out.cell_area = g.step_x * g.step_p;
  out.normalization_residual = out.values.sum() * out.cell_area - 1.0;
  out.min_value = out.values.minCoeff();
  out.convention = "x=adag+a, [x,p]=2i, integral W dx dp = 1";
  if (std::abs(out.normalization_residual) > 1e-3)
    throw GridError("grid too small: Wigner normalization residual " +
                    std::to_string(out.normalization_residual));
  return out;
}

WignerGrid wigner_multiphoton(const SingleModeState& state, int k, int j,
                              const GridSpec& grid, double sector_tol) {
  if (k == 1 && j == 0) return wigner_single_mode(state, grid);
  CompressedSingle c = compress_to_sector(state, k, j, sector_tol);
  WignerGrid out = wigner_single_mode(c.state, grid);
  out.convention += ", sector-relabeled k=" + std::to_string(k) +
                    " j=" + std::to_string(j);
  return out;
}

WignerGrid wigner_multiphoton(const TwoModeState& state, int mode, int k, int j,
                              const GridSpec& grid, double sector_tol) {
  return wigner_multiphoton(partial_trace(state, mode), k, j, grid, sector_tol);
}

RealMatrix gaussian_wigner(const SingleModeCovariance& cov,
                           const RealVector& x_axis, const RealVector& p_axis) {
  double det = cov.sigma.determinant();
  if (!(det > 0.0)) throw Error("gaussian_wigner: covariance not positive");
  Eigen::Matrix2d inv = cov.sigma.inverse();
  double norm = 1.0 / (kTwoPi * std::sqrt(det));
  RealMatrix out(x_axis.size(), p_axis.size());
  for (Eigen::Index i = 0; i < x_axis.size(); ++i)
    for (Eigen::Index j = 0; j < p_axis.size(); ++j) {
      Eigen::Vector2d delta(x_axis(i) - cov.means(0),
                            p_axis(j) - cov.means(1));
      out(i, j) = norm * std::exp(-0.5 * delta.dot(inv * delta));
    }
  return out;
}

GaussianityReport gaussianity_check(const SingleModeState& state, int k, int j,
                                    const GridSpec& grid, double threshold,
                                    double sector_tol) {
  GaussianityReport rep;
  rep.k = k;
  rep.j = j;
  if (k < 1 || j < 0 || j >= k)
    throw SpecError("gaussianity_check: sector offset must satisfy 0 <= j < k");
  SectorReport sec = detect_sector(state, k, sector_tol);
  double off_j_mass = 0.0;  // mass outside the requested sector, not the best one
  for (int level = 0; level < state.dim(); ++level)
    if (level % k != j) off_j_mass += state.rho(level, level).real();
  rep.leakage = off_j_mass;
  if (!(sec.confined && sec.sector == j)) {
    rep.confined = false;
    rep.certified = false;
    rep.residual = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  rep.confined = true;
  CompressedSingle c = compress_to_sector(state, k, j, sector_tol);
  WignerGrid w = wigner_single_mode(c.state, grid);
  RealMatrix gauss =
      gaussian_wigner(covariance_single(c.state, 1), w.x_axis, w.p_axis);
  rep.residual = (w.values - gauss).cwiseAbs().maxCoeff();
  rep.certified = rep.residual <= threshold;
  return rep;
}

namespace {

// diag(f(N)) for f evaluated through lgamma-safe callables
Matrix diag_of(int d, const std::function<double(int)>& f) {
  Matrix m = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) m(n, n) = f(n);
  return m;
}

}  // namespace

MomentsK2 moments_k2_formula(const SingleModeState& state) {
  const int d = state.dim();
  if (state.config.n_max < 2)
    throw SpecError("moments_k2_formula needs n_max >= 2");
  Matrix a = make_annihilation(state.config).matrix;
  Matrix a2 = a * a;
  Matrix a4 = a2 * a2;

  // printed expansion: 1/2 < f(N) a^4 + a^dag4 f(N) + 2N + 2 >,  f = ((N+1)(N+3))^-1/2
  Matrix f = diag_of(d, [](int n) {
    return std::exp(-0.5 * (std::log(double(n) + 1.0) + std::log(double(n) + 3.0)));
  });
  Matrix g = diag_of(d, [](int n) { return std::exp(-0.5 * std::log(double(n) + 1.0)); });
  Matrix num = diag_of(d, [](int n) { return double(n); });

  Matrix fa4 = f * a4;
  Matrix x2_op = 0.5 * (fa4 + fa4.adjoint() + 2.0 * num +
                        2.0 * Matrix::Identity(d, d));
  MomentsK2 out;
  out.x2_printed = expectation(state, x2_op).real();
  Matrix ga2 = g * a2;
  double mean_printed = expectation(state, Matrix(ga2 + ga2.adjoint())).real();
  out.mean_sq_printed = 0.5 * mean_printed * mean_printed;

  // direct route: build the order-2 ladder from its factored closed form
  // sqrt(floor(N/2) * (N-2)!/N!) applied after a^dag a^dag, lgamma-safe
  Matrix adag2 = a2.adjoint();
  Matrix scale = diag_of(d, [](int n) {
    if (n < 2) return 0.0;
    return std::exp(0.5 * (std::log(double(n / 2)) + std::lgamma(double(n) - 1.0) -
                           std::lgamma(double(n) + 1.0)));
  });
  Matrix a2dag_direct = scale * adag2;
  Matrix x_direct = a2dag_direct + a2dag_direct.adjoint();
  out.x2_direct = expectation(state, Matrix(x_direct * x_direct)).real();
  double mean_direct = expectation(state, x_direct).real();
  out.mean_sq_direct = mean_direct * mean_direct;

  out.x2_discrepancy = out.x2_printed - out.x2_direct;
  out.mean_sq_discrepancy = out.mean_sq_printed - out.mean_sq_direct;
  return out;
}

}  // namespace mpfock
