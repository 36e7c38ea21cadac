#include "mpfock/multiphoton.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace mpfock {

MultiPhotonLadder make_A(int k, const TruncationConfig& config) {
  if (k < 1) throw SpecError("ladder order k must be >= 1");
  if (k > config.n_max)
    throw SpecError("ladder order k exceeds n_max; no level can be lowered");
  const int d = config.dim();
  Matrix a = Matrix::Zero(d, d);
  for (int level = k; level < d; ++level) {
    int n = level / k;  // level = n*k + m
    a(level - k, level) = std::sqrt(double(n));
  }
  return {k, {std::move(a), "A", config}, config};
}

ModeOperator make_multi_number(int k, const TruncationConfig& config) {
  if (k < 1) throw SpecError("ladder order k must be >= 1");
  const int d = config.dim();
  Matrix n = Matrix::Zero(d, d);
  for (int level = 0; level < d; ++level) n(level, level) = double(level / k);
  return {std::move(n), "N_k", config};
}

std::pair<Matrix, Matrix> quadrature_pair(int k, const TruncationConfig& config) {
  Matrix a = make_A(k, config).op.matrix;
  Matrix ad = a.adjoint();
  return {ad + a, Complex(0.0, 1.0) * (ad - a)};
}

QuadratureSet make_quadratures(int k, const TruncationConfig& config) {
  auto [x, p] = quadrature_pair(k, config);
  Matrix id = Matrix::Identity(config.dim(), config.dim());
  QuadratureSet q;
  q.k = k;
  q.config = config;
  q.x1 = TwoModeOperator::tensor(x, id);
  q.p1 = TwoModeOperator::tensor(p, id);
  q.x2 = TwoModeOperator::tensor(id, x);
  q.p2 = TwoModeOperator::tensor(id, p);
  return q;
}

namespace {

SectorReport sector_from_diagonal(const std::vector<double>& diag, int k,
                                  double tol) {
  std::vector<double> mass(k, 0.0);
  double total = 0.0;
  for (size_t level = 0; level < diag.size(); ++level) {
    mass[level % k] += diag[level];
    total += diag[level];
  }
  int best = 0;
  for (int j = 1; j < k; ++j)
    if (mass[j] > mass[best]) best = j;
  SectorReport r;
  r.k = k;
  r.sector = best;
  r.leakage = total - mass[best];
  r.confined = r.leakage < tol;
  return r;
}

std::vector<double> diagonal_of(const SingleModeState& s) {
  std::vector<double> d(s.dim());
  for (int i = 0; i < s.dim(); ++i) d[i] = s.rho(i, i).real();
  return d;
}

int spacing_gcd(const std::vector<double>& diag, double tol) {
  int first = -1, g = 0;
  for (size_t level = 0; level < diag.size(); ++level) {
    if (diag[level] <= tol) continue;
    if (first < 0)
      first = static_cast<int>(level);
    else
      g = std::gcd(g, static_cast<int>(level) - first);
  }
  return g;  // 0 when at most one level is populated
}

}  // namespace

SectorReport detect_sector(const SingleModeState& state, int k, double tol) {
  if (k < 1) throw SpecError("sector order k must be >= 1");
  return sector_from_diagonal(diagonal_of(state), k, tol);
}

TwoModeSectorReport detect_sector(const TwoModeState& state, int k,
                                  double tol) {
  TwoModeSectorReport r;
  r.k = k;
  r.mode1 = detect_sector(partial_trace(state, 1), k, tol);
  r.mode2 = detect_sector(partial_trace(state, 2), k, tol);
  r.confined = r.mode1.confined && r.mode2.confined;
  r.leakage = std::max(r.mode1.leakage, r.mode2.leakage);
  if (r.confined && r.mode1.sector == r.mode2.sector) r.sector = r.mode1.sector;
  return r;
}

int infer_k(const SingleModeState& state, double tol) {
  int g = spacing_gcd(diagonal_of(state), tol);
  if (g < 1) return 1;
  return std::min(g, state.config.n_max);
}

int infer_k(const TwoModeState& state, double tol) {
  int g1 = spacing_gcd(diagonal_of(partial_trace(state, 1)), tol);
  int g2 = spacing_gcd(diagonal_of(partial_trace(state, 2)), tol);
  int g = std::gcd(g1, g2);
  if (g < 1) return 1;
  return std::min(g, state.config().n_max);
}

int sector_dim(int n_max, int k, int j) {
  if (k < 1 || j < 0 || j >= k) throw SpecError("sector offset must satisfy 0 <= j < k");
  if (j > n_max) throw SpecError("sector offset exceeds n_max");
  return (n_max - j) / k + 1;
}

SectorIsometry build_U_tilde(int k, const TruncationConfig& config) {
  if (k < 1) throw SpecError("ladder order k must be >= 1");
  if (k > config.n_max + 1) throw SpecError("ladder order k exceeds the space");
  const int d = config.dim();
  const int n_blocks = d / k;  // complete blocks only
  RealMatrix u = RealMatrix::Zero(n_blocks * k, d);
  for (int r = 0; r < n_blocks * k; ++r) u(r, r) = 1.0;
  return {k, n_blocks, std::move(u), config};
}

CompressedSingle compress_to_sector(const SingleModeState& state, int k, int j,
                                    double tol) {
  const int dc = sector_dim(state.config.n_max, k, j);
  Matrix sub(dc, dc);
  for (int n = 0; n < dc; ++n)
    for (int m = 0; m < dc; ++m) sub(n, m) = state.rho(k * n + j, k * m + j);
  double total = state.rho.trace().real();
  double mass = sub.trace().real();
  double leakage = total - mass;
  if (!(leakage < tol))
    throw SectorError("state leaks outside sector (k=" + std::to_string(k) +
                      ", j=" + std::to_string(j) +
                      "): off-sector mass = " + std::to_string(leakage));
  sub /= mass;
  TruncationConfig cc(std::max(dc - 1, 1), state.config.tol_psd,
                      state.config.tol_trace);
  if (dc == 1) {
    // degenerate one-level sector; pad with an empty level to stay a valid space
    Matrix padded = Matrix::Zero(2, 2);
    padded(0, 0) = sub(0, 0);
    sub = padded;
  }
  return {{std::move(sub), cc}, mass, k, j};
}

CompressedTwoMode compress_to_sector(const TwoModeState& state, int k, int j,
                                     double tol) {
  const int d = state.mode_dim();
  const int dc = sector_dim(state.config().n_max, k, j);
  if (dc < 2)
    throw SectorError("two-mode sector compression needs at least two levels");
  TruncationConfig cc(dc - 1, state.config().tol_psd, state.config().tol_trace);
  if (state.pure_form()) {
    const Vector& p = state.ket();
    Vector sub(dc * dc);
    for (int n = 0; n < dc; ++n)
      for (int m = 0; m < dc; ++m)
        sub(joint_index(n, m, dc)) =
            p(joint_index(k * n + j, k * m + j, d));
    double mass = sub.squaredNorm();
    double leakage = p.squaredNorm() - mass;
    if (!(leakage < tol))
      throw SectorError("state leaks outside sector (k=" + std::to_string(k) +
                        ", j=" + std::to_string(j) +
                        "): off-sector mass = " + std::to_string(leakage));
    sub /= std::sqrt(mass);
    TwoModeState out = TwoModeState::from_ket(std::move(sub), cc);
    return {std::move(out), mass, k, j};
  }
  Matrix rho = state.density();
  Matrix sub(dc * dc, dc * dc);
  for (int n1 = 0; n1 < dc; ++n1)
    for (int n2 = 0; n2 < dc; ++n2)
      for (int m1 = 0; m1 < dc; ++m1)
        for (int m2 = 0; m2 < dc; ++m2)
          sub(joint_index(n1, n2, dc), joint_index(m1, m2, dc)) =
              rho(joint_index(k * n1 + j, k * n2 + j, d),
                  joint_index(k * m1 + j, k * m2 + j, d));
  double mass = sub.trace().real();
  double leakage = rho.trace().real() - mass;
  if (!(leakage < tol))
    throw SectorError("state leaks outside sector (k=" + std::to_string(k) +
                      ", j=" + std::to_string(j) +
                      "): off-sector mass = " + std::to_string(leakage));
  sub /= mass;
  TwoModeState out = TwoModeState::from_density(std::move(sub), cc);
  return {std::move(out), mass, k, j};
}

SingleModeState expand_from_sector(const SingleModeState& compressed, int k,
                                   int j, const TruncationConfig& target) {
  const int dc = compressed.dim();
  const int d = target.dim();
  if (k * (dc - 1) + j > target.n_max)
    throw SpecError("expand_from_sector: target truncation too small");
  Matrix out = Matrix::Zero(d, d);
  for (int n = 0; n < dc; ++n)
    for (int m = 0; m < dc; ++m)
      out(k * n + j, k * m + j) = compressed.rho(n, m);
  return {std::move(out), target};
}

TwoModeState expand_from_sector(const TwoModeState& compressed, int k, int j,
                                const TruncationConfig& target) {
  const int dc = compressed.mode_dim();
  const int d = target.dim();
  if (k * (dc - 1) + j > target.n_max)
    throw SpecError("expand_from_sector: target truncation too small");
  if (compressed.pure_form()) {
    const Vector& p = compressed.ket();
    Vector out = Vector::Zero(Eigen::Index(d) * d);
    for (int n = 0; n < dc; ++n)
      for (int m = 0; m < dc; ++m)
        out(joint_index(k * n + j, k * m + j, d)) = p(joint_index(n, m, dc));
    return TwoModeState::from_ket(std::move(out), target);
  }
  Matrix rho = compressed.density();
  Matrix out = Matrix::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
  for (int n1 = 0; n1 < dc; ++n1)
    for (int n2 = 0; n2 < dc; ++n2)
      for (int m1 = 0; m1 < dc; ++m1)
        for (int m2 = 0; m2 < dc; ++m2)
          out(joint_index(k * n1 + j, k * n2 + j, d),
              joint_index(k * m1 + j, k * m2 + j, d)) =
              rho(joint_index(n1, n2, dc), joint_index(m1, m2, dc));
  return TwoModeState::from_density(std::move(out), target);
}

}  // namespace mpfock
