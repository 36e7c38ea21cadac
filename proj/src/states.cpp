#include "mpfock/states.hpp"

#include <cmath>

#include "mpfock/multiphoton.hpp"

namespace mpfock {

SqueezingParam SqueezingParam::from_gamma(double gamma) {
  if (!(gamma >= 0.0) || gamma >= 1.0)
    throw SpecError("gamma must satisfy 0 <= gamma < 1");
  return {gamma, std::atanh(gamma)};
}

SqueezingParam SqueezingParam::from_r(double r) {
  if (!(r >= 0.0)) throw SpecError("squeezing r must be >= 0");
  return {std::tanh(r), r};
}

int geometric_tail_levels(double q, double budget) {
  if (!(budget > 0.0)) throw SpecError("tail budget must be positive");
  if (q <= 0.0) return 0;
  if (q >= 1.0) throw SpecError("geometric ratio must be < 1");
  int n = static_cast<int>(std::floor(std::log(budget) / std::log(q)));
  n = std::max(n - 2, 0);
  while (std::pow(q, n + 1) >= budget) ++n;
  return n;
}

namespace {

void require_tail(double q, int retained, double budget, const char* what) {
  double tail = std::pow(q, retained + 1);
  if (!(tail < budget))
    throw TruncationError(std::string(what) +
                          ": truncation tail mass " + std::to_string(tail) +
                          " exceeds budget " + std::to_string(budget));
}

}  // namespace

TwoModeState tmsv(const SqueezingParam& p, const TruncationConfig& config,
                  double budget) {
  return mp_tmsv(p, 1, config, budget);
}

TwoModeState tmsv(const SqueezingParam& p, double budget) {
  return mp_tmsv(p, 1, budget);
}

TwoModeState mp_tmsv(const SqueezingParam& p, int k,
                     const TruncationConfig& config, double budget) {
  if (k < 1) throw SpecError("ladder order k must be >= 1");
  const int d = config.dim();
  const int retained = config.n_max / k;  // sector levels 0..retained
  require_tail(p.gamma * p.gamma, retained, budget, "mp_tmsv");
  Vector psi = Vector::Zero(Eigen::Index(d) * d);
  double amp = 1.0;
  for (int n = 0; n <= retained; ++n) {
    psi(joint_index(k * n, k * n, d)) = amp;
    amp *= p.gamma;
  }
  TwoModeState s = TwoModeState::from_ket(std::move(psi), config);
  s.renormalize();
  return s;
}

TwoModeState mp_tmsv(const SqueezingParam& p, int k, double budget) {
  if (k < 1) throw SpecError("ladder order k must be >= 1");
  int retained = std::max(geometric_tail_levels(p.gamma * p.gamma, budget), 1);
  return mp_tmsv(p, k, TruncationConfig(k * retained), budget);
}

SingleModeState thermal(double nbar, const TruncationConfig& config,
                        double budget) {
  return mp_thermal(nbar, 1, 0, config, budget);
}

SingleModeState thermal(double nbar, double budget) {
  return mp_thermal(nbar, 1, 0, budget);
}

SingleModeState mp_thermal(double nu, int k, int j,
                           const TruncationConfig& config, double budget) {
  if (!(nu >= 0.0)) throw SpecError("mean occupation must be >= 0");
  if (k < 1) throw SpecError("ladder order k must be >= 1");
  if (j < 0 || j >= k) throw SpecError("sector offset must satisfy 0 <= j < k");
  if (j > config.n_max) throw SpecError("sector offset exceeds n_max");
  const double q = nu / (1.0 + nu);
  const int retained = (config.n_max - j) / k;
  require_tail(q, retained, budget, "mp_thermal");
  Matrix rho = Matrix::Zero(config.dim(), config.dim());
  double w = 1.0, total = 0.0;
  for (int n = 0; n <= retained; ++n) {
    rho(k * n + j, k * n + j) = w;
    total += w;
    w *= q;
  }
  rho /= total;
  return {std::move(rho), config};
}

SingleModeState mp_thermal(double nu, int k, int j, double budget) {
  if (!(nu >= 0.0)) throw SpecError("mean occupation must be >= 0");
  if (k < 1) throw SpecError("ladder order k must be >= 1");
  if (j < 0 || j >= k) throw SpecError("sector offset must satisfy 0 <= j < k");
  const double q = nu / (1.0 + nu);
  int retained = std::max(geometric_tail_levels(q, budget), 1);
  return mp_thermal(nu, k, j, TruncationConfig(k * retained + j), budget);
}

SingleModeState pad_to(const SingleModeState& s, int n_max) {
  if (n_max < s.config.n_max) throw SpecError("pad_to cannot shrink a state");
  if (n_max == s.config.n_max) return s;
  TruncationConfig c(n_max, s.config.tol_psd, s.config.tol_trace);
  Matrix rho = Matrix::Zero(c.dim(), c.dim());
  rho.topLeftCorner(s.dim(), s.dim()) = s.rho;
  return {std::move(rho), c};
}

TwoModeState product(const SingleModeState& a, const SingleModeState& b) {
  const int n_max = std::max(a.config.n_max, b.config.n_max);
  SingleModeState pa = pad_to(a, n_max);
  SingleModeState pb = pad_to(b, n_max);
  TruncationConfig c(n_max, std::min(a.config.tol_psd, b.config.tol_psd),
                     std::min(a.config.tol_trace, b.config.tol_trace));
  return TwoModeState::from_density(kron(pa.rho, pb.rho), c);
}

SqueezingParam gamma_for_energy(double energy, int k) {
  if (!(energy >= 0.0)) throw SpecError("energy must be >= 0");
  if (k < 1) throw SpecError("ladder order k must be >= 1");
  return SqueezingParam::from_gamma(std::sqrt(energy / (2.0 * k + energy)));
}

NumberDistribution number_distribution(const SingleModeState& state, int k,
                                       int j) {
  const int dc = sector_dim(state.config.n_max, k, j);
  NumberDistribution out;
  out.k = k;
  out.j = j;
  out.probabilities.resize(dc);
  double mean = 0.0;
  for (int n = 0; n < dc; ++n) {
    out.probabilities[n] = state.rho(k * n + j, k * n + j).real();
    mean += n * out.probabilities[n];
  }
  out.mean = mean;
  return out;
}

}  // namespace mpfock
