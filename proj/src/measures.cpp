#include "mpfock/measures.hpp"

#include <cmath>

#include "mpfock/multiphoton.hpp"

namespace mpfock {

namespace {

double entropy_of_eigenvalues(const RealVector& ev) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 1e-15) s -= ev(i) * std::log(ev(i));
  return s;
}

}  // namespace

double von_neumann_entropy(const SingleModeState& state) {
  return entropy_of_eigenvalues(hermitian_eigenvalues(state.rho));
}

double von_neumann_entropy(const TwoModeState& state) {
  if (state.pure_form()) {
    double n2 = state.ket().squaredNorm();  // spectrum is {n2, 0, ...}
    return n2 > 1e-15 ? -n2 * std::log(n2) : 0.0;
  }
  return entropy_of_eigenvalues(hermitian_eigenvalues(state.density()));
}

double purity(const SingleModeState& state) { return state.rho.squaredNorm(); }

double purity(const TwoModeState& state) {
  if (state.pure_form()) {
    double n2 = state.ket().squaredNorm();
    return n2 * n2;
  }
  return state.density().squaredNorm();
}

double mean_energy(const SingleModeState& state, int k) {
  return expectation(state, make_multi_number(k, state.config).matrix).real();
}

EnergyReport mean_energy(const TwoModeState& state, int k) {
  Matrix nk = make_multi_number(k, state.config()).matrix;
  Matrix id = Matrix::Identity(state.mode_dim(), state.mode_dim());
  EnergyReport r;
  r.k = k;
  r.per_mode[0] =
      expectation(state, TwoModeOperator::tensor(nk, id)).real();
  r.per_mode[1] =
      expectation(state, TwoModeOperator::tensor(id, nk)).real();
  r.total = r.per_mode[0] + r.per_mode[1];
  return r;
}

double entanglement_entropy(const TwoModeState& state, double purity_tol) {
  if (std::abs(purity(state) - 1.0) > purity_tol)
    throw SpecError("entanglement entropy needs a pure state");
  return von_neumann_entropy(partial_trace(state, 1));
}

double p_min(double energy, int k) {
  if (!(energy >= 0.0)) throw SpecError("energy must be >= 0");
  if (k < 1) throw SpecError("ladder order k must be >= 1");
  double r = energy / k + 1.0;
  return 1.0 / (r * r);
}

}  // namespace mpfock
