#include "mpfock/fock.hpp"

#include <cmath>

namespace mpfock {

ModeOperator make_annihilation(const TruncationConfig& config) {
  const int d = config.dim();
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  return {std::move(a), "a", config};
}

ModeOperator make_creation(const TruncationConfig& config) {
  ModeOperator a = make_annihilation(config);
  return {a.matrix.adjoint(), "adag", config};
}

ModeOperator make_number(const TruncationConfig& config) {
  const int d = config.dim();
  Matrix n = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) n(i, i) = double(i);
  return {std::move(n), "n", config};
}

ModeOperator make_identity(const TruncationConfig& config) {
  return {Matrix::Identity(config.dim(), config.dim()), "id", config};
}

TwoModeOperator TwoModeOperator::tensor(Matrix left, Matrix right) {
  if (left.rows() != left.cols() || right.rows() != right.cols() ||
      left.rows() != right.rows())
    throw Error("tensor: factors must be square with equal dimension");
  TwoModeOperator op;
  op.terms_.push_back({std::move(left), std::move(right)});
  return op;
}

TwoModeOperator TwoModeOperator::operator+(const TwoModeOperator& o) const {
  TwoModeOperator out = *this;
  out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
  return out;
}

TwoModeOperator TwoModeOperator::operator-(const TwoModeOperator& o) const {
  return *this + o.scaled(-1.0);
}

TwoModeOperator TwoModeOperator::operator*(const TwoModeOperator& o) const {
  TwoModeOperator out;
  for (const auto& s : terms_)
    for (const auto& t : o.terms_)
      out.terms_.push_back({s.left * t.left, s.right * t.right});
  return out;
}

TwoModeOperator TwoModeOperator::scaled(Complex c) const {
  TwoModeOperator out = *this;
  for (auto& t : out.terms_) t.left *= c;
  return out;
}

TwoModeOperator TwoModeOperator::adjoint() const {
  TwoModeOperator out;
  for (const auto& t : terms_)
    out.terms_.push_back({t.left.adjoint(), t.right.adjoint()});
  return out;
}

int TwoModeOperator::mode_dim() const {
  return terms_.empty() ? 0 : static_cast<int>(terms_[0].left.rows());
}

Matrix TwoModeOperator::to_dense() const {
  if (terms_.empty()) return Matrix();
  const int d = mode_dim();
  Matrix out = Matrix::Zero(d * d, d * d);
  for (const auto& t : terms_) out += kron(t.left, t.right);
  return out;
}

TwoModeOperator tensor_op(const ModeOperator& a, const ModeOperator& b) {
  if (!(a.config == b.config))
    throw Error("tensor_op: mode operators live on different truncations");
  return TwoModeOperator::tensor(a.matrix, b.matrix);
}

TwoModeState TwoModeState::from_ket(Vector psi, const TruncationConfig& config) {
  const int d = config.dim();
  if (psi.size() != Eigen::Index(d) * d)
    throw SpecError("from_ket: vector length is not dim^2");
  TwoModeState s(config);
  s.psi_ = std::move(psi);
  return s;
}

TwoModeState TwoModeState::from_density(Matrix rho,
                                        const TruncationConfig& config) {
  const int d = config.dim();
  if (rho.rows() != Eigen::Index(d) * d || rho.cols() != rho.rows())
    throw SpecError("from_density: matrix is not dim^2 x dim^2");
  TwoModeState s(config);
  s.rho_ = std::move(rho);
  return s;
}

const Vector& TwoModeState::ket() const {
  if (!psi_) throw Error("state is not in pure (ket) form");
  return *psi_;
}

Matrix TwoModeState::ket_matrix() const {
  const Vector& p = ket();
  const int d = mode_dim();
  Matrix v(d, d);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2) v(n1, n2) = p(joint_index(n1, n2, d));
  return v;
}

Matrix TwoModeState::density() const {
  if (psi_) return (*psi_) * psi_->adjoint();
  return rho_;
}

Complex TwoModeState::entry(int row, int col) const {
  if (psi_) return (*psi_)(row) * std::conj((*psi_)(col));
  return rho_(row, col);
}

double TwoModeState::diagonal(int idx) const {
  if (psi_) return std::norm((*psi_)(idx));
  return rho_(idx, idx).real();
}

void TwoModeState::renormalize() {
  if (psi_) {
    double n = psi_->norm();
    if (n <= 0.0) throw Error("cannot normalize a zero state");
    *psi_ /= n;
  } else {
    double tr = rho_.trace().real();
    if (tr <= 0.0) throw Error("cannot normalize a non-positive-trace state");
    rho_ /= tr;
  }
}

SingleModeState partial_trace(const TwoModeState& state, int keep_mode) {
  if (keep_mode != 1 && keep_mode != 2)
    throw SpecError("partial_trace: keep_mode must be 1 or 2");
  const int d = state.mode_dim();
  if (state.pure_form()) {
    Matrix v = state.ket_matrix();
    Matrix out = (keep_mode == 1) ? Matrix(v * v.adjoint())
                                  : Matrix(v.transpose() * v.conjugate());
    return {std::move(out), state.config()};
  }
  Matrix rho = state.density();
  Matrix out = Matrix::Zero(d, d);
  if (keep_mode == 1) {
    for (int n1 = 0; n1 < d; ++n1)
      for (int m1 = 0; m1 < d; ++m1)
        for (int n2 = 0; n2 < d; ++n2)
          out(n1, m1) += rho(joint_index(n1, n2, d), joint_index(m1, n2, d));
  } else {
    for (int n2 = 0; n2 < d; ++n2)
      for (int m2 = 0; m2 < d; ++m2)
        for (int n1 = 0; n1 < d; ++n1)
          out(n2, m2) += rho(joint_index(n1, n2, d), joint_index(n1, m2, d));
  }
  return {std::move(out), state.config()};
}

Matrix partial_transpose(const TwoModeState& state, int mode) {
  if (mode != 1 && mode != 2)
    throw SpecError("partial_transpose: mode must be 1 or 2");
  const int d = state.mode_dim();
  Matrix rho = state.density();
  Matrix out(d * d, d * d);
  for (int n1 = 0; n1 < d; ++n1) {
    for (int m1 = 0; m1 < d; ++m1) {
      auto src = (mode == 2) ? rho.block(n1 * d, m1 * d, d, d).transpose()
                             : rho.block(m1 * d, n1 * d, d, d).eval();
      out.block(n1 * d, m1 * d, d, d) = src;
    }
  }
  return out;
}

Complex expectation(const TwoModeState& state, const TwoModeOperator& op) {
  if (op.mode_dim() != state.mode_dim())
    throw Error("expectation: operator/state dimension mismatch");
  Complex acc = 0.0;
  if (state.pure_form()) {
    Matrix v = state.ket_matrix();
    for (const auto& t : op.terms())
      acc += (v.conjugate().cwiseProduct(t.left * v * t.right.transpose()))
                 .sum();
    return acc;
  }
  const int d = state.mode_dim();
  Matrix rho = state.density();
  for (const auto& t : op.terms()) {
    for (int n1 = 0; n1 < d; ++n1) {
      for (int m1 = 0; m1 < d; ++m1) {
        Complex l = t.left(m1, n1);
        if (l == Complex(0.0, 0.0)) continue;
        // tr_2[ rho block(n1, m1) * R ]
        acc += l * rho.block(n1 * d, m1 * d, d, d)
                       .cwiseProduct(t.right.transpose())
                       .sum();
      }
    }
  }
  return acc;
}

Complex expectation(const TwoModeState& state, const Matrix& dense_op) {
  if (dense_op.rows() != state.dim() || dense_op.cols() != state.dim())
    throw Error("expectation: operator/state dimension mismatch");
  if (state.pure_form()) {
    const Vector& p = state.ket();
    return p.dot(dense_op * p);  // Eigen dot conjugates the left argument
  }
  return (state.density() * dense_op).trace();
}

Complex expectation(const SingleModeState& state, const Matrix& op) {
  if (op.rows() != state.rho.rows() || op.cols() != state.rho.cols())
    throw Error("expectation: operator/state dimension mismatch");
  return (state.rho * op).trace();
}

DensityCheck check_density(const Matrix& rho, const TruncationConfig& config) {
  DensityCheck r;
  r.hermiticity_residual = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  r.trace_deviation = std::abs(rho.trace() - Complex(1.0, 0.0));
  Matrix herm = 0.5 * (rho + rho.adjoint());
  r.min_eigenvalue = min_hermitian_eigenvalue(herm);
  r.hermitian_ok = r.hermiticity_residual <= config.tol_trace;
  r.trace_ok = r.trace_deviation <= config.tol_trace;
  r.psd_ok = r.min_eigenvalue >= -config.tol_psd;
  r.pass = r.hermitian_ok && r.trace_ok && r.psd_ok;
  return r;
}

DensityCheck check_density(const SingleModeState& state) {
  return check_density(state.rho, state.config);
}

DensityCheck check_density(const TwoModeState& state) {
  if (state.pure_form()) {
    DensityCheck r;
    double n2 = state.ket().squaredNorm();
    r.hermiticity_residual = 0.0;
    r.trace_deviation = std::abs(n2 - 1.0);
    r.min_eigenvalue = 0.0;  // spectrum of psi psi^dag is {|psi|^2, 0, ...}
    r.hermitian_ok = true;
    r.trace_ok = r.trace_deviation <= state.config().tol_trace;
    r.psd_ok = true;
    r.pass = r.trace_ok;
    return r;
  }
  return check_density(state.density(), state.config());
}

}  // namespace mpfock
