#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpfock/linalg.hpp"
#include "mpfock/types.hpp"

namespace mpfock {

// Single-mode operator on the truncated space.
struct ModeOperator {
  Matrix matrix;
  std::string label;
  TruncationConfig config;
  int dim() const { return static_cast<int>(matrix.rows()); }
};

ModeOperator make_annihilation(const TruncationConfig& config);
ModeOperator make_creation(const TruncationConfig& config);
ModeOperator make_number(const TruncationConfig& config);
ModeOperator make_identity(const TruncationConfig& config);

// Two-mode operator held as a sum of Kronecker factors  sum_t  L_t (x) R_t,
// mode-1-major.  Stays factored under +, -, composition and adjoint, so
// expectation values never need the dim^2 x dim^2 dense matrix.
class TwoModeOperator {
 public:
  struct Term {
    Matrix left;
    Matrix right;
  };

  TwoModeOperator() = default;
  static TwoModeOperator tensor(Matrix left, Matrix right);

  TwoModeOperator operator+(const TwoModeOperator& o) const;
  TwoModeOperator operator-(const TwoModeOperator& o) const;
  TwoModeOperator operator*(const TwoModeOperator& o) const;  // composition
  TwoModeOperator scaled(Complex c) const;
  TwoModeOperator adjoint() const;

  Matrix to_dense() const;
  int mode_dim() const;
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

TwoModeOperator tensor_op(const ModeOperator& a, const ModeOperator& b);

struct DensityCheck {
  double hermiticity_residual = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool psd_ok = false;
  bool pass = false;
};

struct SingleModeState {
  Matrix rho;
  TruncationConfig config;
  int dim() const { return config.dim(); }
};

// Two-mode state.  Pure states are stored as kets (rho = psi psi^dag is only
// materialized on demand); mixed states are dense matrices.
class TwoModeState {
 public:
  static TwoModeState from_ket(Vector psi, const TruncationConfig& config);
  static TwoModeState from_density(Matrix rho, const TruncationConfig& config);

  const TruncationConfig& config() const { return config_; }
  int mode_dim() const { return config_.dim(); }
  int dim() const { return mode_dim() * mode_dim(); }

  bool pure_form() const { return psi_.has_value(); }
  const Vector& ket() const;
  // ket reshaped to mode_dim x mode_dim, V(n1, n2) = psi(n1*dim + n2)
  Matrix ket_matrix() const;
  Matrix density() const;
  Complex entry(int row, int col) const;
  double diagonal(int idx) const;

  void renormalize();

 private:
  TwoModeState(TruncationConfig config) : config_(config) {}
  TruncationConfig config_;
  std::optional<Vector> psi_;
  Matrix rho_;
};

SingleModeState partial_trace(const TwoModeState& state, int keep_mode);

// materializes the dense transposed matrix; fine at desk scale, use
// ppt_check/log_negativity for large Schmidt-sparse pure states
Matrix partial_transpose(const TwoModeState& state, int mode);

Complex expectation(const TwoModeState& state, const TwoModeOperator& op);
Complex expectation(const TwoModeState& state, const Matrix& dense_op);
Complex expectation(const SingleModeState& state, const Matrix& op);

DensityCheck check_density(const Matrix& rho, const TruncationConfig& config);
DensityCheck check_density(const SingleModeState& state);
DensityCheck check_density(const TwoModeState& state);

}  // namespace mpfock
