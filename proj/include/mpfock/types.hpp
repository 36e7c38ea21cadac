#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mpfock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// bad user-facing parameters or malformed input
struct SpecError : Error {
  using Error::Error;
};
// requested truncation cannot hold the state within the tail budget
struct TruncationError : Error {
  using Error::Error;
};
// state is not confined to the requested ladder sector
struct SectorError : Error {
  using Error::Error;
};
// local-symplectic reduction to standard form failed
struct StandardizeError : Error {
  using Error::Error;
};
// phase-space grid cannot represent the state
struct GridError : Error {
  using Error::Error;
};

// Truncated single-mode Fock space, levels 0..n_max.
struct TruncationConfig {
  int n_max = 1;
  double tol_psd = 1e-10;
  double tol_trace = 1e-8;

  TruncationConfig() = default;
  explicit TruncationConfig(int n, double psd = 1e-10, double trace = 1e-8)
      : n_max(n), tol_psd(psd), tol_trace(trace) {
    if (n_max < 1) throw SpecError("n_max must be >= 1");
    if (!(tol_psd > 0.0)) throw SpecError("tol_psd must be positive");
    if (!(tol_trace > 0.0)) throw SpecError("tol_trace must be positive");
  }

  int dim() const { return n_max + 1; }
  bool operator==(const TruncationConfig&) const = default;
};

// default tail-mass budget used when auto-sizing truncations
inline constexpr double kTailBudget = 1e-10;

// mode-1-major joint index: (n1, n2) -> n1*dim + n2
inline int joint_index(int n1, int n2, int dim) { return n1 * dim + n2; }

}  // namespace mpfock
