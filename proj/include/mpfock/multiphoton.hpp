#pragma once

#include <array>
#include <optional>

#include "mpfock/fock.hpp"

namespace mpfock {

// k-photon ladder: A |nk+m> = sqrt(n) |(n-1)k+m>, 0 <= m < k.
struct MultiPhotonLadder {
  int k = 1;
  ModeOperator op;  // the lowering operator
  TruncationConfig config;
};

MultiPhotonLadder make_A(int k, const TruncationConfig& config);

// k-photon number operator A^dag A (diagonal, eigenvalue floor(N/k))
ModeOperator make_multi_number(int k, const TruncationConfig& config);

// single-mode pair {X, P} with X = A^dag + A, P = i (A^dag - A)
std::pair<Matrix, Matrix> quadrature_pair(int k, const TruncationConfig& config);

// two-mode quadratures (X1, P1, X2, P2) for ladder order k
struct QuadratureSet {
  int k = 1;
  TwoModeOperator x1, p1, x2, p2;
  TruncationConfig config;
};

QuadratureSet make_quadratures(int k, const TruncationConfig& config);

struct SectorReport {
  int k = 1;
  int sector = 0;       // offset j with the largest diagonal mass
  bool confined = false;
  double leakage = 0.0;  // diagonal mass outside the best sector
};

struct TwoModeSectorReport {
  int k = 1;
  SectorReport mode1, mode2;
  bool confined = false;            // both modes confined
  std::optional<int> sector;        // set when both modes agree on j
  double leakage = 0.0;             // max of the per-mode leakages
};

SectorReport detect_sector(const SingleModeState& state, int k,
                           double tol = 1e-10);
TwoModeSectorReport detect_sector(const TwoModeState& state, int k,
                                  double tol = 1e-10);

// smallest ladder order whose sector structure explains every populated level
int infer_k(const SingleModeState& state, double tol = 1e-10);
int infer_k(const TwoModeState& state, double tol = 1e-10);

// isometry onto the complete-block subspace: row n*k+m <-> |n>_sector (x) |m>,
// u = [I | 0] with k*floor((n_max+1)/k) rows
struct SectorIsometry {
  int k = 1;
  int n_blocks = 0;
  RealMatrix u;
  TruncationConfig config;
};

SectorIsometry build_U_tilde(int k, const TruncationConfig& config);

struct CompressedSingle {
  SingleModeState state;
  double retained_mass = 1.0;
  int k = 1, j = 0;
};

struct CompressedTwoMode {
  TwoModeState state;
  double retained_mass = 1.0;
  int k = 1, j = 0;
};

// keep only levels kn+j and relabel them n; refuses when the discarded mass
// exceeds tol
CompressedSingle compress_to_sector(const SingleModeState& state, int k, int j,
                                    double tol = 1e-10);
CompressedTwoMode compress_to_sector(const TwoModeState& state, int k, int j,
                                     double tol = 1e-10);

SingleModeState expand_from_sector(const SingleModeState& compressed, int k,
                                   int j, const TruncationConfig& target);
TwoModeState expand_from_sector(const TwoModeState& compressed, int k, int j,
                                const TruncationConfig& target);

// dimension of the sector ladder kn+j inside levels 0..n_max
int sector_dim(int n_max, int k, int j);

}  // namespace mpfock
