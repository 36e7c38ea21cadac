#pragma once

#include <vector>

#include "mpfock/fock.hpp"

namespace mpfock {

// squeezing strength; gamma = tanh(r), 0 <= gamma < 1
struct SqueezingParam {
  double gamma = 0.0;
  double r = 0.0;
  static SqueezingParam from_gamma(double gamma);
  static SqueezingParam from_r(double r);
};

// smallest retained level count N with geometric tail q^(N+1) < budget
int geometric_tail_levels(double q, double budget = kTailBudget);

// two-mode squeezed vacuum  sqrt(1-g^2) sum g^n |n,n>  (renormalized after
// truncation); explicit-config overloads enforce the tail budget
TwoModeState tmsv(const SqueezingParam& p, const TruncationConfig& config,
                  double budget = kTailBudget);
TwoModeState tmsv(const SqueezingParam& p, double budget = kTailBudget);

// k-photon analogue, supported on |kn, kn>
TwoModeState mp_tmsv(const SqueezingParam& p, int k,
                     const TruncationConfig& config,
                     double budget = kTailBudget);
TwoModeState mp_tmsv(const SqueezingParam& p, int k,
                     double budget = kTailBudget);

// single-mode thermal state, mean occupation nbar
SingleModeState thermal(double nbar, const TruncationConfig& config,
                        double budget = kTailBudget);
SingleModeState thermal(double nbar, double budget = kTailBudget);

// thermal weights on the sector ladder kn+j, mean sector occupation nu
SingleModeState mp_thermal(double nu, int k, int j,
                           const TruncationConfig& config,
                           double budget = kTailBudget);
SingleModeState mp_thermal(double nu, int k, int j,
                           double budget = kTailBudget);

// product state; factors are zero-padded to a common truncation
TwoModeState product(const SingleModeState& a, const SingleModeState& b);

SingleModeState pad_to(const SingleModeState& s, int n_max);

// squeezing that puts mean total photon number E into the k-photon pair state
SqueezingParam gamma_for_energy(double energy, int k);

struct NumberDistribution {
  std::vector<double> probabilities;  // indexed by sector level n
  int k = 1, j = 0;
  double mean = 0.0;  // mean sector level
};

NumberDistribution number_distribution(const SingleModeState& state, int k = 1,
                                       int j = 0);

}  // namespace mpfock
