#pragma once

#include <array>

#include "mpfock/fock.hpp"

namespace mpfock {

// entropies are in nats
double von_neumann_entropy(const SingleModeState& state);
double von_neumann_entropy(const TwoModeState& state);

double purity(const SingleModeState& state);
double purity(const TwoModeState& state);

struct EnergyReport {
  double total = 0.0;
  std::array<double, 2> per_mode = {0.0, 0.0};
  int k = 1;  // energy counted in k-photon ladder units
};

double mean_energy(const SingleModeState& state, int k = 1);
EnergyReport mean_energy(const TwoModeState& state, int k = 1);

// entropy of one reduced mode of a pure two-mode state
double entanglement_entropy(const TwoModeState& state, double purity_tol = 1e-8);

// minimum over energy splits of the purity product of two sector-thermal
// modes holding total mean energy E on the order-k ladder
double p_min(double energy, int k);

}  // namespace mpfock
