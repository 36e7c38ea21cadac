#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mpfock/measures.hpp"
#include "mpfock/report.hpp"
#include "mpfock/separability.hpp"
#include "mpfock/states.hpp"

namespace mpfock::cli {

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidSpec = 2;
inline constexpr int kExitTruncation = 3;
inline constexpr int kExitSector = 4;
inline constexpr int kExitStandardize = 5;

struct StateOptions {
  std::string family;  // tmsv | mp_tmsv | thermal | mp_thermal | product | file
  std::optional<double> gamma, r, energy, nbar, nu;
  std::optional<int> k, j, n_max;
  std::optional<std::string> path;  // family=file
  std::shared_ptr<StateOptions> mode1, mode2;
  double tail_budget = kTailBudget;
};

StateOptions parse_state_spec(const Json& spec);
Json echo_options(const StateOptions& o);

struct BuiltState {
  std::variant<TwoModeState, SingleModeState> state;
  int build_k = 1;  // ladder order the state was constructed on
  Json echo;

  bool two_mode() const { return std::holds_alternative<TwoModeState>(state); }
  const TwoModeState& two() const { return std::get<TwoModeState>(state); }
  const SingleModeState& single() const {
    return std::get<SingleModeState>(state);
  }
  const TruncationConfig& config() const;
};

BuiltState build_state(const StateOptions& o);

// ladder order for analysis: explicit wins, then the build order, then the
// populated-level spacing
int resolve_k(const BuiltState& b, int requested);

Json state_payload(const BuiltState& b);
Json cov_payload(const TwoModeState& s, int k);
Json separability_payload(const TwoModeState& s, int k, double boundary_tol = 1e-9);
Json sector_payload(const BuiltState& b, int k, bool inferred);
Json measures_payload(const BuiltState& b, int k, std::optional<int> compare_k,
                      std::optional<double> pmin_energy);
Json wigner_header(const WignerGrid& w, int k, int j, int mode);
std::string wigner_csv(const WignerGrid& w);

struct Invocation {
  std::string command;  // state | cov | wigner | separability | measures | sector
  StateOptions state;
  int k = 0;  // 0 = resolve automatically
  std::optional<int> j;
  int mode = 1;
  double grid_range = 0.0;
  int grid_points = 201;
  std::optional<int> compare_k;
  std::optional<double> pmin_energy;
  std::string out;  // empty = stdout
};

int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err);

// full argv interface (CLI11 parsing + dispatch); args excludes argv[0]
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mpfock::cli
