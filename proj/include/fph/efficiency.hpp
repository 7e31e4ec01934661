#pragma once

#include <cstdint>
#include <utility>

#include "fph/montecarlo.hpp"
#include "fph/types.hpp"

namespace fph::efficiency {

struct NoEquilibrium : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnsupportedN : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// psi: penalty per unit of clients cut off from every server.
struct AccessCostConfig {
  double psi = 100.0;
};

struct EfficiencyReport {
  double c_free;               // transport cost of the equilibrium profile
  double optimum_cost;         // denominator used for pos/poa
  double pos;
  double poa;
  double optimum_integrated;   // 1/(4n): direct integration of the optimum
  double optimum_reference;    // 1/(2n): conventional figure normalization
  bool reference_normalization;  // true if optimum_cost == optimum_reference
};

struct AccessCost {
  double total;
  double transport;
  double disconnect;  // psi * disconnected fraction
};

// Fault-free transportation cost: integral over [0,1] of the distance to the
// nearest server (exact, piecewise quadratic).
double c_free(const Profile& profile);

// Equally spaced profile (2i-1)/(2n) and its transport cost 1/(4n).
std::pair<Profile, double> social_optimum(int n);

// PoS = PoA = c_free(equilibrium) / optimum (the equilibrium is unique).
// Default denominator is the integrated optimum 1/(4n); pass
// reference_normalization = true for the conventional 1/(2n) variant.
EfficiencyReport pos_poa(const GameConfig& config, bool reference_normalization = false);

// Share of [0,1] cut off from every server by the realized faults.
double disconnected_fraction(const Profile& profile, const FaultSet& faults);

// transport: distance to nearest *accessible* server, integrated over the
// connected pieces; disconnect: psi * disconnected fraction.
AccessCost access_cost(const Profile& profile, const FaultSet& faults,
                       const AccessCostConfig& cfg = {});

enum class DcMode { kClosedForm, kMonteCarlo };

// E[disconnected fraction].  Closed form integrates
//   Pr[y cut off] = (1 - e^{-l * dist to server left of y}) * (same, right)
// piecewise (a factor becomes 1 when that side has no server); Monte Carlo
// averages disconnected_fraction over sampled fault sets.
mc::Estimate expected_disconnected_fraction(const GameConfig& config,
                                            const Profile& profile,
                                            DcMode mode = DcMode::kClosedForm,
                                            long samples = 100000,
                                            std::uint64_t seed = 42);

// Profile minimizing the expected disconnected fraction at the given (n,
// lambda): multi-start coordinate descent on the closed form, mirror
// symmetric around 1/2; the result is perturbation-checked.
Profile optimal_dc_profile(const GameConfig& config);

// A fault-free (lambda = 0) equilibrium used as a comparison profile.
// n = 1 -> (1/2); n = 2 -> (1/2, 1/2); n = 3 has none (throws UnsupportedN).
// n >= 4: peripheral pairs colocated at a and 1-a, n-4 singles equally
// spaced on [3a, 1-3a].  Self-removal makes the equilibrium conditions
//   pair payoff a >= half of every gap, singles >= hinterland,
// i.e. a in [1/(2(n-2)), 1/4 | 1/6 | 1/6 | 1/(n+1)] for n = 4 | 5 | 6 | >=7.
// Every swept candidate is re-verified at lambda = 0 (analytic + grid scan);
// the member minimizing the expected disconnected fraction at the reference
// rate lambda_min(n) is returned (for moderate rates that is the
// equal-spacing member, insensitive to the reference choice).
Profile faultfree_ne_profile(int n);

}  // namespace fph::efficiency
