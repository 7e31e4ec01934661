#pragma once

#include <vector>

#include "fph/canonical.hpp"
#include "fph/types.hpp"

namespace fph::deviate {

// Best alternative location for one player, against their current payoff.
struct DeviationReport {
  int player;
  double best_point;
  double best_payoff;
  double current_payoff;
  double gain;  // best_payoff - current_payoff
};

struct RegionOptimum {
  double t;       // offset inside the region
  double payoff;
};

struct VerifyResult {
  bool is_equilibrium;
  std::vector<DeviationReport> reports;
};

// Optimal position inside a hinterland of length s whose inner end is capped
// by a neighbour at distance s from the boundary: payoff eh(t) + em(s-t).
// For lambda*s <= ln 2 the payoff increases all the way to t = s; otherwise
// the optimum is the interior root of
//   e^{l(s-2t)} = (1 + l(s-t)) / 2
// and lambda*t > ln 2 there.
RegionOptimum hinterland_optimum(double lambda, double s);

// Optimal position inside an internal region of length s: the centre.
RegionOptimum internal_optimum(double lambda, double s);

// Max over the region optima formed by the other n-1 players, plus staying
// put (and, for n = 2 only, colocating on the opponent: for n >= 3 colocation
// is dominated by an adjacent interior point).  Region boundary optima are
// reported with their continuous-extension payoff.  Ties go to the smallest
// coordinate.
DeviationReport best_response(const GameConfig& config, const Profile& profile, int i);

// True iff no player's best response gains more than tol.
VerifyResult verify_equilibrium(const GameConfig& config, const Profile& profile,
                                double tol = 1e-9);

// Independent check: uniform grid of `grid` candidate deviations per player
// (plus a local refinement pass), evaluated with payoff::expected_payoff on
// the mutated profile only, none of the region-optimum math above.
VerifyResult verify_equilibrium_grid(const GameConfig& config, const Profile& profile,
                                     double tol = 1e-9, int grid = 10000);

// Equilibrium condition for the canonical pair: an internal player must not
// prefer the optimal hinterland point, 2 em(M) >= eh(t*) + em(H - t*).
bool internal_hinterland_test(const canonical::CanonicalPair& pair, double lambda);

}  // namespace fph::deviate
