#pragma once

#include "fph/types.hpp"

namespace fph::payoff {

// Per-player expected payoff split into the two half-markets.  gamma is the
// colocation count; total = (left + right) / gamma.
struct PayoffBreakdown {
  double left;
  double right;
  int gamma;
  double total;
};

// Expected share of a hinterland of length d (region between the boundary of
// the segment and the nearest server): (1/l)(1 - e^{-ld}); -> d as l -> 0.
double eh(double lambda, double d);

// Expected share of an internal region of length d measured from one of the
// two flanking servers: (1/l)(1 - e^{-ld}(1 + ld/2)); -> d/2 as l -> 0.
double em(double lambda, double d);

// d/dd derivatives (used by the region optimizers and derivative tests).
double eh_dd(double lambda, double d);  // e^{-ld}
double em_dd(double lambda, double d);  // ((1+ld)/2) e^{-ld}

// Continuous extensions for a server at offset t inside a region of length s.
// These ignore the colocation drop at t == 0 / t == s; optimizers use them,
// expected_payoff below applies the gamma division instead.
double peripheral_profit(double lambda, double t, double s);  // eh(t) + em(s-t)
double internal_profit(double lambda, double t, double s);    // em(t) + em(s-t)

// Closed-form expected payoff of player i in the given profile.
PayoffBreakdown expected_payoff(const GameConfig& config, const Profile& profile,
                                int i);

}  // namespace fph::payoff
