#pragma once

#include <vector>

#include "fph/rng.hpp"
#include "fph/types.hpp"

namespace fph::faultline {

// One draw of the fault process: cumulative Exponential(lambda) inter-arrival
// times, truncated at 1.  lambda == 0 yields the empty set.
FaultSet sample_faults(double lambda, RandomStream& stream);

// Realized market [L_i, R_i] of player i.  Per side: the nearest fault
// strictly between the server and its neighbour bounds the market; with no
// such fault the boundary is the midpoint toward the neighbour, or the
// segment end if there is no neighbour.  A fault exactly at a server's
// coordinate does not block that server's own point.
Market realized_market(const Profile& profile, int i, const FaultSet& faults);

// (R_i - L_i) / gamma_i for one realized fault set.
double realized_payoff(const Profile& profile, int i, const FaultSet& faults);

// All players at once (same values as realized_payoff; one pass).
std::vector<double> realized_payoffs(const Profile& profile, const FaultSet& faults);

// Total length of fault-delimited pieces containing no server.
double disconnected_length(const Profile& profile, const FaultSet& faults);

}  // namespace fph::faultline
