#pragma once

#include <cstdint>
#include <vector>

#include "fph/types.hpp"

namespace fph::mc {

struct Estimate {
  double mean;
  double std_error;  // NaN when samples < 2
};

// Empirical per-player payoffs over `samples` fault draws.  Work is split
// into a fixed number of shards with seeds derived from `seed`, so results
// are byte-identical regardless of how many threads actually run.
std::vector<Estimate> payoffs(const GameConfig& config, const Profile& profile,
                              long samples, std::uint64_t seed);

// Empirical mean disconnected fraction over sampled fault sets.
Estimate disconnected_fraction(const GameConfig& config, const Profile& profile,
                               long samples, std::uint64_t seed);

}  // namespace fph::mc
