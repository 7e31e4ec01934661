#pragma once

#include <optional>

#include "fph/rootfind.hpp"
#include "fph/types.hpp"

namespace fph::canonical {

// No canonical pair exists at the requested rate (needs lambda > 2 ln 2).
struct NoCanonicalPair : std::domain_error {
  using std::domain_error::domain_error;
};

// (H, M): hinterland length and inter-server spacing solving
//   e^{l(M-H)} = (1+lM)/2      (region balance)
//   2H + (n-1)M = 1            (segment partition)
//   lH > ln 2                  (interior hinterland optimum)
struct CanonicalPair {
  double hinterland;  // H
  double spacing;     // M
};

// The scalar reparameterization alpha = lambda*M, c = 1 - H/M that makes the
// pair system explicit, plus the two auxiliary roots classifying existence.
struct ReparamPoint {
  double alpha;
  double c;
  std::optional<double> beta1;  // root of e^{-a}(1+a)   = e^{-2b}(1+b)
  std::optional<double> beta2;  // root of e^{-a}(1+a/2) = e^{-b}(3/4+b/2), if any
};

struct ReparamForward {
  double c;
  double spacing;     // M = 1/(n+1-2c)
  double hinterland;  // H = (1-c)M
  double lambda;      // a(n+1) - 2 ln((1+a)/2)
};

// Existence threshold: alpha0 is where beta1 and beta2 cross; the minimal
// rate admitting an equilibrium is linear in n through alpha0.
struct ThresholdResult {
  double alpha0;
  double beta0;
  double lambda_min(int n) const;
};

ReparamForward reparam_forward(double alpha, int n);

// inverse of ReparamForward::lambda (strictly increasing in alpha); throws
// NoCanonicalPair for lambda <= 2 ln 2
double lambda_to_alpha(double lambda, int n, const SolverOptions& opts = {});

std::optional<CanonicalPair> canonical_pair(const GameConfig& config);

// x_i = H + (i-1)M; nullopt when no canonical pair exists
std::optional<Profile> canonical_profile(const GameConfig& config);

ReparamPoint beta_pair(double alpha);

// cached: computed once per process
const ThresholdResult& threshold();
double lambda_min(int n);

// argmax of c(alpha) (root of c'(alpha) = 0 on [1,10]) and the induced rate;
// the largest-spread end of the equilibrium family alongside lambda_min
double alpha_max();
double lambda_max(int n);

bool ne_exists(const GameConfig& config);

// n=1 -> (1/2); n=2 -> canonical pair if lambda > 2 ln 2 else (1/2, 1/2);
// n>=3 -> canonical profile if lambda >= lambda_min(n), else nullopt
std::optional<Profile> nash_equilibrium(const GameConfig& config);

}  // namespace fph::canonical
