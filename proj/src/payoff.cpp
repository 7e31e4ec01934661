#include "fph/payoff.hpp"

#include <cmath>

namespace fph::payoff {

namespace {

void check_domain(double lambda, double d) {
  if (lambda < 0.0 || !std::isfinite(lambda))
    throw std::domain_error("payoff: lambda must be finite and >= 0");
  if (d < 0.0 || !std::isfinite(d))
    throw std::domain_error("payoff: region length must be finite and >= 0");
}

}  // namespace

double eh(double lambda, double d) {
  check_domain(lambda, d);
  if (lambda == 0.0) return d;
  // (1/l)(1 - e^{-ld}) via expm1 so the l -> 0 limit keeps full relative
  // precision instead of cancelling.
  return -std::expm1(-lambda * d) / lambda;
}

double em(double lambda, double d) {
  check_domain(lambda, d);
  if (lambda == 0.0) return 0.5 * d;
  const double x = lambda * d;
  // 1 - e^{-x}(1+x/2) = -expm1(-x) - (x/2)e^{-x}; both terms are O(x), the
  // difference is x/2 + O(x^3), so the subtraction loses at most one bit.
  return (-std::expm1(-x) - 0.5 * x * std::exp(-x)) / lambda;
}

double eh_dd(double lambda, double d) {
  check_domain(lambda, d);
  return std::exp(-lambda * d);
}

double em_dd(double lambda, double d) {
  check_domain(lambda, d);
  const double x = lambda * d;
  return 0.5 * (1.0 + x) * std::exp(-x);
}

double peripheral_profit(double lambda, double t, double s) {
  if (t < 0.0 || t > s) throw std::domain_error("peripheral_profit: need 0 <= t <= s");
  return eh(lambda, t) + em(lambda, s - t);
}

double internal_profit(double lambda, double t, double s) {
  if (t < 0.0 || t > s) throw std::domain_error("internal_profit: need 0 <= t <= s");
  return em(lambda, t) + em(lambda, s - t);
}

PayoffBreakdown expected_payoff(const GameConfig& config, const Profile& profile,
                                int i) {
  profile.check_index(i);
  if (profile.size() != config.n)
    throw std::invalid_argument("expected_payoff: profile size != config.n");

  const auto& xs = profile.positions();
  const double x = profile[i];
  const double l = config.lambda;

  // nearest strictly smaller / strictly larger coordinates; members of a
  // colocated stack all see the same pair of neighbours.
  auto lo = std::lower_bound(xs.begin(), xs.end(), x);
  auto hi = std::upper_bound(xs.begin(), xs.end(), x);

  double left, right;
  if (lo == xs.begin())
    left = eh(l, x);  // left-peripheral: hinterland [0, x]
  else
    left = em(l, x - *(lo - 1));
  if (hi == xs.end())
    right = eh(l, 1.0 - x);  // right-peripheral
  else
    right = em(l, *hi - x);

  const int gamma = static_cast<int>(hi - lo);
  return {left, right, gamma, (left + right) / gamma};
}

}  // namespace fph::payoff
