#include "fph/deviate.hpp"

#include <algorithm>
#include <cmath>

#include "fph/payoff.hpp"
#include "fph/rootfind.hpp"

namespace fph::deviate {

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct Candidate {
  double point;
  double payoff;
};

// payoff of the full profile with player i moved to t (gamma-divided, so
// exact colocation values are what a grid scan should see)
double moved_payoff(const GameConfig& config, const Profile& profile, int i,
                    double t) {
  std::vector<double> xs = profile.positions();
  xs[static_cast<size_t>(i)] = t;
  const Profile mutated{std::move(xs)};
  // locate the moved player in the re-sorted profile; any member of the
  // stack at t has the same payoff
  const auto& ps = mutated.positions();
  const int j = static_cast<int>(std::lower_bound(ps.begin(), ps.end(), t) - ps.begin());
  return payoff::expected_payoff(config, mutated, j).total;
}

}  // namespace

RegionOptimum hinterland_optimum(double lambda, double s) {
  if (lambda < 0.0 || !std::isfinite(lambda))
    throw std::domain_error("hinterland_optimum: bad lambda");
  if (!(s > 0.0 && s <= 1.0))
    throw std::domain_error("hinterland_optimum: need s in (0,1]");

  if (lambda * s <= kLn2)
    return {s, payoff::eh(lambda, s)};  // profit rises all the way to the neighbour

  // optimality condition as a log residual: l(s-2t) - ln((1 + l(s-t))/2) = 0,
  // strictly decreasing in t, bracketed by [0, s]
  const auto f = [&](double t) {
    return lambda * (s - 2.0 * t) - std::log(0.5 * (1.0 + lambda * (s - t)));
  };
  const auto df = [&](double t) {
    return -2.0 * lambda + lambda / (1.0 + lambda * (s - t));
  };
  const double t = solve_bracketed(f, df, 0.0, s, SolverOptions{1e-14, 1e-13, 300});
  return {t, payoff::peripheral_profit(lambda, t, s)};
}

RegionOptimum internal_optimum(double lambda, double s) {
  if (lambda < 0.0 || !std::isfinite(lambda))
    throw std::domain_error("internal_optimum: bad lambda");
  if (!(s >= 0.0 && s <= 1.0))
    throw std::domain_error("internal_optimum: need s in [0,1]");
  return {0.5 * s, 2.0 * payoff::em(lambda, 0.5 * s)};
}

DeviationReport best_response(const GameConfig& config, const Profile& profile, int i) {
  profile.check_index(i);
  if (profile.size() != config.n)
    throw std::invalid_argument("best_response: profile size != config.n");
  const double l = config.lambda;
  const double here = profile[i];
  const double current = payoff::expected_payoff(config, profile, i).total;

  std::vector<Candidate> cands;
  cands.push_back({here, current});

  if (config.n == 1) {
    // whole segment free: eh(t) + eh(1-t) is concave, peak at the centre
    cands.push_back({0.5, 2.0 * payoff::eh(l, 0.5)});
  } else {
    std::vector<double> others = profile.positions();
    others.erase(others.begin() + i);

    if (others.front() > 0.0) {
      const auto h = hinterland_optimum(l, others.front());
      cands.push_back({h.t, h.payoff});
    }
    if (others.back() < 1.0) {
      const auto h = hinterland_optimum(l, 1.0 - others.back());
      cands.push_back({1.0 - h.t, h.payoff});  // mirrored
    }
    for (size_t k = 0; k + 1 < others.size(); ++k) {
      const double a = others[k], b = others[k + 1];
      if (b > a) {
        const auto m = internal_optimum(l, b - a);
        cands.push_back({a + m.t, m.payoff});
      }
    }
    if (config.n == 2) {
      // colocating on the opponent is a real candidate only in the 2-player
      // game; both then split the whole segment
      const double y = others.front();
      cands.push_back({y, 0.5 * (payoff::eh(l, y) + payoff::eh(l, 1.0 - y))});
    }
  }

  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.point < b.point; });
  const Candidate* best = &cands.front();
  for (const auto& c : cands)
    if (c.payoff > best->payoff) best = &c;

  return {i, best->point, best->payoff, current, best->payoff - current};
}

VerifyResult verify_equilibrium(const GameConfig& config, const Profile& profile,
                                double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("verify_equilibrium: tol must be > 0");
  VerifyResult res;
  res.is_equilibrium = true;
  for (int i = 0; i < profile.size(); ++i) {
    res.reports.push_back(best_response(config, profile, i));
    if (res.reports.back().gain > tol) res.is_equilibrium = false;
  }
  return res;
}

VerifyResult verify_equilibrium_grid(const GameConfig& config, const Profile& profile,
                                     double tol, int grid) {
  if (!(tol > 0.0) || grid < 2)
    throw std::invalid_argument("verify_equilibrium_grid: bad tol or grid");
  VerifyResult res;
  res.is_equilibrium = true;
  for (int i = 0; i < profile.size(); ++i) {
    const double current = payoff::expected_payoff(config, profile, i).total;
    double best_t = profile[i];
    double best_v = current;
    for (int k = 0; k <= grid; ++k) {
      const double t = static_cast<double>(k) / grid;
      const double v = moved_payoff(config, profile, i, t);
      if (v > best_v) {
        best_v = v;
        best_t = t;
      }
    }
    // refine around the winning grid cell (payoff is smooth inside a region)
    const double step = 1.0 / grid;
    double lo = std::max(0.0, best_t - step), hi = std::min(1.0, best_t + step);
    for (int it = 0; it < 60; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (moved_payoff(config, profile, i, m1) <
          moved_payoff(config, profile, i, m2))
        lo = m1;
      else
        hi = m2;
    }
    const double t_ref = 0.5 * (lo + hi);
    const double v_ref = moved_payoff(config, profile, i, t_ref);
    if (v_ref > best_v) {
      best_v = v_ref;
      best_t = t_ref;
    }
    res.reports.push_back({i, best_t, best_v, current, best_v - current});
    if (best_v - current > tol) res.is_equilibrium = false;
  }
  return res;
}

bool internal_hinterland_test(const canonical::CanonicalPair& pair, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("internal_hinterland_test: bad lambda");
  const double internal = 2.0 * payoff::em(lambda, pair.spacing);
  const double hinterland = hinterland_optimum(lambda, pair.hinterland).payoff;
  // tiny slack keeps the exact-threshold boundary (equality case) stable
  return internal >= hinterland - 1e-12;
}

}  // namespace fph::deviate
