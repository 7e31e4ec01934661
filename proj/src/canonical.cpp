#include "fph/canonical.hpp"

#include <cmath>
#include <limits>

namespace fph::canonical {

namespace {

double c_of_alpha(double alpha) { return std::log1p(0.5 * (alpha - 1.0)) / alpha; }

// lambda(alpha) for a given n; strictly increasing in alpha
double lambda_of_alpha(double alpha, int n) {
  return alpha * (n + 1) - 2.0 * std::log1p(0.5 * (alpha - 1.0));
}

double dlambda_dalpha(double alpha, int n) { return (n + 1) - 2.0 / (1.0 + alpha); }

void check_n(int n) {
  if (n < 2) throw std::invalid_argument("canonical: n must be >= 2");
}

}  // namespace

ReparamForward reparam_forward(double alpha, int n) {
  check_n(n);
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::domain_error("reparam_forward: alpha must be finite and > 0");
  const double c = c_of_alpha(alpha);
  const double spacing = 1.0 / (n + 1 - 2.0 * c);
  return {c, spacing, (1.0 - c) * spacing, lambda_of_alpha(alpha, n)};
}

double lambda_to_alpha(double lambda, int n, const SolverOptions& opts) {
  check_n(n);
  if (!(lambda > kTwoLn2))
    throw NoCanonicalPair("lambda_to_alpha: needs lambda > 2 ln 2");
  double hi = 64.0;
  while (lambda_of_alpha(hi, n) < lambda) hi *= 2.0;  // lambda beyond the default bracket
  // bracket from 0 exactly: lambda_of_alpha(0, n) == kTwoLn2, so the existence
  // gate above guarantees a sign change even one ulp past the threshold
  return solve_bracketed([&](double a) { return lambda_of_alpha(a, n) - lambda; },
                         [&](double a) { return dlambda_dalpha(a, n); }, 0.0, hi,
                         opts);
}

std::optional<CanonicalPair> canonical_pair(const GameConfig& config) {
  check_n(config.n);
  if (!(config.lambda > kTwoLn2)) return std::nullopt;
  const auto f = reparam_forward(lambda_to_alpha(config.lambda, config.n), config.n);
  return CanonicalPair{f.hinterland, f.spacing};
}

std::optional<Profile> canonical_profile(const GameConfig& config) {
  const auto pair = canonical_pair(config);
  if (!pair) return std::nullopt;
  std::vector<double> xs(static_cast<size_t>(config.n));
  for (int i = 0; i < config.n; ++i)
    xs[static_cast<size_t>(i)] = pair->hinterland + i * pair->spacing;
  return Profile{std::move(xs)};
}

ReparamPoint beta_pair(double alpha) {
  if (alpha < 0.0 || !std::isfinite(alpha))
    throw std::domain_error("beta_pair: alpha must be finite and >= 0");

  ReparamPoint pt;
  pt.alpha = alpha;
  pt.c = alpha > 0.0 ? c_of_alpha(alpha) : -std::numeric_limits<double>::infinity();

  const SolverOptions opts{1e-15, 1e-14, 300};

  // e^{-2b}(1+b) falls from 1; a root exists for every alpha >= 0
  const double lhs1 = std::exp(-alpha) * (1.0 + alpha);
  if (alpha == 0.0) {
    pt.beta1 = 0.0;
  } else {
    pt.beta1 = solve_bracketed(
        [&](double b) { return std::exp(-2.0 * b) * (1.0 + b) - lhs1; },
        [&](double b) { return std::exp(-2.0 * b) * (-1.0 - 2.0 * b); }, 0.0, 32.0,
        opts);
  }

  // e^{-b}(3/4+b/2) falls from 3/4; a nonnegative root needs lhs <= 3/4
  const double lhs2 = std::exp(-alpha) * (1.0 + 0.5 * alpha);
  if (lhs2 <= 0.75) {
    pt.beta2 = solve_bracketed(
        [&](double b) { return std::exp(-b) * (0.75 + 0.5 * b) - lhs2; },
        [&](double b) { return std::exp(-b) * (-0.25 - 0.5 * b); }, 0.0, 32.0, opts);
  }
  return pt;
}

namespace {

ThresholdResult compute_threshold() {
  const SolverOptions opts{1e-15, 1e-14, 300};
  // smallest alpha at which beta2 exists: e^{-a}(1+a/2) = 3/4
  const double alpha_floor = solve_bracketed(
      [](double a) { return std::exp(-a) * (1.0 + 0.5 * a) - 0.75; },
      [](double a) { return std::exp(-a) * (-0.5 - 0.5 * a); }, 1e-9, 64.0, opts);

  // beta1 - beta2 falls through zero between alpha_floor and 1
  const auto gap = [](double a) {
    const ReparamPoint pt = beta_pair(a);
    return *pt.beta1 - *pt.beta2;
  };
  const double alpha0 =
      solve_bracketed(gap, nullptr, alpha_floor + 1e-9, 1.0, opts);
  return {alpha0, *beta_pair(alpha0).beta1};
}

}  // namespace

double ThresholdResult::lambda_min(int n) const {
  check_n(n);
  return lambda_of_alpha(alpha0, n);
}

const ThresholdResult& threshold() {
  static const ThresholdResult cached = compute_threshold();
  return cached;
}

double lambda_min(int n) { return threshold().lambda_min(n); }

double alpha_max() {
  // stationary point of c(alpha): a/(1+a) = ln((1+a)/2).  Solving the
  // derivative keeps full precision where the maximum itself is flat.
  static const double cached = solve_bracketed(
      [](double a) { return a / (1.0 + a) - std::log1p(0.5 * (a - 1.0)); },
      [](double a) { return -a / ((1.0 + a) * (1.0 + a)); }, 1.0, 10.0,
      SolverOptions{1e-15, 1e-14, 300});
  return cached;
}

double lambda_max(int n) {
  check_n(n);
  return lambda_of_alpha(alpha_max(), n);
}

bool ne_exists(const GameConfig& config) {
  if (config.n <= 2) return true;
  return config.lambda >= lambda_min(config.n);
}

std::optional<Profile> nash_equilibrium(const GameConfig& config) {
  if (config.n == 1) return Profile{{0.5}};
  if (config.n == 2) {
    if (config.lambda > kTwoLn2) return canonical_profile(config);
    return Profile{{0.5, 0.5}};
  }
  if (config.lambda >= lambda_min(config.n)) return canonical_profile(config);
  return std::nullopt;
}

}  // namespace fph::canonical
