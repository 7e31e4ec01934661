// Shared independent oracles for the test suites: a quadrature routine and a
// second, structurally different sampler for the fault process.  Nothing here
// reuses the numerics under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

// adaptive Simpson quadrature
inline double simpson_step(const std::function<double(double)>& f, double a,
                           double b, double fa, double fm, double fb, double whole,
                           double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  if (!(b > a)) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Fault process drawn the other way around: a Poisson count, then that many
// iid uniform positions.  Distributionally identical to the cumulative
// exponential construction but sharing no code or RNG mapping with it.
inline std::vector<double> count_uniform_faults(double lambda, std::mt19937_64& gen) {
  std::vector<double> faults;
  if (lambda > 0.0) {
    std::poisson_distribution<int> count(lambda);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    const int k = count(gen);
    faults.reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
      const double p = pos(gen);
      if (p > 0.0 && p < 1.0) faults.push_back(p);
    }
    std::sort(faults.begin(), faults.end());
    faults.erase(std::unique(faults.begin(), faults.end()), faults.end());
  }
  return faults;
}

}  // namespace oracles
