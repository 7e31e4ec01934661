#include "fph/rootfind.hpp"

#include <algorithm>
#include <cmath>

namespace fph {

double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df, double lo,
                       double hi, const SolverOptions& opts) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi))
    throw std::invalid_argument("solve_bracketed: no sign change on bracket");

  double x = 0.5 * (lo + hi);
  double fx = f(x);
  for (int it = 0; it < opts.max_iter; ++it) {
    // shrink the bracket around the current estimate
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }

    double next = 0.0;
    bool have_next = false;
    if (df) {
      const double d = df(x);
      if (d != 0.0 && std::isfinite(d)) {
        const double cand = x - fx / d;
        if (cand > lo && cand < hi) {
          next = cand;
          have_next = true;
        }
      }
    }
    if (!have_next) next = 0.5 * (lo + hi);

    const double step = std::abs(next - x);
    x = next;
    fx = f(x);
    if (fx == 0.0) break;

    const double scale = std::max(1.0, std::abs(x));
    const bool tiny_step = step <= std::max(opts.root_tol * 1e-4, 4.0 * 0x1.0p-52 * scale);
    const bool tiny_bracket = (hi - lo) <= std::max(opts.root_tol * 1e-4, 4.0 * 0x1.0p-52 * scale);
    if ((tiny_step || tiny_bracket) && std::abs(fx) <= opts.residual_tol) break;
    if (tiny_bracket && tiny_step) break;
  }
  return x;
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol) {
  if (!(hi > lo)) throw std::invalid_argument("golden_max: empty interval");
  constexpr double invphi = 0.6180339887498949;   // 1/phi
  constexpr double invphi2 = 0.3819660112501051;  // 1/phi^2
  double a = lo, b = hi;
  double c = a + invphi2 * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = a + invphi2 * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace fph
