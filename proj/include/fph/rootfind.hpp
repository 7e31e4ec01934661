#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace fph {

// Advertised defaults; the solvers keep polishing past them while Newton
// steps still make progress, so roots usually land near machine precision.
struct SolverOptions {
  double residual_tol = 1e-12;
  double root_tol = 1e-10;
  int max_iter = 200;
};

// Bracketed root of f on [lo, hi] (f(lo), f(hi) of opposite sign): bisection
// with Newton steps whenever df is given and the step stays inside the
// bracket.  Throws if the bracket is invalid.
double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df, double lo,
                       double hi, const SolverOptions& opts = {});

// Golden-section maximizer of a unimodal f on [lo, hi]; returns the argmax
// located to within xtol.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol = 1e-10);

inline double golden_min(const std::function<double(double)>& f, double lo,
                         double hi, double xtol = 1e-10) {
  return golden_max([&](double x) { return -f(x); }, lo, hi, xtol);
}

}  // namespace fph
