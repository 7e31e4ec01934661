#include "fph/faultline.hpp"

#include <algorithm>
#include <cmath>

namespace fph::faultline {

FaultSet sample_faults(double lambda, RandomStream& stream) {
  if (lambda < 0.0 || !std::isfinite(lambda))
    throw std::invalid_argument("sample_faults: lambda must be finite and >= 0");
  if (lambda == 0.0) return FaultSet{};

  std::vector<double> pts;
  double t = 0.0;
  for (;;) {
    t += stream.exponential(lambda);
    if (t >= 1.0) break;
    // zero-length gaps (probability ~2^-53 per draw) would break the
    // strictly-increasing invariant; drop the duplicate point.
    if (!pts.empty() && t == pts.back()) continue;
    if (t > 0.0) pts.push_back(t);
  }
  return FaultSet{std::move(pts)};
}

Market realized_market(const Profile& profile, int i, const FaultSet& faults) {
  profile.check_index(i);
  const auto& xs = profile.positions();
  const auto& fs = faults.points();
  const double x = profile[i];

  auto plo = std::lower_bound(xs.begin(), xs.end(), x);
  auto phi = std::upper_bound(xs.begin(), xs.end(), x);
  const bool has_left_nb = plo != xs.begin();
  const bool has_right_nb = phi != xs.end();
  const double xl = has_left_nb ? *(plo - 1) : -1.0;
  const double xr = has_right_nb ? *phi : 2.0;

  auto flo = std::lower_bound(fs.begin(), fs.end(), x);   // first fault >= x
  auto fhi = std::upper_bound(fs.begin(), fs.end(), x);   // first fault > x
  const bool has_left_f = flo != fs.begin();
  const bool has_right_f = fhi != fs.end();

  double left;
  if (has_left_f && *(flo - 1) > xl)
    left = *(flo - 1);                       // fault strictly between us and the neighbour
  else if (!has_left_nb)
    left = 0.0;                              // unobstructed hinterland
  else
    left = 0.5 * (xl + x);                   // no separating fault: split at the midpoint

  double right;
  if (has_right_f && *fhi < xr)
    right = *fhi;
  else if (!has_right_nb)
    right = 1.0;
  else
    right = 0.5 * (x + xr);

  return {left, right};
}

double realized_payoff(const Profile& profile, int i, const FaultSet& faults) {
  const Market m = realized_market(profile, i, faults);
  return m.length() / profile.gamma(i);
}

std::vector<double> realized_payoffs(const Profile& profile, const FaultSet& faults) {
  const int n = profile.size();
  std::vector<double> out(static_cast<size_t>(n));
  // colocated stacks share one market; compute per stack, divide by size
  for (int i = 0; i < n;) {
    int j = i + 1;
    while (j < n && profile[j] == profile[i]) ++j;
    const Market m = realized_market(profile, i, faults);
    const double share = m.length() / (j - i);
    for (int k = i; k < j; ++k) out[static_cast<size_t>(k)] = share;
    i = j;
  }
  return out;
}

double disconnected_length(const Profile& profile, const FaultSet& faults) {
  const auto& xs = profile.positions();
  const auto& fs = faults.points();
  double dc = 0.0;
  double lo = 0.0;
  size_t k = 0;
  for (size_t p = 0; p <= fs.size(); ++p) {
    const double hi = (p < fs.size()) ? fs[p] : 1.0;
    // advance to the first server >= lo; a server exactly on a fault point
    // serves both adjacent pieces (faults never block their own server)
    while (k < xs.size() && xs[k] < lo) ++k;
    const bool served = k < xs.size() && xs[k] <= hi;
    if (!served) dc += hi - lo;
    lo = hi;
  }
  return dc;
}

}  // namespace fph::faultline
