#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fph {

inline constexpr const char* kVersion = "0.1.0";

// lambda > 2*ln2 is the existence floor for the canonical pair (any n >= 2).
inline constexpr double kTwoLn2 = 1.3862943611198906;

// n servers on the unit segment, point faults arriving as a Poisson process
// with rate lambda.  lambda == 0 is the explicit fault-free variant kept for
// comparison profiles.
struct GameConfig {
  int n;
  double lambda;

  GameConfig(int n_, double lambda_) : n(n_), lambda(lambda_) {
    if (n < 1) throw std::invalid_argument("GameConfig: n must be >= 1");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
      throw std::invalid_argument("GameConfig: lambda must be finite and >= 0");
  }
};

// Sorted server coordinates in [0,1].  Ties (colocated servers) are legal and
// meaningful: the stack size divides the stack's market.
class Profile {
 public:
  explicit Profile(std::vector<double> positions) : pos_(std::move(positions)) {
    if (pos_.empty()) throw std::invalid_argument("Profile: empty");
    for (double x : pos_)
      if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("Profile: position outside [0,1]");
    std::sort(pos_.begin(), pos_.end());
  }

  int size() const { return static_cast<int>(pos_.size()); }
  double operator[](int i) const { return pos_[static_cast<size_t>(i)]; }
  const std::vector<double>& positions() const { return pos_; }

  // stack size at position i (count of coordinates exactly equal to pos[i])
  int gamma(int i) const {
    check_index(i);
    const double x = pos_[static_cast<size_t>(i)];
    auto lo = std::lower_bound(pos_.begin(), pos_.end(), x);
    auto hi = std::upper_bound(pos_.begin(), pos_.end(), x);
    return static_cast<int>(hi - lo);
  }

  void check_index(int i) const {
    if (i < 0 || i >= size()) throw std::invalid_argument("Profile: bad player index");
  }

 private:
  std::vector<double> pos_;
};

// Strictly increasing fault coordinates in the open interval (0,1).
class FaultSet {
 public:
  FaultSet() = default;
  explicit FaultSet(std::vector<double> points) : pts_(std::move(points)) {
    std::sort(pts_.begin(), pts_.end());
    for (size_t k = 0; k < pts_.size(); ++k) {
      if (!(pts_[k] > 0.0 && pts_[k] < 1.0))
        throw std::invalid_argument("FaultSet: fault outside (0,1)");
      if (k > 0 && pts_[k] == pts_[k - 1])
        throw std::invalid_argument("FaultSet: duplicate fault");
    }
  }

  bool empty() const { return pts_.empty(); }
  int size() const { return static_cast<int>(pts_.size()); }
  const std::vector<double>& points() const { return pts_; }

 private:
  std::vector<double> pts_;
};

// The segment of clients a server captures under one realized fault set.
struct Market {
  double left;
  double right;
  double length() const { return right - left; }
};

}  // namespace fph
