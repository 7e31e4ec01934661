#include <doctest.h>

#include <cmath>
#include <random>

#include "fph/canonical.hpp"

using namespace fph;

TEST_CASE("alpha = 1 collapses to equal spacing at lambda = n + 1") {
  const auto pair = canonical::canonical_pair({3, 4.0});
  REQUIRE(pair.has_value());
  CHECK(pair->hinterland == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(pair->spacing == doctest::Approx(0.25).epsilon(1e-13));
  const auto profile = canonical::canonical_profile({3, 4.0});
  REQUIRE(profile.has_value());
  CHECK(profile->positions()[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(profile->positions()[1] == doctest::Approx(0.50).epsilon(1e-12));
  CHECK(profile->positions()[2] == doctest::Approx(0.75).epsilon(1e-12));

  const auto pair5 = canonical::canonical_pair({4, 5.0});
  REQUIRE(pair5.has_value());
  CHECK(pair5->hinterland == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(pair5->spacing == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("a frozen asymmetric pair solution") {
  // independently solved from the raw two-equation system (no alpha route)
  const auto pair = canonical::canonical_pair({4, 2.0});
  REQUIRE(pair.has_value());
  CHECK(pair->hinterland == doctest::Approx(0.3548781648143047).epsilon(1e-12));
  CHECK(pair->spacing == doctest::Approx(0.0967478901237968).epsilon(1e-12));
}

TEST_CASE("pair solutions satisfy the defining equations") {
  std::mt19937_64 gen(555);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 9);
    const double lambda = kTwoLn2 + 1e-3 + 25.0 * uni(gen);
    const auto pair = canonical::canonical_pair({n, lambda});
    REQUIRE(pair.has_value());
    const double H = pair->hinterland, M = pair->spacing;
    CHECK(std::exp(lambda * (M - H)) ==
          doctest::Approx(0.5 * (1.0 + lambda * M)).epsilon(1e-11));
    CHECK(2.0 * H + (n - 1) * M == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lambda * H > std::log(2.0));
  }
}

TEST_CASE("rate-to-alpha inversion round-trips") {
  for (const int n : {2, 3, 7}) {
    for (const double lambda : {1.5, 2.0, 6.0, 40.0}) {
      const double alpha = canonical::lambda_to_alpha(lambda, n);
      CHECK(canonical::reparam_forward(alpha, n).lambda ==
            doctest::Approx(lambda).epsilon(1e-12));
    }
  }
  // the rate map is strictly increasing in alpha
  double prev = 0.0;
  for (double a = 0.1; a < 8.0; a += 0.1) {
    const double l = canonical::reparam_forward(a, 3).lambda;
    CHECK(l > prev);
    prev = l;
  }
}

TEST_CASE("no pair at or below 2 ln 2") {
  CHECK_FALSE(canonical::canonical_pair({3, kTwoLn2}).has_value());
  CHECK_FALSE(canonical::canonical_pair({3, 1.0}).has_value());
  CHECK(canonical::canonical_pair({3, kTwoLn2 + 1e-9}).has_value());
  CHECK_THROWS_AS(canonical::lambda_to_alpha(1.0, 3), canonical::NoCanonicalPair);
  CHECK_THROWS_AS(canonical::canonical_pair({1, 4.0}), std::invalid_argument);
}

TEST_CASE("threshold constants") {
  const auto& th = canonical::threshold();
  // frozen from an independent high-precision solve of the beta crossing
  CHECK(th.alpha0 == doctest::Approx(0.5881295229819782).epsilon(1e-12));
  CHECK(th.beta0 == doctest::Approx(0.11900725741211873).epsilon(1e-10));
  CHECK(canonical::lambda_min(3) == doctest::Approx(2.8136986068688405).epsilon(1e-12));
  CHECK(canonical::lambda_min(4) == doctest::Approx(3.4018281298508186).epsilon(1e-12));
  CHECK(canonical::lambda_min(5) == doctest::Approx(3.989957652832797).epsilon(1e-12));
  // the threshold line is exactly linear in n with slope alpha0
  CHECK(canonical::lambda_min(9) - canonical::lambda_min(8) ==
        doctest::Approx(th.alpha0).epsilon(1e-12));
}

TEST_CASE("the two auxiliary roots and their crossing") {
  const auto pt = canonical::beta_pair(1.0);
  REQUIRE(pt.beta1.has_value());
  REQUIRE(pt.beta2.has_value());
  // frozen from independent solves of the two scalar equations
  CHECK(*pt.beta1 == doctest::Approx(0.2748346527689907).epsilon(1e-12));
  CHECK(*pt.beta2 == doctest::Approx(0.6813161398224086).epsilon(1e-12));
  // residuals in the defining equations
  CHECK(std::exp(-2.0 * *pt.beta1) * (1.0 + *pt.beta1) ==
        doctest::Approx(std::exp(-1.0) * 2.0).epsilon(1e-13));
  CHECK(std::exp(-*pt.beta2) * (0.75 + 0.5 * *pt.beta2) ==
        doctest::Approx(std::exp(-1.0) * 1.5).epsilon(1e-13));

  // beta2 exists exactly from the point where e^{-a}(1+a/2) drops to 3/4
  CHECK_FALSE(canonical::beta_pair(0.5176).beta2.has_value());
  CHECK(canonical::beta_pair(0.5184).beta2.has_value());
  CHECK(canonical::beta_pair(0.0).beta1 == 0.0);

  // the crossing defines the existence threshold
  const double alpha0 = canonical::threshold().alpha0;
  const auto below = canonical::beta_pair(alpha0 - 1e-6);
  const auto above = canonical::beta_pair(alpha0 + 1e-6);
  CHECK(*below.beta1 > *below.beta2);
  CHECK(*above.beta1 < *above.beta2);
}

TEST_CASE("spread maximum of the reparameterized family") {
  // stationary point of c(alpha), frozen from an independent derivative solve
  const double am = canonical::alpha_max();
  CHECK(am == doctest::Approx(3.3110704070010066).epsilon(1e-10));
  CHECK(canonical::reparam_forward(am, 5).c ==
        doctest::Approx(0.2319609529865344).epsilon(1e-12));
  CHECK(canonical::lambda_max(5) == doctest::Approx(18.33034434797911).epsilon(1e-9));
  // c decreases on both sides of the maximum
  const double cm = canonical::reparam_forward(am, 5).c;
  CHECK(canonical::reparam_forward(am - 0.05, 5).c < cm);
  CHECK(canonical::reparam_forward(am + 0.05, 5).c < cm);
  // c at the existence threshold (the least spread member)
  CHECK(canonical::reparam_forward(canonical::threshold().alpha0, 5).c ==
        doctest::Approx(-0.3920739368792573).epsilon(1e-10));
}

TEST_CASE("equilibrium classification by n") {
  // n = 1: middle of the segment
  const auto one = canonical::nash_equilibrium({1, 3.0});
  REQUIRE(one.has_value());
  CHECK(one->positions() == std::vector<double>{0.5});

  // n = 2: colocated centre at low rates, the pair otherwise
  const auto low = canonical::nash_equilibrium({2, 1.0});
  REQUIRE(low.has_value());
  CHECK(low->positions() == std::vector<double>{0.5, 0.5});
  const auto high = canonical::nash_equilibrium({2, 4.0});
  REQUIRE(high.has_value());
  CHECK(high->positions()[0] ==
        doctest::Approx(1.0 - high->positions()[1]).epsilon(1e-12));
  CHECK(high->positions()[0] < 0.5);

  // n >= 3: existence exactly from lambda_min
  const double lmin = canonical::lambda_min(3);
  CHECK_FALSE(canonical::nash_equilibrium({3, lmin - 1e-6}).has_value());
  CHECK(canonical::nash_equilibrium({3, lmin}).has_value());
  CHECK(canonical::ne_exists({3, lmin}));
  CHECK_FALSE(canonical::ne_exists({3, lmin - 1e-6}));
  CHECK(canonical::ne_exists({2, 0.1}));
}

TEST_CASE("canonical profiles are symmetric and ordered") {
  for (const double lambda : {4.0, 9.0, 30.0}) {
    for (const int n : {2, 5, 8}) {
      const auto p = canonical::canonical_profile({n, lambda});
      REQUIRE(p.has_value());
      const auto& xs = p->positions();
      for (int i = 0; i < n; ++i) {
        CHECK(xs[static_cast<size_t>(i)] ==
              doctest::Approx(1.0 - xs[static_cast<size_t>(n - 1 - i)]).epsilon(1e-12));
        if (i > 0) CHECK(xs[static_cast<size_t>(i)] > xs[static_cast<size_t>(i - 1)]);
      }
    }
  }
}
