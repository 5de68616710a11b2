#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "ranger/errors.hpp"
#include "ranger/quantum.hpp"
#include "ranger/rng.hpp"

#include "test_support.hpp"

using namespace ranger;

TEST_CASE("pre_hit_outcome is always anti-correlated") {
  const BellPairSpec spec{0.0};
  for (uint64_t seed : {1ULL, 7ULL, 123456789ULL}) {
    for (uint64_t pair = 0; pair < 2000; ++pair) {
      PairRng rng(seed, pair);
      const auto [first, second] = pre_hit_outcome(spec, rng);
      CHECK(first != second);
    }
  }
}

TEST_CASE("pre_hit_outcome photon-2 marginal is 1/2 within 4 sigma") {
  const BellPairSpec spec{0.0};
  constexpr uint64_t kDraws = 1000000;
  uint64_t h = 0;
  for (uint64_t pair = 0; pair < kDraws; ++pair) {
    PairRng rng(9, pair);
    const auto [first, second] = pre_hit_outcome(spec, rng);
    (void)first;
    h += second == Polarization::H ? 1 : 0;
  }
  // 4-sigma binomial band around 1/2: 0.5 +/- 0.002 at 10^6 draws
  CHECK(testsup::within_binomial_4sigma(h, kDraws, 0.5));
}

TEST_CASE("pre_hit_outcome is exactly phase-invariant") {
  // Phase never enters H/V projective statistics, so outcomes at the same
  // stream position must be identical draw by draw, not just in distribution.
  const BellPairSpec zero{0.0};
  const BellPairSpec pi{3.14159265358979323846};
  for (uint64_t pair = 0; pair < 10000; ++pair) {
    PairRng rng_a(5, pair);
    PairRng rng_b(5, pair);
    CHECK(pre_hit_outcome(zero, rng_a) == pre_hit_outcome(pi, rng_b));
  }
}

TEST_CASE("post_hit_distribution splits the unassigned mass evenly") {
  SUBCASE("full collapse (1,0)") {
    const auto d = post_hit_distribution({1.0, 0.0});
    CHECK(d.p_h == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.p_v == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("balanced (0.5,0.5)") {
    const auto d = post_hit_distribution({0.5, 0.5});
    CHECK(d.p_h == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.p_v == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("partial assignment (0.2,0.1)") {
    const auto d = post_hit_distribution({0.2, 0.1});
    CHECK(d.p_h == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(d.p_v == doctest::Approx(0.45).epsilon(1e-12));
  }
}

TEST_CASE("post_hit_distribution always normalizes") {
  for (int ia = 0; ia <= 20; ++ia) {
    for (int ib = 0; ia + ib <= 20; ++ib) {
      const double a = ia * 0.05;
      const double b = ib * 0.05;
      const auto d = post_hit_distribution({a, b});
      CHECK(std::abs(d.p_h + d.p_v - 1.0) <= 1e-12);
      CHECK(d.p_h >= 0.0);
      CHECK(d.p_v >= 0.0);
      // observable bias is exactly a - b
      CHECK(d.p_h - d.p_v == doctest::Approx(a - b).epsilon(1e-12));
    }
  }
}

TEST_CASE("BiasModel rejects a + b > 1") {
  CHECK_THROWS_AS(post_hit_distribution({0.7, 0.4}), ValidationError);
  CHECK_THROWS_AS(post_hit_distribution({-0.1, 0.2}), ValidationError);
  CHECK_THROWS_AS(post_hit_distribution({0.2, -0.1}), ValidationError);
  CHECK_NOTHROW(post_hit_distribution({0.7, 0.3}));
}

TEST_CASE("mixture_marginal is 1/2 for the canonical components") {
  CHECK(mixture_marginal({1.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mixture_marginal({0.0, 1.0, 0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mixture_marginal({0.2, 0.3, 0.5, 1.3}) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("mixture_marginal is 1/2 over the whole simplex grid") {
  // 0.05-step grid over A + B + C = 1; phase varied along the grid to show it
  // never enters.
  for (int ia = 0; ia <= 20; ++ia) {
    for (int ib = 0; ib + ia <= 20; ++ib) {
      const double a = ia * 0.05;
      const double b = ib * 0.05;
      const double c = 1.0 - a - b;
      const double phase = 0.37 * ia - 1.1 * ib;
      CHECK(mixture_marginal({a, b, c, phase}) == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("InteractionMixture rejects bad component sums") {
  CHECK_THROWS_AS(mixture_marginal({0.5, 0.5, 0.5, 0.0}), ValidationError);
  CHECK_THROWS_AS(mixture_marginal({0.2, 0.2, 0.2, 0.0}), ValidationError);
  CHECK_THROWS_AS(mixture_marginal({-0.2, 0.7, 0.5, 0.0}), ValidationError);
}

TEST_CASE("sample_outcome honors degenerate distributions") {
  for (uint64_t pair = 0; pair < 1000; ++pair) {
    PairRng rng_h(3, pair);
    PairRng rng_v(3, pair);
    CHECK(sample_outcome({1.0, 0.0}, rng_h) == Polarization::H);
    CHECK(sample_outcome({0.0, 1.0}, rng_v) == Polarization::V);
  }
}

TEST_CASE("sample_outcome balanced distribution is 1/2 within 4 sigma") {
  constexpr uint64_t kDraws = 100000;
  uint64_t h = 0;
  for (uint64_t pair = 0; pair < kDraws; ++pair) {
    PairRng rng(11, pair);
    h += sample_outcome({0.5, 0.5}, rng) == Polarization::H ? 1 : 0;
  }
  // 0.5 +/- 0.0063 at 10^5 draws
  CHECK(testsup::within_binomial_4sigma(h, kDraws, 0.5));
}

TEST_CASE("spin encoding maps H to +1 and V to -1") {
  CHECK(spin(Polarization::H) == 1);
  CHECK(spin(Polarization::V) == -1);
}
