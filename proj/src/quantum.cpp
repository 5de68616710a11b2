#include "ranger/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ranger/errors.hpp"

namespace ranger {

namespace {

void require_probability(double p, const char *name) {
  // Ranges get the same slack as sums so values assembled by floating-point
  // arithmetic (like 1 - a - b) stay acceptable.
  if (!(p >= -kProbTolerance && p <= 1.0 + kProbTolerance) || std::isnan(p)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

} // namespace

void InteractionMixture::validate() const {
  require_probability(a_lost, "a_lost");
  require_probability(b_mixed, "b_mixed");
  require_probability(c_coherent, "c_coherent");
  const double sum = a_lost + b_mixed + c_coherent;
  if (std::abs(sum - 1.0) > kProbTolerance) {
    throw ValidationError("mixture components must sum to 1, got " + std::to_string(sum));
  }
}

void BiasModel::validate() const {
  if (!(a >= 0.0) || std::isnan(a)) {
    throw ValidationError("bias a must be >= 0, got " + std::to_string(a));
  }
  if (!(b >= 0.0) || std::isnan(b)) {
    throw ValidationError("bias b must be >= 0, got " + std::to_string(b));
  }
  if (a + b > 1.0 + kProbTolerance) {
    throw ValidationError("bias requires a + b <= 1, got a=" + std::to_string(a) +
                          " b=" + std::to_string(b));
  }
}

void OutcomeDistribution::validate() const {
  require_probability(p_h, "p_h");
  require_probability(p_v, "p_v");
  if (std::abs(p_h + p_v - 1.0) > kProbTolerance) {
    throw ValidationError("outcome distribution must sum to 1");
  }
}

std::pair<Polarization, Polarization> pre_hit_outcome(const BellPairSpec & /*spec*/, PairRng &rng) {
  // The source state forces opposite outcomes; the phase drops out of every
  // H/V projective statistic, so it is not read here.
  const Polarization second = rng.next_double() < 0.5 ? Polarization::H : Polarization::V;
  const Polarization first = second == Polarization::H ? Polarization::V : Polarization::H;
  return {first, second};
}

OutcomeDistribution post_hit_distribution(const BiasModel &bias) {
  bias.validate();
  const double leftover = 1.0 - bias.a - bias.b;
  // Clamp away the sub-tolerance negatives that a + b == 1 can leave behind.
  return {std::clamp(bias.a + leftover / 2.0, 0.0, 1.0),
          std::clamp(bias.b + leftover / 2.0, 0.0, 1.0)};
}

double mixture_marginal(const InteractionMixture &m) {
  m.validate();
  // H/V marginal of each canonical component for the second photon:
  //   lost     -> completely mixed, 1/2
  //   mixed    -> equal classical |HH>/|VV> mixture, 1/2
  //   coherent -> anti-correlated state with a phase factor of unit modulus, 1/2
  constexpr double lost_marginal = 0.5;
  constexpr double mixed_marginal = 0.5;
  constexpr double coherent_marginal = 0.5;
  return m.a_lost * lost_marginal + m.b_mixed * mixed_marginal + m.c_coherent * coherent_marginal;
}

Polarization sample_outcome(const OutcomeDistribution &d, PairRng &rng) {
  return rng.next_double() < d.p_h ? Polarization::H : Polarization::V;
}

} // namespace ranger
