#pragma once

#include <cstdint>
#include <utility>

#include "ranger/rng.hpp"

namespace ranger {

/// Tolerance used for all probability-sum validation in this module.
inline constexpr double kProbTolerance = 1e-12;

/// H/V polarization label of a single detected photon.
enum class Polarization : uint8_t { H, V };

/// Numeric encoding used by the moment statistics: H -> +1, V -> -1.
inline int spin(Polarization p) { return p == Polarization::H ? +1 : -1; }

inline char polarization_char(Polarization p) { return p == Polarization::H ? 'H' : 'V'; }

/// The anti-correlated two-photon source state. H/V measurements on the two
/// photons always disagree and each marginal is exactly 1/2. The phase only
/// matters to the coherent branch of InteractionMixture; it is invisible to
/// every H/V-basis statistic this library produces.
struct BellPairSpec {
  double phase = 0.0; // radians
};

/// Probabilistic decomposition of the target interaction: the outbound photon
/// is absorbed (lost), depolarized (mixed), or survives with a phase shift
/// (coherent). Diagnostic only; see mixture_marginal.
struct InteractionMixture {
  double a_lost = 0.0;
  double b_mixed = 0.0;
  double c_coherent = 0.0;
  double phase = 0.0; // radians, coherent branch only

  /// Components must be probabilities summing to 1. Throws ValidationError.
  void validate() const;
};

/// Post-hit collapse bias: probability a (b) that the second photon lands in
/// H (V) after the outbound photon reaches the target. The unassigned mass
/// 1-a-b leaves the second photon completely mixed, so it splits evenly.
struct BiasModel {
  double a = 0.0;
  double b = 0.0;

  /// Requires a >= 0, b >= 0, a + b <= 1 (within kProbTolerance).
  void validate() const;
};

/// Marginal H/V outcome distribution for the second photon.
struct OutcomeDistribution {
  double p_h = 0.5;
  double p_v = 0.5;

  void validate() const;
};

/// Sample one pair measurement before the hit: returns (photon1, photon2)
/// with strictly opposite polarizations and P(photon2 = H) = 1/2.
std::pair<Polarization, Polarization> pre_hit_outcome(const BellPairSpec &spec, PairRng &rng);

/// Second-photon outcome distribution after the hit: p_h = a + (1-a-b)/2,
/// p_v = b + (1-a-b)/2.
OutcomeDistribution post_hit_distribution(const BiasModel &bias);

/// Probability of H for the second photon under the full interaction mixture.
/// Every canonical component is H/V balanced, so this is 1/2 for any valid
/// mixture; the ranging signal exists only under the separate BiasModel.
double mixture_marginal(const InteractionMixture &m);

/// Draw one polarization from d: H with probability p_h.
Polarization sample_outcome(const OutcomeDistribution &d, PairRng &rng);

} // namespace ranger
