#ifndef RICNEG_APPROACHES_HPP
#define RICNEG_APPROACHES_HPP

#include "ricneg/repweights.hpp"

#include <optional>

namespace ricneg {

/// Outcome of the three certification approaches for one highest weight:
///  - chamber: a regular weight of V_lambda (Weyl chamber approach),
///  - orbit:   a nonzero weight mu0 with mu0 + alpha outside W*mu0 for every
///             root alpha (Weyl orbit approach),
///  - zero:    0 and all roots are weights (zero weight approach).
struct ApproachReport {
  HighestWeight lambda;
  std::optional<WeightVec> chamber;
  std::optional<WeightVec> orbit;
  bool zero = false;
  bool certified = false;
};

/// First regular weight of V_lambda in the canonical dominant order
/// (shallowest first), or nothing. Searching dominant weights suffices: the
/// support is W-stable and regularity is W-invariant.
std::optional<WeightVec> chamber_check(const HighestWeight& lambda, Caps caps = {});
std::optional<WeightVec> chamber_check(const WeightSystem& ws);

/// First nonzero dominant weight mu0 of V_lambda with
/// dom(mu0 + alpha) != mu0 for every root alpha, or nothing. The highest
/// weight itself is tried first.
std::optional<WeightVec> orbit_check(const HighestWeight& lambda, Caps caps = {});
std::optional<WeightVec> orbit_check(const WeightSystem& ws);

/// True iff 0 is a weight and every root is a weight. Roots form at most two
/// Weyl orbits per simple factor, so only the highest long and short roots
/// are tested.
bool zero_weight_check(const HighestWeight& lambda, Caps caps = {});

ApproachReport classify(const HighestWeight& lambda, Caps caps = {});

/// Reports for all lambda with omega-coordinates in [0, max_coeff],
/// lexicographically ordered. Evaluates in parallel; output order is
/// deterministic.
std::vector<ApproachReport> scan(std::shared_ptr<const RootDatum> datum,
                                 long long max_coeff, Caps caps = {},
                                 unsigned threads = 0);

/// Concatenation of per-factor regular witnesses, when every factor of the
/// product has one.
std::optional<WeightVec> product_chamber_check(
    const SemisimpleType& type, const std::vector<std::vector<long long>>& lambdas,
    Caps caps = {});

/// Whether every fundamental weight omega_i of the given simple type admits a
/// sum of positive roots whose subtraction from r*omega_i lands strictly
/// inside the fundamental chamber. False is exhaustive; a blown node budget
/// throws CapExceeded instead.
bool verify_finiteness_r(const SimpleType& type, long long r,
                         std::size_t node_budget = 200'000);

}  // namespace ricneg

#endif
