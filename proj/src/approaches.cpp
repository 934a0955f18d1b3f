#include "ricneg/approaches.hpp"

#include <future>
#include <thread>

namespace ricneg {

std::optional<WeightVec> chamber_check(const WeightSystem& ws) {
  for (const auto& mu : ws.dominant_weights())
    if (ws.datum().is_strictly_dominant(mu)) return mu;
  return std::nullopt;
}

std::optional<WeightVec> chamber_check(const HighestWeight& lambda, Caps caps) {
  return chamber_check(WeightSystem(lambda, caps));
}

std::optional<WeightVec> orbit_check(const WeightSystem& ws) {
  const RootDatum& d = ws.datum();
  for (const auto& mu : ws.dominant_weights()) {
    if (rv_is_zero(mu.eps)) continue;
    bool ok = true;
    for (const auto& r : d.positive_roots()) {
      const WeightVec up{rv_add(mu.eps, r.vec.eps)};
      const WeightVec dn{rv_sub(mu.eps, r.vec.eps)};
      if (d.dominant_representative(up).first == mu ||
          d.dominant_representative(dn).first == mu) {
        ok = false;
        break;
      }
    }
    if (ok) return mu;
  }
  return std::nullopt;
}

std::optional<WeightVec> orbit_check(const HighestWeight& lambda, Caps caps) {
  return orbit_check(WeightSystem(lambda, caps));
}

bool zero_weight_check(const HighestWeight& lambda, Caps caps) {
  (void)caps;  // membership tests are closed-form, no enumeration
  const RootDatum& d = *lambda.datum;
  if (!is_weight(lambda, d.zero())) return false;
  for (int f = 0; f < d.num_factors(); ++f) {
    if (!is_weight(lambda, d.highest_root(f))) return false;
    if (const auto hs = d.highest_short_root(f))
      if (!is_weight(lambda, *hs)) return false;
  }
  return true;
}

ApproachReport classify(const HighestWeight& lambda, Caps caps) {
  ApproachReport rep;
  rep.lambda = lambda;
  const WeightSystem ws(lambda, caps);
  rep.chamber = chamber_check(ws);
  rep.orbit = orbit_check(ws);
  rep.zero = zero_weight_check(lambda, caps);
  rep.certified = rep.chamber.has_value() || rep.orbit.has_value() || rep.zero;
  return rep;
}

std::vector<ApproachReport> scan(std::shared_ptr<const RootDatum> datum,
                                 long long max_coeff, Caps caps, unsigned threads) {
  if (max_coeff < 0) throw std::invalid_argument("scan: max_coeff must be >= 0");
  const int n = datum->rank();
  std::vector<std::vector<long long>> lambdas;
  std::vector<long long> cur(n, 0);
  for (;;) {
    lambdas.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == max_coeff) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }

  std::vector<ApproachReport> out(lambdas.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, lambdas.size());
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t]() {
      for (std::size_t i = t; i < lambdas.size(); i += threads)
        out[i] = classify(HighestWeight::make(datum, lambdas[i]), caps);
    }));
  for (auto& j : jobs) j.get();
  return out;
}

std::optional<WeightVec> product_chamber_check(
    const SemisimpleType& type, const std::vector<std::vector<long long>>& lambdas,
    Caps caps) {
  if (lambdas.size() != type.factors.size())
    throw std::invalid_argument("product_chamber_check: one lambda per factor");
  std::vector<long long> concat;
  for (std::size_t f = 0; f < type.factors.size(); ++f) {
    auto fd = RootDatum::build(SemisimpleType::single(type.factors[f]));
    const auto wit = chamber_check(HighestWeight::make(fd, lambdas[f]), caps);
    if (!wit) return std::nullopt;
    for (const auto& c : fd->omega_coords(*wit)) concat.push_back(to_ll(c));
  }
  auto full = RootDatum::build(type);
  RatVec omega(concat.begin(), concat.end());
  return full->from_omega(omega);
}

bool verify_finiteness_r(const SimpleType& type, long long r, std::size_t node_budget) {
  if (r < 1) throw std::invalid_argument("verify_finiteness_r: r must be >= 1");
  auto d = RootDatum::build(SemisimpleType::single(type));
  Caps caps;
  caps.support_cap = node_budget;
  for (int i = 0; i < d->rank(); ++i) {
    std::vector<long long> omega(d->rank(), 0);
    omega[i] = r;
    // Strictly dominant nu with r*omega_i - nu a nonzero sum of positive
    // roots <=> a regular weight of V_{r omega_i} below the highest weight.
    // r*omega_i itself is never strictly dominant for rank >= 2; for rank 1
    // it is, and the empty sum is excluded, so handle that case directly.
    WeightSystem ws(HighestWeight::make(d, omega), caps);
    bool found = false;
    for (std::size_t k = 0; k < ws.dominant_weights().size(); ++k) {
      if (ws.depth(k) == 0) continue;  // the empty subtraction does not count
      if (d->is_strictly_dominant(ws.dominant_weights()[k])) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace ricneg
