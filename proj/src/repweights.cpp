#include "ricneg/repweights.hpp"

#include <algorithm>
#include <deque>

namespace ricneg {

HighestWeight HighestWeight::make(std::shared_ptr<const RootDatum> datum,
                                  std::vector<long long> omega_coords) {
  if (!datum) throw std::invalid_argument("highest weight needs a root datum");
  if (static_cast<int>(omega_coords.size()) != datum->rank())
    throw std::invalid_argument("highest weight has wrong number of coordinates");
  for (const auto c : omega_coords)
    if (c < 0) throw std::invalid_argument("highest weight coordinates must be >= 0");
  return HighestWeight{std::move(datum), std::move(omega_coords)};
}

std::string HighestWeight::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(omega[i]);
  }
  return s + ")";
}

bool HighestWeight::is_zero() const {
  return std::all_of(omega.begin(), omega.end(), [](long long c) { return c == 0; });
}

WeightVec rho(const RootDatum& datum) { return datum.half_sum_positive_roots(); }

namespace {

/// lambda - nu must be a nonnegative integer combination of simple roots.
bool below_in_root_order(const RootDatum& d, const WeightVec& lambda, const WeightVec& nu) {
  RatVec diff = rv_sub(lambda.eps, nu.eps);
  for (const auto& c : d.alpha_coords(WeightVec{diff})) {
    if (!is_integer(c) || c < 0) return false;
  }
  return true;
}

}  // namespace

WeightSystem::WeightSystem(HighestWeight lambda, Caps caps)
    : lambda_(std::move(lambda)), caps_(caps) {
  const RootDatum& d = *lambda_.datum;
  rho_ = rho(d);
  const WeightVec top = lambda_.vec();

  // Dominant support = { dominant nu : lambda - nu in Z>=0 * simple roots }.
  // Walk over dominant representatives with steps dom(nu +- gamma) for
  // positive roots gamma, keeping points below lambda. Any weight xi != lambda
  // has xi + alpha_i again a weight for some simple i (otherwise xi would be a
  // second highest weight), so the full weight set is connected by simple-root
  // moves; conjugating each move into the dominant chamber turns it into a
  // step of exactly this form, which makes the walk complete. Subtracting a
  // positive root can leave the dominant cone and come back higher up, so
  // plain downward steps are not enough (E8, lambda = w1: no single positive
  // root leads from lambda to the rest of the support).
  std::map<WeightVec, long long> seen;  // weight -> depth below lambda
  std::deque<WeightVec> frontier;
  const Rat top_norm = d.inner(top, top);
  seen.emplace(top, 0);
  frontier.push_back(top);
  while (!frontier.empty()) {
    const WeightVec nu = frontier.front();
    frontier.pop_front();
    for (const auto& r : d.positive_roots())
      for (const int sign : {-1, +1}) {
        const WeightVec moved{sign < 0 ? rv_sub(nu.eps, r.vec.eps)
                                       : rv_add(nu.eps, r.vec.eps)};
        if (d.inner(moved, moved) > top_norm) continue;  // outside conv(W.lambda)
        WeightVec child = d.dominant_representative(moved).first;
        if (seen.count(child)) continue;
        if (!below_in_root_order(d, top, child)) continue;
        const long long depth =
            d.positive_height(WeightVec{rv_sub(top.eps, child.eps)});
        seen.emplace(child, depth);
        if (seen.size() > caps_.support_cap)
          throw CapExceeded("dominant support exceeds cap " +
                            std::to_string(caps_.support_cap));
        frontier.push_back(std::move(child));
      }
  }

  dominant_.reserve(seen.size());
  for (const auto& [w, dep] : seen) dominant_.push_back(w);
  std::sort(dominant_.begin(), dominant_.end(), [&](const WeightVec& a, const WeightVec& b) {
    const long long da = seen.at(a), db = seen.at(b);
    if (da != db) return da < db;
    return lex_compare(a.eps, b.eps) < 0;
  });
  depths_.reserve(dominant_.size());
  for (std::size_t i = 0; i < dominant_.size(); ++i) {
    depths_.push_back(seen.at(dominant_[i]));
    index_.emplace(dominant_[i], i);
  }
}

Int WeightSystem::dim() const {
  if (dim_ == 0) {
    const RootDatum& d = *lambda_.datum;
    const WeightVec lr{rv_add(lambda_.vec().eps, rho_.eps)};
    Rat prod = 1;
    for (const auto& r : d.positive_roots())
      prod *= d.inner(lr, r.vec) / d.inner(rho_, r.vec);
    if (!is_integer(prod)) throw std::logic_error("Weyl dimension is not an integer");
    dim_ = numerator(prod);
  }
  return dim_;
}

bool WeightSystem::is_weight(const WeightVec& mu) const {
  const RootDatum& d = *lambda_.datum;
  const WeightVec rep = d.dominant_representative(mu).first;
  return below_in_root_order(d, lambda_.vec(), rep);
}

void WeightSystem::ensure_multiplicities() const {
  std::call_once(mult_once_, [this]() {
    const RootDatum& d = *lambda_.datum;
    const WeightVec top = lambda_.vec();
    const Rat top_norm = d.inner(WeightVec{rv_add(top.eps, rho_.eps)},
                                 WeightVec{rv_add(top.eps, rho_.eps)});
    mults_.assign(dominant_.size(), 0);
    // Freudenthal, top down: weights above mu are already known.
    for (std::size_t i = 0; i < dominant_.size(); ++i) {
      const WeightVec& mu = dominant_[i];
      if (depths_[i] == 0) {
        mults_[i] = 1;
        continue;
      }
      Rat sum = 0;
      for (const auto& r : d.positive_roots()) {
        for (long long k = 1;; ++k) {
          WeightVec up{rv_add(mu.eps, rv_scale(r.vec.eps, Rat(k)))};
          const WeightVec rep = d.dominant_representative(up).first;
          if (!below_in_root_order(d, top, rep)) break;  // strings are unbroken
          const auto it = index_.find(rep);
          if (it == index_.end())
            throw std::logic_error("Freudenthal: missing dominant representative");
          sum += Rat(mults_[it->second]) * d.inner(up, r.vec);
        }
      }
      const WeightVec mr{rv_add(mu.eps, rho_.eps)};
      const Rat denom = top_norm - d.inner(mr, mr);
      if (denom == 0) throw std::logic_error("Freudenthal: vanishing denominator");
      const Rat m = 2 * sum / denom;
      if (!is_integer(m) || m <= 0)
        throw std::logic_error("Freudenthal: non-positive-integer multiplicity");
      mults_[i] = numerator(m);
    }
  });
}

const std::vector<Int>& WeightSystem::dominant_multiplicities() const {
  ensure_multiplicities();
  return mults_;
}

Int WeightSystem::multiplicity(const WeightVec& mu) const {
  const RootDatum& d = *lambda_.datum;
  const WeightVec rep = d.dominant_representative(mu).first;
  const auto it = index_.find(rep);
  if (it == index_.end()) return 0;
  ensure_multiplicities();
  return mults_[it->second];
}

std::vector<std::pair<WeightVec, Int>> WeightSystem::all_weights() const {
  ensure_multiplicities();
  const RootDatum& d = *lambda_.datum;
  std::vector<std::pair<WeightVec, Int>> out;
  for (std::size_t i = 0; i < dominant_.size(); ++i) {
    for (const auto& w : d.weyl_orbit(dominant_[i], caps_.orbit_cap)) {
      out.emplace_back(w, mults_[i]);
      if (out.size() > caps_.weight_cap)
        throw CapExceeded("weight expansion exceeds cap");
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<std::pair<WeightVec, Int>> dominant_support(const HighestWeight& lambda,
                                                        Caps caps) {
  WeightSystem ws(lambda, caps);
  const auto& mults = ws.dominant_multiplicities();
  std::vector<std::pair<WeightVec, Int>> out;
  out.reserve(mults.size());
  for (std::size_t i = 0; i < mults.size(); ++i)
    out.emplace_back(ws.dominant_weights()[i], mults[i]);
  return out;
}

Int multiplicity(const HighestWeight& lambda, const WeightVec& mu, Caps caps) {
  return WeightSystem(lambda, caps).multiplicity(mu);
}

Int dimension(const HighestWeight& lambda) {
  // Only the Weyl product; no support enumeration.
  const RootDatum& d = *lambda.datum;
  const WeightVec r = rho(d);
  const WeightVec lr{rv_add(lambda.vec().eps, r.eps)};
  Rat prod = 1;
  for (const auto& root : d.positive_roots())
    prod *= d.inner(lr, root.vec) / d.inner(r, root.vec);
  if (!is_integer(prod)) throw std::logic_error("Weyl dimension is not an integer");
  return numerator(prod);
}

bool is_weight(const HighestWeight& lambda, const WeightVec& mu) {
  const RootDatum& d = *lambda.datum;
  const WeightVec rep = d.dominant_representative(mu).first;
  RatVec diff = rv_sub(lambda.vec().eps, rep.eps);
  for (const auto& c : d.alpha_coords(WeightVec{diff}))
    if (!is_integer(c) || c < 0) return false;
  return true;
}

}  // namespace ricneg
