#include "ricneg/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

namespace ricneg {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t weyl_order_of(const SimpleType& t) {
  const int n = t.rank;
  switch (t.family) {
    case Family::A: return factorial(n + 1);
    case Family::B:
    case Family::C: return factorial(n) << n;
    case Family::D: return factorial(n) << (n - 1);
    case Family::G: return 12;
    case Family::F: return 1152;
    case Family::E:
      if (n == 6) return 51840;
      if (n == 7) return 2903040;
      return 696729600;  // E8
  }
  return 1;
}

struct FactorBasis {
  int ambient = 0;
  std::vector<RatVec> simple;  // rank vectors of length `ambient`
  Rat scale;                   // form = scale * (standard dot product)
};

RatVec eps(int dim, std::initializer_list<std::pair<int, Rat>> entries) {
  RatVec v(dim, 0);
  for (const auto& [i, x] : entries) v[i] = x;
  return v;
}

/// Simple roots in the classical epsilon coordinates; `scale` normalizes the
/// form so long roots get squared length 2.
FactorBasis simple_root_basis(const SimpleType& t) {
  FactorBasis fb;
  const int n = t.rank;
  const Rat half(1, 2);
  switch (t.family) {
    case Family::A: {
      fb.ambient = n + 1;
      fb.scale = 1;
      for (int i = 0; i < n; ++i)
        fb.simple.push_back(eps(fb.ambient, {{i, 1}, {i + 1, -1}}));
      break;
    }
    case Family::B: {
      fb.ambient = n;
      fb.scale = 1;
      for (int i = 0; i + 1 < n; ++i)
        fb.simple.push_back(eps(n, {{i, 1}, {i + 1, -1}}));
      fb.simple.push_back(eps(n, {{n - 1, 1}}));
      break;
    }
    case Family::C: {
      fb.ambient = n;
      fb.scale = half;  // long roots are 2*e_i
      for (int i = 0; i + 1 < n; ++i)
        fb.simple.push_back(eps(n, {{i, 1}, {i + 1, -1}}));
      fb.simple.push_back(eps(n, {{n - 1, 2}}));
      break;
    }
    case Family::D: {
      fb.ambient = n;
      fb.scale = 1;
      for (int i = 0; i + 1 < n; ++i)
        fb.simple.push_back(eps(n, {{i, 1}, {i + 1, -1}}));
      fb.simple.push_back(eps(n, {{n - 2, 1}, {n - 1, 1}}));
      break;
    }
    case Family::G: {
      fb.ambient = 3;
      fb.scale = Rat(1, 3);  // long roots have standard squared length 6
      fb.simple.push_back(eps(3, {{0, 1}, {1, -1}}));
      fb.simple.push_back(eps(3, {{0, -2}, {1, 1}, {2, 1}}));
      break;
    }
    case Family::F: {
      fb.ambient = 4;
      fb.scale = 1;
      fb.simple.push_back(eps(4, {{1, 1}, {2, -1}}));
      fb.simple.push_back(eps(4, {{2, 1}, {3, -1}}));
      fb.simple.push_back(eps(4, {{3, 1}}));
      fb.simple.push_back(eps(4, {{0, half}, {1, -half}, {2, -half}, {3, -half}}));
      break;
    }
    case Family::E: {
      fb.ambient = 8;
      fb.scale = 1;
      RatVec a1(8, -half);
      a1[0] = half;
      a1[7] = half;
      fb.simple.push_back(a1);
      fb.simple.push_back(eps(8, {{0, 1}, {1, 1}}));
      for (int i = 0; i < n - 2; ++i)
        fb.simple.push_back(eps(8, {{i, -1}, {i + 1, 1}}));
      break;
    }
  }
  return fb;
}

}  // namespace

SimpleType SimpleType::make(Family f, int rank) {
  bool ok = false;
  switch (f) {
    case Family::A: ok = rank >= 1; break;
    case Family::B: ok = rank >= 2; break;
    case Family::C: ok = rank >= 2; break;
    case Family::D: ok = rank >= 3; break;
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
  }
  if (!ok)
    throw std::invalid_argument("invalid simple type " +
                                std::string(1, static_cast<char>(f)) + std::to_string(rank));
  return SimpleType{f, rank};
}

std::string SimpleType::str() const {
  return std::string(1, static_cast<char>(family)) + std::to_string(rank);
}

SemisimpleType SemisimpleType::parse(std::string_view s) {
  SemisimpleType out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos])));
    if (c < 'A' || c > 'G')
      throw std::invalid_argument("cannot parse type string '" + std::string(s) + "'");
    ++pos;
    std::size_t end = pos;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    if (end == pos)
      throw std::invalid_argument("missing rank in type string '" + std::string(s) + "'");
    int rank = 0;
    std::from_chars(s.data() + pos, s.data() + end, rank);
    out.factors.push_back(SimpleType::make(static_cast<Family>(c), rank));
    pos = end;
    if (pos < s.size()) {
      if (std::tolower(static_cast<unsigned char>(s[pos])) != 'x')
        throw std::invalid_argument("expected 'x' separator in '" + std::string(s) + "'");
      ++pos;
      if (pos == s.size())
        throw std::invalid_argument("trailing separator in '" + std::string(s) + "'");
    }
  }
  if (out.factors.empty())
    throw std::invalid_argument("empty type string");
  return out;
}

int SemisimpleType::rank() const {
  int r = 0;
  for (const auto& f : factors) r += f.rank;
  return r;
}

std::string SemisimpleType::str() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "x";
    s += factors[i].str();
  }
  return s;
}

std::shared_ptr<const RootDatum> RootDatum::build(const SemisimpleType& type) {
  for (const auto& f : type.factors) SimpleType::make(f.family, f.rank);
  if (type.factors.empty()) throw std::invalid_argument("empty semisimple type");

  auto datum = std::shared_ptr<RootDatum>(new RootDatum());
  RootDatum& d = *datum;
  d.type_ = type;
  d.rank_ = type.rank();

  // Assemble the block-diagonal ambient space.
  int simple_off = 0, amb_off = 0;
  d.weyl_order_ = 1;
  for (const auto& f : type.factors) {
    FactorBasis fb = simple_root_basis(f);
    d.factor_first_simple_.push_back(simple_off);
    d.factor_ambient_offset_.push_back(amb_off);
    d.factor_ambient_dim_.push_back(fb.ambient);
    for (const auto& root : fb.simple) {
      RatVec full(amb_off, 0);
      full.insert(full.end(), root.begin(), root.end());
      d.simple_roots_.push_back(WeightVec{full});
    }
    simple_off += f.rank;
    amb_off += fb.ambient;
    d.weyl_order_ *= weyl_order_of(f);
  }
  d.ambient_dim_ = amb_off;
  for (auto& sr : d.simple_roots_) sr.eps.resize(amb_off, 0);

  d.form_scale_.assign(amb_off, 1);
  for (std::size_t f = 0; f < type.factors.size(); ++f) {
    const Rat s = simple_root_basis(type.factors[f]).scale;
    for (int k = 0; k < d.factor_ambient_dim_[f]; ++k)
      d.form_scale_[d.factor_ambient_offset_[f] + k] = s;
  }

  const int n = d.rank_;
  d.gram_.assign(n, RatVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d.gram_[i][j] = d.inner(d.simple_roots_[i], d.simple_roots_[j]);

  d.cartan_.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rat c = 2 * d.gram_[i][j] / d.gram_[j][j];
      d.cartan_[i][j] = to_ll(c);
    }

  // Positive roots from the Cartan matrix alone, via root strings:
  // gamma = beta + alpha_i is a root iff q = p - <beta, alpha_i^vee> > 0,
  // where p is the largest k with beta - k*alpha_i still a root.
  std::set<std::vector<long long>> root_set;
  std::deque<std::vector<long long>> frontier;
  for (int i = 0; i < n; ++i) {
    std::vector<long long> a(n, 0);
    a[i] = 1;
    root_set.insert(a);
    frontier.push_back(a);
  }
  while (!frontier.empty()) {
    const auto beta = frontier.front();
    frontier.pop_front();
    for (int i = 0; i < n; ++i) {
      std::vector<long long> gamma = beta;
      gamma[i] += 1;
      if (root_set.count(gamma)) continue;
      long long pairing = 0;
      for (int j = 0; j < n; ++j) pairing += beta[j] * d.cartan_[j][i];
      long long p = 0;
      std::vector<long long> down = beta;
      for (;;) {
        down[i] -= 1;
        bool nonpos = true;
        for (const auto x : down)
          if (x > 0) { nonpos = false; break; }
        if (nonpos || !root_set.count(down)) break;
        ++p;
      }
      if (p - pairing > 0) {
        root_set.insert(gamma);
        frontier.push_back(gamma);
      }
    }
  }

  for (const auto& a : root_set) {
    Root r;
    r.alpha = a;
    r.height = 0;
    RatVec v(amb_off, 0);
    for (int j = 0; j < n; ++j) {
      r.height += static_cast<int>(a[j]);
      if (a[j] != 0)
        for (int k = 0; k < amb_off; ++k)
          v[k] += Rat(a[j]) * d.simple_roots_[j].eps[k];
    }
    r.vec = WeightVec{v};
    for (std::size_t f = 0; f < type.factors.size(); ++f) {
      const int lo = d.factor_first_simple_[f];
      const int hi = lo + type.factors[f].rank;
      for (int j = lo; j < hi; ++j)
        if (a[j] != 0) { r.factor = static_cast<int>(f); break; }
    }
    r.is_long = (d.norm2(r.vec) == 2);
    d.positive_roots_.push_back(std::move(r));
  }
  std::sort(d.positive_roots_.begin(), d.positive_roots_.end(),
            [](const Root& x, const Root& y) {
              if (x.height != y.height) return x.height < y.height;
              return x.alpha < y.alpha;
            });

  RatMat ct(n, RatVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ct[i][j] = d.cartan_[j][i];
  d.cartan_t_inv_ = rm_inverse(ct);

  for (int j = 0; j < n; ++j) {
    RatVec e(n, 0);
    e[j] = 1;
    const RatVec alpha = rm_apply(d.cartan_t_inv_, e);
    d.fundamental_weights_.push_back(d.from_alpha(alpha));
  }

  return datum;
}

Rat RootDatum::inner(const WeightVec& a, const WeightVec& b) const {
  if (static_cast<int>(a.eps.size()) != ambient_dim_ ||
      static_cast<int>(b.eps.size()) != ambient_dim_)
    throw std::invalid_argument("inner: dimension mismatch");
  Rat s = 0;
  for (int k = 0; k < ambient_dim_; ++k)
    if (a.eps[k] != 0 && b.eps[k] != 0) s += form_scale_[k] * a.eps[k] * b.eps[k];
  return s;
}

RatVec RootDatum::omega_coords(const WeightVec& mu) const {
  RatVec out(rank_);
  for (int i = 0; i < rank_; ++i)
    out[i] = 2 * inner(mu, simple_roots_[i]) / gram_[i][i];
  return out;
}

RatVec RootDatum::alpha_coords(const WeightVec& mu) const {
  return rm_apply(cartan_t_inv_, omega_coords(mu));
}

WeightVec RootDatum::from_omega(const RatVec& omega) const {
  if (static_cast<int>(omega.size()) != rank_)
    throw std::invalid_argument("from_omega: dimension mismatch");
  RatVec v(ambient_dim_, 0);
  for (int i = 0; i < rank_; ++i) {
    if (omega[i] == 0) continue;
    for (int k = 0; k < ambient_dim_; ++k)
      v[k] += omega[i] * fundamental_weights_[i].eps[k];
  }
  return WeightVec{v};
}

WeightVec RootDatum::from_omega_int(const std::vector<long long>& omega) const {
  RatVec o(omega.begin(), omega.end());
  return from_omega(o);
}

WeightVec RootDatum::from_alpha(const RatVec& alpha) const {
  if (static_cast<int>(alpha.size()) != rank_)
    throw std::invalid_argument("from_alpha: dimension mismatch");
  RatVec v(ambient_dim_, 0);
  for (int i = 0; i < rank_; ++i) {
    if (alpha[i] == 0) continue;
    for (int k = 0; k < ambient_dim_; ++k)
      v[k] += alpha[i] * simple_roots_[i].eps[k];
  }
  return WeightVec{v};
}

bool RootDatum::is_lattice_point(const WeightVec& mu) const {
  for (const auto& c : omega_coords(mu))
    if (!is_integer(c)) return false;
  return true;
}

WeightVec RootDatum::reflect(const WeightVec& mu, int i) const {
  const Rat c = 2 * inner(mu, simple_roots_[i]) / gram_[i][i];
  WeightVec out = mu;
  if (c != 0)
    for (int k = 0; k < ambient_dim_; ++k)
      out.eps[k] -= c * simple_roots_[i].eps[k];
  return out;
}

bool RootDatum::is_dominant(const WeightVec& mu) const {
  for (int i = 0; i < rank_; ++i)
    if (inner(mu, simple_roots_[i]) < 0) return false;
  return true;
}

bool RootDatum::is_strictly_dominant(const WeightVec& mu) const {
  for (int i = 0; i < rank_; ++i)
    if (inner(mu, simple_roots_[i]) <= 0) return false;
  return true;
}

std::pair<WeightVec, std::vector<int>> RootDatum::dominant_representative(
    const WeightVec& mu) const {
  WeightVec cur = mu;
  std::vector<int> word;
  for (;;) {
    int neg = -1;
    for (int i = 0; i < rank_; ++i)
      if (inner(cur, simple_roots_[i]) < 0) { neg = i; break; }
    if (neg < 0) break;
    cur = reflect(cur, neg);
    word.push_back(neg);
  }
  return {cur, word};
}

std::vector<WeightVec> RootDatum::weyl_orbit(const WeightVec& mu, std::size_t cap) const {
  std::set<WeightVec> seen;
  std::deque<WeightVec> frontier;
  const WeightVec start = dominant_representative(mu).first;
  seen.insert(start);
  frontier.push_back(start);
  while (!frontier.empty()) {
    const WeightVec v = frontier.front();
    frontier.pop_front();
    for (int i = 0; i < rank_; ++i) {
      WeightVec w = reflect(v, i);
      if (seen.insert(w).second) {
        if (seen.size() > cap)
          throw CapExceeded("weyl_orbit: orbit size exceeds cap " + std::to_string(cap));
        frontier.push_back(std::move(w));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

bool RootDatum::is_regular(const WeightVec& mu) const {
  for (const auto& r : positive_roots_)
    if (inner(mu, r.vec) == 0) return false;
  return true;
}

long long RootDatum::positive_height(const WeightVec& mu) const {
  Rat h = 0;
  for (const auto& c : alpha_coords(mu)) {
    if (!is_integer(c))
      throw std::domain_error("positive_height: not an integral root combination");
    h += c;
  }
  return to_ll(h);
}

std::pair<int, int> RootDatum::factor_simple_range(int f) const {
  const int lo = factor_first_simple_[f];
  return {lo, lo + type_.factors[f].rank};
}

WeightVec RootDatum::highest_root(int f) const {
  for (const auto& r : positive_roots_)
    if (r.factor == f && r.is_long && is_dominant(r.vec)) return r.vec;
  throw std::logic_error("highest_root: not found");
}

std::optional<WeightVec> RootDatum::highest_short_root(int f) const {
  for (const auto& r : positive_roots_)
    if (r.factor == f && !r.is_long && is_dominant(r.vec)) return r.vec;
  return std::nullopt;
}

WeightVec RootDatum::half_sum_positive_roots() const {
  RatVec v(ambient_dim_, 0);
  for (const auto& r : positive_roots_)
    for (int k = 0; k < ambient_dim_; ++k) v[k] += r.vec.eps[k];
  for (auto& x : v) x /= 2;
  return WeightVec{v};
}

std::string RootDatum::weight_str(const WeightVec& mu) const {
  const RatVec o = omega_coords(mu);
  std::string s = "(";
  for (int i = 0; i < rank_; ++i) {
    if (i) s += ",";
    s += rat_str(o[i]);
  }
  return s + ")";
}

WeightVec apply_word(const RootDatum& datum, const std::vector<int>& word, WeightVec mu) {
  for (const int i : word) mu = datum.reflect(mu, i);
  return mu;
}

std::vector<long long> parse_omega_coords(std::string_view s, int rank) {
  std::vector<long long> out;
  std::string token;
  std::stringstream ss{std::string(s)};
  while (std::getline(ss, token, ',')) {
    if (token.empty()) throw std::invalid_argument("empty weight coordinate");
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size())
      throw std::invalid_argument("bad weight coordinate '" + token + "'");
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != rank)
    throw std::invalid_argument("expected " + std::to_string(rank) +
                                " weight coordinates, got " + std::to_string(out.size()));
  return out;
}

}  // namespace ricneg
