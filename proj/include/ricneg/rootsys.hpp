#ifndef RICNEG_ROOTSYS_HPP
#define RICNEG_ROOTSYS_HPP

#include "ricneg/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ricneg {

/// Thrown when an enumeration (Weyl orbit, weight support, search budget)
/// exceeds its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// One irreducible factor, e.g. G2 or D4. Construction validates the rank
/// range of the family (A: n>=1, B: n>=2, C: n>=2, D: n>=3, E: 6..8, F: 4, G: 2).
struct SimpleType {
  Family family;
  int rank;

  static SimpleType make(Family f, int rank);
  std::string str() const;
  bool operator==(const SimpleType&) const = default;
};

/// Ordered nonempty product of simple factors, e.g. "A2xA1".
struct SemisimpleType {
  std::vector<SimpleType> factors;

  static SemisimpleType parse(std::string_view s);
  static SemisimpleType single(SimpleType t) { return SemisimpleType{{t}}; }
  int rank() const;
  std::string str() const;
  bool operator==(const SemisimpleType&) const = default;
};

/// A vector in the ambient epsilon-coordinate space of a root datum.
/// Coordinates are exact rationals; the owning RootDatum converts between
/// the epsilon, omega (fundamental-weight) and alpha (simple-root) views.
struct WeightVec {
  RatVec eps;

  bool operator==(const WeightVec& o) const { return lex_compare(eps, o.eps) == 0; }
  bool operator<(const WeightVec& o) const { return lex_compare(eps, o.eps) < 0; }
};

struct Root {
  WeightVec vec;
  std::vector<long long> alpha;  // integer coordinates over the simple roots
  int height = 0;
  bool is_long = true;
  int factor = 0;
};

inline constexpr std::size_t kDefaultOrbitCap = 10'000'000;

/// Cartan data for a (semi)simple type: simple and positive roots, Cartan
/// matrix, fundamental weights, the W-invariant form (long roots of each
/// simple factor have squared length 2), and the Weyl group action through
/// simple reflections. Immutable after construction.
class RootDatum {
 public:
  static std::shared_ptr<const RootDatum> build(const SemisimpleType& type);

  const SemisimpleType& type() const { return type_; }
  int rank() const { return rank_; }
  int ambient_dim() const { return ambient_dim_; }

  const std::vector<WeightVec>& simple_roots() const { return simple_roots_; }
  const std::vector<Root>& positive_roots() const { return positive_roots_; }
  const std::vector<std::vector<long long>>& cartan_matrix() const { return cartan_; }
  const std::vector<WeightVec>& fundamental_weights() const { return fundamental_weights_; }
  const RatMat& gram() const { return gram_; }
  std::uint64_t weyl_order() const { return weyl_order_; }

  /// W-invariant inner product on the ambient space.
  Rat inner(const WeightVec& a, const WeightVec& b) const;

  Rat norm2(const WeightVec& a) const { return inner(a, a); }

  /// 2<mu,alpha_i>/<alpha_i,alpha_i>; integer exactly on the weight lattice.
  RatVec omega_coords(const WeightVec& mu) const;
  RatVec alpha_coords(const WeightVec& mu) const;
  WeightVec from_omega(const RatVec& omega) const;
  WeightVec from_omega_int(const std::vector<long long>& omega) const;
  WeightVec from_alpha(const RatVec& alpha) const;
  WeightVec zero() const { return WeightVec{RatVec(ambient_dim_, 0)}; }

  bool is_lattice_point(const WeightVec& mu) const;

  /// Simple reflection s_i (0-based index).
  WeightVec reflect(const WeightVec& mu, int i) const;

  bool is_dominant(const WeightVec& mu) const;
  bool is_strictly_dominant(const WeightVec& mu) const;

  /// Unique dominant element of W*mu, together with a reflection word.
  /// Applying the word entries left-to-right to mu yields the
  /// representative: rep = s_{w[k-1]} ( ... s_{w[0]} (mu) ... ).
  std::pair<WeightVec, std::vector<int>> dominant_representative(const WeightVec& mu) const;

  std::vector<WeightVec> weyl_orbit(const WeightVec& mu, std::size_t cap = kDefaultOrbitCap) const;

  /// True iff <mu, alpha> != 0 for every root alpha.
  bool is_regular(const WeightVec& mu) const;

  /// Height of a nonnegative integer combination of simple roots
  /// (sum of alpha-coordinates); throws if mu is not of that shape.
  long long positive_height(const WeightVec& mu) const;

  /// Index ranges of each factor's simple roots, and embeddings.
  int num_factors() const { return static_cast<int>(type_.factors.size()); }
  std::pair<int, int> factor_simple_range(int f) const;
  /// Highest (long) root of factor f, embedded in the product space.
  WeightVec highest_root(int f) const;
  /// Highest short root of factor f, or nothing when the factor is simply laced.
  std::optional<WeightVec> highest_short_root(int f) const;

  WeightVec half_sum_positive_roots() const;

  std::string weight_str(const WeightVec& mu) const;  // omega-coordinate display

 private:
  RootDatum() = default;

  SemisimpleType type_;
  int rank_ = 0;
  int ambient_dim_ = 0;
  std::vector<WeightVec> simple_roots_;
  std::vector<Root> positive_roots_;
  std::vector<std::vector<long long>> cartan_;
  std::vector<WeightVec> fundamental_weights_;
  RatMat gram_;                 // gram_[i][j] = <alpha_i, alpha_j>
  RatVec form_scale_;           // per-ambient-coordinate scale of the form
  RatMat cartan_t_inv_;         // (C^T)^{-1}: omega -> alpha coordinates
  std::uint64_t weyl_order_ = 1;
  std::vector<int> factor_first_simple_;   // per factor
  std::vector<int> factor_ambient_offset_; // per factor
  std::vector<int> factor_ambient_dim_;
};

WeightVec apply_word(const RootDatum& datum, const std::vector<int>& word, WeightVec mu);

/// Parses "2,0,1" as omega-coordinates for a rank-3 datum.
std::vector<long long> parse_omega_coords(std::string_view s, int rank);

}  // namespace ricneg

#endif
