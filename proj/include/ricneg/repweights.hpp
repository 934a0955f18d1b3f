#ifndef RICNEG_REPWEIGHTS_HPP
#define RICNEG_REPWEIGHTS_HPP

#include "ricneg/config.hpp"
#include "ricneg/rootsys.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace ricneg {

/// A dominant integral weight, fixing the irreducible representation
/// V_lambda of the complexified algebra.
struct HighestWeight {
  std::shared_ptr<const RootDatum> datum;
  std::vector<long long> omega;

  static HighestWeight make(std::shared_ptr<const RootDatum> datum,
                            std::vector<long long> omega_coords);
  WeightVec vec() const { return datum->from_omega_int(omega); }
  std::string str() const;
  bool is_zero() const;
};

WeightVec rho(const RootDatum& datum);

/// The multiset of weights of V_lambda. Dominant weights are enumerated by a
/// breadth-first walk downward from lambda (subtracting positive roots while
/// staying dominant); multiplicities come from the Freudenthal recursion and
/// are computed lazily on first use. Immutable and safe to share across
/// threads once constructed.
class WeightSystem {
 public:
  explicit WeightSystem(HighestWeight lambda, Caps caps = {});

  const HighestWeight& highest() const { return lambda_; }
  const RootDatum& datum() const { return *lambda_.datum; }

  Int dim() const;

  /// Dominant weights sorted by height of lambda - mu, then lexicographically.
  const std::vector<WeightVec>& dominant_weights() const { return dominant_; }
  long long depth(std::size_t idx) const { return depths_[idx]; }

  const std::vector<Int>& dominant_multiplicities() const;

  /// Multiplicity of an arbitrary weight vector (0 when not a weight).
  Int multiplicity(const WeightVec& mu) const;

  /// Exact membership test: mu is a weight iff its dominant representative
  /// nu satisfies lambda - nu in the nonnegative span of the simple roots.
  bool is_weight(const WeightVec& mu) const;

  /// All weights with multiplicities, dominant orbits expanded.
  std::vector<std::pair<WeightVec, Int>> all_weights() const;

 private:
  void ensure_multiplicities() const;

  HighestWeight lambda_;
  Caps caps_;
  WeightVec rho_;
  std::vector<WeightVec> dominant_;
  std::vector<long long> depths_;
  std::map<WeightVec, std::size_t> index_;
  mutable std::once_flag mult_once_;
  mutable std::vector<Int> mults_;
  mutable Int dim_ = 0;
};

std::vector<std::pair<WeightVec, Int>> dominant_support(const HighestWeight& lambda,
                                                        Caps caps = {});
Int multiplicity(const HighestWeight& lambda, const WeightVec& mu, Caps caps = {});
Int dimension(const HighestWeight& lambda);
bool is_weight(const HighestWeight& lambda, const WeightVec& mu);

}  // namespace ricneg

#endif
