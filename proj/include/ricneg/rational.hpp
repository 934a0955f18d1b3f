#ifndef RICNEG_RATIONAL_HPP
#define RICNEG_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace ricneg {

/// Arbitrary-precision integers and rationals. All root-system and
/// weight-lattice predicates are exact set-membership questions, so the
/// combinatorial layer never touches floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline long long to_ll(const Rat& r) {
  if (!is_integer(r)) throw std::domain_error("rational is not an integer");
  return numerator(r).convert_to<long long>();
}

/// Lexicographic three-way compare; vectors must have equal length.
inline int lex_compare(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size())
    return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

inline RatVec rv_add(const RatVec& a, const RatVec& b) {
  RatVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

inline RatVec rv_sub(const RatVec& a, const RatVec& b) {
  RatVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

inline RatVec rv_scale(const RatVec& a, const Rat& s) {
  RatVec out(a);
  for (auto& x : out) x *= s;
  return out;
}

inline bool rv_is_zero(const RatVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

inline RatMat rm_identity(std::size_t n) {
  RatMat m(n, RatVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat rm_mul(const RatMat& a, const RatMat& b);
RatVec rm_apply(const RatMat& a, const RatVec& x);
RatMat rm_transpose(const RatMat& a);

/// Solves a*x = b by Gaussian elimination. Throws std::domain_error when the
/// matrix is singular.
RatVec rm_solve(RatMat a, RatVec b);

RatMat rm_inverse(const RatMat& a);

std::string rat_str(const Rat& r);

}  // namespace ricneg

#endif
