#include "ricneg/rational.hpp"

namespace ricneg {

RatMat rm_mul(const RatMat& a, const RatMat& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  RatMat out(n, RatVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

RatVec rm_apply(const RatMat& a, const RatVec& x) {
  RatVec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0) out[i] += a[i][j] * x[j];
  return out;
}

RatMat rm_transpose(const RatMat& a) {
  if (a.empty()) return {};
  RatMat out(a[0].size(), RatVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
  return out;
}

RatVec rm_solve(RatMat a, RatVec b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix in rm_solve");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Rat inv = Rat(1) / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rat f = a[r][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

RatMat rm_inverse(const RatMat& a) {
  const std::size_t n = a.size();
  RatMat work = a;
  RatMat inv = rm_identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && work[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix in rm_inverse");
    std::swap(work[piv], work[col]);
    std::swap(inv[piv], inv[col]);
    const Rat s = Rat(1) / work[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      work[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work[r][col] == 0) continue;
      const Rat f = work[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        work[r][j] -= f * work[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

}  // namespace ricneg
