#include "ricneg/repbuild.hpp"

#include <algorithm>
#include <set>

namespace ricneg {

namespace {

// ---------------------------------------------------------------------------
// Exact representation core over the monomial basis, organized block by
// weight block. A BlockMap is a weight-homogeneous linear map: block s either
// dies or maps into block target[s] with the given exact matrix.

struct BlockMap {
  std::vector<int> target;      // -1 when annihilated
  std::vector<RatMat> mat;      // mat[s]: dim(target[s]) x dim(s)
};

struct ExactRep {
  std::shared_ptr<const RootDatum> datum;
  HighestWeight lambda;
  std::vector<WeightVec> weight;         // block weights, construction order
  std::vector<int> mult;
  std::map<WeightVec, int> index;
  std::vector<RatMat> gram;              // contravariant Gram per block
  std::vector<BlockMap> e, f;            // per simple index
};

BlockMap zero_map(std::size_t nblocks) {
  BlockMap m;
  m.target.assign(nblocks, -1);
  m.mat.resize(nblocks);
  return m;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) { return rm_mul(a, b); }

RatMat mat_sub(RatMat a, const RatMat& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
  return a;
}

bool mat_zero(const RatMat& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

BlockMap bm_compose(const ExactRep& rep, const BlockMap& a, const BlockMap& b) {
  BlockMap out = zero_map(rep.weight.size());
  for (std::size_t s = 0; s < rep.weight.size(); ++s) {
    const int t1 = b.target[s];
    if (t1 < 0) continue;
    const int t2 = a.target[t1];
    if (t2 < 0) continue;
    out.target[s] = t2;
    out.mat[s] = mat_mul(a.mat[t1], b.mat[s]);
  }
  return out;
}

BlockMap bm_commutator(const ExactRep& rep, const BlockMap& a, const BlockMap& b) {
  const BlockMap ab = bm_compose(rep, a, b);
  const BlockMap ba = bm_compose(rep, b, a);
  BlockMap out = zero_map(rep.weight.size());
  for (std::size_t s = 0; s < rep.weight.size(); ++s) {
    const bool has_ab = ab.target[s] >= 0 && !mat_zero(ab.mat[s]);
    const bool has_ba = ba.target[s] >= 0 && !mat_zero(ba.mat[s]);
    if (!has_ab && !has_ba) continue;
    if (has_ab && has_ba && ab.target[s] != ba.target[s])
      throw std::logic_error("bm_commutator: inconsistent block targets");
    if (has_ab && has_ba) {
      out.target[s] = ab.target[s];
      out.mat[s] = mat_sub(ab.mat[s], ba.mat[s]);
      if (mat_zero(out.mat[s])) out.target[s] = -1;
    } else if (has_ab) {
      out.target[s] = ab.target[s];
      out.mat[s] = ab.mat[s];
    } else {
      out.target[s] = ba.target[s];
      RatMat neg = ba.mat[s];
      for (auto& row : neg)
        for (auto& x : row) x = -x;
      out.mat[s] = neg;
    }
  }
  return out;
}

void bm_scale(BlockMap& m, const Rat& s) {
  for (auto& block : m.mat)
    for (auto& row : block)
      for (auto& x : row) x *= s;
}

/// Cartan integer 2<mu, gamma>/<gamma, gamma>.
Rat cartan_pairing(const RootDatum& d, const WeightVec& mu, const WeightVec& gamma) {
  return 2 * d.inner(mu, gamma) / d.inner(gamma, gamma);
}

ExactRep build_exact(const HighestWeight& lambda, const Caps& caps) {
  const Int dim = dimension(lambda);
  if (dim > caps.rep_dim_cap)
    throw CapExceeded("representation dimension " + dim.str() + " exceeds cap " +
                      std::to_string(caps.rep_dim_cap));

  ExactRep rep;
  rep.datum = lambda.datum;
  rep.lambda = lambda;
  const RootDatum& d = *lambda.datum;
  const int n = d.rank();

  WeightSystem ws(lambda, caps);

  // All weights, ordered by depth below lambda, then lexicographically.
  {
    std::vector<std::pair<long long, WeightVec>> order;
    const WeightVec top = lambda.vec();
    for (const auto& [w, m] : ws.all_weights()) {
      const long long depth =
          d.positive_height(WeightVec{rv_sub(top.eps, w.eps)});
      order.emplace_back(depth, w);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return lex_compare(a.second.eps, b.second.eps) < 0;
    });
    for (const auto& [dep, w] : order) {
      rep.index.emplace(w, static_cast<int>(rep.weight.size()));
      rep.weight.push_back(w);
      rep.mult.push_back(static_cast<int>(ws.multiplicity(w).convert_to<long long>()));
    }
  }
  const std::size_t nblocks = rep.weight.size();
  rep.gram.resize(nblocks);
  rep.e.assign(n, zero_map(nblocks));
  rep.f.assign(n, zero_map(nblocks));
  for (int i = 0; i < n; ++i)
    for (std::size_t s = 0; s < nblocks; ++s) {
      const auto up = rep.index.find(WeightVec{rv_add(rep.weight[s].eps, d.simple_roots()[i].eps)});
      if (up != rep.index.end()) rep.e[i].target[s] = up->second;
      const auto dn = rep.index.find(WeightVec{rv_sub(rep.weight[s].eps, d.simple_roots()[i].eps)});
      if (dn != rep.index.end()) rep.f[i].target[s] = dn->second;
    }

  // Highest block: the single vector v_lambda.
  rep.gram[0] = {{1}};
  if (rep.mult[0] != 1) throw std::logic_error("highest weight block must have dim 1");

  // f-expansions: fexp[s][i] has one column per basis vector b of block
  // s+alpha_i, holding the coordinates of f_i b over the basis of block s.
  std::vector<std::vector<RatMat>> fexp(nblocks, std::vector<RatMat>(n));

  for (std::size_t s = 1; s < nblocks; ++s) {
    const WeightVec& mu = rep.weight[s];
    const int m_target = rep.mult[s];

    // Candidates f_i b, b running over the basis of block mu + alpha_i.
    struct Cand {
      int i;      // simple index
      int q;      // position in the parent block basis
      int parent; // parent block
    };
    std::vector<Cand> cands;
    for (int i = 0; i < n; ++i) {
      const auto it = rep.index.find(WeightVec{rv_add(mu.eps, d.simple_roots()[i].eps)});
      if (it == rep.index.end()) continue;
      for (int q = 0; q < rep.mult[it->second]; ++q) cands.push_back({i, q, it->second});
    }
    if (cands.empty()) throw std::logic_error("no candidates for a nonzero weight block");
    const int M = static_cast<int>(cands.size());

    // eact[i][c]: coordinates of e_i (candidate c) over the basis of block
    // mu + alpha_i, where defined.
    std::vector<std::vector<RatVec>> eact(n);
    std::vector<int> upblock(n, -1);
    for (int i = 0; i < n; ++i) {
      const auto it = rep.index.find(WeightVec{rv_add(mu.eps, d.simple_roots()[i].eps)});
      if (it == rep.index.end()) continue;
      upblock[i] = it->second;
      eact[i].assign(M, RatVec(rep.mult[it->second], 0));
      for (int c = 0; c < M; ++c) {
        const auto& [j, q, parent] = cands[c];
        // e_i f_j = f_j e_i + delta_ij h_i on the parent block.
        const int sigma = rep.e[i].target[parent];
        if (sigma >= 0 && !rep.e[i].mat[parent].empty()) {
          // e_i b_q, then push f_j down to block mu+alpha_i via the stored
          // expansion at that block.
          const RatMat& emat = rep.e[i].mat[parent];  // dim(sigma) x dim(parent)
          const RatMat& fj = fexp[it->second][j];     // expansion of f_j from sigma
          if (!fj.empty()) {
            for (std::size_t row = 0; row < fj.size(); ++row)
              for (std::size_t k = 0; k < fj[row].size(); ++k)
                if (fj[row][k] != 0 && emat[k][q] != 0)
                  eact[i][c][row] += fj[row][k] * emat[k][q];
          }
        }
        if (i == j) {
          const Rat scalar = cartan_pairing(d, rep.weight[parent], d.simple_roots()[i]);
          eact[i][c][q] += scalar;
        }
      }
    }

    // Candidate Gram matrix through the contravariant pairing.
    RatMat G(M, RatVec(M, 0));
    for (int c1 = 0; c1 < M; ++c1) {
      const int i = cands[c1].i, p = cands[c1].q;
      const RatMat& gup = rep.gram[upblock[i]];
      for (int c2 = 0; c2 < M; ++c2) {
        Rat v = 0;
        for (std::size_t k = 0; k < eact[i][c2].size(); ++k)
          if (eact[i][c2][k] != 0) v += gup[p][k] * eact[i][c2][k];
        G[c1][c2] = v;
      }
    }

    // Greedy exact basis extraction: keep candidates with positive Schur
    // complement against the chosen set.
    std::vector<int> chosen;
    for (int c = 0; c < M && static_cast<int>(chosen.size()) < m_target; ++c) {
      const int k = static_cast<int>(chosen.size());
      RatMat gc(k, RatVec(k));
      RatVec cross(k);
      for (int a = 0; a < k; ++a) {
        cross[a] = G[chosen[a]][c];
        for (int b = 0; b < k; ++b) gc[a][b] = G[chosen[a]][chosen[b]];
      }
      Rat schur = G[c][c];
      if (k > 0) {
        const RatVec y = rm_solve(gc, cross);
        for (int a = 0; a < k; ++a) schur -= cross[a] * y[a];
      }
      if (schur < 0)
        throw std::logic_error("contravariant form is not positive semidefinite");
      if (schur > 0) chosen.push_back(c);
    }
    if (static_cast<int>(chosen.size()) != m_target)
      throw std::logic_error("weight-space rank disagrees with Freudenthal multiplicity");

    RatMat gram_s(m_target, RatVec(m_target));
    for (int a = 0; a < m_target; ++a)
      for (int b = 0; b < m_target; ++b) gram_s[a][b] = G[chosen[a]][chosen[b]];
    rep.gram[s] = gram_s;

    // Coordinates of every candidate over the chosen basis.
    std::vector<RatVec> coords(M, RatVec(m_target, 0));
    for (int c = 0; c < M; ++c) {
      const auto self = std::find(chosen.begin(), chosen.end(), c);
      if (self != chosen.end()) {
        coords[c][self - chosen.begin()] = 1;
        continue;
      }
      RatVec rhs(m_target);
      for (int a = 0; a < m_target; ++a) rhs[a] = G[chosen[a]][c];
      coords[c] = rm_solve(gram_s, rhs);
    }

    // Fill f-expansions of this block and the e-matrices of the chosen basis.
    for (int i = 0; i < n; ++i) {
      if (upblock[i] < 0) continue;
      RatMat fmat(m_target, RatVec(rep.mult[upblock[i]], 0));
      for (int c = 0; c < M; ++c)
        if (cands[c].i == i)
          for (int row = 0; row < m_target; ++row) fmat[row][cands[c].q] = coords[c][row];
      fexp[s][i] = fmat;
      rep.f[i].mat[upblock[i]] = fmat;

      RatMat emat(rep.mult[upblock[i]], RatVec(m_target, 0));
      for (int a = 0; a < m_target; ++a)
        for (std::size_t row = 0; row < emat.size(); ++row)
          emat[row][a] = eact[i][chosen[a]][row];
      rep.e[i].mat[s] = emat;
    }
  }

  // Dead targets for maps without matrices (weights at the boundary).
  for (int i = 0; i < n; ++i)
    for (std::size_t s = 0; s < nblocks; ++s) {
      if (rep.e[i].target[s] >= 0 && rep.e[i].mat[s].empty()) rep.e[i].target[s] = -1;
      if (rep.f[i].target[s] >= 0 && rep.f[i].mat[s].empty()) rep.f[i].target[s] = -1;
    }

  return rep;
}

/// Exact matrices of X_gamma and X_{-gamma} for every positive root, by the
/// minimal-simple-index commutator recursion, normalized and verified so that
/// [X_gamma, X_{-gamma}] acts on V(mu) by the Cartan integer of (mu, gamma).
struct RootMaps {
  std::vector<BlockMap> plus, minus;
};

RootMaps build_root_maps(const ExactRep& rep) {
  const RootDatum& d = *rep.datum;
  const int n = d.rank();
  const auto& roots = d.positive_roots();
  const int R = static_cast<int>(roots.size());

  std::map<std::vector<long long>, int> pos_index;
  for (int r = 0; r < R; ++r) pos_index.emplace(roots[r].alpha, r);
  auto is_root = [&](const std::vector<long long>& a) {
    bool has_pos = false, has_neg = false;
    for (const auto x : a) {
      if (x > 0) has_pos = true;
      if (x < 0) has_neg = true;
    }
    if (has_pos && has_neg) return false;
    if (!has_pos && !has_neg) return false;
    if (has_pos) return pos_index.count(a) > 0;
    std::vector<long long> na(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) na[k] = -a[k];
    return pos_index.count(na) > 0;
  };

  RootMaps out;
  out.plus.resize(R);
  out.minus.resize(R);

  for (int r = 0; r < R; ++r) {
    const Root& gamma = roots[r];
    if (gamma.height == 1) {
      int i = 0;
      while (gamma.alpha[i] == 0) ++i;
      out.plus[r] = rep.e[i];
      out.minus[r] = rep.f[i];
    } else {
      int i = -1;
      std::vector<long long> beta;
      for (int k = 0; k < n; ++k) {
        if (gamma.alpha[k] == 0) continue;
        std::vector<long long> b = gamma.alpha;
        b[k] -= 1;
        if (pos_index.count(b)) {
          i = k;
          beta = b;
          break;
        }
      }
      if (i < 0) throw std::logic_error("positive root with no simple decomposition");
      long long p = 0;
      {
        std::vector<long long> down = beta;
        for (;;) {
          down[i] -= 1;
          if (!is_root(down)) break;
          ++p;
        }
      }
      const int rb = pos_index.at(beta);
      int si = 0;
      {
        std::vector<long long> a(n, 0);
        a[i] = 1;
        si = pos_index.at(a);
      }
      out.plus[r] = bm_commutator(rep, out.plus[si], out.plus[rb]);
      bm_scale(out.plus[r], Rat(1, p + 1));
      out.minus[r] = bm_commutator(rep, out.minus[si], out.minus[rb]);
      bm_scale(out.minus[r], Rat(-1, p + 1));
    }

    // [X_gamma, X_{-gamma}] must act diagonally by the Cartan integer.
    const BlockMap h = bm_commutator(rep, out.plus[r], out.minus[r]);
    for (std::size_t s = 0; s < rep.weight.size(); ++s) {
      const Rat scalar = cartan_pairing(d, rep.weight[s], gamma.vec);
      if (h.target[s] < 0) {
        if (scalar != 0)
          throw std::logic_error("root map normalization: lost Cartan action");
        continue;
      }
      if (h.target[s] != static_cast<int>(s))
        throw std::logic_error("root map normalization: nondiagonal commutator");
      for (std::size_t a = 0; a < h.mat[s].size(); ++a)
        for (std::size_t b = 0; b < h.mat[s][a].size(); ++b)
          if (h.mat[s][a][b] != (a == b ? scalar : Rat(0)))
            throw std::logic_error("root map normalization failed");
    }
  }
  return out;
}

Eigen::MatrixXd to_eigen(const RatMat& m) {
  Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = to_double(m[i][j]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ChevalleyData

std::vector<std::pair<int, Rat>> ChevalleyData::CompactBasis::bracket_of(int a,
                                                                         int b) const {
  if (a == b) return {};
  const bool swap = a > b;
  const auto it = bracket.find(swap ? std::make_pair(b, a) : std::make_pair(a, b));
  if (it == bracket.end()) return {};
  auto out = it->second;
  if (swap)
    for (auto& [k, c] : out) c = -c;
  return out;
}

Rat ChevalleyData::structure_constant(RootCode a, RootCode b) const {
  const auto it = n_table_.find({a, b});
  return it == n_table_.end() ? Rat(0) : it->second;
}

std::optional<RootCode> ChevalleyData::root_from_alpha(
    const std::vector<long long>& alpha) const {
  const auto it = alpha_lookup_.find(alpha);
  if (it == alpha_lookup_.end()) return std::nullopt;
  return it->second;
}

ChevalleyData ChevalleyData::build(std::shared_ptr<const RootDatum> datum, Caps caps) {
  ChevalleyData cd;
  cd.datum_ = datum;
  const RootDatum& d = *datum;
  const int n = d.rank();
  const auto& roots = d.positive_roots();
  const int R = static_cast<int>(roots.size());

  for (int r = 0; r < R; ++r) {
    cd.alpha_lookup_.emplace(roots[r].alpha, pos_code(r));
    std::vector<long long> neg(roots[r].alpha.size());
    for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -roots[r].alpha[k];
    cd.alpha_lookup_.emplace(neg, neg_code(r));
  }

  // Coroot coordinates: gamma^vee = sum_i c_i <a_i,a_i>/<gamma,gamma> a_i^vee.
  cd.coroots_.resize(R);
  for (int r = 0; r < R; ++r) {
    RatVec co(n, 0);
    const Rat g2 = d.inner(roots[r].vec, roots[r].vec);
    for (int i = 0; i < n; ++i)
      co[i] = Rat(roots[r].alpha[i]) * d.gram()[i][i] / g2;
    cd.coroots_[r] = co;
  }

  // Structure constants, one simple factor at a time, read off a smallest
  // faithful fundamental representation of the factor.
  for (int fac = 0; fac < d.num_factors(); ++fac) {
    const SimpleType ft = d.type().factors[fac];
    auto fd = RootDatum::build(SemisimpleType::single(ft));
    const int fn = fd->rank();
    const int fR = static_cast<int>(fd->positive_roots().size());

    std::vector<long long> best;
    Int best_dim = 0;
    for (int i = 0; i < fn; ++i) {
      std::vector<long long> omega(fn, 0);
      omega[i] = 1;
      const Int dim = dimension(HighestWeight::make(fd, omega));
      if (best.empty() || dim < best_dim) {
        best = omega;
        best_dim = dim;
      }
    }
    Caps chev_caps = caps;
    chev_caps.rep_dim_cap = std::max<long long>(caps.rep_dim_cap, 300);
    const ExactRep rep = build_exact(HighestWeight::make(fd, best), chev_caps);
    const RootMaps maps = build_root_maps(rep);

    // factor root index -> product root index
    const auto [lo, hi] = d.factor_simple_range(fac);
    std::map<std::vector<long long>, int> f_index;
    for (int r = 0; r < fR; ++r) f_index.emplace(fd->positive_roots()[r].alpha, r);
    std::vector<int> to_product(fR, -1);
    for (int r = 0; r < R; ++r) {
      if (roots[r].factor != fac) continue;
      std::vector<long long> slice(roots[r].alpha.begin() + lo, roots[r].alpha.begin() + hi);
      to_product[f_index.at(slice)] = r;
    }

    auto factor_map = [&](RootCode c) -> const BlockMap& {
      return c > 0 ? maps.plus[root_index(c)] : maps.minus[root_index(c)];
    };

    for (int ra = 0; ra < fR; ++ra)
      for (const int sa : {+1, -1})
        for (int rb = 0; rb < fR; ++rb)
          for (const int sb : {+1, -1}) {
            if (ra == rb && sa != sb) continue;  // Cartan commutator, not an N entry
            std::vector<long long> sum(fn);
            for (int k = 0; k < fn; ++k)
              sum[k] = sa * fd->positive_roots()[ra].alpha[k] +
                       sb * fd->positive_roots()[rb].alpha[k];
            RootCode sum_code;
            {
              bool pos = true, neg = true;
              for (const auto x : sum) {
                if (x < 0) pos = false;
                if (x > 0) neg = false;
              }
              std::vector<long long> abs = sum;
              if (neg)
                for (auto& x : abs) x = -x;
              const auto it = f_index.find(abs);
              if ((!pos && !neg) || it == f_index.end()) continue;
              sum_code = pos ? pos_code(it->second) : neg_code(it->second);
            }
            const RootCode ca = sa > 0 ? pos_code(ra) : neg_code(ra);
            const RootCode cb = sb > 0 ? pos_code(rb) : neg_code(rb);
            const BlockMap comm = bm_commutator(rep, factor_map(ca), factor_map(cb));
            const BlockMap& tgt = factor_map(sum_code);
            // ratio against the first nonzero entry of the target map
            Rat ratio = 0;
            for (std::size_t s = 0; s < rep.weight.size() && ratio == 0; ++s) {
              if (tgt.target[s] < 0) continue;
              for (std::size_t i = 0; i < tgt.mat[s].size() && ratio == 0; ++i)
                for (std::size_t j = 0; j < tgt.mat[s][i].size(); ++j)
                  if (tgt.mat[s][i][j] != 0) {
                    const Rat num = (comm.target[s] < 0) ? Rat(0) : comm.mat[s][i][j];
                    ratio = num / tgt.mat[s][i][j];
                    break;
                  }
            }
            if (ratio == 0)
              throw std::logic_error("vanishing structure constant for a root sum");
            // full verification: comm == ratio * tgt
            for (std::size_t s = 0; s < rep.weight.size(); ++s) {
              const bool ct = comm.target[s] >= 0, tt = tgt.target[s] >= 0;
              if (ct != tt) {
                if (ct || tt) {
                  const auto& m = ct ? comm.mat[s] : tgt.mat[s];
                  if (!mat_zero(m))
                    throw std::logic_error("structure constant extraction mismatch");
                }
                continue;
              }
              if (!ct) continue;
              for (std::size_t i = 0; i < tgt.mat[s].size(); ++i)
                for (std::size_t j = 0; j < tgt.mat[s][i].size(); ++j)
                  if (comm.mat[s][i][j] != ratio * tgt.mat[s][i][j])
                    throw std::logic_error("structure constant extraction mismatch");
            }
            // embed into product indexing
            const RootCode pa = sa > 0 ? pos_code(to_product[ra]) : neg_code(to_product[ra]);
            const RootCode pb = sb > 0 ? pos_code(to_product[rb]) : neg_code(to_product[rb]);
            cd.n_table_.emplace(std::make_pair(pa, pb), ratio);
          }
  }

  // antisymmetry of the table under global negation
  for (const auto& [key, val] : cd.n_table_) {
    const auto it = cd.n_table_.find({-key.first, -key.second});
    if (it == cd.n_table_.end() || it->second != -val)
      throw std::logic_error("N table violates N(a,b) = -N(-a,-b)");
  }

  // ------------------------------------------------------------------
  // Compact real form u over [iH_i | X^g | Y^g].
  CompactBasis& cb = cd.compact_;
  cb.dim = n + 2 * R;
  for (int i = 0; i < n; ++i) cb.labels.push_back("iH_" + std::to_string(i + 1));
  for (int r = 0; r < R; ++r) cb.labels.push_back("X^" + std::to_string(r + 1));
  for (int r = 0; r < R; ++r) cb.labels.push_back("Y^" + std::to_string(r + 1));
  const auto X = [&](int r) { return n + r; };
  const auto Y = [&](int r) { return n + R + r; };

  auto add = [&](int a, int b, std::vector<std::pair<int, Rat>> terms) {
    std::erase_if(terms, [](const auto& t) { return t.second == 0; });
    if (terms.empty()) return;
    if (a > b) {
      for (auto& [k, c] : terms) c = -c;
      std::swap(a, b);
    }
    cb.bracket[{a, b}] = std::move(terms);
  };

  for (int i = 0; i < n; ++i)
    for (int r = 0; r < R; ++r) {
      const Rat c = cartan_pairing(d, roots[r].vec, d.simple_roots()[i]);
      add(i, X(r), {{Y(r), c}});
      add(i, Y(r), {{X(r), -c}});
    }
  for (int r = 0; r < R; ++r) {
    std::vector<std::pair<int, Rat>> terms;
    for (int i = 0; i < n; ++i) terms.push_back({i, 2 * cd.coroots_[r][i]});
    add(X(r), Y(r), std::move(terms));
  }
  // signed sum gamma_r + s*gamma_t as a term on the X or Y ladder
  auto signed_sum = [&](int r, int t, int sign) -> std::optional<std::pair<int, int>> {
    std::vector<long long> a(n);
    for (int k = 0; k < n; ++k)
      a[k] = roots[r].alpha[k] + sign * roots[t].alpha[k];
    const auto code = cd.root_from_alpha(a);
    if (!code) return std::nullopt;
    return std::make_pair(root_index(*code), *code > 0 ? +1 : -1);
  };
  for (int r = 0; r < R; ++r)
    for (int t = 0; t < R; ++t) {
      if (r == t) continue;
      const Rat n1 = cd.structure_constant(pos_code(r), pos_code(t));
      const Rat n2 = cd.structure_constant(pos_code(r), neg_code(t));
      if (r < t) {
        // [X^r, X^t] = N1 X^{r+t} - N2 X^{r-t},
        // [Y^r, Y^t] = -N1 X^{r+t} - N2 X^{r-t}, with X^{-b} = -X^{b}.
        std::vector<std::pair<int, Rat>> xx, yy;
        if (const auto up = signed_sum(r, t, +1); up && n1 != 0) {
          xx.push_back({X(up->first), n1});
          yy.push_back({X(up->first), -n1});
        }
        if (const auto dn = signed_sum(r, t, -1); dn && n2 != 0) {
          const Rat c = Rat(-dn->second) * n2;
          xx.push_back({X(dn->first), c});
          yy.push_back({X(dn->first), c});
        }
        add(X(r), X(t), xx);
        add(Y(r), Y(t), yy);
      }
      // [X^r, Y^t] for all r != t (X indices precede Y indices)
      std::vector<std::pair<int, Rat>> xy;
      if (const auto up = signed_sum(r, t, +1); up && n1 != 0)
        xy.push_back({Y(up->first), n1});
      if (const auto dn = signed_sum(r, t, -1); dn && n2 != 0)
        xy.push_back({Y(dn->first), n2});  // Y^{-b} = Y^{b}
      add(X(r), Y(t), xy);
    }

  // Killing form from the assembled brackets.
  {
    std::vector<RatMat> ad(cb.dim, RatMat(cb.dim, RatVec(cb.dim, 0)));
    for (int a = 0; a < cb.dim; ++a)
      for (int b = 0; b < cb.dim; ++b)
        for (const auto& [k, c] : cb.bracket_of(a, b)) ad[a][k][b] = c;
    cb.killing.assign(cb.dim, RatVec(cb.dim, 0));
    for (int a = 0; a < cb.dim; ++a)
      for (int b = a; b < cb.dim; ++b) {
        Rat tr = 0;
        for (int c = 0; c < cb.dim; ++c)
          for (int e = 0; e < cb.dim; ++e)
            if (ad[a][e][c] != 0 && ad[b][c][e] != 0) tr += ad[a][e][c] * ad[b][c][e];
        cb.killing[a][b] = cb.killing[b][a] = tr;
      }
  }

  return cd;
}

// ---------------------------------------------------------------------------
// RepMatrices

int RepMatrices::block_of(const WeightVec& mu) const {
  const auto it = block_index_.find(mu);
  return it == block_index_.end() ? -1 : it->second;
}

RepMatrices RepMatrices::build(const HighestWeight& lambda, Caps caps) {
  const ExactRep rep = build_exact(lambda, caps);
  const RootMaps maps = build_root_maps(rep);
  const RootDatum& d = *lambda.datum;
  const int n = d.rank();
  const int R = static_cast<int>(d.positive_roots().size());
  const std::size_t nblocks = rep.weight.size();

  RepMatrices out;
  out.lambda_ = lambda;
  int off = 0;
  for (std::size_t s = 0; s < nblocks; ++s) {
    out.blocks_.push_back({rep.weight[s], off, rep.mult[s]});
    out.block_index_.emplace(rep.weight[s], static_cast<int>(s));
    off += rep.mult[s];
  }
  out.dim_c_ = off;

  // Orthonormalize the contravariant form blockwise: with G = L L^T, the new
  // basis is (old) * L^{-T}; an operator block A: s -> t becomes
  // L^T(t) A L(s)^{-T}.
  std::vector<Eigen::MatrixXd> lT(nblocks), lmT(nblocks);
  for (std::size_t s = 0; s < nblocks; ++s) {
    const Eigen::MatrixXd g = to_eigen(rep.gram[s]);
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("contravariant Gram block is not positive definite");
    const Eigen::MatrixXd L = llt.matrixL();
    lT[s] = L.transpose();
    lmT[s] = lT[s].inverse();
  }

  auto densify = [&](const BlockMap& m) {
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(out.dim_c_, out.dim_c_);
    for (std::size_t s = 0; s < nblocks; ++s) {
      if (m.target[s] < 0 || m.mat[s].empty()) continue;
      const int t = m.target[s];
      const Eigen::MatrixXd block = lT[t] * to_eigen(m.mat[s]) * lmT[s];
      full.block(out.blocks_[t].offset, out.blocks_[s].offset, out.blocks_[t].mult,
                 out.blocks_[s].mult) = block;
    }
    return full;
  };

  for (int i = 0; i < n; ++i) {
    out.e_.push_back(densify(rep.e[i]));
    out.f_.push_back(densify(rep.f[i]));
    Eigen::VectorXd hd(out.dim_c_);
    for (std::size_t s = 0; s < nblocks; ++s) {
      const double v =
          to_double(cartan_pairing(d, rep.weight[s], d.simple_roots()[i]));
      for (int k = 0; k < rep.mult[s]; ++k) hd[out.blocks_[s].offset + k] = v;
    }
    out.h_.push_back(hd);
  }
  for (int r = 0; r < R; ++r) {
    out.xp_.push_back(densify(maps.plus[r]));
    out.xm_.push_back(densify(maps.minus[r]));
  }
  return out;
}

namespace {

/// Real form of multiplication by a purely imaginary matrix i*B (B real):
/// [[0, -B], [B, 0]] on the (x, y) stacking of v = x + i y.
Eigen::MatrixXd imag_block(const Eigen::MatrixXd& b) {
  const int d = static_cast<int>(b.rows());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  m.block(0, d, d, d) = -b;
  m.block(d, 0, d, d) = b;
  return m;
}

Eigen::MatrixXd real_block(const Eigen::MatrixXd& a) {
  const int d = static_cast<int>(a.rows());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  m.block(0, 0, d, d) = a;
  m.block(d, d, d, d) = a;
  return m;
}

}  // namespace

Eigen::MatrixXd RepMatrices::real_h(int i) const {
  return imag_block(Eigen::MatrixXd(h_[i].asDiagonal()));
}

Eigen::MatrixXd RepMatrices::real_x(int r) const { return real_block(xp_[r] - xm_[r]); }

Eigen::MatrixXd RepMatrices::real_y(int r) const { return imag_block(xp_[r] + xm_[r]); }

Eigen::MatrixXd RepMatrices::real_u_element(const std::vector<double>& coords) const {
  const int n = datum().rank();
  const int R = static_cast<int>(datum().positive_roots().size());
  if (static_cast<int>(coords.size()) != n + 2 * R)
    throw std::invalid_argument("real_u_element: coordinate size mismatch");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_real(), dim_real());
  for (int i = 0; i < n; ++i)
    if (coords[i] != 0) m += coords[i] * real_h(i);
  for (int r = 0; r < R; ++r) {
    if (coords[n + r] != 0) m += coords[n + r] * real_x(r);
    if (coords[n + R + r] != 0) m += coords[n + R + r] * real_y(r);
  }
  return m;
}

RealRep realify(const RepMatrices& rep) {
  RealRep out;
  out.dim = rep.dim_real();
  out.blocks = rep.weight_blocks();
  for (int i = 0; i < rep.datum().rank(); ++i) out.h.push_back(rep.real_h(i));
  for (int r = 0; r < static_cast<int>(rep.datum().positive_roots().size()); ++r) {
    out.x.push_back(rep.real_x(r));
    out.y.push_back(rep.real_y(r));
  }
  return out;
}

SixConditionReport check_six_conditions(const RepMatrices& rep,
                                        const std::vector<WeightVec>& S, double tol) {
  const int dc = rep.dim_c();
  const int dr = 2 * dc;
  std::vector<bool> in_v1(dr, false);
  for (const auto& mu : S) {
    const int b = rep.block_of(mu);
    if (b < 0)
      throw std::invalid_argument("check_six_conditions: S contains a non-weight");
    const auto& blk = rep.weight_blocks()[b];
    for (int k = 0; k < blk.mult; ++k) {
      in_v1[blk.offset + k] = true;
      in_v1[dc + blk.offset + k] = true;
    }
  }

  const int n = rep.datum().rank();
  const int R = static_cast<int>(rep.datum().positive_roots().size());
  std::vector<Eigen::MatrixXd> gens;  // X^g then Y^g
  for (int r = 0; r < R; ++r) gens.push_back(rep.real_x(r));
  for (int r = 0; r < R; ++r) gens.push_back(rep.real_y(r));

  SixConditionReport rpt;

  // (1) V1 and V2 invariant under i h_R: off-block residual of every real_h.
  {
    double res = 0;
    for (int i = 0; i < n; ++i) {
      const Eigen::MatrixXd m = rep.real_h(i);
      for (int c = 0; c < dr; ++c)
        for (int r2 = 0; r2 < dr; ++r2)
          if (in_v1[c] != in_v1[r2]) res = std::max(res, std::abs(m(r2, c)));
    }
    rpt.items[0] = {res <= tol, res};
  }

  // (2) the X^g and Y^g push V1 into V2: V1 -> V1 residual.
  {
    double res = 0;
    for (const auto& m : gens)
      for (int c = 0; c < dr; ++c) {
        if (!in_v1[c]) continue;
        for (int r2 = 0; r2 < dr; ++r2)
          if (in_v1[r2]) res = std::max(res, std::abs(m(r2, c)));
      }
    rpt.items[1] = {res <= tol, res};
  }

  // (3) V1 orthogonal to V2: exact, the realified basis is orthonormal and
  // V1 is spanned by basis vectors.
  rpt.items[2] = {true, 0.0};

  // (4) skew-symmetry of pi(H) for H in i h_R.
  {
    double res = 0;
    for (int i = 0; i < n; ++i) {
      const Eigen::MatrixXd m = rep.real_h(i);
      res = std::max(res, (m + m.transpose()).cwiseAbs().maxCoeff());
    }
    rpt.items[3] = {res <= tol, res};
  }

  // (5) nontriviality of every restriction to V1: smallest restricted norm.
  {
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& m : gens) {
      double norm = 0;
      for (int c = 0; c < dr; ++c) {
        if (!in_v1[c]) continue;
        for (int r2 = 0; r2 < dr; ++r2) norm = std::max(norm, std::abs(m(r2, c)));
      }
      smallest = std::min(smallest, norm);
    }
    rpt.items[4] = {smallest > tol, smallest};
  }

  // (6) tr pi(Y)|V1^t pi(X)|V1 = 0 for distinct compact generators.
  {
    double res = 0;
    std::vector<Eigen::MatrixXd> restricted;
    std::vector<int> v1_cols;
    for (int c = 0; c < dr; ++c)
      if (in_v1[c]) v1_cols.push_back(c);
    for (const auto& m : gens) {
      Eigen::MatrixXd r2(dr, v1_cols.size());
      for (std::size_t k = 0; k < v1_cols.size(); ++k) r2.col(k) = m.col(v1_cols[k]);
      restricted.push_back(r2);
    }
    for (std::size_t a = 0; a < restricted.size(); ++a)
      for (std::size_t b = a + 1; b < restricted.size(); ++b)
        res = std::max(res,
                       std::abs((restricted[b].transpose() * restricted[a]).trace()));
    rpt.items[5] = {res <= tol, res};
  }

  rpt.all_passed = true;
  for (const auto& it : rpt.items) rpt.all_passed = rpt.all_passed && it.passed;
  return rpt;
}

}  // namespace ricneg
