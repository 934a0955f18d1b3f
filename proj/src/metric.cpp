#include "ricneg/metric.hpp"

#include "ricneg/approaches.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>

namespace ricneg {

std::vector<std::pair<int, double>> MetricLieAlgebra::bracket_of(int i, int j) const {
  if (i == j) return {};
  const bool swap = i > j;
  const auto it = bracket.find(swap ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == bracket.end()) return {};
  auto out = it->second;
  if (swap)
    for (auto& [k, c] : out) c = -c;
  return out;
}

double MetricLieAlgebra::jacobi_residual() const {
  std::vector<double> acc(dim);
  double res = 0;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      const auto ab = bracket_of(a, b);
      for (int c = b + 1; c < dim; ++c) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (const auto& [k, v] : ab)
          for (const auto& [m, w] : bracket_of(k, c)) acc[m] += v * w;
        for (const auto& [k, v] : bracket_of(b, c))
          for (const auto& [m, w] : bracket_of(k, a)) acc[m] += v * w;
        for (const auto& [k, v] : bracket_of(c, a))
          for (const auto& [m, w] : bracket_of(k, b)) acc[m] += v * w;
        for (const double x : acc) res = std::max(res, std::abs(x));
      }
    }
  return res;
}

int MetricLieAlgebra::radical_dim() const {
  int d = 0;
  for (const auto& b : blocks)
    if (b.kind == BlockKind::Radical) d += b.size;
  return d;
}

bool MetricLieAlgebra::radical_abelian() const {
  for (const auto& [key, terms] : bracket)
    if (is_radical(key.first) && is_radical(key.second) && !terms.empty()) return false;
  return true;
}

namespace {

/// -Killing orthonormalization of the compact basis: returns P with columns
/// holding the coordinates of the orthonormal vectors over the compact basis,
/// plus the transformed structure constants.
struct CompactONB {
  int dim = 0;
  Eigen::MatrixXd p;       // u'_k = sum_j p(j,k) u_j
  Eigen::MatrixXd p_inv;   // = L^T
  std::vector<std::vector<std::pair<int, double>>> bracket;  // flattened (a,b)->terms, a<b
  int idx(int a, int b) const { return a * dim + b; }
};

CompactONB compact_onb(const ChevalleyData& chev) {
  const auto& cb = chev.compact_basis();
  CompactONB out;
  out.dim = cb.dim;
  Eigen::MatrixXd negb(cb.dim, cb.dim);
  for (int i = 0; i < cb.dim; ++i)
    for (int j = 0; j < cb.dim; ++j) negb(i, j) = -to_double(cb.killing[i][j]);
  Eigen::LLT<Eigen::MatrixXd> llt(negb);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("compact Killing form is not negative definite");
  const Eigen::MatrixXd L = llt.matrixL();
  out.p_inv = L.transpose();
  out.p = out.p_inv.inverse();

  out.bracket.resize(cb.dim * cb.dim);
  for (int a = 0; a < cb.dim; ++a)
    for (int b = a + 1; b < cb.dim; ++b) {
      Eigen::VectorXd in_e = Eigen::VectorXd::Zero(cb.dim);
      for (int i = 0; i < cb.dim; ++i) {
        if (out.p(i, a) == 0) continue;
        for (int j = 0; j < cb.dim; ++j) {
          if (out.p(j, b) == 0) continue;
          for (const auto& [m, c] : cb.bracket_of(i, j))
            in_e[m] += out.p(i, a) * out.p(j, b) * to_double(c);
        }
      }
      const Eigen::VectorXd coords = out.p_inv * in_e;
      std::vector<std::pair<int, double>> terms;
      for (int k = 0; k < cb.dim; ++k)
        if (std::abs(coords[k]) > 1e-13) terms.push_back({k, coords[k]});
      out.bracket[out.idx(a, b)] = std::move(terms);
    }
  return out;
}

void add_bracket(MetricLieAlgebra& alg, int i, int j,
                 std::vector<std::pair<int, double>> terms) {
  std::erase_if(terms, [](const auto& t) { return t.second == 0.0; });
  if (terms.empty()) return;
  if (i > j) {
    for (auto& [k, c] : terms) c = -c;
    std::swap(i, j);
  }
  alg.bracket[{i, j}] = std::move(terms);
}

/// Layout of the Levi part: the -Killing orthonormalization mixes the Cartan
/// directions among themselves and keeps each X^g, Y^g on its own axis, so
/// the compact part is reordered as [Cartan | X-long | X-short | Y-long |
/// Y-short] and each group becomes its own metric block. A single u block
/// (metric proportional to -Killing) pins the Ricci curvature of the Cartan
/// directions at +1/(4b) on every l(u,pi); the finer grouping is needed for
/// the curvature to be able to change sign there.
struct LeviLayout {
  std::vector<int> order;  // position within u -> compact-basis index
  struct Group {
    std::string name;
    int start = 0;  // u-relative
    int size = 0;
  };
  std::vector<Group> groups;
};

LeviLayout levi_layout(const ChevalleyData& chev) {
  const RootDatum& d = chev.datum();
  const int n = d.rank();
  const auto& roots = d.positive_roots();
  const int R = static_cast<int>(roots.size());
  const int nf = d.num_factors();
  LeviLayout out;
  const std::string tag = nf > 1 ? "." : "";
  auto suffix = [&](int f) { return nf > 1 ? tag + std::to_string(f + 1) : ""; };
  // Cartan directions, one group per factor (the Killing form does not mix
  // factors, so the orthonormalization stays within each group).
  for (int f = 0; f < nf; ++f) {
    const auto [lo, hi] = d.factor_simple_range(f);
    for (int i = lo; i < hi; ++i) out.order.push_back(i);
    out.groups.push_back({"uH" + suffix(f), lo, hi - lo});
  }
  auto group = [&](const std::string& name, int base, auto&& pick) {
    const int start = static_cast<int>(out.order.size());
    for (int r = 0; r < R; ++r)
      if (pick(r)) out.order.push_back(base + r);
    const int size = static_cast<int>(out.order.size()) - start;
    if (size > 0) out.groups.push_back({name, start, size});
  };
  for (int f = 0; f < nf; ++f) {
    bool has_short = false;
    for (int r = 0; r < R; ++r)
      if (roots[r].factor == f && !roots[r].is_long) has_short = true;
    const std::string xl = (has_short ? "uXl" : "uX") + suffix(f);
    const std::string yl = (has_short ? "uYl" : "uY") + suffix(f);
    group(xl, n, [&](int r) { return roots[r].factor == f && roots[r].is_long; });
    group("uXs" + suffix(f), n,
          [&](int r) { return roots[r].factor == f && !roots[r].is_long; });
    group(yl, n + R, [&](int r) { return roots[r].factor == f && roots[r].is_long; });
    group("uYs" + suffix(f), n + R,
          [&](int r) { return roots[r].factor == f && !roots[r].is_long; });
  }
  return out;
}

}  // namespace

MetricLieAlgebra build_l(const RepMatrices& rep, const ChevalleyData& chev,
                         const std::vector<RadicalBlockSpec>& radical,
                         double submodule_tol) {
  const RootDatum& d = rep.datum();
  const int dc = rep.dim_c();
  const int du = chev.compact_basis().dim;

  for (const auto& spec : radical)
    if (spec.z_scale <= 0)
      throw std::invalid_argument("build_l: radical block scalars must be positive");

  // The radical specs must partition the weight set.
  {
    std::map<WeightVec, int> count;
    for (const auto& blk : rep.weight_blocks()) count[blk.mu] = 0;
    for (const auto& spec : radical)
      for (const auto& mu : spec.weights) {
        const auto it = count.find(mu);
        if (it == count.end())
          throw std::invalid_argument("build_l: radical block contains a non-weight");
        it->second += 1;
      }
    for (const auto& [mu, c] : count)
      if (c != 1)
        throw std::invalid_argument("build_l: radical blocks must partition the weights");
  }

  const CompactONB onb = compact_onb(chev);
  const LeviLayout levi = levi_layout(chev);

  MetricLieAlgebra alg;
  alg.dim = 1 + du + 2 * dc;
  alg.basis_labels.push_back("Z");
  alg.blocks.push_back({"Z", 0, 1, MetricLieAlgebra::BlockKind::Z, 0.0});
  std::vector<int> upos(du);  // compact-basis index -> l index
  for (int p = 0; p < du; ++p) {
    const int k = levi.order[p];
    upos[k] = 1 + p;
    const int n_ = d.rank();
    const int R_ = static_cast<int>(d.positive_roots().size());
    if (k < n_)
      alg.basis_labels.push_back("uH" + std::to_string(k + 1));
    else if (k < n_ + R_)
      alg.basis_labels.push_back("X" + d.weight_str(d.positive_roots()[k - n_].vec));
    else
      alg.basis_labels.push_back("Y" + d.weight_str(d.positive_roots()[k - n_ - R_].vec));
  }
  for (const auto& g : levi.groups)
    alg.blocks.push_back({g.name, 1 + g.start, g.size,
                          MetricLieAlgebra::BlockKind::Levi, 0.0});

  // Realified radical coordinates of a weight block list.
  auto real_indices = [&](const std::vector<WeightVec>& weights) {
    std::vector<int> idx;
    for (const auto& mu : weights) {
      const int b = rep.block_of(mu);
      const auto& blk = rep.weight_blocks()[b];
      for (int k = 0; k < blk.mult; ++k) idx.push_back(blk.offset + k);
      for (int k = 0; k < blk.mult; ++k) idx.push_back(dc + blk.offset + k);
    }
    return idx;
  };

  // l-basis layout of the radical, split blocks becoming two metric blocks.
  std::vector<int> rep_to_l(2 * dc, -1);
  std::vector<int> spec_of(2 * dc, -1);  // which radical spec owns a rep index
  int cursor = 1 + du;
  const bool single = radical.size() == 1;
  for (std::size_t s = 0; s < radical.size(); ++s) {
    const auto& spec = radical[s];
    for (const int ri : real_indices(spec.weights)) spec_of[ri] = static_cast<int>(s);
    const std::string base = single ? "V" : "W" + std::to_string(s + 1);
    std::vector<std::vector<WeightVec>> parts;
    std::vector<std::string> names;
    if (spec.v1_split.empty()) {
      parts.push_back(spec.weights);
      names.push_back(base);
    } else {
      std::set<WeightVec> v1(spec.v1_split.begin(), spec.v1_split.end());
      std::vector<WeightVec> rest;
      for (const auto& mu : spec.weights)
        if (!v1.count(mu)) rest.push_back(mu);
      if (v1.size() + rest.size() != spec.weights.size())
        throw std::invalid_argument("build_l: V1 split must be a subset of the block");
      parts.push_back(spec.v1_split);
      names.push_back(single ? "V1" : base + ":V1");
      parts.push_back(rest);
      names.push_back(single ? "V2" : base + ":V2");
    }
    for (std::size_t part = 0; part < parts.size(); ++part) {
      if (parts[part].empty()) continue;
      const auto idx = real_indices(parts[part]);
      alg.blocks.push_back({names[part], cursor, static_cast<int>(idx.size()),
                            MetricLieAlgebra::BlockKind::Radical, spec.z_scale});
      for (const int ri : idx) {
        rep_to_l[ri] = cursor++;
        const bool re = ri < dc;
        const int cidx = re ? ri : ri - dc;
        std::string label;
        for (const auto& blk : rep.weight_blocks())
          if (cidx >= blk.offset && cidx < blk.offset + blk.mult)
            label = std::string(re ? "x" : "y") + d.weight_str(blk.mu) + "." +
                    std::to_string(cidx - blk.offset);
        alg.basis_labels.push_back(label);
      }
    }
  }
  for (int ri = 0; ri < 2 * dc; ++ri)
    if (rep_to_l[ri] < 0) throw std::logic_error("build_l: radical index not assigned");
  alg.block_of.assign(alg.dim, -1);
  for (std::size_t b = 0; b < alg.blocks.size(); ++b)
    for (int k = 0; k < alg.blocks[b].size; ++k)
      alg.block_of[alg.blocks[b].start + k] = static_cast<int>(b);

  // [Z, v] = c_b v on each radical part.
  for (const auto& blk : alg.blocks)
    if (blk.kind == MetricLieAlgebra::BlockKind::Radical)
      for (int k = 0; k < blk.size; ++k)
        add_bracket(alg, 0, blk.start + k, {{blk.start + k, blk.z_scale}});

  // u brackets in the -Killing orthonormal basis.
  for (int a = 0; a < du; ++a)
    for (int b = a + 1; b < du; ++b) {
      std::vector<std::pair<int, double>> terms;
      for (const auto& [k, c] : onb.bracket[onb.idx(a, b)]) terms.push_back({upos[k], c});
      add_bracket(alg, upos[a], upos[b], std::move(terms));
    }

  // u action on the radical; verify that every radical metric block is
  // preserved (u-submodule requirement).
  std::vector<Eigen::MatrixXd> action(du);
  for (int k = 0; k < du; ++k) {
    std::vector<double> coords(du);
    for (int j = 0; j < du; ++j) coords[j] = onb.p(j, k);
    action[k] = rep.real_u_element(coords);
  }
  for (int k = 0; k < du; ++k) {
    double off = 0;
    for (int ri = 0; ri < 2 * dc; ++ri)
      for (int rj = 0; rj < 2 * dc; ++rj)
        if (spec_of[ri] != spec_of[rj])
          off = std::max(off, std::abs(action[k](ri, rj)));
    if (off > submodule_tol)
      throw std::invalid_argument("build_l: radical partition is not by u-submodules");
  }
  for (int k = 0; k < du; ++k)
    for (int rj = 0; rj < 2 * dc; ++rj) {
      std::vector<std::pair<int, double>> terms;
      for (int ri = 0; ri < 2 * dc; ++ri)
        if (std::abs(action[k](ri, rj)) > 1e-14)
          terms.push_back({rep_to_l[ri], action[k](ri, rj)});
      add_bracket(alg, upos[k], rep_to_l[rj], std::move(terms));
    }

  return alg;
}

MetricLieAlgebra build_l(const RepMatrices& rep, const ChevalleyData& chev,
                         const std::vector<WeightVec>& S) {
  RadicalBlockSpec spec;
  for (const auto& blk : rep.weight_blocks()) spec.weights.push_back(blk.mu);
  spec.z_scale = 1.0;
  spec.v1_split = S;
  return build_l(rep, chev, {spec});
}

MetricLieAlgebra build_general(const ChevalleyData& chev, const GeneralRadicalSpec& n,
                               double tol) {
  const int nd = n.dim;
  const auto& cb = chev.compact_basis();
  if (static_cast<int>(n.u_on_n.size()) != cb.dim)
    throw std::invalid_argument("build_general: one action matrix per compact basis element");

  // Dense bracket tensor of n.
  std::vector<Eigen::MatrixXd> t(nd, Eigen::MatrixXd::Zero(nd, nd));  // t[k](i,j)
  for (const auto& [i, j, k, c] : n.n_struct) {
    if (i == j) throw std::invalid_argument("build_general: diagonal bracket entry");
    t[k](i, j) += c;
    t[k](j, i) -= c;
  }
  auto n_bracket = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd out(nd);
    for (int k = 0; k < nd; ++k) out[k] = a.dot(t[k] * b);
    return out;
  };

  // Nilpotency: the lower central series must die.
  {
    Eigen::MatrixXd span = Eigen::MatrixXd::Identity(nd, nd);
    int guard = 0;
    while (span.cols() > 0) {
      if (++guard > nd + 1)
        throw std::invalid_argument("build_general: radical is not nilpotent");
      std::vector<Eigen::VectorXd> next;
      for (int i = 0; i < nd; ++i)
        for (int c = 0; c < span.cols(); ++c) {
          Eigen::VectorXd v = n_bracket(Eigen::VectorXd::Unit(nd, i), span.col(c));
          if (v.cwiseAbs().maxCoeff() > tol) next.push_back(v);
        }
      if (next.empty()) break;
      Eigen::MatrixXd m(nd, next.size());
      for (std::size_t c = 0; c < next.size(); ++c) m.col(c) = next[c];
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
      qr.setThreshold(1e-10);
      const int rank = qr.rank();
      if (rank == span.cols() && rank > 0)
        throw std::invalid_argument("build_general: radical is not nilpotent");
      Eigen::MatrixXd q = qr.householderQ();
      span = q.leftCols(rank);
    }
  }

  auto derivation_residual = [&](const Eigen::MatrixXd& m) {
    double res = 0;
    for (int i = 0; i < nd; ++i)
      for (int j = i + 1; j < nd; ++j) {
        Eigen::VectorXd lhs = Eigen::VectorXd::Zero(nd);
        for (int k = 0; k < nd; ++k) lhs += t[k](i, j) * m.col(k);
        const Eigen::VectorXd rhs =
            n_bracket(m.col(i), Eigen::VectorXd::Unit(nd, j)) +
            n_bracket(Eigen::VectorXd::Unit(nd, i), m.col(j));
        res = std::max(res, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    return res;
  };
  if (derivation_residual(n.z_on_n) > tol)
    throw std::invalid_argument("build_general: Z does not act as a derivation");
  for (const auto& m : n.u_on_n)
    if (derivation_residual(m) > tol)
      throw std::invalid_argument("build_general: u does not act by derivations");

  // representation property and [Z, u] = 0
  for (int a = 0; a < cb.dim; ++a) {
    if ((n.z_on_n * n.u_on_n[a] - n.u_on_n[a] * n.z_on_n).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("build_general: Z action does not commute with u");
    for (int b = a + 1; b < cb.dim; ++b) {
      Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(nd, nd);
      for (const auto& [k, c] : cb.bracket_of(a, b)) expect += to_double(c) * n.u_on_n[k];
      if ((n.u_on_n[a] * n.u_on_n[b] - n.u_on_n[b] * n.u_on_n[a] - expect)
              .cwiseAbs()
              .maxCoeff() > tol)
        throw std::invalid_argument("build_general: u action is not a representation");
    }
  }

  const CompactONB onb = compact_onb(chev);
  const LeviLayout levi = levi_layout(chev);
  const int du = cb.dim;

  MetricLieAlgebra alg;
  alg.dim = 1 + du + nd;
  alg.basis_labels.push_back("Z");
  alg.blocks.push_back({"Z", 0, 1, MetricLieAlgebra::BlockKind::Z, 0.0});
  std::vector<int> upos(du);
  for (int p = 0; p < du; ++p) {
    upos[levi.order[p]] = 1 + p;
    alg.basis_labels.push_back("u" + std::to_string(levi.order[p] + 1));
  }
  for (const auto& g : levi.groups)
    alg.blocks.push_back({g.name, 1 + g.start, g.size,
                          MetricLieAlgebra::BlockKind::Levi, 0.0});
  auto blocks = n.blocks;
  if (blocks.empty()) blocks.push_back({"n", 0, nd});
  for (const auto& nb : blocks) {
    double scale = 0.0;
    bool scalar = true;
    for (int k = 0; k < nb.size && scalar; ++k)
      for (int j = 0; j < nb.size; ++j) {
        const double v = n.z_on_n(nb.start + k, nb.start + j);
        if (k == j) {
          if (scale == 0.0) scale = v;
          if (std::abs(v - scale) > tol) scalar = false;
        } else if (std::abs(v) > tol) {
          scalar = false;
        }
      }
    alg.blocks.push_back({nb.name, 1 + du + nb.start, nb.size,
                          MetricLieAlgebra::BlockKind::Radical, scalar ? scale : 0.0});
    for (int k = 0; k < nb.size; ++k)
      alg.basis_labels.push_back(nb.name + std::to_string(k + 1));
  }
  alg.block_of.assign(alg.dim, -1);
  for (std::size_t b = 0; b < alg.blocks.size(); ++b)
    for (int k = 0; k < alg.blocks[b].size; ++k)
      alg.block_of[alg.blocks[b].start + k] = static_cast<int>(b);
  for (int i = 0; i < alg.dim; ++i)
    if (alg.block_of[i] < 0) throw std::logic_error("build_general: block gaps");

  const int off = 1 + du;
  // [Z, v]
  for (int j = 0; j < nd; ++j) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < nd; ++i)
      if (std::abs(n.z_on_n(i, j)) > 1e-14) terms.push_back({off + i, n.z_on_n(i, j)});
    add_bracket(alg, 0, off + j, std::move(terms));
  }
  // u brackets
  for (int a = 0; a < du; ++a)
    for (int b = a + 1; b < du; ++b) {
      std::vector<std::pair<int, double>> terms;
      for (const auto& [k, c] : onb.bracket[onb.idx(a, b)]) terms.push_back({upos[k], c});
      add_bracket(alg, upos[a], upos[b], std::move(terms));
    }
  // u action in the orthonormal u-basis
  for (int k = 0; k < du; ++k) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nd, nd);
    for (int j = 0; j < du; ++j)
      if (onb.p(j, k) != 0) m += onb.p(j, k) * n.u_on_n[j];
    for (int j = 0; j < nd; ++j) {
      std::vector<std::pair<int, double>> terms;
      for (int i = 0; i < nd; ++i)
        if (std::abs(m(i, j)) > 1e-14) terms.push_back({off + i, m(i, j)});
      add_bracket(alg, upos[k], off + j, std::move(terms));
    }
  }
  // n brackets
  for (int i = 0; i < nd; ++i)
    for (int j = i + 1; j < nd; ++j) {
      std::vector<std::pair<int, double>> terms;
      for (int k = 0; k < nd; ++k)
        if (std::abs(t[k](i, j)) > 1e-14) terms.push_back({off + k, t[k](i, j)});
      add_bracket(alg, off + i, off + j, std::move(terms));
    }

  return alg;
}

MetricLieAlgebra compact_algebra(const ChevalleyData& chev) {
  const CompactONB onb = compact_onb(chev);
  MetricLieAlgebra alg;
  alg.dim = onb.dim;
  alg.blocks.push_back({"u", 0, onb.dim, MetricLieAlgebra::BlockKind::Levi, 0.0});
  alg.block_of.assign(onb.dim, 0);
  for (int k = 0; k < onb.dim; ++k) alg.basis_labels.push_back("u" + std::to_string(k + 1));
  for (int a = 0; a < onb.dim; ++a)
    for (int b = a + 1; b < onb.dim; ++b)
      add_bracket(alg, a, b, onb.bracket[onb.idx(a, b)]);
  return alg;
}

// ---------------------------------------------------------------------------
// Ricci

namespace {

/// Metric-independent aggregates for the block-diagonal metric family. With
/// block scalars d, the scaled structure constants factor through per-block
/// diagonal scalings, so Ric(d) assembles from a handful of precomputed
/// matrices.
class RicciEngine {
 public:
  explicit RicciEngine(const MetricLieAlgebra& alg) : alg_(&alg) {
    const int n = alg.dim;
    nb_ = static_cast<int>(alg.blocks.size());

    std::vector<Eigen::MatrixXd> ad(n, Eigen::MatrixXd::Zero(n, n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& [k, c] : alg.bracket_of(i, j)) ad[i](k, j) = c;

    killing_.setZero(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = x; y < n; ++y) {
        // tr(ad_x ad_y) without forming the product
        const double v = ad[x].cwiseProduct(ad[y].transpose()).sum();
        killing_(x, y) = killing_(y, x) = v;
      }
    trace_ad_.setZero(n);
    for (int i = 0; i < n; ++i) trace_ad_[i] = ad[i].trace();

    s1_.assign(nb_ * nb_, Eigen::MatrixXd::Zero(n, n));
    s2_.assign(nb_ * nb_, Eigen::MatrixXd::Zero(n, n));
    adm_.assign(nb_, Eigen::MatrixXd::Zero(n, n));

    // cells keyed by (second argument i, result j) with entries (x, c_{xi}^j)
    for (int i = 0; i < n; ++i) {
      const int bi = alg.block_of[i];
      for (int j = 0; j < n; ++j) {
        const int bj = alg.block_of[j];
        std::vector<std::pair<int, double>> cell;
        for (int x = 0; x < n; ++x)
          if (ad[x](j, i) != 0) cell.push_back({x, ad[x](j, i)});
        auto& s1 = s1_[bi * nb_ + bj];
        for (const auto& [x, cx] : cell)
          for (const auto& [y, cy] : cell) s1(x, y) += cx * cy;
      }
    }
    // cells keyed by ordered argument pair (i, j) with result entries
    for (int i = 0; i < n; ++i) {
      const int bi = alg.block_of[i];
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const int bj = alg.block_of[j];
        const auto terms = alg.bracket_of(i, j);
        auto& s2 = s2_[bi * nb_ + bj];
        for (const auto& [k, ck] : terms)
          for (const auto& [m, cm] : terms) s2(k, m) += ck * cm;
      }
    }
    for (int i = 0; i < n; ++i) {
      const int bi = alg.block_of[i];
      if (trace_ad_[i] != 0) adm_[bi] += trace_ad_[i] * ad[i];
    }
  }

  RicciReport compute(const InnerProductParams& params) const {
    const MetricLieAlgebra& alg = *alg_;
    const int n = alg.dim;
    if (static_cast<int>(params.block_scalars.size()) != nb_)
      throw std::invalid_argument("ricci: one scalar per metric block expected");
    for (const double s : params.block_scalars)
      if (!(s > 0))
        throw std::invalid_argument("ricci: metric scalars must be positive");

    const auto& d = params.block_scalars;
    Eigen::VectorXd sqrt_d(n), inv_sqrt_d(n);
    for (int i = 0; i < n; ++i) {
      sqrt_d[i] = std::sqrt(d[alg.block_of[i]]);
      inv_sqrt_d[i] = 1.0 / sqrt_d[i];
    }

    Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd adh = Eigen::MatrixXd::Zero(n, n);
    for (int bi = 0; bi < nb_; ++bi) {
      adh += adm_[bi] / d[bi];
      for (int bj = 0; bj < nb_; ++bj) {
        const double r = d[bj] / d[bi];
        if (!s1_[bi * nb_ + bj].isZero(0)) m1 += r * s1_[bi * nb_ + bj];
        if (!s2_[bi * nb_ + bj].isZero(0))
          m2 += s2_[bi * nb_ + bj] / (d[bi] * d[bj]);
      }
    }
    m1 = -0.5 * inv_sqrt_d.asDiagonal() * m1 * inv_sqrt_d.asDiagonal();
    m2 = 0.25 * sqrt_d.asDiagonal() * m2 * sqrt_d.asDiagonal();
    const Eigen::MatrixXd bk =
        inv_sqrt_d.asDiagonal() * killing_ * inv_sqrt_d.asDiagonal();
    adh = sqrt_d.asDiagonal() * adh * inv_sqrt_d.asDiagonal();

    Eigen::MatrixXd ric = m1 + m2 - 0.5 * bk - 0.5 * (adh + adh.transpose());
    ric = 0.5 * (ric + ric.transpose());

    RicciReport rpt;
    rpt.ricci = ric;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ric);
    rpt.eigenvalues = es.eigenvalues();
    rpt.max_eigenvalue = rpt.eigenvalues[n - 1];
    rpt.spectral_radius =
        std::max(std::abs(rpt.eigenvalues[0]), std::abs(rpt.eigenvalues[n - 1]));
    rpt.negative_definite = rpt.max_eigenvalue < 0;
    rpt.mean_curvature.setZero(n);
    for (int i = 0; i < n; ++i) rpt.mean_curvature[i] = trace_ad_[i] * inv_sqrt_d[i];
    return rpt;
  }

 private:
  const MetricLieAlgebra* alg_;
  int nb_ = 0;
  Eigen::MatrixXd killing_;
  Eigen::VectorXd trace_ad_;
  std::vector<Eigen::MatrixXd> s1_, s2_, adm_;
};

}  // namespace

RicciReport ricci(const MetricLieAlgebra& alg, const InnerProductParams& params) {
  return RicciEngine(alg).compute(params);
}

Eigen::MatrixXd ricci_oracle(const MetricLieAlgebra& alg,
                             const InnerProductParams& params) {
  const int n = alg.dim;
  if (params.block_scalars.size() != alg.blocks.size())
    throw std::invalid_argument("ricci_oracle: one scalar per metric block expected");
  std::vector<double> sd(n);
  for (int i = 0; i < n; ++i) sd[i] = std::sqrt(params.block_scalars[alg.block_of[i]]);

  // scaled structure constants, dense
  std::vector<Eigen::MatrixXd> c(n, Eigen::MatrixXd::Zero(n, n));  // c[k](i,j)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, v] : alg.bracket_of(i, j))
        c[k](i, j) = v * sd[k] / (sd[i] * sd[j]);

  // Koszul in an orthonormal frame: 2<nabla_i e_j, e_k>.
  std::vector<Eigen::MatrixXd> gamma(n, Eigen::MatrixXd::Zero(n, n));  // gamma[k](i,j)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        gamma[k](i, j) = 0.5 * (c[k](i, j) - c[i](j, k) + c[j](k, i));

  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double acc = 0;
      for (int i = 0; i < n; ++i)
        for (int m = 0; m < n; ++m) {
          acc += gamma[m](j, k) * gamma[i](i, m) - gamma[m](i, k) * gamma[i](j, m);
          acc -= c[m](i, j) * gamma[i](m, k);
        }
      ric(j, k) = acc;
    }
  return 0.5 * (ric + ric.transpose());
}

MetricLieAlgebra degenerate(const MetricLieAlgebra& alg, double t) {
  if (!(t > 0)) throw std::invalid_argument("degenerate: t must be positive");
  MetricLieAlgebra out = alg;
  for (auto& [key, terms] : out.bracket) {
    if (!out.is_radical(key.first) || !out.is_radical(key.second)) continue;
    for (auto& [k, c] : terms) {
      if (!out.is_radical(k))
        throw std::logic_error("degenerate: radical bracket leaves the radical");
      c /= t;
    }
  }
  return out;
}

MetricLieAlgebra degenerate_limit(const MetricLieAlgebra& alg) {
  MetricLieAlgebra out = alg;
  std::erase_if(out.bracket, [&](const auto& kv) {
    return out.is_radical(kv.first.first) && out.is_radical(kv.first.second);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Negative-Ricci search

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct NmOutcome {
  double best_f = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  bool converged = false;
  long long evals = 0;
};

/// Standard Nelder-Mead on f: R^k -> R with an evaluation budget.
template <typename F>
NmOutcome nelder_mead(F&& f, std::vector<double> x0, double step, long long budget) {
  const int k = static_cast<int>(x0.size());
  NmOutcome out;
  std::vector<std::vector<double>> pts(k + 1, x0);
  std::vector<double> val(k + 1);
  for (int i = 1; i <= k; ++i) pts[i][i - 1] += step;
  for (int i = 0; i <= k; ++i) {
    val[i] = f(pts[i]);
    ++out.evals;
  }
  std::vector<int> ord(k + 1);
  auto resort = [&]() {
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return val[a] < val[b]; });
  };
  while (out.evals < budget) {
    resort();
    const int best = ord[0], worst = ord[k], second = ord[k - 1];
    if (std::abs(val[worst] - val[best]) < 1e-13 ||
        (val[best] < 0 && val[worst] < 0 && val[worst] - val[best] < 1e-10)) {
      out.converged = true;
      break;
    }
    std::vector<double> centroid(k, 0.0);
    for (int i = 0; i <= k; ++i) {
      if (i == worst) continue;
      for (int j = 0; j < k; ++j) centroid[j] += pts[i][j] / k;
    }
    auto blend = [&](double a) {
      std::vector<double> p(k);
      for (int j = 0; j < k; ++j) p[j] = centroid[j] + a * (centroid[j] - pts[worst][j]);
      return p;
    };
    const auto xr = blend(1.0);
    const double fr = f(xr);
    ++out.evals;
    if (fr < val[ord[0]]) {
      const auto xe = blend(2.0);
      const double fe = f(xe);
      ++out.evals;
      if (fe < fr) {
        pts[worst] = xe;
        val[worst] = fe;
      } else {
        pts[worst] = xr;
        val[worst] = fr;
      }
    } else if (fr < val[second]) {
      pts[worst] = xr;
      val[worst] = fr;
    } else {
      const bool outside = fr < val[worst];
      const auto xc = blend(outside ? 0.5 : -0.5);
      const double fc = f(xc);
      ++out.evals;
      if (fc < (outside ? fr : val[worst])) {
        pts[worst] = xc;
        val[worst] = fc;
      } else {
        for (int i = 0; i <= k; ++i) {
          if (i == best) continue;
          for (int j = 0; j < k; ++j) pts[i][j] = 0.5 * (pts[i][j] + pts[best][j]);
          val[i] = f(pts[i]);
          ++out.evals;
          if (out.evals >= budget) break;
        }
      }
    }
  }
  resort();
  out.best_f = val[ord[0]];
  out.best_x = pts[ord[0]];
  return out;
}

}  // namespace

std::optional<NegativeRicciResult> find_negative_ricci(const MetricLieAlgebra& alg,
                                                       SearchConfig config,
                                                       Tolerances tol) {
  const int nb = static_cast<int>(alg.blocks.size());
  const bool with_degeneration = !alg.radical_abelian();
  const int k = nb + (with_degeneration ? 1 : 0);

  // For the abelian case the engine is metric-independent and shared.
  std::optional<RicciEngine> shared_engine;
  if (!with_degeneration) shared_engine.emplace(alg);

  auto objective = [&](const std::vector<double>& theta,
                       const RicciEngine* engine) -> double {
    InnerProductParams p;
    for (int b = 0; b < nb; ++b)
      p.block_scalars.push_back(std::exp(std::clamp(theta[b], -20.0, 20.0)));
    RicciReport rpt;
    if (engine) {
      rpt = engine->compute(p);
    } else {
      const double t = std::exp(std::clamp(theta[nb], -20.0, 20.0));
      rpt = RicciEngine(degenerate(alg, t)).compute(p);
    }
    if (rpt.spectral_radius < 1e-300) return 0.0;
    return rpt.max_eigenvalue / rpt.spectral_radius;
  };

  struct RestartResult {
    NmOutcome nm;
    std::uint64_t seed = 0;
  };
  std::vector<RestartResult> results(config.restarts);
  auto run_restart = [&](int r) {
    const std::uint64_t seed = config.seed * 1000003ull + static_cast<std::uint64_t>(r);
    std::mt19937_64 rng(seed);
    std::vector<double> x0(k, 0.0);
    if (r > 0)
      for (int j = 0; j < k; ++j) x0[j] = (uniform01(rng) * 2.0 - 1.0) * 2.5;
    const RicciEngine* engine = shared_engine ? &*shared_engine : nullptr;
    results[r].seed = seed;
    results[r].nm = nelder_mead([&](const std::vector<double>& x) { return objective(x, engine); },
                                x0, 0.7, config.budget);
  };

  if (config.parallel) {
    std::vector<std::future<void>> jobs;
    for (int r = 0; r < config.restarts; ++r)
      jobs.push_back(std::async(std::launch::async, run_restart, r));
    for (auto& j : jobs) j.get();
  } else {
    for (int r = 0; r < config.restarts; ++r) run_restart(r);
  }

  int best = 0;
  long long total_evals = 0;
  bool any_converged = false;
  for (int r = 0; r < config.restarts; ++r) {
    total_evals += results[r].nm.evals;
    any_converged = any_converged || results[r].nm.converged;
    if (results[r].nm.best_f < results[best].nm.best_f) best = r;
  }

  const auto& win = results[best].nm;
  if (win.best_f < -tol.eps_accept_rel) {
    NegativeRicciResult out;
    for (int b = 0; b < nb; ++b)
      out.params.block_scalars.push_back(std::exp(std::clamp(win.best_x[b], -20.0, 20.0)));
    out.degeneration_t =
        with_degeneration ? std::exp(std::clamp(win.best_x[nb], -20.0, 20.0)) : 1.0;
    const MetricLieAlgebra final_alg =
        with_degeneration ? degenerate(alg, out.degeneration_t) : alg;
    out.report = ricci(final_alg, out.params);
    out.restart = best;
    out.seed = results[best].seed;
    out.evaluations = total_evals;
    return out;
  }
  if (!any_converged)
    throw BudgetExhausted("negative-Ricci search: no restart converged within " +
                          std::to_string(config.budget) + " evaluations");
  return std::nullopt;
}

// ---------------------------------------------------------------------------

NilradicalReport verify_nilradical_hypotheses(
    const MetricLieAlgebra& alg, const std::vector<NilradicalBlockSpec>& decomposition,
    Caps caps, double tol) {
  // radical-relative index map
  std::vector<int> radical_idx;
  for (int i = 0; i < alg.dim; ++i)
    if (alg.is_radical(i)) radical_idx.push_back(i);
  const int nd = static_cast<int>(radical_idx.size());
  std::vector<int> rel(alg.dim, -1);
  for (int i = 0; i < nd; ++i) rel[radical_idx[i]] = i;

  // Z and u actions on the radical
  Eigen::MatrixXd zmat = Eigen::MatrixXd::Zero(nd, nd);
  std::vector<Eigen::MatrixXd> umats;
  for (int i = 0; i < alg.dim; ++i) {
    if (alg.blocks[alg.block_of[i]].kind == MetricLieAlgebra::BlockKind::Z) {
      for (int j = 0; j < nd; ++j)
        for (const auto& [k, c] : alg.bracket_of(i, radical_idx[j]))
          if (rel[k] >= 0) zmat(rel[k], j) = c;
    } else if (alg.blocks[alg.block_of[i]].kind == MetricLieAlgebra::BlockKind::Levi) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nd, nd);
      for (int j = 0; j < nd; ++j)
        for (const auto& [k, c] : alg.bracket_of(i, radical_idx[j]))
          if (rel[k] >= 0) m(rel[k], j) = c;
      umats.push_back(m);
    }
  }

  NilradicalReport rpt;
  bool all_z_ok = true, any_certified = false;
  for (const auto& spec : decomposition) {
    NilradicalReport::Block blk;
    blk.name = spec.name;
    if (spec.start < 0 || spec.start + spec.size > nd)
      throw std::invalid_argument("verify_nilradical_hypotheses: block out of range");

    // invariance of the block under u and Z
    double inv = 0;
    auto inside = [&](int i) { return i >= spec.start && i < spec.start + spec.size; };
    for (const auto& m : umats)
      for (int j = spec.start; j < spec.start + spec.size; ++j)
        for (int i = 0; i < nd; ++i)
          if (!inside(i)) inv = std::max(inv, std::abs(m(i, j)));
    for (int j = spec.start; j < spec.start + spec.size; ++j)
      for (int i = 0; i < nd; ++i)
        if (!inside(i)) inv = std::max(inv, std::abs(zmat(i, j)));
    blk.invariance_residual = inv;
    if (inv > tol)
      throw std::invalid_argument("verify_nilradical_hypotheses: block is not invariant");

    // scalar positive Z action
    const double c = zmat(spec.start, spec.start);
    double dev = 0;
    for (int i = spec.start; i < spec.start + spec.size; ++i)
      for (int j = spec.start; j < spec.start + spec.size; ++j)
        dev = std::max(dev, std::abs(zmat(i, j) - (i == j ? c : 0.0)));
    blk.z_eigenvalue = c;
    blk.z_scalar_residual = dev;
    blk.z_positive_scalar = dev <= tol && c > tol;
    all_z_ok = all_z_ok && blk.z_positive_scalar;

    // irreducibility probe: Krylov span of a few deterministic vectors under
    // the restricted u action
    {
      std::mt19937_64 rng(12345 + spec.start);
      bool irreducible = false;
      for (int trial = 0; trial < 3 && !irreducible; ++trial) {
        Eigen::VectorXd v(spec.size);
        for (int i = 0; i < spec.size; ++i) v[i] = uniform01(rng) * 2.0 - 1.0;
        std::vector<Eigen::VectorXd> span{v.normalized()};
        for (std::size_t s = 0; s < span.size() && static_cast<int>(span.size()) < spec.size;
             ++s)
          for (const auto& m : umats) {
            Eigen::VectorXd w =
                m.block(spec.start, spec.start, spec.size, spec.size) * span[s];
            for (const auto& b : span) w -= w.dot(b) * b;
            if (w.norm() > 1e-8) {
              span.push_back(w.normalized());
              if (static_cast<int>(span.size()) == spec.size) break;
            }
          }
        irreducible = static_cast<int>(span.size()) == spec.size;
      }
      blk.irreducible_probe = irreducible;
    }

    if (spec.lambda) blk.approach_certified = classify(*spec.lambda, caps).certified;
    if (spec.rep)
      blk.six_conditions_passed =
          check_six_conditions(*spec.rep, spec.candidate_S).all_passed;
    if ((blk.approach_certified && *blk.approach_certified) ||
        (blk.six_conditions_passed && *blk.six_conditions_passed))
      any_certified = true;

    rpt.blocks.push_back(std::move(blk));
  }
  rpt.hypotheses_met = all_z_ok && any_certified;
  return rpt;
}

}  // namespace ricneg
