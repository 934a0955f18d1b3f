#ifndef RICNEG_REPBUILD_HPP
#define RICNEG_REPBUILD_HPP

#include "ricneg/repweights.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>

namespace ricneg {

/// Signed root code: positive root r (0-based index into
/// datum.positive_roots()) is encoded as +(r+1), its negative as -(r+1).
using RootCode = int;
inline RootCode pos_code(int r) { return r + 1; }
inline RootCode neg_code(int r) { return -(r + 1); }
inline RootCode opposite(RootCode c) { return -c; }
inline int root_index(RootCode c) { return (c > 0 ? c : -c) - 1; }

/// Chevalley-type structure data for the complexified algebra and its
/// compact real form. Root vectors are normalized so that
/// [X_gamma, X_{-gamma}] equals the coroot h_gamma (the element acting on a
/// weight mu by the Cartan integer 2<mu,gamma>/<gamma,gamma>); the remaining
/// sign freedom is fixed by choosing, for each composite positive root, the
/// decomposition gamma = alpha_i + beta with minimal simple index i and
/// making that structure constant positive. All constants are exact, and
/// N_{a,b} = -N_{-a,-b} together with the Jacobi identity are verified
/// during extraction.
class ChevalleyData {
 public:
  static ChevalleyData build(std::shared_ptr<const RootDatum> datum, Caps caps = {});

  const RootDatum& datum() const { return *datum_; }
  std::shared_ptr<const RootDatum> datum_ptr() const { return datum_; }

  /// Coordinates of the coroot h_gamma over the simple coroots h_1..h_n.
  const RatVec& coroot(int positive_root_index) const {
    return coroots_[positive_root_index];
  }

  /// N_{a,b} for signed root codes; zero when a+b is neither a root nor zero.
  Rat structure_constant(RootCode a, RootCode b) const;

  /// Signed code of the root with the given alpha-coordinates, if any.
  std::optional<RootCode> root_from_alpha(const std::vector<long long>& alpha) const;

  /// Compact real form u as a real Lie algebra over the ordered basis
  /// [iH_1..iH_n | X^{g_1}..X^{g_R} | Y^{g_1}..Y^{g_R}], exact structure
  /// constants and exact Killing form.
  struct CompactBasis {
    int dim = 0;
    std::vector<std::string> labels;
    /// bracket[a][b] = [e_a, e_b] as sparse (index, coefficient) pairs; only
    /// a < b stored, the rest follows by antisymmetry.
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>> bracket;
    RatMat killing;

    std::vector<std::pair<int, Rat>> bracket_of(int a, int b) const;
  };
  const CompactBasis& compact_basis() const { return compact_; }

 private:
  ChevalleyData() = default;

  std::shared_ptr<const RootDatum> datum_;
  std::vector<RatVec> coroots_;
  std::map<std::pair<RootCode, RootCode>, Rat> n_table_;
  std::map<std::vector<long long>, RootCode> alpha_lookup_;
  CompactBasis compact_;
};

/// Explicit matrices of the irreducible representation V_lambda.
///
/// Construction: monomials f_{i_1}...f_{i_k} v_lambda enumerated weight by
/// weight, contravariant form computed by commutator pushdown, basis
/// selection by exact rank extraction against the Freudenthal
/// multiplicities. The public matrices are expressed in the orthonormalized
/// weight basis, where the contravariant form is the identity, f_i is the
/// transpose of e_i, and the compact generators realify to skew-symmetric
/// matrices.
class RepMatrices {
 public:
  static RepMatrices build(const HighestWeight& lambda, Caps caps = {});

  const HighestWeight& lambda() const { return lambda_; }
  const RootDatum& datum() const { return *lambda_.datum; }
  int dim_c() const { return dim_c_; }
  int dim_real() const { return 2 * dim_c_; }

  struct WeightBlock {
    WeightVec mu;
    int offset = 0;
    int mult = 0;
  };
  const std::vector<WeightBlock>& weight_blocks() const { return blocks_; }
  /// Index of the block carrying weight mu, or -1.
  int block_of(const WeightVec& mu) const;

  const Eigen::MatrixXd& e(int i) const { return e_[i]; }
  const Eigen::MatrixXd& f(int i) const { return f_[i]; }
  const Eigen::VectorXd& h_diag(int i) const { return h_[i]; }

  /// pi(X_gamma) and pi(X_{-gamma}) for each positive root.
  const Eigen::MatrixXd& x_plus(int r) const { return xp_[r]; }
  const Eigen::MatrixXd& x_minus(int r) const { return xm_[r]; }

  /// Realified compact generators, size 2*dim_c; all skew-symmetric with
  /// respect to the standard inner product of the realified basis.
  Eigen::MatrixXd real_h(int i) const;
  Eigen::MatrixXd real_x(int r) const;
  Eigen::MatrixXd real_y(int r) const;

  /// Arbitrary element of u given coordinates over the compact basis
  /// [iH_i | X^g | Y^g] of ChevalleyData::CompactBasis.
  Eigen::MatrixXd real_u_element(const std::vector<double>& coords) const;

 private:
  RepMatrices() = default;

  HighestWeight lambda_;
  int dim_c_ = 0;
  std::vector<WeightBlock> blocks_;
  std::map<WeightVec, int> block_index_;
  std::vector<Eigen::MatrixXd> e_, f_;
  std::vector<Eigen::VectorXd> h_;
  std::vector<Eigen::MatrixXd> xp_, xm_;
};

/// Realification bundle: the real matrices of the compact basis elements
/// and the weight partition of the doubled space.
struct RealRep {
  int dim = 0;  // 2 * dim_c
  std::vector<Eigen::MatrixXd> h;  // per simple index
  std::vector<Eigen::MatrixXd> x;  // per positive root
  std::vector<Eigen::MatrixXd> y;
  std::vector<RepMatrices::WeightBlock> blocks;  // complex-basis partition
};

RealRep realify(const RepMatrices& rep);

/// Residual report for the six properties, checked for V1 spanned by the
/// weight spaces of S. Items 1-4 and 6 pass when the residual is below tol;
/// item 5 is a nontriviality bound and passes when every restricted
/// generator has norm above tol.
struct SixConditionReport {
  struct Item {
    bool passed = false;
    double residual = 0.0;
  };
  std::array<Item, 6> items;
  bool all_passed = false;
};

SixConditionReport check_six_conditions(const RepMatrices& rep,
                                        const std::vector<WeightVec>& S,
                                        double tol = 1e-8);

}  // namespace ricneg

#endif
