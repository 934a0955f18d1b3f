#ifndef RICNEG_METRIC_HPP
#define RICNEG_METRIC_HPP

#include "ricneg/repbuild.hpp"

#include <optional>

namespace ricneg {

/// Thrown by find_negative_ricci when every restart ran out of budget while
/// still improving; distinct from a converged search that found nothing.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// A real Lie algebra with a distinguished reference basis, declared
/// orthonormal for the reference inner product, plus a partition of the basis
/// into metric blocks (Z | Levi | radical blocks). Structure constants are
/// stored sparsely as [e_i, e_j] = sum_k c_k e_k for i < j.
struct MetricLieAlgebra {
  enum class BlockKind { Z, Levi, Radical };
  struct Block {
    std::string name;
    int start = 0;
    int size = 0;
    BlockKind kind = BlockKind::Radical;
    /// ad Z eigenvalue on this block, when Z acts as a scalar there.
    double z_scale = 0.0;
  };

  int dim = 0;
  std::vector<std::string> basis_labels;
  std::vector<Block> blocks;
  std::vector<int> block_of;
  std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> bracket;

  std::vector<std::pair<int, double>> bracket_of(int i, int j) const;
  bool is_radical(int i) const {
    return blocks[block_of[i]].kind == BlockKind::Radical;
  }
  /// Largest Jacobi violation over all basis triples.
  double jacobi_residual() const;
  int radical_dim() const;
  bool radical_abelian() const;
};

/// One radical block of l(u,pi): a set of weight spaces (closed under the
/// u-action), the ad Z eigenvalue on it, and an optional interior split used
/// only by the metric (separate scalars on V1 and V2).
struct RadicalBlockSpec {
  std::vector<WeightVec> weights;
  double z_scale = 1.0;
  std::vector<WeightVec> v1_split;  // empty: no split
};

/// Assembles l = (R Z + u) |x V with ad Z = c_i on the i-th radical block and
/// the abelian bracket on V. The u block is orthonormalized against -Killing;
/// V carries the realified unitary basis. Radical blocks must be submodules;
/// this is verified against the representation matrices.
MetricLieAlgebra build_l(const RepMatrices& rep, const ChevalleyData& chev,
                         const std::vector<RadicalBlockSpec>& radical,
                         double submodule_tol = 1e-9);

/// Single-block convenience: all of V with ad Z = Id, split by S when given.
MetricLieAlgebra build_l(const RepMatrices& rep, const ChevalleyData& chev,
                         const std::vector<WeightVec>& S = {});

/// General semidirect assembly (R Z + u) |x n for a nilpotent n. The n
/// structure constants are given over the radical basis (triplets i<j -> k),
/// the u action per compact-basis element of chev, and the Z action as a
/// matrix. Checks: n is nilpotent, Z and u act by derivations, the u action
/// is a representation, and Z commutes with the u action.
struct GeneralRadicalSpec {
  int dim = 0;
  std::vector<std::tuple<int, int, int, double>> n_struct;
  Eigen::MatrixXd z_on_n;
  std::vector<Eigen::MatrixXd> u_on_n;  // one per compact-basis element
  struct NBlock {
    std::string name;
    int start = 0;
    int size = 0;
  };
  std::vector<NBlock> blocks;  // metric blocks of n; default: one block
};

MetricLieAlgebra build_general(const ChevalleyData& chev, const GeneralRadicalSpec& n,
                               double tol = 1e-9);

/// The compact algebra u alone, basis orthonormal against -Killing, as a
/// single Levi block.
MetricLieAlgebra compact_algebra(const ChevalleyData& chev);

/// Block-diagonal inner product: one positive scalar per metric block,
/// applied to the reference-orthonormal basis.
struct InnerProductParams {
  std::vector<double> block_scalars;
};

struct RicciReport {
  Eigen::MatrixXd ricci;          // operator in the scaled orthonormal basis
  Eigen::VectorXd eigenvalues;    // ascending
  bool negative_definite = false;
  double max_eigenvalue = 0.0;
  double spectral_radius = 0.0;
  Eigen::VectorXd mean_curvature; // coordinates in the scaled basis
};

/// Ricci operator of the left-invariant metric determined by params:
/// Ric = M - B/2 - S(ad H) in a scaled orthonormal basis, with M the moment
/// map term, B the Killing form and H the mean curvature vector.
RicciReport ricci(const MetricLieAlgebra& alg, const InnerProductParams& params);

/// Independent brute-force path: Levi-Civita coefficients from the Koszul
/// formula, full curvature tensor, contraction. O(dim^4); test oracle.
Eigen::MatrixXd ricci_oracle(const MetricLieAlgebra& alg,
                             const InnerProductParams& params);

/// Bracket scaled by 1/t on radical-internal triples; an isomorphic copy of
/// the algebra for every finite t > 0.
MetricLieAlgebra degenerate(const MetricLieAlgebra& alg, double t);
/// The t -> infinity limit: the radical becomes abelian.
MetricLieAlgebra degenerate_limit(const MetricLieAlgebra& alg);

struct NegativeRicciResult {
  InnerProductParams params;
  double degeneration_t = 1.0;  // composed degeneration parameter
  RicciReport report;
  int restart = -1;
  std::uint64_t seed = 0;
  long long evaluations = 0;
};

/// Derivative-free search (Nelder-Mead over log block scalars, multi-start,
/// deterministic per seed) minimizing max_eig / spectral_radius. Success:
/// max eigenvalue < -eps_accept_rel * spectral radius. Returns nothing when
/// the search converged without certifying; throws BudgetExhausted when
/// every restart ran out of evaluations while still moving.
std::optional<NegativeRicciResult> find_negative_ricci(const MetricLieAlgebra& alg,
                                                       SearchConfig config = {},
                                                       Tolerances tol = {});

struct NilradicalBlockSpec {
  std::string name;
  int start = 0;  // radical-relative basis range
  int size = 0;
  std::optional<HighestWeight> lambda;       // for the approach report
  const RepMatrices* rep = nullptr;          // for the six-condition check
  std::vector<WeightVec> candidate_S;        // used with rep
};

struct NilradicalReport {
  struct Block {
    std::string name;
    double z_eigenvalue = 0.0;
    double z_scalar_residual = 0.0;
    bool z_positive_scalar = false;
    double invariance_residual = 0.0;
    bool irreducible_probe = false;
    std::optional<bool> approach_certified;
    std::optional<bool> six_conditions_passed;
  };
  std::vector<Block> blocks;
  bool hypotheses_met = false;
};

/// Checks the user-supplied decomposition of the nilradical: u- and
/// Z-invariance of each block, positivity of the scalar Z action,
/// irreducibility by a Krylov probe, and (when a block carries its highest
/// weight and representation) the approach classification and six-condition
/// check.
NilradicalReport verify_nilradical_hypotheses(
    const MetricLieAlgebra& alg, const std::vector<NilradicalBlockSpec>& decomposition,
    Caps caps = {}, double tol = 1e-8);

}  // namespace ricneg

#endif
