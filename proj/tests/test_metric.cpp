#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ricneg/approaches.hpp"
#include "ricneg/metric.hpp"

#include <random>

using namespace ricneg;

namespace {

std::shared_ptr<const RootDatum> datum(const std::string& s) {
  return RootDatum::build(SemisimpleType::parse(s));
}

HighestWeight hw(const std::string& type, std::vector<long long> omega) {
  return HighestWeight::make(datum(type), std::move(omega));
}

MetricLieAlgebra heisenberg3() {
  MetricLieAlgebra alg;
  alg.dim = 3;
  alg.basis_labels = {"e1", "e2", "e3"};
  alg.blocks.push_back({"n", 0, 3, MetricLieAlgebra::BlockKind::Radical, 0.0});
  alg.block_of = {0, 0, 0};
  alg.bracket[{0, 1}] = {{2, 1.0}};
  return alg;
}

MetricLieAlgebra abelian(int n) {
  MetricLieAlgebra alg;
  alg.dim = n;
  alg.blocks.push_back({"a", 0, n, MetricLieAlgebra::BlockKind::Radical, 0.0});
  alg.block_of.assign(n, 0);
  for (int i = 0; i < n; ++i) alg.basis_labels.push_back("e" + std::to_string(i));
  return alg;
}

/// Random Jacobi-consistent algebra: a random change of basis applied to a
/// direct sum of small known algebras, plus a random block partition.
MetricLieAlgebra random_algebra(std::mt19937_64& rng, int dim) {
  // seed blocks of so(3) brackets and abelian directions
  std::vector<std::array<int, 3>> triples;
  int base = 0;
  while (base + 3 <= dim) {
    triples.push_back({base, base + 1, base + 2});
    base += 3;
  }
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MetricLieAlgebra alg;
  alg.dim = dim;
  for (int i = 0; i < dim; ++i) alg.basis_labels.push_back("e" + std::to_string(i));
  const int nb = 1 + static_cast<int>(rng() % 3);
  for (int b = 0; b < nb; ++b) alg.blocks.push_back({"b" + std::to_string(b), 0, 0,
                                                     MetricLieAlgebra::BlockKind::Radical,
                                                     0.0});
  alg.block_of.resize(dim);
  for (int i = 0; i < dim; ++i) alg.block_of[i] = static_cast<int>(rng() % nb);
  // contiguity is not required by the engine; blocks here are index classes
  for (int b = 0; b < nb; ++b) {
    alg.blocks[b].start = 0;
    alg.blocks[b].size = 0;
  }
  for (const auto& tr : triples) {
    const double c = 0.3 + std::abs(u(rng));
    alg.bracket[{tr[0], tr[1]}] = {{tr[2], c}};
    alg.bracket[{tr[1], tr[2]}] = {{tr[0], c}};
    alg.bracket[{tr[0], tr[2]}] = {{tr[1], -c}};
  }
  return alg;
}

InnerProductParams random_params(std::mt19937_64& rng, std::size_t nblocks) {
  std::uniform_real_distribution<double> u(0.3, 3.0);
  InnerProductParams p;
  for (std::size_t b = 0; b < nblocks; ++b) p.block_scalars.push_back(u(rng));
  return p;
}

InnerProductParams ones(const MetricLieAlgebra& alg) {
  return InnerProductParams{std::vector<double>(alg.blocks.size(), 1.0)};
}

/// The h5 showcase: u = su(2) acting on C^2 (realified) plus a central
/// direction, bracket [v, w] = Im<v, w> z, Z acting by (1, 1, 1, 1, 2).
/// Basis order (x_mu, y_mu, x_{-mu}, y_{-mu}, z) so that the weight spaces
/// V(mu) and V(-mu) are contiguous metric blocks inside the generator block.
MetricLieAlgebra heisenberg5_showcase(const ChevalleyData& chev, const RepMatrices& rep) {
  GeneralRadicalSpec n;
  n.dim = 5;
  const int dc = rep.dim_c();  // 2
  REQUIRE(dc == 2);
  // permutation: rep realification (x0, x1, y0, y1) -> (x0, y0, x1, y1)
  Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(4, 4);
  perm(0, 0) = perm(2, 1) = perm(1, 2) = perm(3, 3) = 1.0;
  // Im<v,w> pairs x_i with y_i of the same complex coordinate
  n.n_struct.push_back({0, 1, 4, 1.0});
  n.n_struct.push_back({2, 3, 4, 1.0});
  n.z_on_n = Eigen::MatrixXd::Identity(5, 5);
  n.z_on_n(4, 4) = 2.0;
  const auto& cb = chev.compact_basis();
  for (int k = 0; k < cb.dim; ++k) {
    std::vector<double> coords(cb.dim, 0.0);
    coords[k] = 1.0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
    m.block(0, 0, 4, 4) = perm.transpose() * rep.real_u_element(coords) * perm;
    n.u_on_n.push_back(m);
  }
  n.blocks = {{"V1", 0, 2}, {"V2", 2, 2}, {"z", 4, 1}};
  return build_general(chev, n);
}

}  // namespace

TEST_CASE("ricci of abelian algebras vanishes") {
  const auto alg = abelian(5);
  const auto rpt = ricci(alg, ones(alg));
  CHECK(rpt.ricci.cwiseAbs().maxCoeff() < 1e-14);
  CHECK_FALSE(rpt.negative_definite);
  CHECK(ricci_oracle(alg, ones(alg)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("heisenberg h3 eigenvalues are -1/2, -1/2, +1/2") {
  const auto alg = heisenberg3();
  CHECK(alg.jacobi_residual() == 0.0);
  const auto rpt = ricci(alg, ones(alg));
  CHECK(rpt.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(rpt.eigenvalues[1] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(rpt.eigenvalues[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("compact u with -Killing metric has Ricci = Id/4") {
  for (const auto& t : {"A1", "A2", "B2"}) {
    const auto chev = ChevalleyData::build(datum(t));
    const auto alg = compact_algebra(chev);
    CHECK(alg.jacobi_residual() < 1e-12);
    const auto rpt = ricci(alg, ones(alg));
    const Eigen::MatrixXd expect =
        0.25 * Eigen::MatrixXd::Identity(alg.dim, alg.dim);
    CHECK((rpt.ricci - expect).cwiseAbs().maxCoeff() < 1e-9);
    // bi-invariant metrics on compact groups are Einstein with positive Ricci
    CHECK_FALSE(rpt.negative_definite);
  }
}

TEST_CASE("ricci agrees with the Koszul oracle on random algebras") {
  std::mt19937_64 rng(20240901);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 3 + static_cast<int>(rng() % 8);  // up to 10
    const auto alg = random_algebra(rng, dim);
    const auto params = random_params(rng, alg.blocks.size());
    const auto rpt = ricci(alg, params);
    const auto oracle = ricci_oracle(alg, params);
    const double scale = std::max(1.0, oracle.cwiseAbs().maxCoeff());
    CHECK((rpt.ricci - oracle).cwiseAbs().maxCoeff() / scale < 1e-9);
  }
}

TEST_CASE("ricci agrees with the oracle on constructed algebras") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.4, 2.5);
  const std::vector<std::pair<std::string, std::vector<long long>>> cases = {
      {"A1", {1}}, {"A1", {2}}, {"A1", {3}}, {"A2", {1, 0}}, {"B2", {0, 1}}};
  for (const auto& [t, l] : cases) {
    const auto d = datum(t);
    const auto chev = ChevalleyData::build(d);
    const auto rep = RepMatrices::build(HighestWeight::make(d, l));
    const auto alg = build_l(rep, chev);
    REQUIRE(alg.dim <= 64);
    for (int trial = 0; trial < 3; ++trial) {
      InnerProductParams p;
      for (std::size_t b = 0; b < alg.blocks.size(); ++b) p.block_scalars.push_back(u(rng));
      const auto fast = ricci(alg, p).ricci;
      const auto oracle = ricci_oracle(alg, p);
      const double rel = (fast - oracle).cwiseAbs().maxCoeff() /
                         std::max(1.0, oracle.cwiseAbs().maxCoeff());
      CHECK_MESSAGE(rel < 1e-9, t);
    }
  }
  // the bi-invariant value through the oracle path as well
  const auto cu = compact_algebra(ChevalleyData::build(datum("A2")));
  const auto oracle = ricci_oracle(cu, InnerProductParams{{1.0}});
  CHECK((oracle - 0.25 * Eigen::MatrixXd::Identity(cu.dim, cu.dim)).cwiseAbs().maxCoeff() <
        1e-9);
}

TEST_CASE("build_l: dimensions and bracket relations") {
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {2}));
  const auto alg = build_l(rep, chev);
  CHECK(alg.dim == 1 + 3 + 6);
  CHECK(alg.jacobi_residual() < 1e-9);
  // [Z, u] = 0 and [Z, v] = v
  for (int j = 1; j <= 3; ++j) CHECK(alg.bracket_of(0, j).empty());
  for (int j = 4; j < 10; ++j) {
    const auto terms = alg.bracket_of(0, j);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].first == j);
    CHECK(terms[0].second == doctest::Approx(1.0));
  }
  // radical is abelian
  CHECK(alg.radical_abelian());
  CHECK(alg.radical_dim() == 6);
}

TEST_CASE("build_l: split blocks and per-block scalars") {
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {2}));
  const auto lambda_vec = datum("A1")->from_omega({2});
  const auto alg = build_l(rep, chev, {lambda_vec});
  // blocks: Z | uH | uX | uY | V1 | V2
  REQUIRE(alg.blocks.size() == 6);
  CHECK(alg.blocks[1].name == "uH");
  CHECK(alg.blocks[2].name == "uX");
  CHECK(alg.blocks[3].name == "uY");
  CHECK(alg.blocks[4].name == "V1");
  CHECK(alg.blocks[4].size == 2);
  CHECK(alg.blocks[5].name == "V2");
  CHECK(alg.blocks[5].size == 4);
  CHECK(alg.jacobi_residual() < 1e-9);

  // per-block z scales: rejected when nonpositive
  RadicalBlockSpec bad;
  for (const auto& blk : rep.weight_blocks()) bad.weights.push_back(blk.mu);
  bad.z_scale = -1.0;
  CHECK_THROWS_AS(build_l(rep, chev, {bad}), std::invalid_argument);

  // a non-submodule partition is rejected: split the weights of the A1
  // 5-dimensional module across two z-blocks
  const auto rep4 = RepMatrices::build(hw("A1", {4}));
  RadicalBlockSpec w1, w2;
  const auto& blocks4 = rep4.weight_blocks();
  w1.weights = {blocks4[0].mu, blocks4[1].mu};
  w2.weights = {blocks4[2].mu, blocks4[3].mu, blocks4[4].mu};
  w1.z_scale = 1.0;
  w2.z_scale = 2.0;
  CHECK_THROWS_AS(build_l(rep4, chev, {w1, w2}), std::invalid_argument);
}

TEST_CASE("mean curvature of l(u,pi) is (dim V) * Z at unit scalars") {
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {2}));
  const auto alg = build_l(rep, chev);
  const auto rpt = ricci(alg, ones(alg));
  CHECK(rpt.mean_curvature[0] == doctest::Approx(6.0));  // tr ad Z = dim_R V
  for (int i = 1; i < alg.dim; ++i)
    CHECK(rpt.mean_curvature[i] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("scaling covariance: metric * c scales eigenvalues by 1/c") {
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {2}));
  const auto alg = build_l(rep, chev);
  InnerProductParams p = ones(alg);
  p.block_scalars = {0.7, 1.3, 2.1, 0.8, 1.6};
  const auto r1 = ricci(alg, p);
  InnerProductParams p2 = p;
  for (auto& s : p2.block_scalars) s *= 4.0;
  const auto r2 = ricci(alg, p2);
  for (int i = 0; i < alg.dim; ++i)
    CHECK(r2.eigenvalues[i] == doctest::Approx(r1.eigenvalues[i] / 4.0).epsilon(1e-9));
  CHECK(r1.negative_definite == r2.negative_definite);
}

TEST_CASE("rescaling correspondence: all z-scales c match c=1 with Z-scalar a/c^2") {
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {2}));
  for (const double c : {0.5, 2.0}) {
    RadicalBlockSpec spec;
    for (const auto& blk : rep.weight_blocks()) spec.weights.push_back(blk.mu);
    spec.z_scale = c;
    const auto alg_c = build_l(rep, chev, {spec});
    spec.z_scale = 1.0;
    const auto alg_1 = build_l(rep, chev, {spec});
    InnerProductParams p{{1.7, 0.9, 1.4, 1.1, 0.8}};
    InnerProductParams p_iso{{1.7 / (c * c), 0.9, 1.4, 1.1, 0.8}};
    const auto rc = ricci(alg_c, p);
    const auto r1 = ricci(alg_1, p_iso);
    for (int i = 0; i < alg_c.dim; ++i)
      CHECK(rc.eigenvalues[i] == doctest::Approx(r1.eigenvalues[i]).epsilon(1e-9));
  }
}

TEST_CASE("degeneration") {
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {1}));
  const auto alg = heisenberg5_showcase(chev, rep);
  CHECK(alg.jacobi_residual() < 1e-12);
  CHECK_FALSE(alg.radical_abelian());

  // t = 1 is the identity
  const auto same = degenerate(alg, 1.0);
  CHECK(same.bracket_of(1 + 3 + 0, 1 + 3 + 1) == alg.bracket_of(1 + 3 + 0, 1 + 3 + 1));

  // jacobi holds along the curve; radical-internal constants shrink by 1/t
  for (const double t : {10.0, 100.0, 1000.0}) {
    const auto d = degenerate(alg, t);
    CHECK(d.jacobi_residual() < 1e-9);
    const auto terms = d.bracket_of(1 + 3 + 0, 1 + 3 + 1);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].second == doctest::Approx(1.0 / t));
    // cross-block brackets unchanged
    CHECK(d.bracket_of(0, 1 + 3 + 0) == alg.bracket_of(0, 1 + 3 + 0));
    CHECK(d.bracket_of(1, 1 + 3 + 0) == alg.bracket_of(1, 1 + 3 + 0));
  }

  // eigenvalues converge to the limit algebra's
  const auto limit = degenerate_limit(alg);
  CHECK(limit.radical_abelian());
  InnerProductParams p{std::vector<double>(alg.blocks.size(), 1.0)};
  const auto r_inf = ricci(limit, p);
  double prev_gap = 1e300;
  for (const double t : {1.0, 10.0, 100.0, 1000.0}) {
    const auto rt = ricci(degenerate(alg, t), p);
    const double gap = (rt.eigenvalues - r_inf.eigenvalues).cwiseAbs().maxCoeff();
    CHECK(gap < prev_gap + 1e-12);
    prev_gap = gap;
    if (t == 1000.0) CHECK(gap < 0.01 * r_inf.spectral_radius);
  }

  // the solvable limit is non-unimodular: tr ad Z = sum of c_i dim W_i > 0
  {
    const auto r_lim_ones =
        ricci(limit, InnerProductParams{std::vector<double>(alg.blocks.size(), 1.0)});
    CHECK(r_lim_ones.mean_curvature[0] == doctest::Approx(4.0 * 1.0 + 1.0 * 2.0));
  }

  CHECK_THROWS_AS(degenerate(alg, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(degenerate(alg, -2.0), std::invalid_argument);
  // abelian radical: independent of t
  const auto l_alg = build_l(RepMatrices::build(hw("A1", {2})), chev);
  const auto l_deg = degenerate(l_alg, 1000.0);
  CHECK(l_deg.bracket == l_alg.bracket);
}

TEST_CASE("build_general rejects bad input") {
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {1}));
  const auto& cb = chev.compact_basis();

  // Z = Id on a non-abelian n is not a derivation
  GeneralRadicalSpec n;
  n.dim = 5;
  n.n_struct = {{0, 2, 4, 1.0}, {1, 3, 4, -1.0}};
  n.z_on_n = Eigen::MatrixXd::Identity(5, 5);
  for (int k = 0; k < cb.dim; ++k) {
    std::vector<double> coords(cb.dim, 0.0);
    coords[k] = 1.0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
    m.block(0, 0, 4, 4) = rep.real_u_element(coords);
    n.u_on_n.push_back(m);
  }
  CHECK_THROWS_AS(build_general(chev, n), std::invalid_argument);

  // non-nilpotent n: [e0,e1] = e1
  GeneralRadicalSpec bad;
  bad.dim = 2;
  bad.n_struct = {{0, 1, 1, 1.0}};
  bad.z_on_n = Eigen::MatrixXd::Zero(2, 2);
  bad.u_on_n.assign(cb.dim, Eigen::MatrixXd::Zero(2, 2));
  CHECK_THROWS_AS(build_general(chev, bad), std::invalid_argument);

  // heisenberg h3 with Z acting diag(1,1,2) is accepted
  GeneralRadicalSpec h3;
  h3.dim = 3;
  h3.n_struct = {{0, 1, 2, 1.0}};
  h3.z_on_n = Eigen::Vector3d(1, 1, 2).asDiagonal();
  h3.u_on_n.assign(cb.dim, Eigen::MatrixXd::Zero(3, 3));
  const auto alg = build_general(chev, h3);
  CHECK(alg.dim == 1 + 3 + 3);
  CHECK(alg.jacobi_residual() < 1e-12);
}

TEST_CASE("find_negative_ricci: su(2) family") {
  const auto chev = ChevalleyData::build(datum("A1"));
  for (long long a = 1; a <= 3; ++a) {
    const auto lambda = hw("A1", {a});
    const auto rep = RepMatrices::build(lambda);
    const auto wit = chamber_check(lambda);
    REQUIRE(wit.has_value());
    const auto alg = build_l(rep, chev, {*wit});
    SearchConfig cfg;
    cfg.seed = 7;
    const auto found = find_negative_ricci(alg, cfg);
    REQUIRE_MESSAGE(found.has_value(), "a=", a);
    CHECK(found->report.negative_definite);
    CHECK(found->report.max_eigenvalue <
          -1e-6 * found->report.spectral_radius);
    // reproducible from the same seed
    const auto again = find_negative_ricci(alg, cfg);
    REQUIRE(again.has_value());
    CHECK(again->params.block_scalars == found->params.block_scalars);
    CHECK(again->report.max_eigenvalue == found->report.max_eigenvalue);
  }
}

TEST_CASE("find_negative_ricci: semisimple product end to end") {
  const auto d = datum("A1xA1");
  const auto chev = ChevalleyData::build(d);
  const auto lambda = HighestWeight::make(d, {1, 1});
  const auto rep = RepMatrices::build(lambda);
  const auto wit = chamber_check(lambda);
  REQUIRE(wit.has_value());
  const auto alg = build_l(rep, chev, {*wit});
  CHECK(alg.dim == 1 + 6 + 8);
  CHECK(alg.jacobi_residual() < 1e-9);
  // per-factor scalar groups on u
  std::set<std::string> names;
  for (const auto& b : alg.blocks) names.insert(b.name);
  CHECK(names.count("uH.1"));
  CHECK(names.count("uX.2"));
  SearchConfig cfg;
  cfg.seed = 21;
  const auto found = find_negative_ricci(alg, cfg);
  REQUIRE(found.has_value());
  CHECK(found->report.negative_definite);
}

TEST_CASE("find_negative_ricci: abelian algebra yields none") {
  const auto alg = abelian(4);
  SearchConfig cfg;
  cfg.budget = 500;
  const auto found = find_negative_ricci(alg, cfg);
  CHECK_FALSE(found.has_value());
}

TEST_CASE("find_negative_ricci: exhausted budget is distinct from none-found") {
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {2}));
  const auto alg = build_l(rep, chev, {datum("A1")->from_omega({2})});
  SearchConfig cfg;
  cfg.budget = 3;  // not even the initial simplex fits
  cfg.restarts = 2;
  CHECK_THROWS_AS(find_negative_ricci(alg, cfg), BudgetExhausted);
}

TEST_CASE("verify_nilradical_hypotheses on the h5 showcase") {
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto lambda = hw("A1", {1});
  const auto rep = RepMatrices::build(lambda);
  const auto alg = heisenberg5_showcase(chev, rep);

  std::vector<NilradicalBlockSpec> decomp(2);
  decomp[0].name = "W1";
  decomp[0].start = 0;
  decomp[0].size = 4;
  decomp[0].lambda = lambda;
  decomp[0].rep = &rep;
  decomp[0].candidate_S = {datum("A1")->from_omega({1})};
  decomp[1].name = "W2";
  decomp[1].start = 4;
  decomp[1].size = 1;

  const auto rpt = verify_nilradical_hypotheses(alg, decomp);
  REQUIRE(rpt.blocks.size() == 2);
  CHECK(rpt.blocks[0].z_eigenvalue == doctest::Approx(1.0));
  CHECK(rpt.blocks[0].z_positive_scalar);
  CHECK(rpt.blocks[0].irreducible_probe);
  REQUIRE(rpt.blocks[0].approach_certified.has_value());
  CHECK(*rpt.blocks[0].approach_certified);
  REQUIRE(rpt.blocks[0].six_conditions_passed.has_value());
  CHECK(*rpt.blocks[0].six_conditions_passed);
  CHECK(rpt.blocks[1].z_eigenvalue == doctest::Approx(2.0));
  CHECK(rpt.blocks[1].z_positive_scalar);
  CHECK(rpt.hypotheses_met);

  // a zero Z-eigenvalue fails the hypotheses
  auto bad = alg;
  for (auto& [key, terms] : bad.bracket)
    if (key.first == 0)
      for (auto& [k, c] : terms)
        if (k == bad.dim - 1) c = 0.0;
  const auto rpt2 = verify_nilradical_hypotheses(bad, decomp);
  CHECK_FALSE(rpt2.blocks[1].z_positive_scalar);
  CHECK_FALSE(rpt2.hypotheses_met);
}

TEST_CASE("find_negative_ricci on the non-abelian showcase") {
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {1}));
  const auto alg = heisenberg5_showcase(chev, rep);
  SearchConfig cfg;
  cfg.seed = 11;
  const auto found = find_negative_ricci(alg, cfg);
  REQUIRE(found.has_value());
  CHECK(found->report.negative_definite);
}
