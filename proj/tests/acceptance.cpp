// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero on any failure.

#include "ricneg/approaches.hpp"
#include "ricneg/jsonio.hpp"
#include "ricneg/metric.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

using namespace ricneg;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string title)
      : number_(number), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  void finish(bool passed, const std::string& detail) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    std::cout << (passed ? "PASS" : "FAIL") << "  criterion " << number_ << " (" << title_
              << "): " << detail << "  [" << ms << " ms]" << std::endl;
    if (!passed) ++g_failures;
  }

  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  int number_;
  std::string title_;
  std::chrono::steady_clock::time_point start_;
};

std::shared_ptr<const RootDatum> datum(const std::string& s) {
  return RootDatum::build(SemisimpleType::parse(s));
}

HighestWeight hw(const std::string& type, std::vector<long long> omega) {
  return HighestWeight::make(datum(type), std::move(omega));
}

/// All lambda for the given rank-2 (or rank-1) type with dim V_lambda <= cap.
std::vector<HighestWeight> small_reps(const std::string& type, long long dim_cap) {
  auto d = datum(type);
  std::vector<HighestWeight> out;
  std::vector<long long> omega(d->rank(), 0);
  const std::function<void(int)> rec = [&](int pos) {
    if (pos == d->rank()) {
      const auto lambda = HighestWeight::make(d, omega);
      if (dimension(lambda) <= dim_cap) out.push_back(lambda);
      return;
    }
    for (long long a = 0;; ++a) {
      omega[pos] = a;
      bool feasible = true;
      {
        const auto lambda = HighestWeight::make(d, omega);
        feasible = dimension(lambda) <= dim_cap;
      }
      if (!feasible) break;
      rec(pos + 1);
    }
    omega[pos] = 0;
  };
  rec(0);
  return out;
}

double rep_commutation_residual(const RepMatrices& rep, const ChevalleyData& chev) {
  const auto& cb = chev.compact_basis();
  const int n = rep.datum().rank();
  const int R = static_cast<int>(rep.datum().positive_roots().size());
  std::vector<Eigen::MatrixXd> gens;
  for (int i = 0; i < n; ++i) gens.push_back(rep.real_h(i));
  for (int r = 0; r < R; ++r) gens.push_back(rep.real_x(r));
  for (int r = 0; r < R; ++r) gens.push_back(rep.real_y(r));
  double res = 0;
  for (int a = 0; a < cb.dim; ++a)
    for (int b = a + 1; b < cb.dim; ++b) {
      Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(rep.dim_real(), rep.dim_real());
      for (const auto& [k, c] : cb.bracket_of(a, b)) expect += to_double(c) * gens[k];
      const Eigen::MatrixXd comm = gens[a] * gens[b] - gens[b] * gens[a] - expect;
      res = std::max(res, comm.cwiseAbs().maxCoeff());
    }
  return res;
}

MetricLieAlgebra random_algebra(std::mt19937_64& rng, int dim) {
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
  for (int b = 0; b < nb; ++b)
    alg.blocks.push_back(
        {"b" + std::to_string(b), 0, 0, MetricLieAlgebra::BlockKind::Radical, 0.0});
  alg.block_of.resize(dim);
  for (int i = 0; i < dim; ++i) alg.block_of[i] = static_cast<int>(rng() % nb);
  for (const auto& tr : triples) {
    const double c = 0.3 + std::abs(u(rng));
    alg.bracket[{tr[0], tr[1]}] = {{tr[2], c}};
    alg.bracket[{tr[1], tr[2]}] = {{tr[0], c}};
    alg.bracket[{tr[0], tr[2]}] = {{tr[1], -c}};
  }
  return alg;
}

MetricLieAlgebra h5_showcase(const ChevalleyData& chev, const RepMatrices& rep) {
  GeneralRadicalSpec n;
  n.dim = 5;
  Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(4, 4);
  perm(0, 0) = perm(2, 1) = perm(1, 2) = perm(3, 3) = 1.0;
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

// ---------------------------------------------------------------------------

void criterion1() {
  Criterion c(1, "rank-2 classification, scan to coefficient 5");
  const std::set<std::vector<long long>> expect_a2b2 = {{0, 0}, {1, 0}, {0, 1}};
  const std::set<std::vector<long long>> expect_g2 = {{0, 0}, {1, 0}};
  bool ok = true;
  std::string detail;
  for (const auto& [t, expect] :
       std::vector<std::pair<std::string, std::set<std::vector<long long>>>>{
           {"A2", expect_a2b2}, {"B2", expect_a2b2}, {"G2", expect_g2}}) {
    std::set<std::vector<long long>> got;
    for (const auto& r : scan(datum(t), 5))
      if (!r.certified) got.insert(r.lambda.omega);
    if (got != expect) {
      ok = false;
      detail = "wrong uncertified set for " + t;
    }
  }
  const bool in_time = c.elapsed_ms() < 30'000;
  if (ok && !in_time) detail = "exceeded the 30 s budget";
  if (ok && in_time) detail = "uncertified sets are exactly {0,w1,w2}, {0,w1,w2}, {0,w1}";
  c.finish(ok && in_time, detail);
}

void criterion2() {
  Criterion c(2, "su(2) family, chamber witness is lambda");
  auto a1 = datum("A1");
  bool ok = true;
  for (long long a = 1; a <= 10; ++a) {
    const auto w = chamber_check(HighestWeight::make(a1, {a}));
    ok = ok && w.has_value() && *w == a1->from_omega({Rat(a)});
  }
  c.finish(ok, "chamber_check(a*w1) = a*w1 for a = 1..10, exact");
}

void criterion3() {
  Criterion c(3, "orbit approach certifies a*w_p, classical ranks 2-4");
  bool ok = true;
  std::string detail = "witness a*w_p for all p, a in {2,3}";
  for (const auto& t :
       {"A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4"}) {
    auto d = datum(t);
    for (long long a = 2; a <= 3; ++a)
      for (int p = 0; p < d->rank(); ++p) {
        std::vector<long long> omega(d->rank(), 0);
        omega[p] = a;
        const auto w = orbit_check(HighestWeight::make(d, omega));
        if (!w || !(*w == d->from_omega_int(omega))) {
          ok = false;
          detail = std::string("failed at ") + t + " a=" + std::to_string(a) +
                   " p=" + std::to_string(p + 1);
        }
      }
  }
  const bool in_time = c.elapsed_ms() < 60'000;
  if (ok && !in_time) detail = "exceeded the 60 s budget";
  c.finish(ok && in_time, detail);
}

void criterion4() {
  Criterion c(4, "finiteness lemma r-values");
  const bool g3 = verify_finiteness_r(SimpleType::make(Family::G, 2), 3);
  const bool f8 = verify_finiteness_r(SimpleType::make(Family::F, 4), 8);
  const bool g1 = verify_finiteness_r(SimpleType::make(Family::G, 2), 1);
  c.finish(g3 && f8 && !g1, "true at (G2,3) and (F4,8), exhaustively false at (G2,1)");
}

void criterion5() {
  Criterion c(5, "representation fidelity, rank <= 2, dim <= 64");
  bool ok = true;
  std::string detail;
  double worst = 0;
  int count = 0;
  for (const auto& t : {"A1", "A2", "B2", "C2", "G2", "A1xA1"}) {
    const auto chev = ChevalleyData::build(datum(t));
    for (const auto& lambda : small_reps(t, 64)) {
      const RepMatrices rep = RepMatrices::build(lambda);
      ++count;
      worst = std::max(worst, rep_commutation_residual(rep, chev));
      WeightSystem ws(lambda);
      Int total = 0;
      for (const auto& blk : rep.weight_blocks()) {
        if (ws.multiplicity(blk.mu) != blk.mult) {
          ok = false;
          detail = "multiplicity mismatch at " + std::string(t) + " " + lambda.str();
        }
        total += blk.mult;
      }
      if (total != ws.dim()) {
        ok = false;
        detail = "dimension mismatch at " + std::string(t) + " " + lambda.str();
      }
    }
  }
  if (worst >= 1e-9) {
    ok = false;
    detail = "commutation residual " + std::to_string(worst);
  }
  if (dimension(hw("G2", {1, 0})) != 7 || dimension(hw("G2", {0, 1})) != 14) {
    ok = false;
    detail = "G2 fundamental dimensions wrong";
  }
  if (ok) {
    std::ostringstream s;
    s << count << " representations, worst commutation residual " << worst
      << ", multiplicities match Freudenthal exactly";
    detail = s.str();
  }
  c.finish(ok, detail);
}

void criterion6() {
  Criterion c(6, "six conditions of the decomposition theorem");
  bool ok = true;
  std::string detail;
  double worst = 0;
  auto check = [&](const RepMatrices& rep, const std::vector<WeightVec>& S,
                   const std::string& label) {
    const auto rpt = check_six_conditions(rep, S, 1e-8);
    for (int i = 0; i < 6; ++i) {
      if (!rpt.items[i].passed) {
        ok = false;
        detail = label + ": condition " + std::to_string(i + 1) + " failed (residual " +
                 std::to_string(rpt.items[i].residual) + ")";
      }
      if (i != 4) worst = std::max(worst, rpt.items[i].residual);
    }
  };
  // G2 adjoint with S = {0}
  check(RepMatrices::build(hw("G2", {0, 1})), {datum("G2")->zero()}, "G2 adjoint");
  // G2 2w1 with S = the Weyl orbit of 2w1
  {
    auto d = datum("G2");
    std::vector<WeightVec> S;
    for (const auto& w : d->weyl_orbit(d->from_omega({2, 0}))) S.push_back(w);
    check(RepMatrices::build(hw("G2", {2, 0})), S, "G2 2w1 orbit");
  }
  // every chamber-certified rank <= 2 lambda with dim <= 64, S = {witness}
  int count = 2;
  for (const auto& t : {"A1", "A2", "B2", "C2", "G2"})
    for (const auto& lambda : small_reps(t, 64)) {
      const auto wit = chamber_check(lambda);
      if (!wit) continue;
      check(RepMatrices::build(lambda), {*wit}, t + lambda.str());
      ++count;
    }
  if (ok) {
    std::ostringstream s;
    s << count << " decompositions, all six conditions hold, worst residual " << worst;
    detail = s.str();
  }
  c.finish(ok, detail);
}

void criterion7() {
  Criterion c(7, "Ricci operator against the curvature-tensor oracle");
  bool ok = true;
  std::string detail;
  std::mt19937_64 rng(987654321);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 3 + static_cast<int>(rng() % 8);
    const auto alg = random_algebra(rng, dim);
    InnerProductParams p;
    for (std::size_t b = 0; b < alg.blocks.size(); ++b)
      p.block_scalars.push_back(0.3 + (rng() >> 11) * 0x1.0p-53 * 2.7);
    const auto fast = ricci(alg, p).ricci;
    const auto oracle = ricci_oracle(alg, p);
    const double rel = (fast - oracle).cwiseAbs().maxCoeff() /
                       std::max(1.0, oracle.cwiseAbs().maxCoeff());
    worst = std::max(worst, rel);
  }
  if (worst >= 1e-9) {
    ok = false;
    detail = "oracle deviation " + std::to_string(worst);
  }
  // compact u with the -Killing metric: Ricci = Id/4
  for (const auto& t : {"A1", "A2"}) {
    const auto alg = compact_algebra(ChevalleyData::build(datum(t)));
    const auto rpt = ricci(alg, InnerProductParams{{1.0}});
    const double dev =
        (rpt.ricci - 0.25 * Eigen::MatrixXd::Identity(alg.dim, alg.dim))
            .cwiseAbs()
            .maxCoeff();
    if (dev >= 1e-9) {
      ok = false;
      detail = std::string("bi-invariant Ricci deviates on ") + t;
    }
  }
  // heisenberg h3
  {
    MetricLieAlgebra h3;
    h3.dim = 3;
    h3.basis_labels = {"e1", "e2", "e3"};
    h3.blocks.push_back({"n", 0, 3, MetricLieAlgebra::BlockKind::Radical, 0.0});
    h3.block_of = {0, 0, 0};
    h3.bracket[{0, 1}] = {{2, 1.0}};
    const auto rpt = ricci(h3, InnerProductParams{{1.0}});
    if (std::abs(rpt.eigenvalues[0] + 0.5) >= 1e-9 ||
        std::abs(rpt.eigenvalues[1] + 0.5) >= 1e-9 ||
        std::abs(rpt.eigenvalues[2] - 0.5) >= 1e-9) {
      ok = false;
      detail = "h3 spectrum wrong";
    }
  }
  if (ok) {
    std::ostringstream s;
    s << "100 random algebras within " << worst
      << "; bi-invariant = Id/4; h3 spectrum {-1/2,-1/2,1/2}";
    detail = s.str();
  }
  c.finish(ok, detail);
}

void criterion8() {
  Criterion c(8, "negative-Ricci certificates");
  bool ok = true;
  std::string detail;
  SearchConfig cfg;
  cfg.seed = 2026;
  auto certify = [&](const std::string& t, std::vector<long long> omega,
                     int expect_dim) {
    const auto d = datum(t);
    const auto lambda = HighestWeight::make(d, omega);
    const auto chev = ChevalleyData::build(d);
    const auto rep = RepMatrices::build(lambda);
    const auto report = classify(lambda);
    std::vector<WeightVec> S;
    if (report.chamber)
      S = {*report.chamber};
    else if (report.orbit)
      for (const auto& w : d->weyl_orbit(*report.orbit)) S.push_back(w);
    else
      S = {d->zero()};
    const auto alg = build_l(rep, chev, S);
    if (alg.dim != expect_dim) {
      ok = false;
      detail = t + lambda.str() + ": dim " + std::to_string(alg.dim);
      return;
    }
    const auto found = find_negative_ricci(alg, cfg);
    if (!found || !(found->report.max_eigenvalue <
                    -1e-6 * found->report.spectral_radius)) {
      ok = false;
      detail = t + lambda.str() + ": no certificate";
      return;
    }
    const auto again = find_negative_ricci(alg, cfg);
    if (!again || again->params.block_scalars != found->params.block_scalars ||
        again->report.max_eigenvalue != found->report.max_eigenvalue) {
      ok = false;
      detail = t + lambda.str() + ": not reproducible from its seed";
    }
  };
  certify("A1", {1}, 8);
  certify("A1", {2}, 10);
  certify("A1", {3}, 12);
  certify("G2", {0, 1}, 43);
  const bool in_time = c.elapsed_ms() < 300'000;
  if (ok && !in_time) detail = "exceeded the 5 min budget";
  if (ok && in_time)
    detail = "l(su(2),pi_a) dims 8,10,12 and l(g2,pi_w2) dim 43, reproducible per seed";
  c.finish(ok && in_time, detail);
}

void criterion9() {
  Criterion c(9, "degeneration of the non-abelian showcase");
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {1}));
  const auto alg = h5_showcase(chev, rep);
  bool ok = true;
  std::string detail;
  double worst_jacobi = 0;
  for (const double t : {1.0, 10.0, 100.0, 1000.0})
    worst_jacobi = std::max(worst_jacobi, degenerate(alg, t).jacobi_residual());
  if (worst_jacobi >= 1e-9) {
    ok = false;
    detail = "Jacobi residual " + std::to_string(worst_jacobi);
  }
  InnerProductParams p{std::vector<double>(alg.blocks.size(), 1.0)};
  const auto r_lim = ricci(degenerate_limit(alg), p);
  const auto r_t = ricci(degenerate(alg, 1000.0), p);
  const double gap = (r_t.eigenvalues - r_lim.eigenvalues).cwiseAbs().maxCoeff();
  if (gap >= 0.01 * r_lim.spectral_radius) {
    ok = false;
    detail = "t=1000 spectrum is " + std::to_string(gap) + " from the limit";
  }
  if (ok) {
    std::ostringstream s;
    s << "Jacobi <= " << worst_jacobi << " along the curve, t=1000 spectrum within "
      << gap / r_lim.spectral_radius * 100 << "% of the limit";
    detail = s.str();
  }
  c.finish(ok, detail);
}

void criterion10() {
  Criterion c(10, "equal-scalar rescaling correspondence");
  const auto chev = ChevalleyData::build(datum("A1"));
  const auto rep = RepMatrices::build(hw("A1", {2}));
  bool ok = true;
  double worst = 0;
  for (const double cscale : {0.5, 2.0}) {
    RadicalBlockSpec spec;
    for (const auto& blk : rep.weight_blocks()) spec.weights.push_back(blk.mu);
    spec.z_scale = cscale;
    const auto alg_c = build_l(rep, chev, {spec});
    spec.z_scale = 1.0;
    const auto alg_1 = build_l(rep, chev, {spec});
    InnerProductParams p{{1.3, 0.8, 1.9, 1.1, 0.6}};
    InnerProductParams p_iso = p;
    p_iso.block_scalars[0] /= cscale * cscale;
    const auto rc = ricci(alg_c, p);
    const auto r1 = ricci(alg_1, p_iso);
    worst = std::max(worst, (rc.eigenvalues - r1.eigenvalues).cwiseAbs().maxCoeff());
  }
  if (worst >= 1e-9) ok = false;
  c.finish(ok, "spectra for c in {1/2, 2} match c=1 with Z-scalar a/c^2, deviation " +
                   std::to_string(worst));
}

}  // namespace

int main() {
  std::cout << "acceptance suite" << std::endl;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures) {
    std::cout << g_failures << " criterion(s) FAILED" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
