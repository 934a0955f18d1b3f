#include <CLI11.hpp>

#include "ricneg/jsonio.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace ricneg;

namespace {

struct Options {
  Caps caps;
  Tolerances tol;
  SearchConfig search;
  bool json = false;
  std::string out;
  std::string config_file;
};

void load_config(const std::string& path, Options& opt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "support_cap") opt.caps.support_cap = std::stoull(val);
    else if (key == "orbit_cap") opt.caps.orbit_cap = std::stoull(val);
    else if (key == "weight_cap") opt.caps.weight_cap = std::stoull(val);
    else if (key == "rep_dim_cap") opt.caps.rep_dim_cap = std::stoll(val);
    else if (key == "jacobi_tol") opt.tol.jacobi = std::stod(val);
    else if (key == "oracle_tol") opt.tol.oracle_rel = std::stod(val);
    else if (key == "six_conditions_tol") opt.tol.six_conditions = std::stod(val);
    else if (key == "eps_accept_rel") opt.tol.eps_accept_rel = std::stod(val);
    else if (key == "budget") opt.search.budget = std::stoi(val);
    else if (key == "restarts") opt.search.restarts = std::stoi(val);
    else if (key == "seed") opt.search.seed = std::stoull(val);
    else if (key == "parallel") opt.search.parallel = (val == "1" || val == "true");
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
  }
  if (opt.caps.support_cap == 0 || opt.caps.orbit_cap == 0 || opt.caps.weight_cap == 0 ||
      opt.caps.rep_dim_cap <= 0 || opt.tol.jacobi <= 0 || opt.tol.oracle_rel <= 0 ||
      opt.tol.six_conditions <= 0 || opt.tol.eps_accept_rel <= 0 ||
      opt.search.budget <= 0 || opt.search.restarts <= 0)
    throw std::runtime_error(path + ": caps, tolerances and budgets must be positive");
}

void emit(const Options& opt, const Json& j, const std::string& pretty) {
  if (!opt.out.empty()) write_json_file(opt.out, j);
  if (opt.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << pretty;
}

std::pair<std::shared_ptr<const RootDatum>, HighestWeight> parse_lambda(
    const std::string& type, const std::string& lambda) {
  auto datum = RootDatum::build(SemisimpleType::parse(type));
  return {datum, HighestWeight::make(datum, parse_omega_coords(lambda, datum->rank()))};
}

std::string describe_report(const ApproachReport& r) {
  const RootDatum& d = *r.lambda.datum;
  std::ostringstream s;
  s << d.type().str() << "  lambda=" << r.lambda.str() << "  ";
  if (!r.certified) {
    s << "UNCERTIFIED by all three approaches\n";
    return s.str();
  }
  s << "certified:";
  if (r.chamber) s << "  chamber(mu0=" << d.weight_str(*r.chamber) << ")";
  if (r.orbit) s << "  orbit(mu0=" << d.weight_str(*r.orbit) << ")";
  if (r.zero) s << "  zero-weight";
  s << "\n";
  return s.str();
}

int cmd_classify(const Options& opt, const std::string& type, const std::string& lambda) {
  const auto [datum, hw] = parse_lambda(type, lambda);
  const ApproachReport report = classify(hw, opt.caps);
  emit(opt, approach_report_json(report), describe_report(report));
  return report.certified ? 0 : 2;
}

int cmd_scan(const Options& opt, const std::string& type, long long max_coeff,
             unsigned threads) {
  auto datum = RootDatum::build(SemisimpleType::parse(type));
  const auto reports = scan(datum, max_coeff, opt.caps, threads);
  std::ostringstream pretty;
  pretty << "scan " << datum->type().str() << " with coefficients 0.." << max_coeff
         << " (" << reports.size() << " representations)\n";
  for (const auto& r : reports) pretty << "  " << describe_report(r);
  std::size_t bad = 0;
  for (const auto& r : reports) bad += r.certified ? 0 : 1;
  pretty << "uncertified: " << bad << " of " << reports.size() << "\n";
  emit(opt, scan_json(*datum, max_coeff, reports), pretty.str());
  return 0;
}

int cmd_weights(const Options& opt, const std::string& type, const std::string& lambda) {
  const auto [datum, hw] = parse_lambda(type, lambda);
  WeightSystem ws(hw, opt.caps);
  std::ostringstream pretty;
  pretty << datum->type().str() << "  lambda=" << hw.str() << "  dim=" << ws.dim().str()
         << "\ndominant support (weight : multiplicity):\n";
  const auto& mults = ws.dominant_multiplicities();
  for (std::size_t i = 0; i < mults.size(); ++i)
    pretty << "  " << datum->weight_str(ws.dominant_weights()[i]) << " : "
           << mults[i].str() << "\n";
  emit(opt, weights_json(ws), pretty.str());
  return 0;
}

int cmd_rep(const Options& opt, const std::string& type, const std::string& lambda,
            const std::string& dump) {
  const auto [datum, hw] = parse_lambda(type, lambda);
  const RepMatrices rep = RepMatrices::build(hw, opt.caps);
  const Json j = rep_json(rep);
  if (!dump.empty()) write_json_file(dump, j);
  std::ostringstream pretty;
  pretty << datum->type().str() << "  lambda=" << hw.str() << "  dim_C=" << rep.dim_c()
         << "  dim_R=" << rep.dim_real() << "\nweight blocks:\n";
  for (const auto& blk : rep.weight_blocks())
    pretty << "  " << datum->weight_str(blk.mu) << "  offset=" << blk.offset
           << "  mult=" << blk.mult << "\n";
  if (!dump.empty()) pretty << "matrices written to " << dump << "\n";
  if (opt.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << pretty.str();
  if (!opt.out.empty()) write_json_file(opt.out, j);
  return 0;
}

int cmd_verify(const Options& opt, const std::string& type, const std::string& lambda,
               const std::string& dump_algebra) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [datum, hw] = parse_lambda(type, lambda);
  const ApproachReport report = classify(hw, opt.caps);
  if (!report.certified) {
    const std::string msg = "uncertified by all approaches; no metric search attempted\n";
    Json j = approach_report_json(report);
    j["certificate"] = nullptr;
    emit(opt, j, describe_report(report) + msg);
    return 2;
  }

  // S from the first certifying approach: chamber, then orbit, then zero.
  std::vector<WeightVec> S;
  std::string by;
  if (report.chamber) {
    S = {*report.chamber};
    by = "chamber";
  } else if (report.orbit) {
    for (const auto& w : datum->weyl_orbit(*report.orbit, opt.caps.orbit_cap))
      S.push_back(w);
    by = "orbit";
  } else {
    S = {datum->zero()};
    by = "zero";
  }

  const ChevalleyData chev = ChevalleyData::build(datum, opt.caps);
  const RepMatrices rep = RepMatrices::build(hw, opt.caps);
  const MetricLieAlgebra alg = build_l(rep, chev, S);
  const auto found = find_negative_ricci(alg, opt.search, opt.tol);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  if (!dump_algebra.empty()) write_json_file(dump_algebra, algebra_json(alg));
  if (!found) {
    emit(opt, Json{{"certified_by", by}, {"certificate", nullptr}},
         "search converged without a negative-definite point in the family\n"
         "(not a proof of non-existence)\n");
    return 2;
  }
  Json j = certificate_json(alg, *found, by, ms);
  std::ostringstream pretty;
  pretty << datum->type().str() << "  lambda=" << hw.str() << "  dim l = " << alg.dim
         << "\ncertified_by: " << by << "\nmax Ricci eigenvalue: "
         << found->report.max_eigenvalue
         << "  (spectral radius " << found->report.spectral_radius << ")\n"
         << "metric scalars:";
  for (std::size_t b = 0; b < alg.blocks.size(); ++b)
    pretty << "  " << alg.blocks[b].name << "=" << found->params.block_scalars[b];
  pretty << "\nseed " << found->seed << ", restart " << found->restart << ", "
         << found->evaluations << " evaluations, " << ms << " ms\n";
  emit(opt, j, pretty.str());
  return 0;
}

// ---------------------------------------------------------------------------
// repro: re-derives the desk-scale classification results.

std::vector<std::vector<long long>> cartan_reference(const std::string& type) {
  static const std::map<std::string, std::vector<std::vector<long long>>> tables = {
      {"A1", {{2}}},
      {"A2", {{2, -1}, {-1, 2}}},
      {"A3", {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}},
      {"B2", {{2, -2}, {-1, 2}}},
      {"B3", {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}},
      {"C2", {{2, -1}, {-2, 2}}},
      {"C3", {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}},
      {"D4", {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}},
      {"G2", {{2, -1}, {-3, 2}}},
      {"F4", {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}}},
  };
  return tables.at(type);
}

int cmd_repro(const Options& opt, const std::string& only, const std::string& fault) {
  const std::set<std::string> known = {"", "cartan", "rank2", "su2", "lemma42",
                                       "finiteness"};
  if (!known.count(only))
    throw std::invalid_argument("unknown repro check '" + only + "'");
  Json bundle;
  bundle["checks"] = Json::array();
  bool all_ok = true;
  std::ostringstream pretty;

  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    Json c;
    c["name"] = name;
    c["passed"] = ok;
    c["detail"] = detail;
    bundle["checks"].push_back(std::move(c));
    all_ok = all_ok && ok;
    pretty << (ok ? "PASS" : "FAIL") << "  " << name << ": " << detail << "\n";
  };
  auto enabled = [&](const std::string& name) { return only.empty() || only == name; };

  if (enabled("cartan")) {
    bool ok = true;
    std::string detail = "Cartan matrices match the reference tables";
    for (const auto& t :
         {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4"}) {
      auto built = RootDatum::build(SemisimpleType::parse(t))->cartan_matrix();
      if (fault == "cartan") built[0][0] = 7;  // negative control
      if (built != cartan_reference(t)) {
        ok = false;
        detail = std::string("mismatch for ") + t;
        break;
      }
    }
    if (ok) {
      const std::map<std::string, std::size_t> counts = {
          {"E6", 36}, {"E7", 63}, {"E8", 120}};
      for (const auto& [t, n] : counts)
        if (RootDatum::build(SemisimpleType::parse(t))->positive_roots().size() != n) {
          ok = false;
          detail = "positive root count mismatch for " + t;
        }
    }
    record("cartan", ok, detail);
  }

  if (enabled("rank2")) {
    const std::map<std::string, std::set<std::vector<long long>>> expect = {
        {"A2", {{0, 0}, {1, 0}, {0, 1}}},
        {"B2", {{0, 0}, {1, 0}, {0, 1}}},
        {"G2", {{0, 0}, {1, 0}}},
    };
    bool ok = true;
    std::string detail;
    for (const auto& [t, exc] : expect) {
      std::set<std::vector<long long>> got;
      for (const auto& r : scan(RootDatum::build(SemisimpleType::parse(t)), 5, opt.caps))
        if (!r.certified) got.insert(r.lambda.omega);
      if (got != exc) {
        ok = false;
        detail = "unexpected uncertified set for " + t;
      }
    }
    if (ok)
      detail = "rank-2 uncertified sets are exactly {0,w1,w2} (A2, B2) and {0,w1} (G2)";
    record("rank2", ok, detail);
  }

  if (enabled("su2")) {
    auto a1 = RootDatum::build(SemisimpleType::parse("A1"));
    bool ok = true;
    for (long long a = 1; a <= 10 && ok; ++a) {
      const auto w = chamber_check(HighestWeight::make(a1, {a}), opt.caps);
      ok = w.has_value() && *w == a1->from_omega({Rat(a)});
    }
    record("su2", ok, "chamber witness is the highest weight for a*w1, a = 1..10");
  }

  if (enabled("lemma42")) {
    bool ok = true;
    std::string detail =
        "orbit approach certifies a*w_p for classical ranks 2-4, a in {2,3}";
    for (const auto& t :
         {"A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4"}) {
      auto d = RootDatum::build(SemisimpleType::parse(t));
      for (long long a = 2; a <= 3 && ok; ++a)
        for (int p = 0; p < d->rank() && ok; ++p) {
          std::vector<long long> omega(d->rank(), 0);
          omega[p] = a;
          const auto w = orbit_check(HighestWeight::make(d, omega), opt.caps);
          ok = w.has_value() && *w == d->from_omega_int(omega);
          if (!ok)
            detail = "failed for " + std::string(t) + " a=" + std::to_string(a) +
                     " p=" + std::to_string(p + 1);
        }
    }
    record("lemma42", ok, detail);
  }

  if (enabled("finiteness")) {
    const bool g3 = verify_finiteness_r(SimpleType::make(Family::G, 2), 3);
    const bool f8 = verify_finiteness_r(SimpleType::make(Family::F, 4), 8);
    const bool g1 = verify_finiteness_r(SimpleType::make(Family::G, 2), 1);
    record("finiteness", g3 && f8 && !g1,
           "r-condition holds at r=3 (G2) and r=8 (F4), fails at r=1 (G2)");
  }

  bundle["all_passed"] = all_ok;
  emit(opt, bundle, pretty.str() + (all_ok ? "all checks passed\n" : "CHECKS FAILED\n"));
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification and construction of Ricci-negative metric Lie algebras "
               "(R Z + u) |x V"};
  app.require_subcommand(1);

  Options opt;
  // Config values load first so that explicit flags override them.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      try {
        load_config(argv[i + 1], opt);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }
  std::string type, lambda = "", dump, dump_algebra, only, fault;
  long long max_coeff = 2;
  unsigned threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.json, "machine-readable output");
    sub->add_option("--out", opt.out, "write the JSON report to a file");
    sub->add_option("--config", opt.config_file, "key=value configuration file");
  };

  auto* c_classify = app.add_subcommand("classify", "run the three approaches on one weight");
  c_classify->add_option("--type", type, "semisimple type, e.g. G2 or A2xA1")->required();
  c_classify->add_option("--lambda", lambda, "omega-coordinates, e.g. 0,1")->required();
  add_common(c_classify);

  auto* c_scan = app.add_subcommand("scan", "classify all weights up to a coefficient bound");
  c_scan->add_option("--type", type)->required();
  c_scan->add_option("--max-coeff", max_coeff, "coefficient bound (default 2)");
  c_scan->add_option("--threads", threads, "worker threads (0 = hardware)");
  add_common(c_scan);

  auto* c_weights = app.add_subcommand("weights", "dominant support with multiplicities");
  c_weights->add_option("--type", type)->required();
  c_weights->add_option("--lambda", lambda)->required();
  add_common(c_weights);

  auto* c_rep = app.add_subcommand("rep", "build explicit representation matrices");
  c_rep->add_option("--type", type)->required();
  c_rep->add_option("--lambda", lambda)->required();
  c_rep->add_option("--dump", dump, "write matrices to a JSON file");
  add_common(c_rep);

  auto* c_verify = app.add_subcommand("verify", "search for a Ricci-negative inner product");
  c_verify->add_option("--type", type)->required();
  c_verify->add_option("--lambda", lambda)->required();
  c_verify->add_option("--budget", opt.search.budget, "evaluations per restart");
  c_verify->add_option("--restarts", opt.search.restarts, "search restarts");
  c_verify->add_option("--seed", opt.search.seed, "deterministic seed");
  c_verify->add_option("--dump-algebra", dump_algebra, "write structure constants");
  add_common(c_verify);

  auto* c_repro = app.add_subcommand("repro", "re-derive the desk-scale results");
  c_repro->add_option("--only", only, "run a single check (cartan|rank2|su2|lemma42|finiteness)");
  c_repro->add_option("--inject-fault", fault,
                      "test mode: corrupt an internal table to exercise detection")
      ->group("");
  add_common(c_repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_classify->parsed()) return cmd_classify(opt, type, lambda);
    if (c_scan->parsed()) return cmd_scan(opt, type, max_coeff, threads);
    if (c_weights->parsed()) return cmd_weights(opt, type, lambda);
    if (c_rep->parsed()) return cmd_rep(opt, type, lambda, dump);
    if (c_verify->parsed()) return cmd_verify(opt, type, lambda, dump_algebra);
    if (c_repro->parsed()) {
      if (opt.out.empty()) opt.out = "repro_report.json";
      return cmd_repro(opt, only, fault);
    }
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
