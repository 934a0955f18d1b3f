#include "ricneg/jsonio.hpp"

#include <fstream>

namespace ricneg {

Json weight_json(const RootDatum& datum, const WeightVec& mu) {
  Json out = Json::array();
  for (const auto& c : datum.omega_coords(mu)) {
    if (is_integer(c))
      out.push_back(to_ll(c));
    else
      out.push_back(rat_str(c));
  }
  return out;
}

Json int_json(const Int& n) {
  static const Int max_safe = (Int(1) << 53);
  if (n <= max_safe && n >= -max_safe) return n.convert_to<long long>();
  return n.str();
}

Json approach_report_json(const ApproachReport& report) {
  const RootDatum& d = *report.lambda.datum;
  Json j;
  j["type"] = d.type().str();
  j["lambda"] = report.lambda.omega;
  j["certified"] = report.certified;
  j["chamber_witness"] =
      report.chamber ? weight_json(d, *report.chamber) : Json(nullptr);
  j["orbit_witness"] = report.orbit ? weight_json(d, *report.orbit) : Json(nullptr);
  j["zero_weight"] = report.zero;
  Json by = Json::array();
  if (report.chamber) by.push_back("chamber");
  if (report.orbit) by.push_back("orbit");
  if (report.zero) by.push_back("zero");
  j["certified_by"] = by;
  return j;
}

Json scan_json(const RootDatum& datum, long long max_coeff,
               const std::vector<ApproachReport>& reports) {
  Json j;
  j["type"] = datum.type().str();
  j["max_coeff"] = max_coeff;
  Json rows = Json::array();
  for (const auto& r : reports) rows.push_back(approach_report_json(r));
  j["reports"] = std::move(rows);
  Json unc = Json::array();
  for (const auto& r : reports)
    if (!r.certified) unc.push_back(r.lambda.omega);
  j["uncertified"] = std::move(unc);
  return j;
}

Json weights_json(const WeightSystem& ws) {
  const RootDatum& d = ws.datum();
  Json j;
  j["type"] = d.type().str();
  j["lambda"] = ws.highest().omega;
  j["dim"] = int_json(ws.dim());
  Json support = Json::array();
  const auto& mults = ws.dominant_multiplicities();
  for (std::size_t i = 0; i < mults.size(); ++i) {
    Json entry;
    entry["mu"] = weight_json(d, ws.dominant_weights()[i]);
    entry["mult"] = int_json(mults[i]);
    support.push_back(std::move(entry));
  }
  j["dominant_support"] = std::move(support);
  return j;
}

namespace {

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) rows.push_back(m(i, j));
  return rows;  // row-major
}

}  // namespace

Json rep_json(const RepMatrices& rep) {
  const RootDatum& d = rep.datum();
  Json j;
  j["type"] = d.type().str();
  j["lambda"] = rep.lambda().omega;
  j["dim_complex"] = rep.dim_c();
  j["dim_real"] = rep.dim_real();
  j["matrix_layout"] = "row-major";

  Json blocks = Json::array();
  for (const auto& blk : rep.weight_blocks()) {
    Json b;
    b["mu"] = weight_json(d, blk.mu);
    b["offset"] = blk.offset;
    b["mult"] = blk.mult;
    blocks.push_back(std::move(b));
  }
  j["weight_blocks"] = std::move(blocks);

  Json basis = Json::array();
  for (const auto& blk : rep.weight_blocks())
    for (int k = 0; k < blk.mult; ++k)
      basis.push_back("v" + d.weight_str(blk.mu) + "." + std::to_string(k));
  j["complex_basis"] = basis;
  Json rbasis = Json::array();
  for (const auto& prefix : {"x", "y"})
    for (const auto& blk : rep.weight_blocks())
      for (int k = 0; k < blk.mult; ++k)
        rbasis.push_back(prefix + d.weight_str(blk.mu) + "." + std::to_string(k));
  j["real_basis"] = rbasis;

  Json mats;
  Json e = Json::array(), f = Json::array(), h = Json::array();
  for (int i = 0; i < d.rank(); ++i) {
    e.push_back(matrix_json(rep.e(i)));
    f.push_back(matrix_json(rep.f(i)));
    Json hd = Json::array();
    for (int k = 0; k < rep.dim_c(); ++k) hd.push_back(rep.h_diag(i)(k));
    h.push_back(std::move(hd));
  }
  mats["e"] = std::move(e);
  mats["f"] = std::move(f);
  mats["h_diagonal"] = std::move(h);
  Json rh = Json::array(), rx = Json::array(), ry = Json::array();
  for (int i = 0; i < d.rank(); ++i) rh.push_back(matrix_json(rep.real_h(i)));
  for (int r = 0; r < static_cast<int>(d.positive_roots().size()); ++r) {
    rx.push_back(matrix_json(rep.real_x(r)));
    ry.push_back(matrix_json(rep.real_y(r)));
  }
  mats["real_H"] = std::move(rh);
  mats["real_X"] = std::move(rx);
  mats["real_Y"] = std::move(ry);
  j["matrices"] = std::move(mats);
  return j;
}

Json ricci_report_json(const RicciReport& report) {
  Json j;
  Json eigs = Json::array();
  for (int i = 0; i < report.eigenvalues.size(); ++i)
    eigs.push_back(report.eigenvalues[i]);
  j["eigenvalues"] = std::move(eigs);
  j["max_eigenvalue"] = report.max_eigenvalue;
  j["spectral_radius"] = report.spectral_radius;
  j["negative_definite"] = report.negative_definite;
  return j;
}

Json certificate_json(const MetricLieAlgebra& alg, const NegativeRicciResult& result,
                      const std::string& certified_by, long long runtime_ms) {
  Json j;
  j["certified_by"] = certified_by;
  Json params;
  Json names = Json::array(), values = Json::array();
  for (std::size_t b = 0; b < alg.blocks.size(); ++b) {
    names.push_back(alg.blocks[b].name);
    values.push_back(result.params.block_scalars[b]);
  }
  params["blocks"] = std::move(names);
  params["scalars"] = std::move(values);
  params["degeneration_t"] = result.degeneration_t;
  j["metric_params"] = std::move(params);
  j["ricci_eigenvalues"] = ricci_report_json(result.report)["eigenvalues"];
  j["max_eig"] = result.report.max_eigenvalue;
  j["spectral_radius"] = result.report.spectral_radius;
  j["negative_definite"] = result.report.negative_definite;
  j["seed"] = result.seed;
  j["restart"] = result.restart;
  j["evaluations"] = result.evaluations;
  j["runtime_ms"] = runtime_ms;
  return j;
}

Json algebra_json(const MetricLieAlgebra& alg) {
  Json j;
  j["dim"] = alg.dim;
  j["basis"] = alg.basis_labels;
  Json blocks = Json::array();
  for (const auto& b : alg.blocks) {
    Json v;
    v["name"] = b.name;
    v["start"] = b.start;
    v["size"] = b.size;
    v["kind"] = b.kind == MetricLieAlgebra::BlockKind::Z       ? "Z"
                : b.kind == MetricLieAlgebra::BlockKind::Levi ? "levi"
                                                              : "radical";
    v["z_scale"] = b.z_scale;
    blocks.push_back(std::move(v));
  }
  j["blocks"] = std::move(blocks);
  Json triplets = Json::array();
  for (int i = 0; i < alg.dim; ++i)
    for (int jdx = 0; jdx < alg.dim; ++jdx)
      for (const auto& [k, c] : alg.bracket_of(i, jdx)) {
        Json t;
        t["i"] = i;
        t["j"] = jdx;
        t["k"] = k;
        t["c"] = c;
        triplets.push_back(std::move(t));
      }
  j["triplets"] = std::move(triplets);
  return j;
}

MetricLieAlgebra algebra_from_json(const Json& j, double jacobi_tol) {
  MetricLieAlgebra alg;
  alg.dim = j.at("dim").get<int>();
  alg.basis_labels = j.at("basis").get<std::vector<std::string>>();
  if (static_cast<int>(alg.basis_labels.size()) != alg.dim)
    throw std::invalid_argument("algebra file: basis size mismatch");
  for (const auto& b : j.at("blocks")) {
    MetricLieAlgebra::Block blk;
    blk.name = b.at("name").get<std::string>();
    blk.start = b.at("start").get<int>();
    blk.size = b.at("size").get<int>();
    const std::string kind = b.at("kind").get<std::string>();
    blk.kind = kind == "Z"      ? MetricLieAlgebra::BlockKind::Z
               : kind == "levi" ? MetricLieAlgebra::BlockKind::Levi
                                : MetricLieAlgebra::BlockKind::Radical;
    blk.z_scale = b.value("z_scale", 0.0);
    alg.blocks.push_back(std::move(blk));
  }
  alg.block_of.assign(alg.dim, -1);
  for (std::size_t b = 0; b < alg.blocks.size(); ++b)
    for (int k = 0; k < alg.blocks[b].size; ++k) {
      const int idx = alg.blocks[b].start + k;
      if (idx < 0 || idx >= alg.dim || alg.block_of[idx] != -1)
        throw std::invalid_argument("algebra file: inconsistent blocks");
      alg.block_of[idx] = static_cast<int>(b);
    }
  for (const int b : alg.block_of)
    if (b < 0) throw std::invalid_argument("algebra file: uncovered basis index");

  std::map<std::pair<int, int>, std::map<int, double>> entries;
  for (const auto& t : j.at("triplets")) {
    const int i = t.at("i").get<int>(), jj = t.at("j").get<int>(), k = t.at("k").get<int>();
    const double c = t.at("c").get<double>();
    if (i < 0 || i >= alg.dim || jj < 0 || jj >= alg.dim || k < 0 || k >= alg.dim)
      throw std::invalid_argument("algebra file: index out of range");
    if (i == jj && c != 0)
      throw std::invalid_argument("algebra file: nonzero [x,x] bracket");
    entries[{i, jj}][k] += c;
  }
  // antisymmetry: every (i,j) entry must match the negated (j,i) entry
  for (const auto& [key, terms] : entries) {
    const auto mirror = entries.find({key.second, key.first});
    for (const auto& [k, c] : terms) {
      double other = 0.0;
      if (mirror != entries.end()) {
        const auto it = mirror->second.find(k);
        if (it != mirror->second.end()) other = it->second;
      }
      if (std::abs(c + other) > 1e-12)
        throw std::invalid_argument("algebra file: violates antisymmetry");
    }
  }
  for (const auto& [key, terms] : entries) {
    if (key.first >= key.second) continue;
    std::vector<std::pair<int, double>> list;
    for (const auto& [k, c] : terms)
      if (c != 0.0) list.push_back({k, c});
    if (!list.empty()) alg.bracket[key] = std::move(list);
  }

  const double jac = alg.jacobi_residual();
  if (jac > jacobi_tol)
    throw std::invalid_argument("algebra file: Jacobi residual " + std::to_string(jac) +
                                " exceeds tolerance");
  return alg;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  Json j;
  in >> j;
  return j;
}

}  // namespace ricneg
