#ifndef RICNEG_JSONIO_HPP
#define RICNEG_JSONIO_HPP

#include "ricneg/approaches.hpp"
#include "ricneg/metric.hpp"

#include <json.hpp>

namespace ricneg {

using Json = nlohmann::ordered_json;

Json weight_json(const RootDatum& datum, const WeightVec& mu);  // omega coords
Json int_json(const Int& n);  // number when it fits, decimal string otherwise

Json approach_report_json(const ApproachReport& report);
Json scan_json(const RootDatum& datum, long long max_coeff,
               const std::vector<ApproachReport>& reports);
Json weights_json(const WeightSystem& ws);
Json rep_json(const RepMatrices& rep);
Json ricci_report_json(const RicciReport& report);
Json certificate_json(const MetricLieAlgebra& alg, const NegativeRicciResult& result,
                      const std::string& certified_by, long long runtime_ms);

/// Structure-constant file: basis labels, blocks, and sparse triplets
/// {"i","j","k","c"} for both orientations. Loading validates antisymmetry
/// and the Jacobi identity before returning.
Json algebra_json(const MetricLieAlgebra& alg);
MetricLieAlgebra algebra_from_json(const Json& j, double jacobi_tol = 1e-9);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

}  // namespace ricneg

#endif
