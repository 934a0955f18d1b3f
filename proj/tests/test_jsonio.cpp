#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ricneg/jsonio.hpp"

using namespace ricneg;

namespace {

std::shared_ptr<const RootDatum> datum(const std::string& s) {
  return RootDatum::build(SemisimpleType::parse(s));
}

MetricLieAlgebra sample_algebra() {
  const auto d = datum("A1");
  const auto chev = ChevalleyData::build(d);
  const auto rep = RepMatrices::build(HighestWeight::make(d, {2}));
  return build_l(rep, chev, {d->from_omega({2})});
}

}  // namespace

TEST_CASE("algebra JSON round trip") {
  const auto alg = sample_algebra();
  const Json j = algebra_json(alg);
  const auto back = algebra_from_json(j);
  CHECK(back.dim == alg.dim);
  CHECK(back.basis_labels == alg.basis_labels);
  REQUIRE(back.blocks.size() == alg.blocks.size());
  for (std::size_t b = 0; b < alg.blocks.size(); ++b) {
    CHECK(back.blocks[b].name == alg.blocks[b].name);
    CHECK(back.blocks[b].start == alg.blocks[b].start);
    CHECK(back.blocks[b].size == alg.blocks[b].size);
    CHECK(back.blocks[b].kind == alg.blocks[b].kind);
  }
  for (int i = 0; i < alg.dim; ++i)
    for (int k = i + 1; k < alg.dim; ++k) {
      const auto a = alg.bracket_of(i, k), b = back.bracket_of(i, k);
      REQUIRE(a.size() == b.size());
      for (std::size_t t = 0; t < a.size(); ++t) {
        CHECK(a[t].first == b[t].first);
        CHECK(a[t].second == doctest::Approx(b[t].second).epsilon(1e-15));
      }
    }
}

TEST_CASE("algebra ingestion validates antisymmetry") {
  const auto alg = sample_algebra();
  Json j = algebra_json(alg);
  // corrupt one orientation of a triplet
  for (auto& t : j["triplets"])
    if (t["i"].get<int>() == 0) {
      t["c"] = t["c"].get<double>() + 0.5;
      break;
    }
  CHECK_THROWS_AS(algebra_from_json(j), std::invalid_argument);
}

TEST_CASE("algebra ingestion validates the Jacobi identity") {
  const auto alg = sample_algebra();
  Json j = algebra_json(alg);
  // break Jacobi while keeping antisymmetry: flip the sign of both
  // orientations of one u-action entry
  bool flipped = false;
  for (auto& t : j["triplets"]) {
    const int i = t["i"].get<int>(), jj = t["j"].get<int>();
    if ((i == 1 && jj >= 4) || (jj == 1 && i >= 4)) {
      t["c"] = 3.0 * t["c"].get<double>();
      flipped = true;
    }
  }
  REQUIRE(flipped);
  CHECK_THROWS_AS(algebra_from_json(j), std::invalid_argument);
}

TEST_CASE("big integers serialize as strings") {
  CHECK(int_json(Int(42)) == Json(42));
  const Int big = Int("123456789012345678901234567890");
  CHECK(int_json(big) == Json("123456789012345678901234567890"));
}

TEST_CASE("weight coordinates serialize in omega coordinates") {
  const auto d = datum("G2");
  const Json j = weight_json(*d, d->from_omega({2, 1}));
  CHECK(j == Json::array({2, 1}));
  // non-integral coordinates fall back to rational strings
  const Json h = weight_json(*d, d->from_omega({Rat(1, 2), 0}));
  CHECK(h[0] == Json("1/2"));
}
