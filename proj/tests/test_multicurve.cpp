#include "doctest.h"

#include "lefschetz/hyperbolic.hpp"
#include "lefschetz/multicurve.hpp"

using namespace lefschetz;

namespace {

Fibration fixture(const std::string& name) { return load_fibration(std::string(LEFSCHETZ_DATA_DIR) + "/" + name + ".fib"); }

std::vector<CurveSpec> curves(std::initializer_list<const char*> specs) {
  std::vector<CurveSpec> out;
  for (const char* s : specs) out.push_back(parse_curve_spec(s, 2));
  return out;
}

} // namespace

TEST_CASE("disjointness agrees with the hyperbolic count") {
  const auto cs = curves({"c1", "c2", "c3", "(t2) c1", "(t3 t4) c5", "s1", "(t1 T2) c3"});
  for (const auto& a : cs)
    for (const auto& b : cs)
      CHECK(curves_disjoint(2, a, b) == (geometric_intersection(2, a, b) == 0));
}

TEST_CASE("twist images") {
  const CurveSpec a = parse_curve_spec("c2", 2), b = parse_curve_spec("c1", 2);
  const CurveSpec ab = twist_image(a, b);
  CHECK(twist_about(2, ab) == twist_about(2, a) * twist_about(2, b) * twist_about(2, a).inverse());
}

TEST_CASE("invariant curves of small systems") {
  // A lone curve and the chain pieces leave a complementary curve.
  auto one = invariant_multicurve_search(2, curves({"c1"}), 1);
  REQUIRE(one);
  for (const auto& c : *one) CHECK(curves_disjoint(2, c, parse_curve_spec("c1", 2)));
  auto two = invariant_multicurve_search(2, curves({"c1", "c2"}), 1);
  REQUIRE(two);
  CHECK(geometric_intersection(2, two->front(), parse_curve_spec("c4", 2)) == 0);
  CHECK_FALSE(invariant_multicurve_search(2, curves({"c1", "c3", "c5"}), 2));
}

TEST_CASE("fibrations with filling cycles have no invariant curves") {
  for (const char* name : {"genus2_chain30", "genus2_hyp20"})
    CHECK_FALSE(invariant_multicurve_search(fixture(name), 3));
}
