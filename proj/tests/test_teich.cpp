#include "doctest.h"

#include "lefschetz/teich.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lefschetz;

namespace {

Fibration fixture(const std::string& name) { return load_fibration(std::string(LEFSCHETZ_DATA_DIR) + "/" + name + ".fib"); }

CurveMultiset chain() {
  std::vector<CurveSpec> cs;
  for (const char* id : {"c1", "c2", "c3", "c4", "c5"}) cs.push_back(CurveSpec{parse_curve_id(id, 2)});
  return make_multiset(2, cs);
}

double length_of(const FNCoords& x, const char* id) {
  return trace_length(holonomy_generators(x), standard_curve_word(2, parse_curve_id(id, 2)));
}

} // namespace

TEST_CASE("holonomy reproduces the pants lengths") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> len(0.2, 6.0), tw(-4, 4);
  for (int t = 0; t < 20; ++t) {
    const FNCoords x{{len(rng), len(rng), len(rng)}, {tw(rng), tw(rng), tw(rng)}};
    const auto names = pants_curves(2);
    for (int i = 0; i < 3; ++i)
      CHECK(trace_length(holonomy_generators(x), standard_curve_word(2, names[i])) ==
            doctest::Approx(x.lengths[i]).epsilon(1e-9));
  }
  const FuchsianRealization r = holonomy({{1.3, 0.9, 2.1}, {0.4, -1.0, 2.0}});
  CHECK(r.relator_defect() < 1e-9);
  CHECK(r.domain().area == doctest::Approx(4 * std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("twists only move crossing curves") {
  FNCoords x{{1.1, 2.0, 1.7}, {0.3, 0.2, -0.5}};
  const double s1 = length_of(x, "s1"), c2 = length_of(x, "c2");
  x.twists[0] += 1.3; // c1 twist: s1 is disjoint from c1
  x.twists[2] -= 0.8; // c5 twist
  CHECK(length_of(x, "s1") == doctest::Approx(s1).epsilon(1e-9));
  CHECK(length_of(x, "c2") != doctest::Approx(c2).epsilon(1e-6));
}

TEST_CASE("length window") {
  CHECK_THROWS_AS(holonomy_generators({{0.0, 1, 1}, {0, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(holonomy_generators({{25, 1, 1}, {0, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(holonomy_generators({{1, 1}, {0, 0}}), std::invalid_argument);
  CHECK_NOTHROW(holonomy_generators({{1e-4, 20, 1}, {0, 0, 0}}));
}

TEST_CASE("total length") {
  const CurveMultiset v = chain();
  CurveMultiset doubled = v;
  for (auto& c : doubled) c.multiplicity *= 2;
  const FNCoords x{{1.0, 2.0, 1.5}, {0.1, 0.2, 0.3}};
  CHECK(total_length(x, doubled) == doctest::Approx(2 * total_length(x, v)));
  CHECK(total_length(x, v) > 0);
  // multiplicities collect repeated isotopy classes
  std::vector<CurveSpec> cs{CurveSpec{parse_curve_id("c1", 2)}, parse_curve_spec("(t3) c1", 2)};
  const CurveMultiset m = make_multiset(2, cs);
  REQUIRE(m.size() == 1);
  CHECK(m[0].multiplicity == 2);
}

TEST_CASE("convexity along twist paths") {
  const CurveMultiset v = chain();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> len(0.3, 4.0), tw(-3, 3);
  for (int path = 0; path < 20; ++path) {
    const FNCoords x{{len(rng), len(rng), len(rng)}, {tw(rng), tw(rng), tw(rng)}};
    std::vector<double> f;
    for (int k = -10; k <= 10; ++k) {
      FNCoords y = x;
      y.twists[path % 3] += 0.2 * k;
      f.push_back(total_length(y, v));
    }
    for (std::size_t k = 1; k + 1 < f.size(); ++k) CHECK(f[k - 1] - 2 * f[k] + f[k + 1] >= -1e-6);
  }
}

TEST_CASE("minimizing the chain") {
  const LengthReport r = minimize_length(chain());
  CHECK(r.gradient_norm < 1e-5);
  REQUIRE(r.restart_values.size() == 5);
  for (double v : r.restart_values) CHECK(v == doctest::Approx(r.value).epsilon(1e-4 / r.value));
  CHECK(total_length(r.minimizer, r.multiset) == doctest::Approx(r.value));
  // the chain's order reversal is a symmetry
  CHECK(std::abs(length_of(r.minimizer, "c1") - length_of(r.minimizer, "c5")) < 1e-3);
  CHECK(std::abs(length_of(r.minimizer, "c2") - length_of(r.minimizer, "c4")) < 1e-3);
  CHECK(length_gradient(r.minimizer, r.multiset).norm() < 1e-5);
}

TEST_CASE("minimum is independent of the marking") {
  const double base = minimize_length(chain()).value;
  for (const char* w : {"t1", "T3", "t2 t4", "T5 t1"}) {
    std::vector<CurveSpec> moved;
    for (const char* id : {"c1", "c2", "c3", "c4", "c5"})
      moved.push_back(CurveSpec{parse_curve_id(id, 2), parse_twist_word(w, 2)});
    CHECK(minimize_length(make_multiset(2, moved)).value == doctest::Approx(base).epsilon(1e-3 / base));
  }
}

TEST_CASE("non-filling multisets are rejected") {
  std::vector<CurveSpec> cs;
  for (const char* id : {"c2", "c3", "c4"}) cs.push_back(CurveSpec{parse_curve_id(id, 2)});
  CHECK_THROWS_AS(minimize_length(make_multiset(2, cs)), std::invalid_argument);
}

TEST_CASE("orbit searches") {
  Fibration chain5;
  for (const char* id : {"c1", "c2", "c3", "c4", "c5"}) chain5.cycles.push_back(CurveSpec{parse_curve_id(id, 2)});
  CHECK(total_intersections(chain5) == 4);

  const Fibration f = fixture("genus2_hyp20");
  OrbitOptions opt;
  opt.max_nodes = 40;
  opt.threads = 2;
  const LengthSearch ls = length_invariant(f, 3, opt);
  REQUIRE(ls.best_by_depth.size() == 4);
  for (std::size_t d = 1; d < ls.best_by_depth.size(); ++d) CHECK(ls.best_by_depth[d] <= ls.best_by_depth[d - 1]);
  CHECK(ls.orbit_visited <= 40);
  // depth 0 is the length of the given word's multiset
  CHECK(ls.best_by_depth[0] == doctest::Approx(minimize_length(make_multiset(2, f.cycles)).value).epsilon(1e-6));

  const IntersectionSearch is = min_total_intersections(f, 3, opt);
  CHECK(is.best_by_depth[0] == total_intersections(f));
  for (std::size_t d = 1; d < is.best_by_depth.size(); ++d) CHECK(is.best_by_depth[d] <= is.best_by_depth[d - 1]);
  // threads do not change the result
  opt.threads = 1;
  CHECK(length_invariant(f, 3, opt).best == ls.best);
}
