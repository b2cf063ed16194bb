#include "doctest.h"

#include "lefschetz/fibration.hpp"
#include "lefschetz/hyperbolic.hpp"

#include <cmath>
#include <numbers>

using namespace lefschetz;

namespace {

CurveSpec curve(const char* spec, int genus = 2) { return parse_curve_spec(spec, genus); }

std::vector<CurveSpec> curves(std::initializer_list<const char*> specs) {
  std::vector<CurveSpec> out;
  for (const char* s : specs) out.push_back(curve(s));
  return out;
}

} // namespace

TEST_CASE("standard realization and its Dirichlet domain") {
  for (int g : {2, 3}) {
    const FuchsianRealization& r = standard_realization(g);
    const DirichletDomain& d = r.domain();
    CHECK(r.relator_defect() < 1e-9);
    CHECK(d.area == doctest::Approx(4 * std::numbers::pi * (g - 1)).epsilon(1e-9));
    for (double s : d.cycle_angle_sums) CHECK(s == doctest::Approx(2 * std::numbers::pi).epsilon(1e-8));
    for (std::size_t i = 0; i < d.sides.size(); ++i) {
      const int j = d.sides[i].partner;
      REQUIRE(j >= 0);
      CHECK(surface_group(g).is_trivial(d.sides[i].element * d.sides[j].element));
    }
  }
}

TEST_CASE("realizations reject non-surface data") {
  std::vector<Mat2> gens(4, Mat2::Identity());
  CHECK_THROWS_AS(FuchsianRealization(2, gens), std::invalid_argument);
  std::vector<Mat2> three(3, Mat2::Identity());
  CHECK_THROWS_AS(FuchsianRealization(2, three), std::invalid_argument);
}

TEST_CASE("reduction lands in the domain") {
  const FuchsianRealization& r = standard_realization(2);
  for (double t = 0.1; t < 6; t += 0.7) {
    const Complex p = std::polar(0.97, t);
    Word h;
    const Complex q = r.reduce(p, &h);
    CHECK(r.domain().contains(disc_to_klein(q), 1e-9));
    CHECK(std::abs(mobius(r.disc_matrix(h), q) - p) < 1e-8);
  }
}

TEST_CASE("geometric intersections of standard curves") {
  for (int g : {2, 3}) {
    const auto ids = standard_curves(g);
    for (const auto& a : ids)
      for (const auto& b : ids) {
        if (a == b) continue;
        CAPTURE(a.name());
        CAPTURE(b.name());
        CHECK(geometric_intersection(g, CurveSpec{a}, CurveSpec{b}) == standard_intersection(a, b));
      }
  }
}

TEST_CASE("twisting adds intersections") {
  // i(t_2^n(c1), c1) = n i(c1, c2)^2
  for (int n = 1; n <= 4; ++n) {
    std::string w;
    for (int k = 0; k < n; ++k) w += "t2 ";
    CHECK(geometric_intersection(2, curve(("(" + w + ") c1").c_str()), curve("c1")) == n);
  }
  CHECK(geometric_intersection(2, curve("(t2) c1"), curve("(t2) c3")) == 0);
}

TEST_CASE("geodesic lengths") {
  const FuchsianRealization& r = standard_realization(2);
  const double l1 = geodesic_length(r, standard_curve_word(2, parse_curve_id("c1", 2)));
  CHECK(l1 > 0);
  CHECK(geodesic_length(r, standard_curve_word(2, parse_curve_id("c5", 2))) == doctest::Approx(l1));
  CHECK_THROWS_AS(geodesic_length(r, Word{}), std::domain_error);
  // Conjugate words have equal length.
  const Word w = curve_word(2, curve("(t1 t2) c3"));
  const Word u = parse_word("a1 b2", 2);
  CHECK(geodesic_length(r, u * w * u.inverse()) == doctest::Approx(geodesic_length(r, w)));
}

TEST_CASE("arrangements and filling") {
  struct Row {
    std::vector<CurveSpec> cs;
    int V, E, R;
    bool fills;
  };
  for (const Row& row : {Row{curves({"c1", "c2", "c3", "c4", "c5"}), 4, 8, 2, true},
                         Row{curves({"c1", "c2", "c3", "c4"}), 3, 6, 1, true},
                         Row{curves({"c2", "c3", "c4"}), 2, 4, 1, false},
                         Row{curves({"c1"}), 1, 1, 1, false}}) {
    const Arrangement a = arrangement(2, row.cs);
    CHECK(a.V == row.V);
    CHECK(a.E == row.E);
    CHECK(a.region_count() == row.R);
    CHECK(a.fills == row.fills);
    int chi = 0;
    for (const auto& reg : a.regions) chi += reg.euler_characteristic;
    CHECK(chi == a.euler_bound(2)); // regions tile the surface
    double area = 0;
    for (const auto& reg : a.regions) area += reg.area;
    CHECK(area == doctest::Approx(4 * std::numbers::pi).epsilon(1e-8));
  }
  // Filling: every region is a disc.
  for (const auto& reg : arrangement(2, curves({"c1", "c2", "c3", "c4", "c5"})).regions)
    CHECK(reg.euler_characteristic == 1);
}

TEST_CASE("duplicate curves are merged") {
  const auto a = arrangement(2, curves({"c1", "c1", "(t3) c1", "c2"}));
  CHECK(a.curves.size() == 2);
}
