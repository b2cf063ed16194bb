#include "doctest.h"

#include "lefschetz/sections.hpp"

#include <random>

using namespace lefschetz;

namespace {

Fibration fixture(const std::string& name) { return load_fibration(std::string(LEFSCHETZ_DATA_DIR) + "/" + name + ".fib"); }

void check_consistent(const SectionAnalysis& s) {
  CHECK(s.section_count() <= s.region_count());
  CHECK(static_cast<int>(s.reports.size()) == s.region_count());
  for (const auto& r : s.reports) {
    CHECK(r.arcs_agree);
    CHECK(r.has_section == r.obstruction.empty());
    CHECK(r.has_section == r.self_intersection.has_value());
    if (r.self_intersection) CHECK(*r.self_intersection <= 0);
  }
}

} // namespace

TEST_CASE("trivial fibration: one square-zero section") {
  const SectionAnalysis s = enumerate_sections(fixture("trivial_g2"));
  REQUIRE(s.region_count() == 1);
  CHECK(s.reports[0].has_section);
  CHECK(s.reports[0].self_intersection == 0);
}

TEST_CASE("fixtures: square -1 sections") {
  for (const char* name : {"genus2_chain30", "genus2_hyp20", "genus2_chain40", "genus2_matsumoto8"}) {
    CAPTURE(name);
    const SectionAnalysis s = enumerate_sections(fixture(name));
    check_consistent(s);
    CHECK(s.base_consistent);
    CHECK(s.reports[s.base_region].self_intersection == -1);
  }
}

TEST_CASE("fibre sums: squares add") {
  const SectionAnalysis four = enumerate_sections(fibre_sum_power(fixture("genus2_chain30"), 4));
  check_consistent(four);
  CHECK(four.reports[four.base_region].self_intersection == -4);
  const SectionAnalysis six = enumerate_sections(fibre_sum_power(fixture("genus2_hyp20"), 6));
  CHECK(six.reports[six.base_region].self_intersection == -6);
}

TEST_CASE("Hurwitz variants") {
  std::mt19937 rng(3);
  Fibration f = fixture("genus2_hyp20");
  std::uniform_int_distribution<int> pos(1, static_cast<int>(f.size()) - 1);
  for (int t = 0; t < 3; ++t) {
    f = hurwitz_move(f, pos(rng), HurwitzDirection::Right);
    const SectionAnalysis s = enumerate_sections(f);
    check_consistent(s);
    CHECK(s.section_count() >= 1);
    for (const auto& r : s.reports)
      if (r.self_intersection) CHECK(*r.self_intersection == -1);
  }
}

TEST_CASE("invalid fibrations are rejected") {
  CHECK_THROWS_AS(enumerate_sections(parse_fibration("genus 2\ncycle c1\n")), std::invalid_argument);
}
