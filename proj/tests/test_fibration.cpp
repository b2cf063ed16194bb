#include "doctest.h"

#include "lefschetz/fibration.hpp"

#include <random>

using namespace lefschetz;

namespace {

Fibration fixture(const std::string& name) { return load_fibration(std::string(LEFSCHETZ_DATA_DIR) + "/" + name + ".fib"); }

Fibration random_hurwitz(Fibration f, std::mt19937& rng, int moves) {
  if (f.size() < 2) return f;
  std::uniform_int_distribution<int> pos(1, static_cast<int>(f.size()) - 1);
  std::bernoulli_distribution right;
  for (int k = 0; k < moves; ++k) f = hurwitz_move(f, pos(rng), right(rng) ? HurwitzDirection::Right : HurwitzDirection::Left);
  return f;
}

} // namespace

TEST_CASE("fixture invariants") {
  struct Row {
    const char* name;
    std::size_t n;
    int k, e, sigma, b1;
  };
  for (const Row& r : {Row{"genus2_chain30", 30, 1, 26, -18, 0}, Row{"genus2_hyp20", 20, 1, 16, -12, 0},
                       Row{"genus2_chain40", 40, 1, 36, -24, 0}, Row{"trivial_g2", 0, 0, -4, 0, 4},
                       Row{"genus2_matsumoto8", 8, 1, 4, -4, 2}}) {
    CAPTURE(r.name);
    const Fibration f = fixture(r.name);
    const Validation v = validate(f);
    CHECK(f.size() == r.n);
    REQUIRE(v.trivial_closed);
    CHECK(v.k_standard == r.k);
    CHECK(euler_char(f) == r.e);
    CHECK(signature_meyer(f) == r.sigma);
    CHECK(invariant_cohomology_rank(f) == r.b1);
  }
}

TEST_CASE("parse and print round trip") {
  for (const char* name : {"genus2_chain30", "genus2_matsumoto8", "trivial_g2"}) {
    const Fibration f = fixture(name);
    CHECK(parse_fibration(print_fibration(f)) == f);
  }
  const Fibration f = parse_fibration("# comment\ngenus 2\n\ncycle (t1 T2) c3  # trailing\ncycle s1\n");
  REQUIRE(f.size() == 2);
  CHECK(format_curve_spec(f.cycles[0]) == "(t1 T2) c3");
  CHECK(parse_curve_spec("(t1 T2) c3", 2) == f.cycles[0]);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_fibration("genus 2\ncycle c9\n"), doctest::Contains("unknown curve id"), ParseError);
  try {
    parse_fibration("genus 2\ncycle c1\ncycle q\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_fibration("genus 1\n"), ParseError);
  CHECK_THROWS_AS(parse_fibration("cycle c1\n"), ParseError);
  CHECK_THROWS_AS(parse_fibration("genus 2\ncycle (t1 c1\n"), ParseError);
  CHECK_THROWS_AS(parse_fibration("genus 2\nfibre c1\n"), ParseError);
}

TEST_CASE("invalid factorizations are reported, not rejected") {
  const Fibration f = parse_fibration("genus 2\ncycle c1\ncycle c2\n");
  CHECK_FALSE(validate(f).trivial_closed);
  CHECK(euler_char(f) == -2);
  CHECK_THROWS_AS(signature_meyer(f), std::invalid_argument);
}

TEST_CASE("fibre sums add invariants") {
  const Fibration a = fixture("genus2_chain30"), b = fixture("genus2_hyp20"), m = fixture("genus2_matsumoto8");
  const int ef = 2 - 2 * 2;
  for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, m}, std::pair{a, m}}) {
    for (const char* glue : {"", "t1 T3", "t2 t5 t4"}) {
      const Fibration s = fibre_sum(x, y, parse_twist_word(glue, 2));
      CHECK(validate(s).trivial_closed);
      CHECK(signature_meyer(s) == signature_meyer(x) + signature_meyer(y));
      CHECK(euler_char(s) == euler_char(x) + euler_char(y) - 2 * ef);
    }
  }
  const Fibration four = fibre_sum_power(a, 4);
  CHECK(four.size() == 120);
  CHECK(validate(four).k_standard == 4);
  CHECK(validate(fibre_sum_power(b, 6)).k_standard == 6);
  CHECK(signature_meyer(a) + euler_char(a) == 8);
}

TEST_CASE("Hurwitz moves preserve validity and invariants") {
  std::mt19937 rng(11);
  const Fibration a = fixture("genus2_hyp20");
  for (int t = 0; t < 10; ++t) {
    const Fibration h = random_hurwitz(a, rng, 3);
    const Validation v = validate(h);
    CHECK(v.trivial_closed);
    CHECK(v.k_standard == 1);
    CHECK(signature_meyer(h) == -12);
    CHECK(invariant_cohomology_rank(h) == 0);
  }
  // Right and Left at the same position are inverse.
  const Fibration h = hurwitz_move(hurwitz_move(a, 4, HurwitzDirection::Right), 4, HurwitzDirection::Left);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(twist_about(2, h.cycles[i]) == twist_about(2, a.cycles[i]));
  CHECK_THROWS_AS(hurwitz_move(a, 0, HurwitzDirection::Right), std::out_of_range);
  CHECK_THROWS_AS(hurwitz_move(a, 20, HurwitzDirection::Right), std::out_of_range);
}

TEST_CASE("split scan") {
  const Fibration a = fixture("genus2_chain30"), b = fixture("genus2_hyp20");
  CHECK(split_irreducibility_scan(a).empty());
  CHECK(split_irreducibility_scan(b).empty());
  CHECK(split_irreducibility_scan(fibre_sum(a, a)) == std::vector<int>{30});
  CHECK(split_irreducibility_scan(fibre_sum(b, a)) == std::vector<int>{20});
}

TEST_CASE("simplify keeps the isotopy class") {
  const CurveSpec c{parse_curve_id("c1", 2), parse_twist_word("t2 t4 t5", 2)};
  const CurveSpec s = simplify(c);
  CHECK(s.conjugator.size() < c.conjugator.size());
  CHECK(twist_about(2, s) == twist_about(2, c));
}
