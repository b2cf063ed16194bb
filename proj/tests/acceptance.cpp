// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "lefschetz/fibration.hpp"
#include "lefschetz/hyperbolic.hpp"
#include "lefschetz/multicurve.hpp"
#include "lefschetz/sections.hpp"
#include "lefschetz/shear.hpp"
#include "lefschetz/teich.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace lefschetz;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "FAILED: ";
      detail << what << "; ";
      pass = false;
    }
  }
};

Fibration fixture(const std::string& name) { return load_fibration(std::string(LEFSCHETZ_DATA_DIR) + "/" + name + ".fib"); }

const std::vector<std::string> kFixtures{"genus2_chain30", "genus2_hyp20", "genus2_chain40", "genus2_matsumoto8",
                                         "trivial_g2"};

MappingClass power(const MappingClass& m, int k) {
  MappingClass out = MappingClass::identity(m.genus());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

Fibration random_moves(Fibration f, std::mt19937_64& rng, int moves) {
  if (f.size() < 2) return f;
  std::uniform_int_distribution<int> pos(1, static_cast<int>(f.size()) - 1);
  std::bernoulli_distribution right;
  for (int k = 0; k < moves; ++k)
    f = hurwitz_move(f, pos(rng), right(rng) ? HurwitzDirection::Right : HurwitzDirection::Left);
  return f;
}

std::optional<int> base_square(const SectionAnalysis& s) { return s.reports[s.base_region].self_intersection; }

// 1. Chain relations, braid and commutation relations.
void conventions(Outcome& o) {
  const int g = 2;
  const MappingClass d = MappingClass::boundary_twist(g, 1);
  o.require(power(twist_word_class(g, parse_twist_word("t1 t2 t3 t4", g)), 10) == d, "(t1..t4)^10");
  o.require(power(twist_word_class(g, parse_twist_word("t1 t2 t3 t4 t5", g)), 6) == d, "(t1..t5)^6");
  int pairs = 0;
  const auto ids = standard_curves(g);
  for (const auto& a : ids)
    for (const auto& b : ids) {
      if (!(a < b)) continue;
      const MappingClass ta = standard_twist(g, a), tb = standard_twist(g, b);
      const int i = standard_intersection(a, b);
      if (i == 0) o.require(ta * tb == tb * ta, "commutation " + a.name() + " " + b.name());
      if (i == 1) o.require(ta * tb * ta == tb * ta * tb, "braid " + a.name() + " " + b.name());
      ++pairs;
    }
  o.detail << "chain relations exact, " << pairs << " standard pairs checked";
}

// 2. Section squares of the fixtures and their fibre sums.
void section_squares(Outcome& o) {
  const Fibration a = fixture("genus2_chain30"), b = fixture("genus2_hyp20");
  o.require(validate(a).k_standard == 1, "k(chain30) = 1");
  o.require(validate(b).k_standard == 1, "k(hyp20) = 1");
  const Fibration a4 = fibre_sum_power(a, 4), b6 = fibre_sum_power(b, 6);
  const auto s4 = base_square(enumerate_sections(a4)), s6 = base_square(enumerate_sections(b6));
  o.require(a4.size() == 120, "120 singular fibres");
  o.require(s4 == -4, "4-fold sum square -4");
  o.require(s6 == -6, "6-fold sum square -6");
  o.detail << "k = 1, 1; 4-fold: n = " << a4.size() << ", square " << (s4 ? *s4 : 0) << "; 6-fold: square "
           << (s6 ? *s6 : 0);
}

// 3. Additivity of signature and Euler characteristic under fibre sum.
void additivity(Outcome& o) {
  const int eF = 2 - 2 * 2;
  int pairs = 0;
  for (const auto& x : kFixtures)
    for (const auto& y : kFixtures) {
      const Fibration f1 = fixture(x), f2 = fixture(y);
      for (const char* glue : {"", "t2 T4"}) {
        const Fibration z = fibre_sum(f1, f2, parse_twist_word(glue, 2));
        o.require(signature_meyer(z) == signature_meyer(f1) + signature_meyer(f2), "sigma " + x + "+" + y);
        o.require(euler_char(z) == euler_char(f1) + euler_char(f2) - 2 * eF, "e " + x + "+" + y);
        ++pairs;
      }
    }
  const Fibration a = fixture("genus2_chain30");
  const int se = signature_meyer(a) + euler_char(a);
  o.require(se == 8, "sigma + e = 8");
  o.detail << pairs << " sums additive; chain30 sigma + e = " << se;
}

// 4. Split scan.
void splits(Outcome& o) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> depth(1, 3);
  int scanned = 0;
  for (const char* name : {"genus2_chain30", "genus2_hyp20"}) {
    const Fibration f = fixture(name);
    o.require(split_irreducibility_scan(f).empty(), std::string(name) + " splits");
    scanned += static_cast<int>(f.size()) - 1;
    for (int t = 0; t < 50; ++t) {
      const Fibration h = random_moves(f, rng, depth(rng));
      o.require(split_irreducibility_scan(h).empty(), std::string(name) + " variant splits");
      scanned += static_cast<int>(h.size()) - 1;
    }
  }
  const Fibration a = fixture("genus2_chain30");
  const auto two = split_irreducibility_scan(fibre_sum(a, a));
  o.require(two == std::vector<int>{30}, "two-copy concatenation detected at 30");
  o.detail << scanned << " splits empty over 102 words; concatenation split at {";
  for (std::size_t i = 0; i < two.size(); ++i) o.detail << (i ? "," : "") << two[i];
  o.detail << "}";
}

// 5. No positive-square sections.  Squares come from two sources: every
// region of the geodesic arrangement whose obstruction loop is trivial, and
// the algebraic base point (square -k for the boundary-twist power k).
void negative_sections(Outcome& o) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, kFixtures.size() - 1);
  std::uniform_int_distribution<int> parts(1, 2), moves(0, 4);
  const std::vector<std::string> glues{"", "t1", "T3", "t2 t4", "T5 t1"};
  std::uniform_int_distribution<std::size_t> glue(0, glues.size() - 1);
  int samples = 0, squares = 0, empties = 0, no_region = 0, worst = -1000;
  auto record = [&](const Fibration& f, int square) {
    ++squares;
    if (f.size() == 0) {
      o.require(square == 0, "empty factorization square 0");
    } else {
      o.require(square <= -1, "square <= -1");
      worst = std::max(worst, square);
    }
  };
  for (int t = 0; t < 200; ++t) {
    Fibration f = fixture(kFixtures[pick(rng)]);
    if (parts(rng) == 2) f = fibre_sum(f, fixture(kFixtures[pick(rng)]), parse_twist_word(glues[glue(rng)], 2));
    f = random_moves(f, rng, moves(rng));
    const Validation v = validate(f);
    o.require(v.trivial_closed, "random fibration valid");
    ++samples;
    if (f.size() == 0) ++empties;
    o.require(v.k_standard.has_value(), "boundary twist power");
    if (v.k_standard) record(f, -*v.k_standard);
    const SectionAnalysis s = enumerate_sections(f);
    for (const auto& r : s.reports) {
      o.require(r.arcs_agree, "second arc agrees");
      if (r.self_intersection) record(f, *r.self_intersection);
    }
    if (s.section_count() == 0) ++no_region;
  }
  o.detail << samples << " fibrations (" << empties << " empty), " << squares
           << " section squares: 0 only for empty factorizations, max otherwise " << worst << "; " << no_region
           << " fibrations with no section through a geodesic region";
}

// 6. Filling and invariant multicurves.
void filling(Outcome& o) {
  auto arr = [](std::initializer_list<const char*> ids) {
    std::vector<CurveSpec> cs;
    for (const char* id : ids) cs.push_back(CurveSpec{parse_curve_id(id, 2)});
    return arrangement(2, cs);
  };
  const Arrangement five = arr({"c1", "c2", "c3", "c4", "c5"}), four = arr({"c1", "c2", "c3", "c4"});
  o.require(five.V == 4 && five.E == 8 && five.region_count() == 2 && five.fills, "{c1..c5} = (4,8,2) fills");
  o.require(four.region_count() == 1 && four.fills, "{c1..c4} R = 1 fills");
  o.require(!arr({"c2", "c3", "c4"}).fills, "{c2,c3,c4} does not fill");
  o.require(!arr({"c1"}).fills, "{c1} does not fill");
  int searched = 0;
  for (const auto& name : kFixtures) {
    const Fibration f = fixture(name);
    if (f.size() == 0) continue; // no cycles: every curve is invariant
    o.require(!invariant_multicurve_search(f, 3), name + " invariant multicurve");
    ++searched;
  }
  o.detail << "(4,8,2) fills; R = 1 fills; two non-filling sets; no invariant multicurve at B = 3 on " << searched
           << " fixtures with cycles (trivial_g2 has none: every curve is invariant)";
}

// 7. Rotation number against boundary twist power.
void rotation(Outcome& o) {
  std::vector<std::pair<std::string, Fibration>> fs;
  for (const char* name : {"trivial_g2", "genus2_chain30", "genus2_hyp20"}) fs.emplace_back(name, fixture(name));
  fs.emplace_back("chain30 x4", fibre_sum_power(fixture("genus2_chain30"), 4));
  double worst = 0.0;
  for (const auto& [name, f] : fs) {
    const RotationResult r = rotation_number(f);
    o.require(validate(f).k_standard == r.k, name + " k");
    o.require(r.residual < 0.1, name + " residual");
    o.require(r.factors_monotone, name + " monotone factors");
    worst = std::max(worst, r.residual);
    o.detail << name << ": k = " << r.k << "; ";
  }
  // every twist lift moves all boundary points one way
  int maps = 0;
  for (const char* name : {"genus2_chain30", "genus2_hyp20"})
    for (const MappingClass& m : cycle_twists(fixture(name))) {
      const CircleMap c = boundary_circle_map(m, 150);
      o.require(c.monotone, "one-signed twist lift");
      ++maps;
    }
  o.detail << "max residual " << worst << "; " << maps << " twist lifts one-signed";
}

// 8. Section classes.
void section_classes(Outcome& o) {
  for (const auto& name : kFixtures) {
    const SectionAnalysis s = enumerate_sections(fixture(name));
    o.require(s.section_count() <= s.region_count(), name + " count <= R");
    for (const auto& r : s.reports) {
      o.require(r.arcs_agree, name + " second arc");
      if (r.has_section) o.require(surface_group(2).dehn_reduce(r.obstruction).empty(), name + " u trivial");
    }
    if (name == "trivial_g2")
      o.require(s.region_count() == 1 && s.section_count() == 1 && s.reports[0].self_intersection == 0,
                "trivial: one square-0 class");
    o.detail << name << " " << s.section_count() << "/" << s.region_count() << "; ";
  }
  o.detail << "(sections/regions), all arcs agree";
}

// 9. Teichmueller space.
void teichmueller(Outcome& o) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> len(0.3, 4.0), tw(-3.0, 3.0);
  std::uniform_int_distribution<int> mult(1, 3);
  const std::vector<std::string> markings{"", "t1", "T2", "t3 t4", "T5 t2"};
  std::uniform_int_distribution<std::size_t> mark(0, markings.size() - 1);
  double worst = 1e300;
  for (int path = 0; path < 20; ++path) {
    std::vector<CurveSpec> cs;
    const TwistWord w = parse_twist_word(markings[mark(rng)], 2);
    for (const char* id : {"c1", "c2", "c3", "c4", "c5"})
      for (int m = mult(rng); m > 0; --m) cs.push_back(CurveSpec{parse_curve_id(id, 2), w});
    const CurveMultiset v = make_multiset(2, cs);
    const FNCoords x{{len(rng), len(rng), len(rng)}, {tw(rng), tw(rng), tw(rng)}};
    std::vector<double> f;
    for (int k = -10; k <= 10; ++k) {
      FNCoords y = x;
      y.twists[path % 3] += 0.15 * k;
      f.push_back(total_length(y, v));
    }
    for (std::size_t k = 1; k + 1 < f.size(); ++k) worst = std::min(worst, f[k - 1] - 2 * f[k] + f[k + 1]);
  }
  o.require(worst >= -1e-6, "convexity");

  std::vector<CurveSpec> chain;
  for (const char* id : {"c1", "c2", "c3", "c4", "c5"}) chain.push_back(CurveSpec{parse_curve_id(id, 2)});
  const LengthReport r = minimize_length(make_multiset(2, chain));
  double spread = 0.0;
  for (double v : r.restart_values) spread = std::max(spread, std::abs(v - r.value));
  o.require(r.restart_values.size() == 5 && spread <= 1e-4, "5 restarts agree");
  o.require(r.gradient_norm < 1e-5, "gradient norm");

  bool monotone = true;
  for (const char* name : {"genus2_chain30", "genus2_hyp20"}) {
    const LengthSearch s = length_invariant(fixture(name), 4);
    for (std::size_t d = 1; d < s.best_by_depth.size(); ++d)
      monotone = monotone && s.best_by_depth[d] <= s.best_by_depth[d - 1];
  }
  o.require(monotone, "length invariant nonincreasing in depth");
  o.detail << "min second difference " << worst << " over 20 paths; l(c1..c5) = " << r.value << ", restart spread "
           << spread << ", |grad| " << r.gradient_norm << "; depth 0..4 nonincreasing";
}

// 10. Homological monodromy.
void homology(Outcome& o) {
  for (const auto& name : kFixtures) {
    const Fibration f = fixture(name);
    IntMatrix p = IntMatrix::Identity(2 * f.genus, 2 * f.genus);
    for (const auto& c : f.cycles) p = p * transvection(homology_class(f.genus, c));
    o.require(p == IntMatrix::Identity(2 * f.genus, 2 * f.genus), name + " transvection product");
  }
  const int b_chain = invariant_cohomology_rank(fixture("genus2_chain30"));
  const int b_triv = invariant_cohomology_rank(fixture("trivial_g2"));
  o.require(b_chain == 0, "b1(chain30) = 0");
  o.require(b_triv == 4, "b1(trivial) = 2g");
  o.detail << "transvection products = I on " << kFixtures.size() << " fixtures; b1(chain30) = " << b_chain
           << ", b1(trivial) = " << b_triv;
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"convention certification", conventions},
      {"section squares", section_squares},
      {"signature and Euler additivity", additivity},
      {"split irreducibility", splits},
      {"no positive-square sections", negative_sections},
      {"filling and invariant multicurves", filling},
      {"rotation numbers", rotation},
      {"section classes", section_classes},
      {"Teichmueller minimization", teichmueller},
      {"homological monodromy", homology},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " -- " << o.detail.str()
              << " [" << s << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
