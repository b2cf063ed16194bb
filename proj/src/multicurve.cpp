#include "lefschetz/multicurve.hpp"

#include <set>

namespace lefschetz {

namespace {

// Oriented conjugacy: a twist preserves the orientation of a curve it fixes.
bool fixes(const MappingClass& twist, const Word& curve) {
  const SurfaceGroup& G = surface_group(twist.genus());
  return G.conjugacy_key(twist.apply(curve)) == G.conjugacy_key(curve);
}

IntVector homology_of(int genus, const Word& w) {
  auto v = abelianize(w, genus);
  IntVector h(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) h(static_cast<Eigen::Index>(i)) = v[i];
  return h;
}

} // namespace

bool curves_disjoint(int genus, const CurveSpec& a, const CurveSpec& b) {
  const IntMatrix J = intersection_form(genus);
  if ((homology_class(genus, a).transpose() * J * homology_class(genus, b))(0, 0) != 0) return false;
  return fixes(twist_about(genus, a), curve_word(genus, b));
}

CurveSpec twist_image(const CurveSpec& a, const CurveSpec& b, int sign) {
  TwistWord t = concat(concat(a.conjugator, TwistWord{{a.base, sign}}), inverse(a.conjugator));
  return simplify({b.base, concat(t, b.conjugator)});
}

std::optional<std::vector<CurveSpec>> invariant_multicurve_search(int genus, const std::vector<CurveSpec>& system,
                                                                  int bound) {
  const SurfaceGroup& G = surface_group(genus);
  const IntMatrix J = intersection_form(genus);
  struct SystemCurve {
    MappingClass twist;
    IntVector dual; // J h, so <x, c> = x . dual
  };
  std::vector<SystemCurve> sys;
  std::set<std::vector<Letter>> excluded;
  for (const auto& c : system) {
    if (!excluded.insert(G.curve_key(curve_word(genus, c))).second) continue;
    sys.push_back({twist_about(genus, c), J * homology_class(genus, c)});
  }

  const auto bases = standard_curves(genus);
  std::vector<TwistLetter> letters;
  for (const auto& id : bases)
    for (int s : {1, -1}) letters.push_back({id, s});

  struct Node {
    TwistWord word;
    MappingClass cls;
  };
  std::vector<Node> level{{{}, MappingClass::identity(genus)}};
  std::set<std::vector<Letter>> tried;
  for (int len = 0; len <= bound; ++len) {
    if (len > 0) {
      std::vector<Node> next;
      for (const auto& n : level)
        for (const auto& l : letters) {
          if (!n.word.empty() && n.word.back().curve == l.curve && n.word.back().sign == -l.sign) continue;
          TwistWord w = n.word;
          w.push_back(l);
          next.push_back({w, n.cls * standard_twist(genus, l.curve, l.sign)});
        }
      level = std::move(next);
    }
    for (const auto& n : level)
      for (const auto& id : bases) {
        const Word word = n.cls.apply(standard_curve_word(genus, id));
        const IntVector h = homology_of(genus, word);
        bool candidate = true;
        for (const auto& s : sys)
          if (h.dot(s.dual) != 0) {
            candidate = false;
            break;
          }
        if (!candidate) continue;
        auto key = G.curve_key(word);
        if (excluded.count(key) || !tried.insert(key).second) continue;
        for (const auto& s : sys)
          if (!fixes(s.twist, word)) {
            candidate = false;
            break;
          }
        if (candidate) return std::vector<CurveSpec>{simplify({id, n.word})};
      }
  }
  return std::nullopt;
}

std::optional<std::vector<CurveSpec>> invariant_multicurve_search(const Fibration& f, int bound) {
  return invariant_multicurve_search(f.genus, f.cycles, bound);
}

} // namespace lefschetz
