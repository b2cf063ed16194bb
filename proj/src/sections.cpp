#include "lefschetz/sections.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lefschetz {

int SectionAnalysis::section_count() const {
  return static_cast<int>(std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.has_section; }));
}

namespace {

// A point off the geodesic p -> q, near its midpoint.
Complex detour_point(Complex p, Complex q) {
  // Move p to the origin, take the hyperbolic midpoint, push it sideways.
  CMat2 a, ai;
  a << 1.0, -p, -std::conj(p), 1.0;
  ai = a.inverse();
  Complex q0 = mobius(a, q);
  Complex m0;
  if (std::abs(q0) < 1e-12) {
    m0 = Complex(0.21, 0.13);
  } else {
    double d = 2.0 * std::atanh(std::abs(q0));
    Complex dir = q0 / std::abs(q0);
    m0 = std::tanh(d / 4.0) * dir + Complex(0.0, 0.17) * dir * (1.0 - std::norm(std::tanh(d / 4.0)));
  }
  return mobius(ai, m0);
}

GroupAutomorphism fold(int genus, const std::vector<GroupAutomorphism>& factors) {
  GroupAutomorphism acc = GroupAutomorphism::identity(genus);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) acc = compose(*it, acc);
  return acc;
}

} // namespace

SectionAnalysis enumerate_sections(const Fibration& f, int samples) {
  if (!validate(f).trivial_closed) throw std::invalid_argument("invalid fibration: monodromy is not trivial");
  const int g = f.genus;
  const SurfaceGroup& G = surface_group(g);
  const FuchsianRealization& r = standard_realization(g);
  const BasePoint& bp = base_point(g);

  std::vector<Word> words;
  for (const auto& c : f.cycles) words.push_back(curve_word(g, c));
  SectionAnalysis out;
  out.arrangement = arrangement(r, words);
  const Arrangement& arr = out.arrangement;

  // Cycle -> index of its curve in the deduplicated support.
  std::vector<int> support;
  for (const auto& w : words) {
    auto key = G.curve_key(w);
    for (std::size_t d = 0; d < arr.curves.size(); ++d)
      if (G.curve_key(arr.curves[d]) == key) {
        support.push_back(static_cast<int>(d));
        break;
      }
  }
  const std::size_t nd = arr.curves.size();
  std::vector<std::vector<Lift>> lifts(nd);
  for (const auto& l : arr.lifts) lifts[l.curve].push_back(l);

  // Pinned twists at the base point.  A cycle's twist is a positive twist
  // about its curve, whichever orientation the word has.
  std::vector<GroupAutomorphism> base_twists;
  for (std::size_t d = 0; d < nd; ++d) base_twists.push_back(pinned_twist(r, lifts[d], bp.point, 1, bp.orientation));
  out.base_consistent = true;
  for (std::size_t i = 0; i < f.cycles.size(); ++i)
    if (!base_twists[support[i]].equals(GroupAutomorphism::from(twist_about(g, f.cycles[i]))))
      out.base_consistent = false;
  out.base_region = arr.region_of(r, bp.point);

  auto transported = [&](Complex p, Complex q) {
    std::vector<Word> w;
    for (std::size_t d = 0; d < nd; ++d) w.push_back(twist_displacement(r, lifts[d], p, q, 1, bp.orientation));
    return w;
  };
  auto obstruction = [&](const std::vector<Word>& shift, std::vector<GroupAutomorphism>* factors) {
    std::vector<GroupAutomorphism> fs;
    for (int d : support) fs.push_back(repin(base_twists[d], shift[d]));
    InnerTest t = inner_witness(g, fold(g, fs).images());
    if (!t.trivial) throw std::runtime_error("sections: pinned composite is not a point-push");
    if (factors) *factors = std::move(fs);
    return *t.witness;
  };

  for (const auto& region : arr.regions) {
    SectionReport rep;
    rep.region = region.id;
    rep.base = region.id == out.base_region;
    rep.point = rep.base ? bp.point : region.representative;

    std::vector<Word> shift = transported(bp.point, rep.point);
    std::vector<GroupAutomorphism> factors;
    rep.obstruction = obstruction(shift, &factors);
    rep.has_section = rep.obstruction.empty();

    // Second arc: through a point off the straight one.
    Complex m = detour_point(bp.point, rep.point);
    std::vector<Word> first = transported(bp.point, m);
    std::vector<Word> second(nd);
    for (std::size_t d = 0; d < nd; ++d)
      second[d] = G.dehn_reduce(first[d] * twist_displacement(r, lifts[d], m, rep.point, 1, bp.orientation));
    Word other = obstruction(second, nullptr);
    rep.arcs_agree = G.equal(other, rep.obstruction);

    if (rep.has_section) {
      RotationResult rot = rotation_number(r, factors, samples);
      rep.self_intersection = -rot.k;
      rep.residual = rot.residual;
    }
    out.reports.push_back(std::move(rep));
  }
  return out;
}

} // namespace lefschetz
