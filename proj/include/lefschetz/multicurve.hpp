#pragma once

#include "lefschetz/fibration.hpp"

#include <optional>
#include <vector>

namespace lefschetz {

// Exact disjointness of two simple closed curves: i(a, b) = 0 iff the twist
// about a fixes the free homotopy class of b.
bool curves_disjoint(int genus, const CurveSpec& a, const CurveSpec& b);

// Image of a curve under the twist about another: t_a(b) as a CurveSpec.
CurveSpec twist_image(const CurveSpec& a, const CurveSpec& b, int sign = 1);

// Searches the curves w(c) with |w| <= bound (twist letters) for a finite
// set of pairwise disjoint curves, not in the system, that every twist about
// a system curve permutes up to isotopy.  Since i(t_c(x), x) = i(c, x)^2, a
// twist that moves a component makes it cross its own image, so such a set
// consists of curves disjoint from the whole system; the search returns the
// first one found (by conjugator length, then base curve), or nothing.
std::optional<std::vector<CurveSpec>> invariant_multicurve_search(int genus, const std::vector<CurveSpec>& system,
                                                                  int bound);
std::optional<std::vector<CurveSpec>> invariant_multicurve_search(const Fibration& f, int bound);

} // namespace lefschetz
