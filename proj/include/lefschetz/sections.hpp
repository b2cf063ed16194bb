#pragma once

// Sections of a Lefschetz fibration through points of the regular fibre.
//
// Place the vanishing cycles as closed geodesics.  A point q in a
// complementary region D is fixed by every twist, so each twist has a lift
// pinned at a preimage of q; their composite is the point-push of a loop
// u_D.  A section through q exists iff u_D is trivial, and its
// self-intersection is minus the rotation number of the composite lift.

#include "lefschetz/fibration.hpp"
#include "lefschetz/hyperbolic.hpp"
#include "lefschetz/shear.hpp"

#include <optional>
#include <vector>

namespace lefschetz {

struct SectionReport {
  int region = 0;
  Complex point;                      // disc point of the region used for the analysis
  Word obstruction;                   // u_D
  bool has_section = false;           // u_D trivial
  std::optional<int> self_intersection; // -k_D, only with a section
  double residual = 0.0;              // rotation-number residual
  bool arcs_agree = false;            // second transport arc gave the same u_D
  bool base = false;                  // the region of the base point
};

struct SectionAnalysis {
  Arrangement arrangement;
  int base_region = 0;
  // The geometric pinned twists at the base point equal the algebraic
  // twists (always true for standard curves; checked for each cycle).
  bool base_consistent = false;
  std::vector<SectionReport> reports; // one per region

  int section_count() const;
  int region_count() const { return arrangement.region_count(); }
  // ceil(R / 2): a sharper bound on section classes that is sometimes
  // claimed; reported alongside R, never relied on.
  int half_bound() const { return (region_count() + 1) / 2; }
};

// Throws std::invalid_argument for an invalid fibration.
SectionAnalysis enumerate_sections(const Fibration& f, int samples = 200);

} // namespace lefschetz
