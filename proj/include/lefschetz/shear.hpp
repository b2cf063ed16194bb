#pragma once

// Boundary (circle at infinity) actions of pinned lifts of mapping classes,
// and the rotation number of a composite of pinned twist lifts.
//
// A homeomorphism fixing a point p of the surface has a unique lift fixing a
// chosen preimage of p.  That lift acts on deck transformations by an
// automorphism phi of G, and on the circle at infinity by
//   x+(u)  ->  x+(phi(u)),
// where x+(u) is the attracting endpoint of u.  Sampling this over many u
// gives the circle map; tracking lifted angles through a factorization of
// the identity gives its total clockwise rotation, an integer.

#include "lefschetz/fibration.hpp"
#include "lefschetz/hyperbolic.hpp"
#include "lefschetz/mapping_class.hpp"

#include <optional>
#include <vector>

namespace lefschetz {

// An endomorphism of the closed surface group, by Dehn-reduced generator
// images.
class GroupAutomorphism {
public:
  GroupAutomorphism(int genus, std::vector<Word> images);
  static GroupAutomorphism identity(int genus);
  static GroupAutomorphism from(const MappingClass& m);
  // x -> u x u^{-1}
  static GroupAutomorphism inner(int genus, const Word& u);

  int genus() const { return genus_; }
  const std::vector<Word>& images() const { return images_; }
  Word apply(const Word& w) const;
  // Equality in G of every generator image.
  bool equals(const GroupAutomorphism& other) const;

private:
  int genus_;
  std::vector<Word> images_;
};

// phi o psi
GroupAutomorphism compose(const GroupAutomorphism& phi, const GroupAutomorphism& psi);
// x -> w^{-1} phi(x) w: the lift of the same homeomorphism pinned at a point
// it moves by w.
GroupAutomorphism repin(const GroupAutomorphism& phi, const Word& w);

// Geometric twists.  For the lift T of t_c^sign that fixes p, T(q) = W q
// with W the ordered product of the crossed lifts' elements (signed by the
// crossing direction).  `orientation` fixes the handedness convention and is
// calibrated once per genus against the algebraic twists.
Word twist_displacement(const FuchsianRealization& r, const std::vector<Lift>& lifts, Complex p, Complex q, int sign,
                        int orientation);
GroupAutomorphism pinned_twist(const FuchsianRealization& r, const std::vector<Lift>& lifts, Complex p, int sign,
                               int orientation);

// A disc point whose pinned geometric twists reproduce every standard
// algebraic twist, i.e. a lift of the base region.  Found by search over
// cells of the standard-curve arrangement and their short translates;
// throws std::runtime_error if none is found.
struct BasePoint {
  Complex point;
  int orientation = 1;
};
const BasePoint& base_point(int genus);

struct CircleSample {
  double angle_in = 0.0;
  double angle_out = 0.0;
  double displacement = 0.0; // clockwise, in [0, 2 pi)
};
struct CircleMap {
  std::vector<CircleSample> samples; // sorted by angle_in
  bool monotone = false;             // theta - displacement nondecreasing, cyclically
  int fixed_points = 0;              // distinct sample angles with zero displacement
  double max_gap = 0.0;              // largest gap between sample angles
};

// Cyclically reduced words whose attracting endpoints are pairwise distinct,
// up to the shortest length giving at least `count` samples and gaps below
// 2 pi / sqrt(count).
std::vector<Word> circle_sample_words(const FuchsianRealization& r, int count);

CircleMap boundary_circle_map(const FuchsianRealization& r, const GroupAutomorphism& phi, int samples = 200);
// Pinned at the base region: the algebraic automorphism of a bounded-surface
// mapping class.
CircleMap boundary_circle_map(const MappingClass& m, int samples = 200);

struct RotationResult {
  int k = 0;
  double mean = 0.0;     // mean total clockwise rotation / 2 pi over samples
  double residual = 0.0; // max deviation of a sample from k
  int samples = 0;
  bool factors_monotone = true; // every factor's sampled map is monotone
};

// factors[0] o factors[1] o ...; each factor must be a pinned lift of a
// twist (clockwise displacement < 2 pi).  Throws std::runtime_error when the
// residual is >= 0.1.
RotationResult rotation_number(const FuchsianRealization& r, const std::vector<GroupAutomorphism>& factors,
                               int samples = 200);
// At the base region, using the algebraic twists.
RotationResult rotation_number(const Fibration& f, int samples = 200);

} // namespace lefschetz
