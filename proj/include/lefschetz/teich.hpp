#pragma once

// Fenchel-Nielsen coordinates on the Teichmueller space of the genus-2
// surface, total geodesic length of a curve multiset, its minimisation, and
// the orbit searches over Hurwitz-equivalent factorizations.
//
// Pants curves are c1, c3, c5 (the words a2^-1, a1 a2, a1^-1).  A twist
// parameter theta translates the gluing along its pants curve by
// theta * length / (2 pi), so theta = 2 pi is one full Dehn twist.

#include "lefschetz/fibration.hpp"
#include "lefschetz/hyperbolic.hpp"

#include <cstdint>
#include <vector>

namespace lefschetz {

struct FNCoords {
  std::vector<double> lengths; // per pants curve, in the window [1e-4, 20]
  std::vector<double> twists;  // radians-equivalent
  int genus() const { return static_cast<int>(lengths.size()) / 3 + 1; }
};

inline constexpr double kMinPantsLength = 1e-4;
inline constexpr double kMaxPantsLength = 20.0;

std::vector<CurveId> pants_curves(int genus);

// Generators a1, b1, a2, b2 of the holonomy.  Throws std::invalid_argument
// outside the length window or for genus other than 2.
std::vector<Mat2> holonomy_generators(const FNCoords& x);
// Full realization (with Dirichlet domain checks).
FuchsianRealization holonomy(const FNCoords& x);

struct WeightedCurve {
  CurveSpec curve;
  Word word;
  int multiplicity = 1;
};
using CurveMultiset = std::vector<WeightedCurve>;

// Groups equal isotopy classes, keeping first-occurrence order.
CurveMultiset make_multiset(int genus, const std::vector<CurveSpec>& curves);

double total_length(const FNCoords& x, const CurveMultiset& v);

struct MinimizeOptions {
  int restarts = 5;
  std::uint64_t seed = 1;
  double tolerance = 1e-5;   // on the gradient norm
  int max_iterations = 400;  // Newton iterations after coordinate descent
  const FNCoords* start = nullptr; // replaces the first random start
};

struct LengthReport {
  double value = 0.0;
  FNCoords minimizer;
  double gradient_norm = 0.0;
  CurveMultiset multiset;
  std::vector<double> restart_values;
};

// Central-difference gradient (step 1e-4) in (lengths, twists) order.
Eigen::VectorXd length_gradient(const FNCoords& x, const CurveMultiset& v, double step = 1e-4);

// Throws std::invalid_argument if the support does not fill, and
// std::runtime_error if no restart reaches the gradient tolerance.
LengthReport minimize_length(const CurveMultiset& v, const MinimizeOptions& options = {});

struct OrbitOptions {
  int max_nodes = 120;       // factorizations evaluated, in breadth-first order
  int threads = 1;
  std::uint64_t seed = 1;
};

struct LengthSearch {
  double best = 0.0;
  int orbit_visited = 0;
  std::vector<double> best_by_depth; // running minimum after each depth
  FNCoords minimizer;
  Fibration argmin;
};
// Minimum of l(V) over the Hurwitz orbit explored to `depth` (an upper
// bound for the infimum over the whole orbit).
LengthSearch length_invariant(const Fibration& f, int depth, const OrbitOptions& options = {});

struct IntersectionSearch {
  int best = 0;
  int orbit_visited = 0;
  std::vector<int> best_by_depth;
  Fibration argmin;
};
// Sum of i(c_i, c_j) over pairs of positions i < j.
int total_intersections(const Fibration& f);
IntersectionSearch min_total_intersections(const Fibration& f, int depth, const OrbitOptions& options = {});

} // namespace lefschetz
