#pragma once

// Numerical hyperbolic geometry of a closed surface group acting on the
// Poincare disc: realizations, Dirichlet domains, axes, lengths, lifts of
// closed geodesics, intersection numbers and curve arrangements.
//
// Generator matrices live in SL(2,R) (upper half-plane).  All disc-model
// work goes through the Cayley transform z = (w - i)/(w + i); polygons and
// chords are handled in the Klein model, where geodesics are straight.

#include "lefschetz/mapping_class.hpp"
#include "lefschetz/word.hpp"

#include <Eigen/Core>

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace lefschetz {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2d;
using CMat2 = Eigen::Matrix2cd;

struct BoundaryPoint {
  double angle = 0.0; // in [0, 2 pi)
};

struct DomainSide {
  Word element;           // the side lies on the bisector of c and element(c)
  CMat2 matrix;           // disc action of element
  Eigen::Vector2d normal; // Klein half-plane normal . k <= offset
  double offset = 0.0;
  int partner = -1;       // side paired with this one by element^{-1}
};

struct DirichletDomain {
  Complex center;                    // disc model
  std::vector<Eigen::Vector2d> vertices; // Klein model, counter-clockwise; side i = v_i -> v_{i+1}
  std::vector<DomainSide> sides;
  std::vector<double> cycle_angle_sums; // one per vertex cycle, each 2 pi
  double area = 0.0;                    // 4 pi (g - 1)

  bool contains(const Eigen::Vector2d& klein, double tol = 1e-12) const;
};

class FuchsianRealization {
public:
  // Throws std::invalid_argument unless the relator evaluates to +-I
  // (tolerance 1e-9), every generator is hyperbolic, and a Dirichlet
  // domain of area 4 pi (g - 1) is found.
  FuchsianRealization(int genus, std::vector<Mat2> generators, Complex center = Complex(0.0713, 0.0419));

  int genus() const { return genus_; }
  const std::vector<Mat2>& generators() const { return generators_; }
  const DirichletDomain& domain() const { return domain_; }

  Mat2 matrix(const Word& w) const;
  // Product rescaled after every factor; only its projective class is
  // meaningful, but it never overflows.
  Mat2 projective_matrix(const Word& w) const;
  CMat2 disc_matrix(const Word& w) const;
  double relator_defect() const;

  // Reduces a disc point into the domain: p = tile(p0) with p0 in D.
  Complex reduce(Complex p, Word* tile = nullptr) const;

private:
  int genus_;
  std::vector<Mat2> generators_;
  std::vector<CMat2> disc_generators_;
  DirichletDomain domain_;
};

// Regular 4g-gon realization with the standard side pairings.
FuchsianRealization realize(int genus);
// Cached realize(genus); shared, immutable.
const FuchsianRealization& standard_realization(int genus);

// Model conversions.
Eigen::Vector2d disc_to_klein(Complex z);
Complex klein_to_disc(const Eigen::Vector2d& k);
Complex mobius(const CMat2& m, Complex z);
double disc_distance(Complex z, Complex w);
CMat2 to_disc(const Mat2& m);
Mat2 to_half_plane(const CMat2& m);

std::pair<BoundaryPoint, BoundaryPoint> axis_endpoints(const FuchsianRealization& r, const Word& w);
std::pair<Complex, Complex> axis_endpoints_disc(const FuchsianRealization& r, const Word& w);
double geodesic_length(const FuchsianRealization& r, const Word& w);
// 2 arccosh(|tr|/2) evaluated from raw SL(2,R) generators with a rescaled
// product, so long words do not overflow.  Throws std::domain_error for
// non-hyperbolic elements.
double trace_length(const std::vector<Mat2>& generators, const Word& w);

// One lift of a closed geodesic that meets the fundamental domain.
struct Lift {
  int curve = 0;
  Word element;                  // deck transformation translating along this lift
  Eigen::Vector2d repelling, attracting; // endpoints (unit circle)
  double t_in = 0.0, t_out = 0.0; // chord = repelling + t (attracting - repelling)
  Eigen::Vector2d point(double t) const { return repelling + t * (attracting - repelling); }
};
// All lifts of the closed geodesic of w that cross the domain.
std::vector<Lift> lifts_through_domain(const FuchsianRealization& r, const Word& w, int curve = 0);

int geometric_intersection(const FuchsianRealization& r, const Word& a, const Word& b);
int geometric_intersection(int genus, const CurveSpec& a, const CurveSpec& b);

// Crossings of the geodesic segment p -> q (disc points) with the lifts of
// the given curves, in order along the segment.
struct Crossing {
  double distance = 0.0; // from p
  int curve = 0;
  Word element; // deck transformation of the crossed lift
  int sign = 0; // +1 if the lift crosses the segment from right to left
};
std::vector<Crossing> segment_crossings(const FuchsianRealization& r, const std::vector<Lift>& lifts, Complex p,
                                        Complex q);

struct Cell {
  std::vector<Eigen::Vector2d> polygon; // Klein, convex
  std::vector<int> edge_source;         // per edge: -1-k for domain side k, else lift index
  int region = -1;
  double area = 0.0; // hyperbolic
  Eigen::Vector2d centroid;
};

struct Region {
  int id = 0;
  Complex representative; // disc point in the domain
  int euler_characteristic = 0;
  int cell_count = 0;
  double area = 0.0; // hyperbolic
};

struct Arrangement {
  std::vector<Word> curves; // deduplicated support
  std::vector<Lift> lifts;
  std::vector<Cell> cells;
  std::vector<Region> regions;
  Eigen::MatrixXi intersections; // pairwise geometric intersection numbers
  int V = 0, E = 0;
  bool fills = false;
  double min_crossing_angle = 0.0; // transversality diagnostic (radians)

  int euler_bound(int genus) const { return (2 - 2 * genus) - V + E; }
  int region_count() const { return static_cast<int>(regions.size()); }
  // Region containing a disc point (reduced into the domain first).
  int region_of(const FuchsianRealization& r, Complex p) const;
};

// Throws std::runtime_error when crossings are too tangential (< 1e-6).
Arrangement arrangement(const FuchsianRealization& r, const std::vector<Word>& curves);
Arrangement arrangement(int genus, const std::vector<CurveSpec>& curves);

// Dedupes curve words by unoriented conjugacy class in the surface group.
std::vector<Word> distinct_curves(int genus, const std::vector<Word>& curves);

} // namespace lefschetz
