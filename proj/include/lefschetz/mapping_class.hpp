#pragma once

// The mapping class group of the genus-g surface with one boundary circle,
// realised as automorphisms of F = pi_1 fixing delta.  Provides the standard
// chain and separating twists, conjugated curves, the symplectic
// representation and the two closed-surface tests used for fibrations.

#include "lefschetz/automorphism.hpp"
#include "lefschetz/word.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lefschetz {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

// c_1..c_{2g+1} (chain) or s_1..s_{floor(g/2)} (separating).
struct CurveId {
  enum class Kind { Chain, Separating };
  Kind kind = Kind::Chain;
  int index = 1;

  std::string name() const;
  auto operator<=>(const CurveId&) const = default;
};

// Accepts "c3" / "s1"; throws std::invalid_argument("unknown curve id ...").
CurveId parse_curve_id(std::string_view text, int genus);
std::vector<CurveId> standard_curves(int genus);

struct TwistLetter {
  CurveId curve;
  int sign = 1;
  auto operator<=>(const TwistLetter&) const = default;
};
using TwistWord = std::vector<TwistLetter>;

// "t1 t2 T3 s1": t_i / T_i positive / negative twist about c_i, s_j / S_j
// about the separating curve s_j.  "e" or empty is the identity.
TwistWord parse_twist_word(std::string_view text, int genus);
std::string format_twist_word(const TwistWord& w);
TwistWord inverse(const TwistWord& w);
// Concatenation with cancellation of adjacent inverse pairs.
TwistWord concat(const TwistWord& u, const TwistWord& v);

// A vanishing cycle: the curve w(c_base).
struct CurveSpec {
  CurveId base;
  TwistWord conjugator;
  auto operator<=>(const CurveSpec&) const = default;
};
std::string format_curve_spec(const CurveSpec& c);

class MappingClass {
public:
  // Throws std::invalid_argument if aut does not fix delta.
  MappingClass(int genus, FreeAutomorphism aut, TwistWord provenance = {});

  static MappingClass identity(int genus);
  // Conjugation by delta^k, the k-th power of the boundary twist.
  static MappingClass boundary_twist(int genus, int k);

  int genus() const { return genus_; }
  const FreeAutomorphism& aut() const { return aut_; }
  const TwistWord& provenance() const { return provenance_; }

  Word apply(const Word& w) const { return aut_.apply(w); }
  MappingClass inverse() const;
  // (*this) o other: other is applied first.
  MappingClass operator*(const MappingClass& other) const;
  bool operator==(const MappingClass& other) const { return aut_ == other.aut_; }

private:
  int genus_;
  FreeAutomorphism aut_;
  TwistWord provenance_;
};

MappingClass standard_twist(int genus, CurveId curve, int sign = 1);
// Composite of a twist word; the leftmost letter is applied last.
MappingClass twist_word_class(int genus, const TwistWord& w);
// t_{w(c)}^{sign} = w t_c^{sign} w^{-1}
MappingClass twist_about(int genus, const CurveSpec& c, int sign = 1);

// The based word of a standard curve (cyclically reduced) and of w(c) in F.
const Word& standard_curve_word(int genus, CurveId curve);
Word curve_word(int genus, const CurveSpec& c);

const SurfaceGroup& surface_group(int genus);

// Symplectic representation in the basis [a_1],[b_1],...,[a_g],[b_g].
IntMatrix intersection_form(int genus);
IntMatrix homology_action(const MappingClass& m);
IntVector homology_class(int genus, const CurveSpec& c);
// x -> x + sign <x,c> c with <x,y> = x^T J y.
IntMatrix transvection(const IntVector& c, int sign = 1);
bool is_symplectic(const IntMatrix& m);

// k with ms[0] o ms[1] o ... = conjugation by delta^k, searched over
// |k| <= ms.size().
std::optional<int> boundary_twist_power(const std::vector<MappingClass>& ms);
std::optional<int> boundary_twist_power(const MappingClass& composite, int bound);

struct InnerTest {
  bool trivial = false;
  std::optional<Word> witness; // m(x) = u x u^{-1} in the closed surface group
};
InnerTest is_trivial_closed(const MappingClass& m);
// The same test for an endomorphism of G given by its generator images.
InnerTest inner_witness(int genus, const std::vector<Word>& images);

// Geometric intersection numbers among the standard curves, from the chain
// picture: adjacent chain curves meet once, s_j meets c_{2j+1} twice, all
// other pairs are disjoint.
int standard_intersection(CurveId a, CurveId b);

// Meyer's signature cocycle on Sp(2g, Z).
int meyer_cocycle(const IntMatrix& a, const IntMatrix& b);

} // namespace lefschetz
