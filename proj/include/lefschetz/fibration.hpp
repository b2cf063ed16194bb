#pragma once

#include "lefschetz/mapping_class.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lefschetz {

// A Lefschetz fibration over the sphere, given by its vanishing cycles in
// monodromy order.  The composite t_{c_1} o ... o t_{c_n} (rightmost
// applied first) must be trivial in the closed mapping class group;
// validity is reported, not enforced.
struct Fibration {
  int genus = 2;
  std::vector<CurveSpec> cycles;

  std::size_t size() const { return cycles.size(); }
  bool operator==(const Fibration&) const = default;
};

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// "c3" or "(t1 T2) c3".  Throws std::invalid_argument.
CurveSpec parse_curve_spec(std::string_view text, int genus);

// Line format: "genus g", then "cycle c3" or "cycle (t1 T2) c3" lines.
// Blank lines and '#' comments are ignored.
Fibration parse_fibration(std::string_view text);
Fibration load_fibration(const std::filesystem::path& path);
std::string print_fibration(const Fibration& f);

std::vector<MappingClass> cycle_twists(const Fibration& f);
MappingClass monodromy(const Fibration& f);

struct Validation {
  bool trivial_closed = false;
  Word witness;                   // monodromy is conjugation by this word in G
  std::optional<int> k_standard;  // boundary-twist power at the base region
};
Validation validate(const Fibration& f);

int euler_char(const Fibration& f);
// Throws std::invalid_argument for invalid fibrations.
int signature_meyer(const Fibration& f);
int invariant_cohomology_rank(const Fibration& f);
bool is_separating(int genus, const CurveSpec& c);

// f1 followed by the gluing-conjugated cycles of f2.
Fibration fibre_sum(const Fibration& f1, const Fibration& f2, const TwistWord& gluing = {});
Fibration fibre_sum_power(const Fibration& f, int copies);

enum class HurwitzDirection { Right, Left };
// Right at i (1-based): (c_i, c_{i+1}) -> (t_{c_i}(c_{i+1}), c_i); Left is
// its inverse (c_i, c_{i+1}) -> (c_{i+1}, t_{c_{i+1}}^{-1}(c_i)).
// Throws std::out_of_range unless 1 <= i < n.
Fibration hurwitz_move(const Fibration& f, int i, HurwitzDirection dir);
// Drops trailing conjugator letters whose curve is disjoint from the base
// curve; the isotopy class is unchanged.
CurveSpec simplify(const CurveSpec& c);

// Indices j (1 <= j < n) with both c_1..c_j and c_{j+1}..c_n trivial.
std::vector<int> split_irreducibility_scan(const Fibration& f);

} // namespace lefschetz
