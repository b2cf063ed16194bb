#include "lefschetz/fibration.hpp"

#include <Eigen/Dense>

#include <fstream>
#include <sstream>

namespace lefschetz {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

} // namespace

CurveSpec parse_curve_spec(std::string_view text, int genus) {
  std::string rest = trim(text);
  CurveSpec c;
  std::string base = rest;
  if (!rest.empty() && rest.front() == '(') {
    auto close = rest.find(')');
    if (close == std::string::npos) throw std::invalid_argument("unbalanced parenthesis");
    c.conjugator = parse_twist_word(rest.substr(1, close - 1), genus);
    base = trim(rest.substr(close + 1));
  }
  if (base.empty() || base.find_first_of(" \t") != std::string::npos)
    throw std::invalid_argument("expected a single curve id");
  c.base = parse_curve_id(base, genus);
  return c;
}

Fibration parse_fibration(std::string_view text) {
  Fibration f;
  bool have_genus = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::string rest = trim(line.substr(key.size()));
    if (key == "genus") {
      if (have_genus) throw ParseError(line_no, "duplicate genus line");
      int g = 0;
      std::istringstream gs(rest);
      if (!(gs >> g) || !gs.eof()) throw ParseError(line_no, "expected an integer genus");
      if (g < 2) throw ParseError(line_no, "genus must be at least 2");
      f.genus = g;
      have_genus = true;
    } else if (key == "cycle") {
      if (!have_genus) throw ParseError(line_no, "cycle before genus line");
      try {
        f.cycles.push_back(parse_curve_spec(rest, f.genus));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    } else {
      throw ParseError(line_no, "unknown keyword '" + key + "'");
    }
  }
  if (!have_genus) throw ParseError(line_no, "missing genus line");
  return f;
}

Fibration load_fibration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fibration(buf.str());
}

std::string print_fibration(const Fibration& f) {
  std::string out = "genus " + std::to_string(f.genus) + "\n";
  for (const auto& c : f.cycles) out += "cycle " + format_curve_spec(c) + "\n";
  return out;
}

std::vector<MappingClass> cycle_twists(const Fibration& f) {
  std::vector<MappingClass> out;
  out.reserve(f.cycles.size());
  for (const auto& c : f.cycles) out.push_back(twist_about(f.genus, c));
  return out;
}

MappingClass monodromy(const Fibration& f) {
  MappingClass m = MappingClass::identity(f.genus);
  for (const auto& t : cycle_twists(f)) m = m * t;
  return m;
}

Validation validate(const Fibration& f) {
  MappingClass m = monodromy(f);
  Validation v;
  auto inner = is_trivial_closed(m);
  v.trivial_closed = inner.trivial;
  if (inner.witness) v.witness = *inner.witness;
  if (v.trivial_closed) v.k_standard = boundary_twist_power(m, static_cast<int>(f.size()));
  return v;
}

int euler_char(const Fibration& f) { return 4 - 4 * f.genus + static_cast<int>(f.size()); }

bool is_separating(int genus, const CurveSpec& c) { return homology_class(genus, c).isZero(); }

int signature_meyer(const Fibration& f) {
  if (!validate(f).trivial_closed) throw std::invalid_argument("signature: fibration is not valid");
  if (f.cycles.empty()) return 0;
  std::vector<IntMatrix> mats;
  int separating = 0;
  for (const auto& c : f.cycles) {
    IntVector h = homology_class(f.genus, c);
    if (h.isZero()) ++separating;
    mats.push_back(transvection(h));
  }
  IntMatrix partial = mats.front();
  int tau = 0;
  for (std::size_t j = 1; j < mats.size(); ++j) {
    tau += meyer_cocycle(partial, mats[j]);
    partial = partial * mats[j];
  }
  return -tau - separating;
}

int invariant_cohomology_rank(const Fibration& f) {
  const int n = 2 * f.genus;
  if (f.cycles.empty()) return n;
  Eigen::MatrixXd stacked(n * static_cast<Eigen::Index>(f.size()), n);
  Eigen::Index row = 0;
  for (const auto& c : f.cycles) {
    IntMatrix a = transvection(homology_class(f.genus, c)) - IntMatrix::Identity(n, n);
    stacked.middleRows(row, n) = a.cast<double>();
    row += n;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(stacked);
  return n - static_cast<int>(lu.rank());
}

Fibration fibre_sum(const Fibration& f1, const Fibration& f2, const TwistWord& gluing) {
  if (f1.genus != f2.genus) throw std::invalid_argument("fibre sum: genus mismatch");
  Fibration out = f1;
  for (const auto& c : f2.cycles) out.cycles.push_back(simplify({c.base, concat(gluing, c.conjugator)}));
  return out;
}

Fibration fibre_sum_power(const Fibration& f, int copies) {
  Fibration out{f.genus, {}};
  for (int i = 0; i < copies; ++i) out = fibre_sum(out, f);
  return out;
}

CurveSpec simplify(const CurveSpec& c) {
  CurveSpec out = c;
  while (!out.conjugator.empty() && standard_intersection(out.conjugator.back().curve, out.base) == 0)
    out.conjugator.pop_back();
  return out;
}

Fibration hurwitz_move(const Fibration& f, int i, HurwitzDirection dir) {
  const int n = static_cast<int>(f.size());
  if (i < 1 || i >= n) throw std::out_of_range("hurwitz move: index out of range");
  Fibration out = f;
  const CurveSpec& x = f.cycles[i - 1];
  const CurveSpec& y = f.cycles[i];
  if (dir == HurwitzDirection::Right) {
    // t_x(y) = (w_x t_{b_x} w_x^{-1} w_y)(b_y)
    TwistWord w = concat(concat(concat(x.conjugator, {{x.base, 1}}), inverse(x.conjugator)), y.conjugator);
    out.cycles[i - 1] = simplify({y.base, w});
    out.cycles[i] = x;
  } else {
    TwistWord w = concat(concat(concat(y.conjugator, {{y.base, -1}}), inverse(y.conjugator)), x.conjugator);
    out.cycles[i - 1] = y;
    out.cycles[i] = simplify({x.base, w});
  }
  return out;
}

std::vector<int> split_irreducibility_scan(const Fibration& f) {
  std::vector<int> out;
  const int n = static_cast<int>(f.size());
  if (n < 2) return out;
  auto twists = cycle_twists(f);
  MappingClass total = MappingClass::identity(f.genus);
  for (const auto& t : twists) total = total * t;
  const IntMatrix id = IntMatrix::Identity(2 * f.genus, 2 * f.genus);
  MappingClass prefix = MappingClass::identity(f.genus);
  for (int j = 1; j < n; ++j) {
    prefix = prefix * twists[j - 1];
    if (homology_action(prefix) != id) continue;
    if (!is_trivial_closed(prefix).trivial) continue;
    if (is_trivial_closed(prefix.inverse() * total).trivial) out.push_back(j);
  }
  return out;
}

} // namespace lefschetz
