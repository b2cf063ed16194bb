#include "lefschetz/mapping_class.hpp"

#include "chain_model.hpp"

#include <Eigen/Dense>

#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace lefschetz {

namespace {

struct StandardData {
  detail::ChainModel model;
  SurfaceGroup group;
  explicit StandardData(int g) : model(detail::build_chain_model(g)), group(g) {}
};

const StandardData& standard_data(int genus) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<StandardData>> cache;
  if (genus < 2) throw std::invalid_argument("genus must be at least 2");
  std::lock_guard lock(mutex);
  auto& slot = cache[genus];
  if (!slot) slot = std::make_unique<StandardData>(genus);
  return *slot;
}

void check_curve(int genus, CurveId c) {
  int max = c.kind == CurveId::Kind::Chain ? 2 * genus + 1 : genus / 2;
  if (c.index < 1 || c.index > max) throw std::invalid_argument("unknown curve id " + c.name());
}

const FreeAutomorphism& positive_twist(int genus, CurveId c) {
  check_curve(genus, c);
  const auto& m = standard_data(genus).model;
  return c.kind == CurveId::Kind::Chain ? m.chain_twists[c.index - 1] : m.separating_twists[c.index - 1];
}

IntVector to_vector(const std::vector<int>& v) {
  IntVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

} // namespace

std::string CurveId::name() const { return (kind == Kind::Chain ? "c" : "s") + std::to_string(index); }

CurveId parse_curve_id(std::string_view text, int genus) {
  CurveId id;
  if (text.size() < 2 || (text[0] != 'c' && text[0] != 's'))
    throw std::invalid_argument("unknown curve id '" + std::string(text) + "'");
  id.kind = text[0] == 'c' ? CurveId::Kind::Chain : CurveId::Kind::Separating;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), id.index);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("unknown curve id '" + std::string(text) + "'");
  int max = id.kind == CurveId::Kind::Chain ? 2 * genus + 1 : genus / 2;
  if (id.index < 1 || id.index > max) throw std::invalid_argument("unknown curve id '" + std::string(text) + "'");
  return id;
}

std::vector<CurveId> standard_curves(int genus) {
  std::vector<CurveId> out;
  for (int i = 1; i <= 2 * genus + 1; ++i) out.push_back({CurveId::Kind::Chain, i});
  for (int j = 1; j <= genus / 2; ++j) out.push_back({CurveId::Kind::Separating, j});
  return out;
}

TwistWord parse_twist_word(std::string_view text, int genus) {
  TwistWord out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    char head = tok[0];
    int sign = (head == 't' || head == 's') ? 1 : (head == 'T' || head == 'S') ? -1 : 0;
    if (!sign) throw std::invalid_argument("bad twist letter '" + tok + "'");
    std::string id = tok;
    id[0] = (head == 't' || head == 'T') ? 'c' : 's';
    out.push_back({parse_curve_id(id, genus), sign});
  }
  return out;
}

std::string format_twist_word(const TwistWord& w) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    char head = l.curve.kind == CurveId::Kind::Chain ? 't' : 's';
    if (l.sign < 0) head = static_cast<char>(head - 'a' + 'A');
    out += head + std::to_string(l.curve.index);
  }
  return out;
}

TwistWord inverse(const TwistWord& w) {
  TwistWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.sign = -l.sign;
  return out;
}

TwistWord concat(const TwistWord& u, const TwistWord& v) {
  TwistWord out = u;
  for (const auto& l : v) {
    if (!out.empty() && out.back().curve == l.curve && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

std::string format_curve_spec(const CurveSpec& c) {
  if (c.conjugator.empty()) return c.base.name();
  return "(" + format_twist_word(c.conjugator) + ") " + c.base.name();
}

MappingClass::MappingClass(int genus, FreeAutomorphism aut, TwistWord provenance)
    : genus_(genus), aut_(std::move(aut)), provenance_(std::move(provenance)) {
  const Word& d = surface_group(genus).relator();
  if (aut_.rank() != 2 * genus || aut_.apply(d) != d)
    throw std::invalid_argument("mapping class must fix the boundary word");
}

MappingClass MappingClass::identity(int genus) {
  return MappingClass(genus, FreeAutomorphism::identity(2 * genus));
}

MappingClass MappingClass::boundary_twist(int genus, int k) {
  return MappingClass(genus, FreeAutomorphism::conjugation(surface_group(genus).relator().power(k), 2 * genus));
}

MappingClass MappingClass::inverse() const {
  return MappingClass(genus_, aut_.inverse(), lefschetz::inverse(provenance_));
}

MappingClass MappingClass::operator*(const MappingClass& other) const {
  if (genus_ != other.genus_) throw std::invalid_argument("genus mismatch");
  TwistWord prov = provenance_;
  prov.insert(prov.end(), other.provenance_.begin(), other.provenance_.end());
  MappingClass out = *this;
  out.aut_ = compose(aut_, other.aut_);
  out.provenance_ = std::move(prov);
  return out;
}

const SurfaceGroup& surface_group(int genus) { return standard_data(genus).group; }

MappingClass standard_twist(int genus, CurveId curve, int sign) {
  const FreeAutomorphism& t = positive_twist(genus, curve);
  return MappingClass(genus, sign > 0 ? t : t.inverse(), {{curve, sign > 0 ? 1 : -1}});
}

MappingClass twist_word_class(int genus, const TwistWord& w) {
  MappingClass out = MappingClass::identity(genus);
  for (const auto& l : w) out = out * standard_twist(genus, l.curve, l.sign);
  return out;
}

MappingClass twist_about(int genus, const CurveSpec& c, int sign) {
  MappingClass t = standard_twist(genus, c.base, sign);
  if (c.conjugator.empty()) return t;
  MappingClass w = twist_word_class(genus, c.conjugator);
  return w * t * w.inverse();
}

const Word& standard_curve_word(int genus, CurveId curve) {
  check_curve(genus, curve);
  const auto& m = standard_data(genus).model;
  return curve.kind == CurveId::Kind::Chain ? m.chain_words[curve.index - 1] : m.separating_words[curve.index - 1];
}

Word curve_word(int genus, const CurveSpec& c) {
  const Word& base = standard_curve_word(genus, c.base);
  if (c.conjugator.empty()) return base;
  return reduce(twist_word_class(genus, c.conjugator).apply(base).letters(), ReduceMode::Cyclic);
}

IntMatrix intersection_form(int genus) {
  IntMatrix j = IntMatrix::Zero(2 * genus, 2 * genus);
  for (int i = 0; i < genus; ++i) {
    j(2 * i, 2 * i + 1) = 1;
    j(2 * i + 1, 2 * i) = -1;
  }
  return j;
}

IntMatrix homology_action(const MappingClass& m) {
  const int n = 2 * m.genus();
  IntMatrix out(n, n);
  for (int k = 0; k < n; ++k) out.col(k) = to_vector(abelianize(m.aut().image(k + 1), m.genus()));
  return out;
}

IntVector homology_class(int genus, const CurveSpec& c) {
  IntVector base = to_vector(abelianize(standard_curve_word(genus, c.base), genus));
  if (c.conjugator.empty()) return base;
  return homology_action(twist_word_class(genus, c.conjugator)) * base;
}

IntMatrix transvection(const IntVector& c, int sign) {
  const auto n = c.size();
  IntMatrix j = intersection_form(static_cast<int>(n / 2));
  // column k: e_k + sign <e_k, c> c
  IntMatrix out = IntMatrix::Identity(n, n);
  out += sign * c * (j * c).transpose();
  return out;
}

bool is_symplectic(const IntMatrix& m) {
  IntMatrix j = intersection_form(static_cast<int>(m.rows() / 2));
  return m.transpose() * j * m == j;
}

std::optional<int> boundary_twist_power(const MappingClass& composite, int bound) {
  const int g = composite.genus();
  const Word& d = surface_group(g).relator();
  auto matches = [&](int k) {
    Word dk = d.power(k), dk_inv = dk.inverse();
    for (int x = 1; x <= 2 * g; ++x)
      if (composite.aut().image(x) != dk * Word::generator(x) * dk_inv) return false;
    return true;
  };
  for (int k = 0; k <= bound; ++k)
    if (matches(k)) return k;
  for (int k = -1; k >= -bound; --k)
    if (matches(k)) return k;
  return std::nullopt;
}

std::optional<int> boundary_twist_power(const std::vector<MappingClass>& ms) {
  if (ms.empty()) return 0;
  MappingClass composite = MappingClass::identity(ms.front().genus());
  for (const auto& m : ms) composite = composite * m;
  return boundary_twist_power(composite, static_cast<int>(ms.size()));
}

InnerTest inner_witness(int genus, const std::vector<Word>& images) {
  const int g = genus;
  const SurfaceGroup& G = surface_group(g);
  const Word a1 = Word::generator(1), b1 = Word::generator(2);
  auto verify = [&](const Word& u) {
    Word ui = u.inverse();
    for (int x = 1; x <= 2 * g; ++x)
      if (!G.equal(images[x - 1], u * Word::generator(x) * ui)) return false;
    return true;
  };
  auto u1 = G.conjugacy_witness(a1, images[0]);
  if (!u1) return {};
  // Any witness is u1 a1^k; pin k using b1.
  Word target = G.dehn_reduce(u1->inverse() * images[1] * *u1);
  const int bound = static_cast<int>(target.size()) + 4;
  for (int r = 0; r <= bound; ++r)
    for (int k : {r, -r}) {
      if (r == 0 && k < 0) continue;
      Word ak = a1.power(k);
      if (!G.equal(ak * b1 * ak.inverse(), target)) continue;
      Word u = G.dehn_reduce(*u1 * ak);
      if (verify(u)) return {true, u};
    }
  return {};
}

InnerTest is_trivial_closed(const MappingClass& m) { return inner_witness(m.genus(), m.aut().images()); }

int standard_intersection(CurveId a, CurveId b) {
  using K = CurveId::Kind;
  if (a.kind == K::Chain && b.kind == K::Chain) return std::abs(a.index - b.index) == 1 ? 1 : 0;
  if (a.kind == K::Separating && b.kind == K::Separating) return 0;
  const CurveId& s = a.kind == K::Separating ? a : b;
  const CurveId& c = a.kind == K::Separating ? b : a;
  return c.index == 2 * s.index + 1 ? 2 : 0;
}

int meyer_cocycle(const IntMatrix& a, const IntMatrix& b) {
  const auto n = a.rows();
  Eigen::MatrixXd A = a.cast<double>(), B = b.cast<double>();
  // Meyer's form <(x1,y1),(x2,y2)> = omega(x1 + y1, (I - B) y2) with
  // omega(u, v) = u^T J^T v; with this orientation the signature of a
  // Lefschetz fibration is minus the cocycle sum over partial products.
  Eigen::MatrixXd J = intersection_form(static_cast<int>(n / 2)).cast<double>().transpose();
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd K(n, 2 * n);
  K << A.inverse() - I, B - I;
  Eigen::MatrixXd V = Eigen::FullPivLU<Eigen::MatrixXd>(K).kernel();
  if (V.cols() == 0 || V.isZero()) return 0;
  Eigen::MatrixXd X = V.topRows(n), Y = V.bottomRows(n);
  Eigen::MatrixXd Q = (X + Y).transpose() * J * (I - B) * Y;
  Q = 0.5 * (Q + Q.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q, Eigen::EigenvaluesOnly);
  const double tol = 1e-8 * std::max(1.0, Q.cwiseAbs().maxCoeff());
  int sig = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double ev = es.eigenvalues()(i);
    if (ev > tol) ++sig;
    else if (ev < -tol) --sig;
  }
  return sig;
}

} // namespace lefschetz
