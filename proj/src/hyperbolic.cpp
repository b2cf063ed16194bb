#include "lefschetz/hyperbolic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace lefschetz {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

Eigen::Vector3d hyperboloid(Complex z) {
  double n = std::norm(z);
  return Eigen::Vector3d(1.0 + n, 2.0 * z.real(), 2.0 * z.imag()) / (1.0 - n);
}

// Boundary point of a real projective eigenvector (x : y) of a half-plane
// matrix, as a unit vector in the disc.
Eigen::Vector2d boundary_of(double x, double y) {
  Complex z = (Complex(x, 0.0) - kI * y) / (Complex(x, 0.0) + kI * y);
  z /= std::abs(z);
  return Eigen::Vector2d(z.real(), z.imag());
}

// Dominant eigenvector of a real 2x2 matrix with real spectrum, i.e. the
// attracting fixed point of the Moebius map.
Eigen::Vector2d attracting_vector(const Mat2& m, double det) {
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const double tr = a + d;
  const double disc = tr * tr - 4.0 * det;
  if (disc <= 0.0) throw std::domain_error("axis: element is not hyperbolic");
  const double lambda = 0.5 * (tr + std::copysign(std::sqrt(disc), tr));
  Eigen::Vector2d v1(b, lambda - a), v2(lambda - d, c);
  const Eigen::Vector2d& v = v1.norm() >= v2.norm() ? v1 : v2;
  return v / v.norm();
}

struct Projective {
  Mat2 m = Mat2::Identity();
  double log_scale = 0.0;
  void mul(const Mat2& x) {
    m = m * x;
    double s = m.cwiseAbs().maxCoeff();
    m /= s;
    log_scale += std::log(s);
  }
};

// Polygon clipped by n.k <= o; sources track which constraint made each edge.
struct Polygon {
  std::vector<Eigen::Vector2d> v;
  std::vector<int> src; // edge i: v[i] -> v[i+1]
};

Polygon clip(const Polygon& p, const Eigen::Vector2d& n, double o, int source, double tol = 1e-13) {
  Polygon out;
  const std::size_t k = p.v.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::Vector2d& a = p.v[i];
    const Eigen::Vector2d& b = p.v[(i + 1) % k];
    double fa = n.dot(a) - o, fb = n.dot(b) - o;
    bool ina = fa <= tol, inb = fb <= tol;
    if (ina) {
      out.v.push_back(a);
      out.src.push_back(inb ? p.src[i] : p.src[i]);
    }
    if (ina != inb) {
      double t = fa / (fa - fb);
      Eigen::Vector2d x = a + t * (b - a);
      if (ina) {
        out.v.push_back(x);
        out.src.push_back(source);
      } else {
        out.v.push_back(x);
        out.src.push_back(p.src[i]);
      }
    }
  }
  // Remove zero-length edges.
  Polygon clean;
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    const auto& a = out.v[i];
    const auto& b = out.v[(i + 1) % out.v.size()];
    if ((a - b).norm() < 1e-14) continue;
    clean.v.push_back(a);
    clean.src.push_back(out.src[i]);
  }
  return clean;
}

// Hyperbolic area of a convex Klein polygon: (n - 2) pi minus the interior
// angles, measured in the conformal disc model.
double hyperbolic_area(const std::vector<Eigen::Vector2d>& v) {
  const std::size_t n = v.size();
  if (n < 3) return 0.0;
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = klein_to_disc(v[i]);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto to0 = [&](Complex u) { return (u - z[i]) / (1.0 - std::conj(z[i]) * u); };
    double a = std::arg(to0(z[(i + n - 1) % n]) / to0(z[(i + 1) % n]));
    if (a < 0) a += 2.0 * kPi;
    total += a;
  }
  return (static_cast<double>(n) - 2.0) * kPi - total;
}

Eigen::Vector2d polygon_centroid(const std::vector<Eigen::Vector2d>& v) {
  double a = 0.0;
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    double w = cross2(p, q);
    a += w;
    c += w * (p + q);
  }
  if (std::abs(a) < 1e-300) return v.front();
  return c / (3.0 * a);
}

bool in_convex(const std::vector<Eigen::Vector2d>& v, const Eigen::Vector2d& p, double tol) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (cross2(v[(i + 1) % v.size()] - v[i], p - v[i]) < -tol) return false;
  return true;
}

// Interval of the line p + t d inside the domain, and the side of exit.
struct Span {
  double lo = -1e300, hi = 1e300;
  int exit_side = -1;
  double exit_gap = 1e300; // distance to the runner-up exit (vertex passes)
};

Span span_in(const DirichletDomain& dom, const Eigen::Vector2d& p, const Eigen::Vector2d& d) {
  Span s;
  double second = 1e300;
  for (std::size_t i = 0; i < dom.sides.size(); ++i) {
    const auto& side = dom.sides[i];
    double nd = side.normal.dot(d), gap = side.offset - side.normal.dot(p);
    if (std::abs(nd) < 1e-300) {
      if (gap < 0) s.hi = -1e300;
      continue;
    }
    double t = gap / nd;
    if (nd > 0) {
      if (t < s.hi) {
        second = s.hi;
        s.hi = t;
        s.exit_side = static_cast<int>(i);
      } else if (t < second) {
        second = t;
      }
    } else {
      s.lo = std::max(s.lo, t);
    }
  }
  s.exit_gap = second - s.hi;
  return s;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct DomainAttempt {
  DirichletDomain dom;
  bool paired = true;
};

// `steps` are the moves of the breadth-first orbit search: the generators,
// their inverses, and side pairings found by earlier attempts.
DomainAttempt build_domain_with(const FuchsianRealization& r, Complex center,
                                const std::vector<std::pair<Word, CMat2>>& steps) {
  const int g = r.genus();
  const SurfaceGroup& G = surface_group(g);
  // Candidate elements: orbit points of the centre within a search radius,
  // found by a breadth-first search deduplicated on the orbit point.  The
  // radius starts at twice the circumradius of the regular polygon and grows
  // until it covers twice the circumradius of the clipped polygon, which
  // makes the domain exact.
  const double cot = 1.0 / std::tan(kPi / (4 * g));
  double bound = 2.0 * std::acosh(cot * cot) + 2.0 + 4.0 * std::abs(center);
  Eigen::Vector3d c = hyperboloid(center);
  struct Cand {
    Word w;
    CMat2 m;
    double dist;
  };
  auto key_of = [](Complex z) { return std::pair{std::llround(z.real() * 1e8), std::llround(z.imag() * 1e8)}; };
  Polygon poly;
  std::vector<Cand> used;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 24 || bound > 40.0) throw std::runtime_error("dirichlet domain: search radius exhausted");
    std::vector<Cand> cands;
    std::map<std::pair<long long, long long>, int> orbit;
    orbit[key_of(center)] = 1;
    std::vector<Cand> frontier{{Word{}, CMat2::Identity(), 0.0}};
    while (!frontier.empty()) {
      std::vector<Cand> next;
      for (const auto& f : frontier)
        for (const auto& [sw, sm] : steps) {
          CMat2 m = f.m * sm;
          Complex gc = mobius(m, center);
          double dist = disc_distance(center, gc);
          if (dist > bound) continue;
          if (!orbit.emplace(key_of(gc), 1).second) continue;
          next.push_back({f.w * sw, m, dist});
        }
      cands.insert(cands.end(), next.begin(), next.end());
      frontier = std::move(next);
      if (cands.size() > 200000) throw std::runtime_error("dirichlet domain: too many orbit points");
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.dist < b.dist; });

    poly = Polygon{};
    for (int i = 0; i < 64; ++i) {
      double t = 2.0 * kPi * i / 64;
      poly.v.emplace_back(1.05 * std::cos(t), 1.05 * std::sin(t));
      poly.src.push_back(-1);
    }
    used.clear();
    double reach = 1e300; // twice the largest centre-to-vertex distance
    for (const auto& cand : cands) {
      if (cand.dist > reach + 1e-9) break;
      Complex gc = mobius(cand.m, center);
      Eigen::Vector3d cp = hyperboloid(gc);
      Eigen::Vector2d n(cp(1) - c(1), cp(2) - c(2));
      double o = cp(0) - c(0);
      used.push_back(cand);
      bool cuts = false;
      for (const auto& v : poly.v)
        if (n.dot(v) - o > 1e-13) {
          cuts = true;
          break;
        }
      if (!cuts) continue;
      poly = clip(poly, n, o, static_cast<int>(used.size()) - 1);
      double far = 0.0;
      for (const auto& v : poly.v) {
        if (v.norm() >= 1.0) {
          far = 1e300;
          break;
        }
        far = std::max(far, disc_distance(center, klein_to_disc(v)));
      }
      reach = 2.0 * far;
    }
    if (reach <= bound) break;
    // An unbounded polygon says nothing about the final radius: grow slowly.
    bound = reach > 1e100 ? bound + 1.5 : std::min(std::max(bound + 1.0, reach + 0.5), 40.0);
  }

  DirichletDomain dom;
  dom.center = center;
  dom.vertices = poly.v;
  for (std::size_t i = 0; i < poly.v.size(); ++i) {
    if (poly.src[i] < 0 || poly.v[i].norm() >= 1.0)
      throw std::runtime_error("dirichlet domain: word radius too small");
    const Cand& cand = used[poly.src[i]];
    DomainSide side;
    side.element = G.dehn_reduce(cand.w);
    side.matrix = cand.m;
    Eigen::Vector3d cp = hyperboloid(mobius(cand.m, center));
    side.normal = Eigen::Vector2d(cp(1) - c(1), cp(2) - c(2));
    side.offset = cp(0) - c(0);
    // Normalise the half-plane for well-scaled tolerances.
    double s = side.normal.norm();
    side.normal /= s;
    side.offset /= s;
    dom.sides.push_back(side);
  }
  const std::size_t n = dom.sides.size();
  for (std::size_t i = 0; i < n; ++i) {
    CMat2 inv = dom.sides[i].matrix.inverse();
    Complex target = mobius(inv, center);
    double nearest = 1e-6; // hyperbolic distance, robust near the circle
    for (std::size_t j = 0; j < n; ++j) {
      double dist = disc_distance(mobius(dom.sides[j].matrix, center), target);
      if (dist < nearest) {
        nearest = dist;
        dom.sides[i].partner = static_cast<int>(j);
      }
    }
    if (dom.sides[i].partner < 0) return {std::move(dom), false};
  }

  // Interior angles (disc model is conformal) and vertex cycles.
  std::vector<double> angle(n);
  std::vector<Complex> zv(n);
  for (std::size_t i = 0; i < n; ++i) zv[i] = klein_to_disc(dom.vertices[i]);
  for (std::size_t i = 0; i < n; ++i) {
    Complex z = zv[i], prev = zv[(i + n - 1) % n], next = zv[(i + 1) % n];
    auto to0 = [&](Complex u) { return (u - z) / (1.0 - std::conj(z) * u); };
    double a = std::arg(to0(prev) / to0(next));
    if (a < 0) a += 2.0 * kPi;
    angle[i] = a;
  }
  UnionFind uf(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    CMat2 inv = dom.sides[i].matrix.inverse();
    for (std::size_t end : {i, (i + 1) % n}) {
      Complex image = mobius(inv, zv[end]);
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(image - zv[j]) < 1e-7) uf.unite(static_cast<int>(end), static_cast<int>(j));
    }
  }
  std::map<int, double> sums;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sums[uf.find(static_cast<int>(i))] += angle[i];
    total += angle[i];
  }
  for (const auto& [k, v] : sums) dom.cycle_angle_sums.push_back(v);
  dom.area = (static_cast<double>(n) - 2.0) * kPi - total;
  return {std::move(dom), true};
}

// Orbit points reachable only through far-away intermediate points are
// missed by a ball-restricted search when generators translate far.  An
// unpaired side or a wrong area exposes this; the sides found so far are
// then added as search moves and the search is repeated.
DirichletDomain build_domain(const FuchsianRealization& r, Complex center) {
  const double target = 4.0 * kPi * (r.genus() - 1);
  std::vector<std::pair<Word, CMat2>> steps;
  std::set<std::vector<Letter>> known;
  auto add = [&](const Word& w) {
    if (!w.empty() && known.insert(w.letters()).second) steps.emplace_back(w, r.disc_matrix(w));
  };
  for (int x = 1; x <= 2 * r.genus(); ++x) {
    add(Word::generator(x));
    add(Word::generator(-x));
  }
  for (int round = 0;; ++round) {
    DomainAttempt a = build_domain_with(r, center, steps);
    if (a.paired && std::abs(a.dom.area - target) <= 1e-6) return a.dom;
    if (round == 4) {
      if (!a.paired) throw std::runtime_error("dirichlet domain: unpaired side");
      return a.dom; // area mismatch is reported by the caller
    }
    const std::size_t before = steps.size();
    for (const auto& side : a.dom.sides) {
      add(side.element);
      add(side.element.inverse());
    }
    if (steps.size() == before && !a.paired) throw std::runtime_error("dirichlet domain: unpaired side");
  }
}

} // namespace

bool DirichletDomain::contains(const Eigen::Vector2d& k, double tol) const {
  for (const auto& s : sides)
    if (s.normal.dot(k) - s.offset > tol) return false;
  return true;
}

Eigen::Vector2d disc_to_klein(Complex z) {
  Complex k = 2.0 * z / (1.0 + std::norm(z));
  return Eigen::Vector2d(k.real(), k.imag());
}

Complex klein_to_disc(const Eigen::Vector2d& k) {
  double n2 = std::min(k.squaredNorm(), 1.0);
  Complex kc(k.x(), k.y());
  return kc / (1.0 + std::sqrt(1.0 - n2));
}

Complex mobius(const CMat2& m, Complex z) { return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1)); }

double disc_distance(Complex z, Complex w) {
  double r = std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
  return 2.0 * std::atanh(std::min(r, 1.0 - 1e-16));
}

CMat2 to_disc(const Mat2& m) {
  CMat2 c, ci;
  c << 1.0, -kI, 1.0, kI;
  ci = c.inverse();
  return c * m.cast<Complex>() * ci;
}

Mat2 to_half_plane(const CMat2& m) {
  CMat2 c, ci;
  c << 1.0, -kI, 1.0, kI;
  ci = c.inverse();
  CMat2 h = ci * m * c;
  // Remove a global phase so the result is real.
  Complex phase = std::abs(h(0, 0)) > std::abs(h(1, 0)) ? h(0, 0) / std::abs(h(0, 0)) : h(1, 0) / std::abs(h(1, 0));
  h /= phase;
  Mat2 out = h.real();
  if (out.determinant() < 0) out = -out;
  return out / std::sqrt(std::abs(out.determinant()));
}

FuchsianRealization::FuchsianRealization(int genus, std::vector<Mat2> generators, Complex center)
    : genus_(genus), generators_(std::move(generators)) {
  if (genus < 2) throw std::invalid_argument("genus must be at least 2");
  if (static_cast<int>(generators_.size()) != 2 * genus)
    throw std::invalid_argument("realization needs 2g generators");
  for (const auto& m : generators_) {
    if (std::abs(m.determinant() - 1.0) > 1e-9) throw std::invalid_argument("generator must have determinant 1");
    if (std::abs(m.trace()) <= 2.0 + 1e-9) throw std::invalid_argument("generator is not hyperbolic");
    disc_generators_.push_back(to_disc(m));
  }
  // Rounding in the relator product scales with the product of the
  // generator norms along it.
  double scale = 1.0;
  for (Letter x : surface_group(genus_).relator().letters()) scale *= generators_[std::abs(x) - 1].norm();
  if (relator_defect() > std::max(1e-9, 1e-13 * scale)) throw std::invalid_argument("relator does not evaluate to +-I");
  domain_ = build_domain(*this, center);
  if (std::abs(domain_.area - 4.0 * kPi * (genus - 1)) > 1e-6)
    throw std::runtime_error("dirichlet domain has the wrong area; the group is not a surface group");
}

Mat2 FuchsianRealization::matrix(const Word& w) const {
  Mat2 m = Mat2::Identity();
  for (Letter x : w.letters()) {
    const Mat2& g = generators_[std::abs(x) - 1];
    if (x > 0)
      m = m * g;
    else {
      Mat2 gi;
      gi << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
      m = m * gi;
    }
  }
  return m;
}

Mat2 FuchsianRealization::projective_matrix(const Word& w) const {
  Projective p;
  for (Letter x : w.letters()) {
    const Mat2& g = generators_[std::abs(x) - 1];
    if (x > 0)
      p.mul(g);
    else {
      Mat2 gi;
      gi << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
      p.mul(gi);
    }
  }
  return p.m;
}

CMat2 FuchsianRealization::disc_matrix(const Word& w) const {
  CMat2 m = CMat2::Identity();
  for (Letter x : w.letters()) {
    const CMat2& g = disc_generators_[std::abs(x) - 1];
    if (x > 0)
      m = m * g;
    else {
      CMat2 gi;
      gi << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
      m = m * gi;
    }
  }
  return m;
}

double FuchsianRealization::relator_defect() const {
  Mat2 r = matrix(surface_group(genus_).relator());
  return std::min((r - Mat2::Identity()).cwiseAbs().maxCoeff(), (r + Mat2::Identity()).cwiseAbs().maxCoeff());
}

Complex FuchsianRealization::reduce(Complex p, Word* tile) const {
  Word h;
  for (int iter = 0; iter < 10000; ++iter) {
    Eigen::Vector2d k = disc_to_klein(p);
    int worst = -1;
    double excess = 1e-13;
    for (std::size_t i = 0; i < domain_.sides.size(); ++i) {
      double e = domain_.sides[i].normal.dot(k) - domain_.sides[i].offset;
      if (e > excess) {
        excess = e;
        worst = static_cast<int>(i);
      }
    }
    if (worst < 0) {
      if (tile) *tile = surface_group(genus_).dehn_reduce(h);
      return p;
    }
    const DomainSide& s = domain_.sides[worst];
    p = mobius(s.matrix.inverse(), p);
    h *= s.element;
  }
  throw std::runtime_error("reduce: point did not converge into the domain");
}

FuchsianRealization realize(int genus) {
  if (genus < 2) throw std::invalid_argument("genus must be at least 2");
  const int n = 4 * genus;
  const double r = std::acosh(1.0 / std::tan(kPi / n)); // centre to side midpoint
  auto rot = [](double t) {
    CMat2 m = CMat2::Zero();
    m(0, 0) = std::exp(kI * (t / 2));
    m(1, 1) = std::exp(-kI * (t / 2));
    return m;
  };
  CMat2 tr;
  tr << std::cosh(r), std::sinh(r), std::sinh(r), std::cosh(r);
  // Side k of the polygon carries the k-th letter of delta.
  const Word& d = surface_group(genus).relator();
  std::map<Letter, int> pos;
  for (int k = 0; k < n; ++k) pos[d[k]] = k;
  std::vector<Mat2> gens;
  for (int x = 1; x <= 2 * genus; ++x) {
    double tk = 2.0 * kPi * pos[x] / n, tm = 2.0 * kPi * pos[-x] / n;
    CMat2 m = rot(tk) * tr * rot(-tm - kPi);
    if (x % 2 == 0) m = m.inverse().eval();
    gens.push_back(to_half_plane(m));
  }
  return FuchsianRealization(genus, gens);
}

const FuchsianRealization& standard_realization(int genus) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<FuchsianRealization>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[genus];
  if (!slot) slot = std::make_unique<FuchsianRealization>(realize(genus));
  return *slot;
}

namespace {

Projective projective_product(const FuchsianRealization& r, const Word& w) {
  Projective p;
  for (Letter x : w.letters()) {
    const Mat2& g = r.generators()[std::abs(x) - 1];
    if (x > 0)
      p.mul(g);
    else {
      Mat2 gi;
      gi << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
      p.mul(gi);
    }
  }
  return p;
}

} // namespace

std::pair<Complex, Complex> axis_endpoints_disc(const FuchsianRealization& r, const Word& w) {
  // A long conjugate has its axis far from the origin: huge matrix entries
  // around a moderate trace, which cancellation destroys.  Work with the
  // cyclically reduced form w' = k w k^-1 and move its axis by k^-1.
  const auto form = surface_group(r.genus()).cyclic_reduce(w);
  if (form.word.empty()) throw std::domain_error("axis: element is not hyperbolic");
  // The rescaled product has determinant exp(-2 log_scale) exactly.
  Projective p = projective_product(r, form.word), q = projective_product(r, form.word.inverse());
  const double log_tr = std::log(std::abs(p.m.trace())) + p.log_scale;
  if (!(log_tr > std::log(2.0 + 1e-9))) throw std::domain_error("axis: element is not hyperbolic");
  const Mat2 k = projective_product(r, form.conjugator.inverse()).m;
  const Eigen::Vector2d a = k * attracting_vector(p.m, std::exp(-2.0 * p.log_scale));
  const Eigen::Vector2d rep = k * attracting_vector(q.m, std::exp(-2.0 * q.log_scale));
  const Eigen::Vector2d da = boundary_of(a(0), a(1)), dr = boundary_of(rep(0), rep(1));
  return {Complex(da.x(), da.y()), Complex(dr.x(), dr.y())};
}

std::pair<BoundaryPoint, BoundaryPoint> axis_endpoints(const FuchsianRealization& r, const Word& w) {
  auto [a, rep] = axis_endpoints_disc(r, w);
  auto ang = [](Complex z) {
    double t = std::arg(z);
    return BoundaryPoint{t < 0 ? t + 2.0 * kPi : t};
  };
  return {ang(a), ang(rep)};
}

double trace_length(const std::vector<Mat2>& generators, const Word& w) {
  Projective p;
  for (Letter x : w.letters()) {
    const Mat2& g = generators[std::abs(x) - 1];
    if (x > 0)
      p.mul(g);
    else {
      Mat2 gi;
      gi << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
      p.mul(gi);
    }
  }
  const double log_tr = std::log(std::abs(p.m.trace())) + p.log_scale;
  if (log_tr > 20.0) return 2.0 * log_tr;
  const double tr = std::exp(log_tr);
  if (!(tr > 2.0 + 1e-12)) throw std::domain_error("length: element is not hyperbolic");
  return 2.0 * std::acosh(tr / 2.0);
}

double geodesic_length(const FuchsianRealization& r, const Word& w) {
  if (surface_group(r.genus()).is_trivial(w)) throw std::domain_error("length: trivial element");
  return trace_length(r.generators(), w);
}

std::vector<Lift> lifts_through_domain(const FuchsianRealization& r, const Word& w, int curve) {
  const SurfaceGroup& G = surface_group(r.genus());
  const DirichletDomain& dom = r.domain();
  Word w0 = G.cyclic_reduce(w).word;
  if (w0.empty()) throw std::domain_error("lifts: trivial element");
  auto endpoints = [&](const Word& e) {
    auto [a, rep] = axis_endpoints_disc(r, e);
    return std::pair{Eigen::Vector2d(rep.real(), rep.imag()), Eigen::Vector2d(a.real(), a.imag())};
  };
  auto [r0, a0] = endpoints(w0);
  Eigen::Vector2d d0 = a0 - r0;
  Eigen::Vector2d foot = r0 - (r0.dot(d0) / d0.squaredNorm()) * d0;
  Word h;
  r.reduce(klein_to_disc(foot), &h);
  Word w1 = G.dehn_reduce(h.inverse() * w0 * h);

  std::vector<Lift> out;
  Word e = w1;
  for (int iter = 0; iter < 100000; ++iter) {
    auto [rp, ap] = endpoints(e);
    Span s = span_in(dom, rp, ap - rp);
    if (s.exit_side < 0 || s.hi - s.lo <= 1e-12) {
      // Numerically grazing; nudge into the neighbouring tile if any.
      if (out.empty()) throw std::runtime_error("lifts: starting lift misses the domain");
    } else {
      if (s.exit_gap < 1e-9) throw std::runtime_error("lifts: geodesic through a domain vertex");
      out.push_back({curve, e, rp, ap, s.lo, s.hi});
    }
    const DomainSide& side = dom.sides[s.exit_side];
    e = G.dehn_reduce(side.element.inverse() * e * side.element);
    if (G.equal(e, w1)) return out;
  }
  throw std::runtime_error("lifts: period walk did not close");
}

namespace {

bool chords_cross(const Lift& p, const Lift& q, double* tp = nullptr, double* tq = nullptr) {
  Eigen::Vector2d dp = p.attracting - p.repelling, dq = q.attracting - q.repelling;
  double den = cross2(dp, dq);
  if (std::abs(den) < 1e-14) return false;
  Eigen::Vector2d w = q.repelling - p.repelling;
  double s = cross2(w, dq) / den, t = cross2(w, dp) / den;
  if (!(s > p.t_in && s < p.t_out && t > q.t_in && t < q.t_out)) return false;
  if (tp) *tp = s;
  if (tq) *tq = t;
  return true;
}

// Angle between two lifts at their crossing, measured in the disc model.
double crossing_angle(const Lift& p, const Lift& q, double tp) {
  Complex z = klein_to_disc(p.point(tp));
  auto to0 = [&](const Eigen::Vector2d& u) {
    Complex c(u.x(), u.y());
    return (c - z) / (1.0 - std::conj(z) * c);
  };
  double a = std::arg(to0(p.attracting) / to0(q.attracting));
  a = std::fmod(std::abs(a), kPi);
  return std::min(a, kPi - a);
}

} // namespace

int geometric_intersection(const FuchsianRealization& r, const Word& a, const Word& b) {
  const SurfaceGroup& G = surface_group(r.genus());
  if (G.curve_key(a) == G.curve_key(b)) return 0;
  auto la = lifts_through_domain(r, a, 0), lb = lifts_through_domain(r, b, 1);
  int count = 0;
  for (const auto& p : la)
    for (const auto& q : lb)
      if (chords_cross(p, q)) ++count;
  return count;
}

int geometric_intersection(int genus, const CurveSpec& a, const CurveSpec& b) {
  return geometric_intersection(standard_realization(genus), curve_word(genus, a), curve_word(genus, b));
}

std::vector<Crossing> segment_crossings(const FuchsianRealization& r, const std::vector<Lift>& lifts, Complex p,
                                        Complex q) {
  const SurfaceGroup& G = surface_group(r.genus());
  const DirichletDomain& dom = r.domain();
  std::vector<Crossing> out;
  Word h;
  r.reduce(p, &h);
  for (int iter = 0; iter < 100000; ++iter) {
    CMat2 hm = r.disc_matrix(h), hi = hm.inverse();
    Eigen::Vector2d kp = disc_to_klein(mobius(hi, p)), kq = disc_to_klein(mobius(hi, q));
    Eigen::Vector2d d = kq - kp;
    Span s = span_in(dom, kp, d);
    double lo = std::max(s.lo, 0.0), hi_t = std::min(s.hi, 1.0);
    for (const auto& l : lifts) {
      Eigen::Vector2d dl = l.attracting - l.repelling;
      double den = cross2(d, dl);
      if (std::abs(den) < 1e-15) continue;
      Eigen::Vector2d w = l.repelling - kp;
      double u = cross2(w, dl) / den, t = cross2(w, d) / den;
      if (!(u >= lo && u < hi_t && t > l.t_in - 1e-12 && t < l.t_out + 1e-12)) continue;
      Complex x = mobius(hm, klein_to_disc(kp + u * d));
      Word elem = G.dehn_reduce(h * l.element * h.inverse());
      out.push_back({disc_distance(p, x), l.curve, elem, den > 0 ? 1 : -1});
    }
    if (s.hi >= 1.0 || s.exit_side < 0) break;
    h = G.dehn_reduce(h * dom.sides[s.exit_side].element);
  }
  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) { return a.distance < b.distance; });
  // A crossing exactly on a tile boundary may be seen from both tiles.
  std::vector<Crossing> dedup;
  for (const auto& c : out) {
    if (!dedup.empty() && std::abs(dedup.back().distance - c.distance) < 1e-9 && dedup.back().curve == c.curve &&
        G.equal(dedup.back().element, c.element))
      continue;
    dedup.push_back(c);
  }
  return dedup;
}

std::vector<Word> distinct_curves(int genus, const std::vector<Word>& curves) {
  const SurfaceGroup& G = surface_group(genus);
  std::vector<Word> out;
  std::vector<std::vector<Letter>> keys;
  for (const auto& c : curves) {
    auto k = G.curve_key(c);
    if (std::find(keys.begin(), keys.end(), k) != keys.end()) continue;
    keys.push_back(k);
    out.push_back(c);
  }
  return out;
}

int Arrangement::region_of(const FuchsianRealization& r, Complex p) const {
  Eigen::Vector2d k = disc_to_klein(r.reduce(p));
  for (const auto& c : cells)
    if (in_convex(c.polygon, k, 1e-12)) return c.region;
  throw std::runtime_error("region_of: point not located");
}

Arrangement arrangement(const FuchsianRealization& r, const std::vector<Word>& input) {
  const int g = r.genus();
  const DirichletDomain& dom = r.domain();
  Arrangement arr;
  arr.curves = distinct_curves(g, input);
  const int nc = static_cast<int>(arr.curves.size());
  for (int i = 0; i < nc; ++i) {
    auto l = lifts_through_domain(r, arr.curves[i], i);
    arr.lifts.insert(arr.lifts.end(), l.begin(), l.end());
  }

  // Vertices: crossings of chords inside the domain.
  arr.intersections = Eigen::MatrixXi::Zero(nc, nc);
  arr.min_crossing_angle = kPi / 2;
  int crossings = 0;
  for (std::size_t i = 0; i < arr.lifts.size(); ++i)
    for (std::size_t j = i + 1; j < arr.lifts.size(); ++j) {
      double ti = 0;
      if (!chords_cross(arr.lifts[i], arr.lifts[j], &ti)) continue;
      int a = arr.lifts[i].curve, b = arr.lifts[j].curve;
      if (a == b) throw std::invalid_argument("arrangement: curve is not simple");
      ++arr.intersections(a, b);
      ++arr.intersections(b, a);
      ++crossings;
      arr.min_crossing_angle = std::min(arr.min_crossing_angle, crossing_angle(arr.lifts[i], arr.lifts[j], ti));
    }
  if (crossings > 0 && arr.min_crossing_angle < 1e-6)
    throw std::runtime_error("arrangement: near-tangential crossing");
  int isolated = 0;
  for (int i = 0; i < nc; ++i)
    if (arr.intersections.row(i).sum() == 0) ++isolated;
  arr.V = crossings + isolated;
  arr.E = 2 * crossings + isolated;

  // Cells: split the domain polygon by every chord line.
  Cell base;
  base.polygon = dom.vertices;
  for (std::size_t k = 0; k < dom.sides.size(); ++k) base.edge_source.push_back(-1 - static_cast<int>(k));
  std::vector<Cell> cells{base};
  for (std::size_t li = 0; li < arr.lifts.size(); ++li) {
    const Lift& l = arr.lifts[li];
    Eigen::Vector2d d = l.attracting - l.repelling;
    Eigen::Vector2d n(-d.y(), d.x());
    n.normalize();
    double o = n.dot(l.repelling);
    std::vector<Cell> next;
    for (const auto& c : cells) {
      bool pos = false, neg = false;
      for (const auto& v : c.polygon) {
        double f = n.dot(v) - o;
        if (f > 1e-12) pos = true;
        if (f < -1e-12) neg = true;
      }
      if (!(pos && neg)) {
        next.push_back(c);
        continue;
      }
      for (double sgn : {1.0, -1.0}) {
        Polygon p{c.polygon, c.edge_source};
        Polygon q = clip(p, sgn * n, sgn * o, static_cast<int>(li), 0.0);
        if (q.v.size() < 3) continue;
        Cell piece;
        piece.polygon = q.v;
        piece.edge_source = q.src;
        next.push_back(piece);
      }
    }
    cells = std::move(next);
  }
  for (auto& c : cells) {
    c.area = hyperbolic_area(c.polygon);
    c.centroid = polygon_centroid(c.polygon);
  }

  // Glue cells across paired domain sides.
  const int ncell = static_cast<int>(cells.size());
  auto locate = [&](const Eigen::Vector2d& k) {
    for (int i = 0; i < ncell; ++i)
      if (in_convex(cells[i].polygon, k, 1e-13)) return i;
    return -1;
  };
  UnionFind uf(ncell);
  std::vector<int> side_edges(ncell, 0);
  const Eigen::Vector2d dom_centroid = polygon_centroid(dom.vertices);
  for (int i = 0; i < ncell; ++i) {
    const Cell& c = cells[i];
    for (std::size_t e = 0; e < c.polygon.size(); ++e) {
      if (c.edge_source[e] >= 0) continue;
      ++side_edges[i];
      int side = -1 - c.edge_source[e];
      Eigen::Vector2d mid = 0.5 * (c.polygon[e] + c.polygon[(e + 1) % c.polygon.size()]);
      Complex image = mobius(dom.sides[side].matrix.inverse(), klein_to_disc(mid));
      Eigen::Vector2d k = disc_to_klein(image);
      k += 1e-9 * (dom_centroid - k);
      int j = locate(k);
      if (j < 0) throw std::runtime_error("arrangement: side gluing failed");
      uf.unite(i, j);
    }
  }
  std::map<int, int> region_index;
  for (int i = 0; i < ncell; ++i) {
    int root = uf.find(i);
    auto it = region_index.find(root);
    if (it == region_index.end()) it = region_index.emplace(root, static_cast<int>(region_index.size())).first;
    cells[i].region = it->second;
  }
  arr.regions.resize(region_index.size());
  std::vector<double> best_area(arr.regions.size(), -1.0);
  for (std::size_t k = 0; k < arr.regions.size(); ++k) arr.regions[k].id = static_cast<int>(k);
  std::vector<int> glued(arr.regions.size(), 0);
  for (int i = 0; i < ncell; ++i) {
    Region& reg = arr.regions[cells[i].region];
    ++reg.cell_count;
    reg.area += cells[i].area;
    glued[cells[i].region] += side_edges[i];
    if (cells[i].area > best_area[cells[i].region]) {
      best_area[cells[i].region] = cells[i].area;
      reg.representative = klein_to_disc(cells[i].centroid);
    }
  }
  // Vertex cycles of the domain are points of the surface.
  std::vector<int> vertex_points(arr.regions.size(), 0);
  {
    const std::size_t n = dom.vertices.size();
    std::vector<Complex> zv(n);
    for (std::size_t i = 0; i < n; ++i) zv[i] = klein_to_disc(dom.vertices[i]);
    UnionFind vf(static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
      CMat2 inv = dom.sides[i].matrix.inverse();
      for (std::size_t end : {i, (i + 1) % n}) {
        Complex image = mobius(inv, zv[end]);
        for (std::size_t j = 0; j < n; ++j)
          if (std::abs(image - zv[j]) < 1e-7) vf.unite(static_cast<int>(end), static_cast<int>(j));
      }
    }
    std::map<int, int> seen;
    for (std::size_t i = 0; i < n; ++i) {
      int root = vf.find(static_cast<int>(i));
      if (seen.count(root)) continue;
      Eigen::Vector2d k = dom.vertices[i] + 1e-9 * (dom_centroid - dom.vertices[i]);
      int c = locate(k);
      if (c < 0) throw std::runtime_error("arrangement: vertex not located");
      seen[root] = c;
      ++vertex_points[cells[c].region];
    }
  }
  for (std::size_t k = 0; k < arr.regions.size(); ++k) {
    Region& reg = arr.regions[k];
    reg.euler_characteristic = reg.cell_count - glued[k] / 2 + vertex_points[k];
  }
  arr.cells = std::move(cells);
  arr.fills = nc > 0 && arr.region_count() == arr.euler_bound(g);
  return arr;
}

Arrangement arrangement(int genus, const std::vector<CurveSpec>& curves) {
  std::vector<Word> words;
  for (const auto& c : curves) words.push_back(curve_word(genus, c));
  return arrangement(standard_realization(genus), words);
}

} // namespace lefschetz
