#include "lefschetz/teich.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace lefschetz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

Mat2 diag_translation(double l) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(l / 2);
  m(1, 1) = std::exp(-l / 2);
  return m;
}

Mat2 flip() {
  Mat2 m = Mat2::Zero();
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

// Columns: eigenvectors of a hyperbolic M for eigenvalues lambda, 1/lambda
// with |lambda| > 1, normalised to determinant 1.  V diag(e^{t/2}, e^{-t/2})
// V^-1 translates along M's axis in M's direction; V flip V^-1 reflects in
// the axis.
Mat2 axis_frame(const Mat2& m) {
  const double tr = m.trace();
  const double disc = std::sqrt(tr * tr - 4.0);
  const double l1 = 0.5 * (tr + std::copysign(disc, tr)), l2 = 1.0 / l1;
  auto eigvec = [&](double l) {
    Eigen::Vector2d v1(m(0, 1), l - m(0, 0)), v2(l - m(1, 1), m(1, 0));
    return v1.norm() >= v2.norm() ? v1 : v2;
  };
  Mat2 v;
  v.col(0) = eigvec(l1);
  v.col(1) = eigvec(l2);
  double det = v.determinant();
  if (det < 0) {
    v.col(1) = -v.col(1);
    det = -det;
  }
  return v / std::sqrt(det);
}

Mat2 inv(const Mat2& m) {
  Mat2 r;
  r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return r / m.determinant();
}

using Vec = Eigen::VectorXd;

Vec to_vec(const FNCoords& x) {
  Vec v(x.lengths.size() + x.twists.size());
  for (std::size_t i = 0; i < x.lengths.size(); ++i) v(i) = x.lengths[i];
  for (std::size_t i = 0; i < x.twists.size(); ++i) v(x.lengths.size() + i) = x.twists[i];
  return v;
}

FNCoords from_vec(const Vec& v) {
  FNCoords x;
  const auto k = v.size() / 2;
  for (Eigen::Index i = 0; i < k; ++i) x.lengths.push_back(v(i));
  for (Eigen::Index i = 0; i < k; ++i) x.twists.push_back(v(k + i));
  return x;
}

void project(Vec& v) {
  for (Eigen::Index i = 0; i < v.size() / 2; ++i) v(i) = std::clamp(v(i), kMinPantsLength, kMaxPantsLength);
}

class Objective {
public:
  explicit Objective(const CurveMultiset& v) : v_(v) {}
  double operator()(Vec p) const {
    project(p);
    try {
      return total_length(from_vec(p), v_);
    } catch (const std::domain_error&) {
      return kInf;
    }
  }
  Vec gradient(const Vec& p, double h) const {
    Vec g(p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      Vec a = p, b = p;
      a(i) += h;
      b(i) -= h;
      g(i) = ((*this)(a) - (*this)(b)) / (2 * h);
    }
    return g;
  }
  Eigen::MatrixXd hessian(const Vec& p, double h) const {
    const Eigen::Index n = p.size();
    Eigen::MatrixXd H(n, n);
    const double f0 = (*this)(p);
    for (Eigen::Index i = 0; i < n; ++i) {
      Vec a = p, b = p;
      a(i) += h;
      b(i) -= h;
      H(i, i) = ((*this)(a) - 2 * f0 + (*this)(b)) / (h * h);
      for (Eigen::Index j = 0; j < i; ++j) {
        Vec pp = p, pm = p, mp = p, mm = p;
        pp(i) += h, pp(j) += h;
        pm(i) += h, pm(j) -= h;
        mp(i) -= h, mp(j) += h;
        mm(i) -= h, mm(j) -= h;
        H(i, j) = H(j, i) = ((*this)(pp) - (*this)(pm) - (*this)(mp) + (*this)(mm)) / (4 * h * h);
      }
    }
    return H;
  }

private:
  const CurveMultiset& v_;
};

// Golden-section minimisation of f(p + t e_i) after bracketing; lengths
// stay in the window.
void line_minimize(const Objective& f, Vec& p, Eigen::Index i, bool is_length) {
  auto phi = [&](double t) {
    Vec q = p;
    q(i) += t;
    return f(q);
  };
  double lo = -kInf, hi = kInf;
  if (is_length) {
    lo = kMinPantsLength - p(i);
    hi = kMaxPantsLength - p(i);
  }
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double step = is_length ? 0.1 * std::max(p(i), 0.05) : 0.25;
  double f0 = phi(0.0);
  double dir = phi(std::min(step, hi)) < f0 ? 1.0 : -1.0;
  if (dir < 0 && phi(std::max(-step, lo)) >= f0) {
    // Minimum within [-step, step].
    lo = std::max(-step, lo);
    hi = std::min(step, hi);
  } else {
    double a = 0.0, b = dir * step, fb = phi(b);
    double fa = f0;
    for (int k = 0; k < 60; ++k) {
      double c = b + dir * (std::abs(b - a) / gr);
      c = std::clamp(c, lo, hi);
      double fc = phi(c);
      if (fc >= fb || c == lo || c == hi) {
        lo = std::min(a, c);
        hi = std::max(a, c);
        break;
      }
      a = b, fa = fb;
      b = c, fb = fc;
    }
    (void)fa;
    if (!std::isfinite(lo) || !std::isfinite(hi)) return;
  }
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int k = 0; k < 80 && b - a > 1e-10; ++k) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - gr * (b - a);
      fc = phi(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + gr * (b - a);
      fd = phi(d);
    }
  }
  double t = 0.5 * (a + b);
  if (phi(t) < f0) p(i) += t;
}

struct Run {
  Vec point;
  double value = kInf;
  double gradient_norm = kInf;
};

Run descend(const Objective& f, Vec p, const MinimizeOptions& opt) {
  const Eigen::Index n = p.size();
  project(p);
  double fp = f(p);
  // Coordinate descent: twist lines are convex, length lines are searched
  // in the window.
  for (int sweep = 0; sweep < 200; ++sweep) {
    const double before = fp;
    for (Eigen::Index i = 0; i < n; ++i) line_minimize(f, p, i, i < n / 2);
    fp = f(p);
    if (before - fp < 1e-9 * (1.0 + std::abs(fp))) break;
  }
  // Damped Newton polish on finite-difference derivatives.
  Vec g = f.gradient(p, 1e-4);
  for (int it = 0; it < opt.max_iterations && g.norm() >= opt.tolerance; ++it) {
    Eigen::MatrixXd H = f.hessian(p, 1e-3);
    double mu = 0.0;
    bool moved = false;
    for (int k = 0; k < 30 && !moved; ++k) {
      Eigen::MatrixXd A = H + mu * Eigen::MatrixXd::Identity(n, n);
      Eigen::LLT<Eigen::MatrixXd> llt(A);
      if (llt.info() == Eigen::Success) {
        Vec d = llt.solve(-g);
        for (double s = 1.0; s > 1e-6; s *= 0.5) {
          Vec q = p + s * d;
          project(q);
          double fq = f(q);
          if (fq <= fp - 1e-4 * s * std::abs(g.dot(d)) || (fq <= fp && s * d.norm() < 1e-8)) {
            p = q, fp = fq;
            moved = true;
            break;
          }
        }
      }
      mu = mu == 0.0 ? 1e-6 * std::max(1.0, H.diagonal().cwiseAbs().maxCoeff()) : mu * 10.0;
    }
    g = f.gradient(p, 1e-4);
    if (!moved) break;
  }
  return {p, fp, g.norm()};
}

} // namespace

std::vector<CurveId> pants_curves(int genus) {
  if (genus != 2) throw std::invalid_argument("Fenchel-Nielsen coordinates are implemented for genus 2");
  return {parse_curve_id("c1", 2), parse_curve_id("c3", 2), parse_curve_id("c5", 2)};
}

std::vector<Mat2> holonomy_generators(const FNCoords& x) {
  if (x.lengths.size() != 3 || x.twists.size() != 3)
    throw std::invalid_argument("Fenchel-Nielsen coordinates are implemented for genus 2 (3 lengths, 3 twists)");
  for (double l : x.lengths)
    if (!(l >= kMinPantsLength && l <= kMaxPantsLength))
      throw std::invalid_argument("pants length outside the supported window [1e-4, 20]");
  const double lb = x.lengths[0], lc = x.lengths[1], la = x.lengths[2]; // c1 = a2, c3 = a1 a2, c5 = a1
  const double ta = x.twists[2] * la / (2 * kPi), tb = x.twists[0] * lb / (2 * kPi), tc = x.twists[1] * lc / (2 * kPi);

  // First pair of pants <a1, a2>: axes at distance d, tr(a1 a2) = -2 cosh(lc/2).
  const double cosh_d = (std::cosh(lc / 2) + std::cosh(la / 2) * std::cosh(lb / 2)) /
                        (std::sinh(la / 2) * std::sinh(lb / 2));
  const double d = std::acosh(cosh_d);
  Mat2 rd;
  rd << std::cosh(d / 2), std::sinh(d / 2), std::sinh(d / 2), std::cosh(d / 2);
  const Mat2 a1 = diag_translation(la);
  const Mat2 a2 = rd * diag_translation(-lb) * inv(rd);

  // Second pair of pants: the mirror image of the first in the axis of
  // a1^-1 a2^-1, slid along that axis by the c3 twist.
  const Mat2 m = inv(a1) * inv(a2);
  const Mat2 v = axis_frame(m);
  const Mat2 glue = v * diag_translation(tc) * flip() * inv(v); // orientation reversing

  // b1 carries a1 to the mirrored copy of a1^-1's inverse; b2 likewise.
  const Mat2 b1 = glue * flip() * diag_translation(ta);
  const Mat2 b2 = inv(a2) * glue * rd * flip() * diag_translation(tb) * inv(rd);
  // Rounding in long products drifts the determinant; renormalise.
  std::vector<Mat2> gens{a1, b1, a2, b2};
  for (auto& g : gens) g /= std::sqrt(g.determinant());
  return gens;
}

FuchsianRealization holonomy(const FNCoords& x) { return FuchsianRealization(2, holonomy_generators(x)); }

CurveMultiset make_multiset(int genus, const std::vector<CurveSpec>& curves) {
  const SurfaceGroup& G = surface_group(genus);
  CurveMultiset out;
  std::vector<std::vector<Letter>> keys;
  for (const auto& c : curves) {
    Word w = curve_word(genus, c);
    auto key = G.curve_key(w);
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it != keys.end()) {
      ++out[it - keys.begin()].multiplicity;
      continue;
    }
    keys.push_back(key);
    out.push_back({c, w, 1});
  }
  return out;
}

double total_length(const FNCoords& x, const CurveMultiset& v) {
  const auto gens = holonomy_generators(x);
  double total = 0.0;
  for (const auto& c : v) total += c.multiplicity * trace_length(gens, c.word);
  return total;
}

Eigen::VectorXd length_gradient(const FNCoords& x, const CurveMultiset& v, double step) {
  return Objective(v).gradient(to_vec(x), step);
}

LengthReport minimize_length(const CurveMultiset& v, const MinimizeOptions& options) {
  if (v.empty()) throw std::invalid_argument("minimize_length: empty multiset");
  const int genus = 2;
  std::vector<Word> words;
  for (const auto& c : v) words.push_back(c.word);
  if (!arrangement(standard_realization(genus), words).fills)
    throw std::invalid_argument("minimize_length: the curves do not fill, the minimum is not attained");

  Objective f(v);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> len(0.5, 4.0), tw(-kPi, kPi);
  LengthReport report;
  report.multiset = v;
  Run best;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Vec p(6);
    if (r == 0 && options.start) {
      p = to_vec(*options.start);
    } else {
      for (int i = 0; i < 3; ++i) p(i) = len(rng);
      for (int i = 3; i < 6; ++i) p(i) = tw(rng);
    }
    Run run = descend(f, p, options);
    report.restart_values.push_back(run.value);
    if (run.gradient_norm < options.tolerance && (best.gradient_norm >= options.tolerance || run.value < best.value))
      best = run;
    else if (best.gradient_norm >= options.tolerance && run.value < best.value)
      best = run;
  }
  if (!(best.gradient_norm < options.tolerance))
    throw std::runtime_error("minimize_length: gradient tolerance not reached");
  report.value = best.value;
  report.minimizer = from_vec(best.point);
  report.gradient_norm = best.gradient_norm;
  return report;
}

namespace {

std::vector<std::vector<Letter>> multiset_key(const Fibration& f) {
  const SurfaceGroup& G = surface_group(f.genus);
  std::vector<std::vector<Letter>> keys;
  for (const auto& c : f.cycles) keys.push_back(G.curve_key(curve_word(f.genus, c)));
  std::sort(keys.begin(), keys.end());
  return keys;
}

// Breadth-first Hurwitz orbit, deduplicated by the multiset of curve
// classes, truncated to max_nodes in visiting order.
std::vector<std::pair<Fibration, int>> hurwitz_orbit(const Fibration& f, int depth, int max_nodes) {
  std::vector<std::pair<Fibration, int>> nodes{{f, 0}};
  std::set<std::vector<std::vector<Letter>>> seen{multiset_key(f)};
  std::size_t begin = 0;
  for (int d = 1; d <= depth; ++d) {
    const std::size_t end = nodes.size();
    for (std::size_t k = begin; k < end; ++k) {
      const Fibration node = nodes[k].first; // nodes grows below
      for (int i = 1; i < static_cast<int>(node.size()); ++i)
        for (auto dir : {HurwitzDirection::Right, HurwitzDirection::Left}) {
          if (static_cast<int>(nodes.size()) >= max_nodes) return nodes;
          Fibration child = hurwitz_move(node, i, dir);
          if (seen.insert(multiset_key(child)).second) nodes.push_back({std::move(child), d});
        }
    }
    begin = end;
  }
  return nodes;
}

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& th : pool) th.join();
}

} // namespace

LengthSearch length_invariant(const Fibration& f, int depth, const OrbitOptions& options) {
  if (!validate(f).trivial_closed) throw std::invalid_argument("invalid fibration: monodromy is not trivial");
  auto nodes = hurwitz_orbit(f, depth, options.max_nodes);
  // The root is minimised with full restarts; other nodes start from it.
  MinimizeOptions root_opt;
  root_opt.seed = options.seed;
  LengthReport root = minimize_length(make_multiset(f.genus, f.cycles), root_opt);

  std::vector<double> values(nodes.size(), kInf);
  std::vector<FNCoords> mins(nodes.size());
  values[0] = root.value;
  mins[0] = root.minimizer;
  parallel_for(nodes.size() - 1, options.threads, [&](std::size_t k) {
    const std::size_t i = k + 1;
    MinimizeOptions opt;
    opt.restarts = 2;
    opt.seed = options.seed + i;
    opt.start = &root.minimizer;
    try {
      LengthReport r = minimize_length(make_multiset(f.genus, nodes[i].first.cycles), opt);
      values[i] = r.value;
      mins[i] = r.minimizer;
    } catch (const std::exception&) {
      values[i] = kInf; // not filling or not converged: no finite value
    }
  });

  LengthSearch out;
  out.orbit_visited = static_cast<int>(nodes.size());
  out.best = kInf;
  out.best_by_depth.assign(depth + 1, kInf);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (values[i] < out.best) {
      out.best = values[i];
      out.minimizer = mins[i];
      out.argmin = nodes[i].first;
    }
    for (int d = nodes[i].second; d <= depth; ++d) out.best_by_depth[d] = std::min(out.best_by_depth[d], values[i]);
  }
  return out;
}

int total_intersections(const Fibration& f) {
  const CurveMultiset v = make_multiset(f.genus, f.cycles);
  std::vector<Word> words;
  for (const auto& c : v) words.push_back(c.word);
  const Arrangement arr = arrangement(standard_realization(f.genus), words);
  int total = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      total += v[i].multiplicity * v[j].multiplicity * arr.intersections(i, j);
  return total;
}

IntersectionSearch min_total_intersections(const Fibration& f, int depth, const OrbitOptions& options) {
  if (!validate(f).trivial_closed) throw std::invalid_argument("invalid fibration: monodromy is not trivial");
  auto nodes = hurwitz_orbit(f, depth, options.max_nodes);
  std::vector<int> values(nodes.size());
  parallel_for(nodes.size(), options.threads, [&](std::size_t i) { values[i] = total_intersections(nodes[i].first); });
  IntersectionSearch out;
  out.orbit_visited = static_cast<int>(nodes.size());
  out.best = std::numeric_limits<int>::max();
  out.best_by_depth.assign(depth + 1, std::numeric_limits<int>::max());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (values[i] < out.best) {
      out.best = values[i];
      out.argmin = nodes[i].first;
    }
    for (int d = nodes[i].second; d <= depth; ++d) out.best_by_depth[d] = std::min(out.best_by_depth[d], values[i]);
  }
  return out;
}

} // namespace lefschetz
