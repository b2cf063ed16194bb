#include "lefschetz/shear.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace lefschetz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double clockwise(double from, double to) {
  double d = std::fmod(from - to, kTwoPi);
  if (d < 0) d += kTwoPi;
  if (d > kTwoPi - 1e-10 || d < 1e-10) d = 0.0;
  return d;
}

double endpoint_angle(const FuchsianRealization& r, const Word& w) { return axis_endpoints(r, w).first.angle; }

} // namespace

GroupAutomorphism::GroupAutomorphism(int genus, std::vector<Word> images) : genus_(genus), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != 2 * genus_) throw std::invalid_argument("group automorphism needs 2g images");
  const SurfaceGroup& G = surface_group(genus_);
  for (auto& w : images_) w = G.dehn_reduce(w);
}

GroupAutomorphism GroupAutomorphism::identity(int genus) {
  std::vector<Word> images;
  for (int x = 1; x <= 2 * genus; ++x) images.push_back(Word::generator(x));
  return {genus, std::move(images)};
}

GroupAutomorphism GroupAutomorphism::from(const MappingClass& m) { return {m.genus(), m.aut().images()}; }

GroupAutomorphism GroupAutomorphism::inner(int genus, const Word& u) {
  std::vector<Word> images;
  for (int x = 1; x <= 2 * genus; ++x) images.push_back(u * Word::generator(x) * u.inverse());
  return {genus, std::move(images)};
}

Word GroupAutomorphism::apply(const Word& w) const {
  std::vector<Letter> raw;
  for (Letter x : w.letters()) {
    const Word& img = images_[std::abs(x) - 1];
    if (x > 0)
      raw.insert(raw.end(), img.letters().begin(), img.letters().end());
    else
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) raw.push_back(-*it);
  }
  return surface_group(genus_).dehn_reduce(Word(raw));
}

bool GroupAutomorphism::equals(const GroupAutomorphism& other) const {
  if (genus_ != other.genus_) return false;
  const SurfaceGroup& G = surface_group(genus_);
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!G.equal(images_[i], other.images_[i])) return false;
  return true;
}

GroupAutomorphism compose(const GroupAutomorphism& phi, const GroupAutomorphism& psi) {
  std::vector<Word> images;
  for (const auto& w : psi.images()) images.push_back(phi.apply(w));
  return {phi.genus(), std::move(images)};
}

GroupAutomorphism repin(const GroupAutomorphism& phi, const Word& w) {
  std::vector<Word> images;
  Word wi = w.inverse();
  for (const auto& x : phi.images()) images.push_back(wi * x * w);
  return {phi.genus(), std::move(images)};
}

Word twist_displacement(const FuchsianRealization& r, const std::vector<Lift>& lifts, Complex p, Complex q, int sign,
                        int orientation) {
  Word W;
  for (const auto& c : segment_crossings(r, lifts, p, q)) W *= c.element.power(sign * orientation * c.sign);
  return surface_group(r.genus()).dehn_reduce(W);
}

GroupAutomorphism pinned_twist(const FuchsianRealization& r, const std::vector<Lift>& lifts, Complex p, int sign,
                               int orientation) {
  std::vector<Word> images;
  for (int x = 1; x <= 2 * r.genus(); ++x) {
    Word gx = Word::generator(x);
    Complex q = mobius(r.disc_matrix(gx), p);
    images.push_back(twist_displacement(r, lifts, p, q, sign, orientation) * gx);
  }
  return {r.genus(), std::move(images)};
}

const BasePoint& base_point(int genus) {
  static std::mutex mutex;
  static std::map<int, BasePoint> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(genus); it != cache.end()) return it->second;

  const FuchsianRealization& r = standard_realization(genus);
  const auto curves = standard_curves(genus);
  std::vector<Word> words;
  std::vector<std::vector<Lift>> lifts;
  std::vector<GroupAutomorphism> algebraic;
  for (const auto& c : curves) {
    words.push_back(standard_curve_word(genus, c));
    lifts.push_back(lifts_through_domain(r, words.back()));
    algebraic.push_back(GroupAutomorphism::from(standard_twist(genus, c)));
  }
  const Arrangement arr = arrangement(r, words);
  std::vector<Word> translates{Word{}};
  for (int x = -2 * genus; x <= 2 * genus; ++x) {
    if (x == 0) continue;
    translates.push_back(Word::generator(x));
    for (int y = -2 * genus; y <= 2 * genus; ++y)
      if (y != 0 && y != -x) translates.push_back(Word{x, y});
  }
  for (const auto& t : translates) {
    const CMat2 m = r.disc_matrix(t);
    for (const auto& cell : arr.cells) {
      Complex p = mobius(m, klein_to_disc(cell.centroid));
      for (int orientation : {1, -1}) {
        bool ok = true;
        for (std::size_t i = 0; ok && i < curves.size(); ++i)
          ok = pinned_twist(r, lifts[i], p, 1, orientation).equals(algebraic[i]);
        if (ok) return cache[genus] = BasePoint{p, orientation};
      }
    }
  }
  throw std::runtime_error("no lift of the base region found");
}

std::vector<Word> circle_sample_words(const FuchsianRealization& r, int count) {
  const int g = r.genus();
  const SurfaceGroup& G = surface_group(g);
  std::vector<Word> out;
  std::vector<double> angles;
  std::vector<Word> level{Word{}};
  for (int len = 1; len <= 7; ++len) {
    std::vector<Word> next;
    for (const auto& w : level)
      for (int x = -2 * g; x <= 2 * g; ++x) {
        if (x == 0 || (!w.empty() && w.letters().back() == -x)) continue;
        next.push_back(w * Word::generator(x));
      }
    level = std::move(next);
    for (const auto& w : level) {
      if (w.letters().front() == -w.letters().back() || G.is_trivial(w)) continue;
      double a = endpoint_angle(r, w);
      bool dup = false;
      for (double b : angles)
        if (std::abs(a - b) < 1e-9 || std::abs(std::abs(a - b) - kTwoPi) < 1e-9) {
          dup = true;
          break;
        }
      if (dup) continue;
      angles.push_back(a);
      out.push_back(w);
    }
    if (static_cast<int>(out.size()) < count) continue;
    std::vector<double> sorted = angles;
    std::sort(sorted.begin(), sorted.end());
    double gap = sorted.front() + kTwoPi - sorted.back();
    for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::max(gap, sorted[i] - sorted[i - 1]);
    if (gap < kTwoPi / std::sqrt(static_cast<double>(count))) return out;
  }
  throw std::runtime_error("circle samples too sparse; increase the word length");
}

namespace {

CircleMap circle_map_on(const FuchsianRealization& r, const GroupAutomorphism& phi, const std::vector<Word>& words) {
  CircleMap map;
  for (const auto& w : words) {
    CircleSample s;
    s.angle_in = endpoint_angle(r, w);
    s.angle_out = endpoint_angle(r, phi.apply(w));
    s.displacement = clockwise(s.angle_in, s.angle_out);
    map.samples.push_back(s);
  }
  std::sort(map.samples.begin(), map.samples.end(),
            [](const CircleSample& a, const CircleSample& b) { return a.angle_in < b.angle_in; });
  map.monotone = true;
  const auto& s = map.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].displacement == 0.0) ++map.fixed_points;
    const CircleSample& next = s[(i + 1) % s.size()];
    double next_in = next.angle_in + (i + 1 == s.size() ? kTwoPi : 0.0);
    map.max_gap = std::max(map.max_gap, next_in - s[i].angle_in);
    if (next_in - next.displacement < s[i].angle_in - s[i].displacement - 1e-9) map.monotone = false;
  }
  return map;
}

} // namespace

CircleMap boundary_circle_map(const FuchsianRealization& r, const GroupAutomorphism& phi, int samples) {
  if (samples < 100) throw std::invalid_argument("circle map needs at least 100 samples");
  return circle_map_on(r, phi, circle_sample_words(r, samples));
}

CircleMap boundary_circle_map(const MappingClass& m, int samples) {
  return boundary_circle_map(standard_realization(m.genus()), GroupAutomorphism::from(m), samples);
}

RotationResult rotation_number(const FuchsianRealization& r, const std::vector<GroupAutomorphism>& factors,
                               int samples) {
  const auto words = circle_sample_words(r, samples);
  RotationResult out;
  out.samples = static_cast<int>(words.size());
  // Each distinct factor must itself be a monotone clockwise shear.
  std::vector<const GroupAutomorphism*> distinct;
  for (const auto& f : factors) {
    bool seen = false;
    for (const auto* d : distinct)
      if (d->images() == f.images()) {
        seen = true;
        break;
      }
    if (seen) continue;
    distinct.push_back(&f);
    if (!circle_map_on(r, f, words).monotone) out.factors_monotone = false;
  }
  double sum = 0.0;
  std::vector<double> totals;
  for (const auto& w : words) {
    Word u = w;
    double angle = endpoint_angle(r, u), total = 0.0;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      u = it->apply(u);
      double next = endpoint_angle(r, u);
      total += clockwise(angle, next);
      angle = next;
    }
    totals.push_back(total / kTwoPi);
    sum += total / kTwoPi;
  }
  out.mean = words.empty() ? 0.0 : sum / static_cast<double>(words.size());
  out.k = static_cast<int>(std::lround(out.mean));
  for (double t : totals) out.residual = std::max(out.residual, std::abs(t - out.k));
  if (out.residual >= 0.1) throw std::runtime_error("rotation number residual too large");
  return out;
}

RotationResult rotation_number(const Fibration& f, int samples) {
  std::vector<GroupAutomorphism> factors;
  for (const auto& m : cycle_twists(f)) factors.push_back(GroupAutomorphism::from(m));
  return rotation_number(standard_realization(f.genus), factors, samples);
}

} // namespace lefschetz
