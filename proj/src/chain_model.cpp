// Derivation of the standard twist generators from a ribbon model.
//
// The surface Sigma_{g,1} is built as a disc with 2g+1 bands attached along
// a chain; the band cores are the chain curves c_1..c_{2g+1}.  The ribbon
// has two boundary circles.  Capping the second one with a disc leaves a
// surface with one boundary circle whose fundamental group is free on the
// first 2g band loops.  Twists about band cores are read off from chord
// crossings inside the disc.  A Nielsen normalisation then rewrites the
// boundary word as prod [a_i, b_i], and a fixed change of marking makes the
// regular 4g-gon realization symmetric with respect to the chain.

#include "chain_model.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace lefschetz::detail {

namespace {

using Raw = std::vector<Letter>;

Raw inv(const Raw& w) {
  Raw out(w.rbegin(), w.rend());
  for (auto& x : out) x = -x;
  return out;
}

Raw cat(std::initializer_list<Raw> parts) {
  Raw out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return Word(out).letters();
}

Raw slice(const Raw& w, std::size_t lo, std::size_t hi) { return Raw(w.begin() + lo, w.begin() + hi); }

std::size_t index_of(const Raw& w, Letter x) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == x) return i;
  throw std::logic_error("chain model: letter not found");
}

// Disc with n bands.  Feet sit at positions 1..2n on the boundary circle,
// the basepoint at position 0.
struct Ribbon {
  int bands = 0;
  int positions = 0;
  std::vector<int> plus, minus;               // foot positions, indexed by band
  std::vector<std::pair<int, int>> foot;      // position -> (band, +-1)

  explicit Ribbon(int n) : bands(n), positions(2 * n), plus(n + 1), minus(n + 1), foot(2 * n + 1) {
    std::vector<std::pair<int, int>> order{{1, 1}, {2, 1}, {1, -1}};
    for (int k = 3; k <= n; ++k) {
      order.push_back({k, 1});
      order.push_back({k - 1, -1});
    }
    order.push_back({n, -1});
    for (std::size_t p = 0; p < order.size(); ++p) {
      auto [b, s] = order[p];
      int pos = static_cast<int>(p) + 1;
      (s > 0 ? plus : minus)[b] = pos;
      foot[pos] = {b, s};
    }
  }

  int other_foot(int pos) const {
    auto [b, s] = foot[pos];
    return s > 0 ? minus[b] : plus[b];
  }

  // Boundary circles of the ribbon as words in the band loops, starting
  // with the one through the basepoint gap.
  std::vector<Raw> boundaries() const {
    std::vector<bool> seen(positions + 1, false);
    std::vector<Raw> out;
    for (int start = 0; start <= positions; ++start) {
      if (seen[start]) continue;
      Raw w;
      int k = start;
      while (true) {
        seen[k] = true;
        int p = k + 1;
        if (p == positions + 1) {
          k = 0;
          if (k == start) break;
          continue;
        }
        auto [b, s] = foot[p];
        w.push_back(s > 0 ? b : -b);
        k = other_foot(p);
        if (k == start) break;
      }
      out.push_back(Word(w).letters());
    }
    return out;
  }

  std::pair<double, double> point(int p) const {
    double t = 2.0 * std::numbers::pi * p / (positions + 1);
    return {std::cos(t), std::sin(t)};
  }

  // Sign of the crossing of chord p1->p2 with chord q1->q2, 0 if disjoint.
  int cross_sign(int p1, int p2, int q1, int q2) const {
    if (p1 == q1 || p1 == q2 || p2 == q1 || p2 == q2) return 0;
    auto inside = [](int x, int a, int b) { return std::min(a, b) < x && x < std::max(a, b); };
    if (inside(q1, p1, p2) == inside(q2, p1, p2)) return 0;
    auto [ax, ay] = point(p1);
    auto [bx, by] = point(p2);
    auto [cx, cy] = point(q1);
    auto [dx, dy] = point(q2);
    double c = (bx - ax) * (dy - cy) - (by - ay) * (dx - cx);
    return c > 0 ? 1 : -1;
  }

  // Twist about the core of band i; eps = -1 is the positive twist.
  std::vector<Raw> twist(int i, int eps) const {
    std::vector<Raw> img(bands + 1);
    for (int j = 1; j <= bands; ++j) {
      if (j == i) {
        img[j] = {j};
        continue;
      }
      int s1 = cross_sign(0, plus[j], minus[i], plus[i]);
      int s2 = cross_sign(minus[j], 0, minus[i], plus[i]);
      Raw w;
      if (s1) w.push_back(i * eps * s1);
      w.push_back(j);
      if (s2) w.push_back(i * eps * s2);
      img[j] = Word(w).letters();
    }
    return img;
  }
};

Raw substitute(const std::vector<Raw>& images, const Raw& w) {
  Raw out;
  for (Letter x : w) {
    const Raw& piece = images[std::abs(x)];
    if (x > 0)
      out.insert(out.end(), piece.begin(), piece.end());
    else {
      Raw p = inv(piece);
      out.insert(out.end(), p.begin(), p.end());
    }
  }
  return Word(out).letters();
}

// Rewrites a cyclic word in which every generator occurs exactly once with
// each sign into the standard form prod [x_i, y_i].  Returns the handle
// pairs as words in the original generators.
std::vector<std::pair<Raw, Raw>> normalize(const Raw& d, int rank) {
  std::map<int, Raw> expr;
  for (int k = 1; k <= rank; ++k) expr[k] = {k};
  int next = rank + 1;
  auto expr_of = [&](Letter t) { return t > 0 ? expr.at(t) : inv(expr.at(-t)); };
  auto apply_expr = [&](const Raw& w) {
    Raw r;
    for (Letter t : w) {
      Raw e = expr_of(t);
      r.insert(r.end(), e.begin(), e.end());
    }
    return Word(r).letters();
  };
  // old = left * new * right
  auto new_generator = [&](Letter old, const Raw& left, const Raw& right) {
    int fresh = next++;
    expr[fresh] = cat({inv(apply_expr(left)), expr_of(old), inv(apply_expr(right))});
    return fresh;
  };
  auto subst = [](const Raw& w, Letter old, Letter fresh, const Raw& left, const Raw& right) {
    Raw out;
    for (Letter x : w) {
      if (x == old) {
        out.insert(out.end(), left.begin(), left.end());
        out.push_back(fresh);
        out.insert(out.end(), right.begin(), right.end());
      } else if (x == -old) {
        Raw ri = inv(right), li = inv(left);
        out.insert(out.end(), ri.begin(), ri.end());
        out.push_back(-fresh);
        out.insert(out.end(), li.begin(), li.end());
      } else {
        out.push_back(x);
      }
    }
    return Word(out).letters();
  };

  std::vector<std::pair<Raw, Raw>> handles;
  Raw rest = d;
  while (!rest.empty()) {
    std::map<Letter, std::size_t> pos;
    for (std::size_t i = 0; i < rest.size(); ++i) pos[rest[i]] = i;
    Letter x = 0, y = 0;
    for (std::size_t i = 0; i < rest.size() && !x; ++i) {
      std::size_t j = pos.at(-rest[i]);
      std::size_t lo = std::min(i, j), hi = std::max(i, j);
      for (std::size_t k = lo + 1; k < hi; ++k) {
        std::size_t jj = pos.at(-rest[k]);
        if (!(lo < jj && jj < hi)) {
          x = rest[i];
          y = rest[k];
          break;
        }
      }
    }
    if (!x) throw std::logic_error("chain model: boundary word has no interleaved pair");
    std::size_t i0 = index_of(rest, x);
    rest = cat({slice(rest, i0, rest.size()), slice(rest, 0, i0)});
    std::size_t p = index_of(rest, y), q = index_of(rest, -x), r = index_of(rest, -y);
    if (!(p < q && q < r)) {
      y = -y;
      p = index_of(rest, y);
      q = index_of(rest, -x);
      r = index_of(rest, -y);
    }
    if (!(0 < p && p < q && q < r)) throw std::logic_error("chain model: normalisation failed");
    Raw B = slice(rest, 1, p);
    Letter x1 = new_generator(x, {}, inv(B));
    rest = subst(rest, x, x1, {}, inv(B));
    std::size_t iy = index_of(rest, y);
    Raw Cn = slice(rest, iy + 1, index_of(rest, -x1));
    Letter y1 = new_generator(y, {}, inv(Cn));
    rest = subst(rest, y, y1, {}, inv(Cn));
    Raw M = slice(rest, index_of(rest, -x1) + 1, index_of(rest, -y1));
    Letter y2 = new_generator(y1, {}, M);
    rest = subst(rest, y1, y2, {}, M);
    Letter x2 = new_generator(x1, {}, M);
    rest = subst(rest, x1, x2, {}, M);
    Letter y3 = new_generator(y2, inv(M), {});
    rest = subst(rest, y2, y3, inv(M), {});
    if (rest.size() < 4 || rest[0] != x2 || rest[1] != y3 || rest[2] != -x2 || rest[3] != -y3)
      throw std::logic_error("chain model: handle extraction failed");
    handles.push_back({expr.at(x2), expr.at(y3)});
    rest = slice(rest, 4, rest.size());
  }
  return handles;
}

// Inverse of a free-group automorphism given by generator images, found by
// length-reducing Nielsen moves.  Returns images of the generators.
std::vector<Raw> nielsen_inverse(const std::vector<Raw>& images) {
  const int n = static_cast<int>(images.size()) - 1;
  std::vector<Raw> img(images), track(n + 1);
  for (int k = 1; k <= n; ++k) track[k] = {k};
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        for (int sj : {1, -1})
          for (int side = 0; side < 2; ++side) {
            Raw wj = sj > 0 ? img[j] : inv(img[j]);
            Raw tj = sj > 0 ? track[j] : inv(track[j]);
            Raw nw = side == 0 ? cat({img[i], wj}) : cat({wj, img[i]});
            if (nw.size() < img[i].size()) {
              img[i] = nw;
              track[i] = side == 0 ? cat({track[i], tj}) : cat({tj, track[i]});
              changed = true;
            }
          }
      }
  }
  std::vector<Raw> phi(n + 1);
  for (int i = 1; i <= n; ++i) {
    if (img[i].size() != 1) throw std::logic_error("chain model: Nielsen reduction stalled");
    Letter x = img[i][0];
    phi[std::abs(x)] = x > 0 ? track[i] : inv(track[i]);
  }
  return phi;
}

std::vector<Word> to_words(const std::vector<Raw>& images) {
  std::vector<Word> out;
  for (std::size_t k = 1; k < images.size(); ++k) out.emplace_back(images[k]);
  return out;
}

} // namespace

ChainModel build_chain_model(int genus) {
  if (genus < 2) throw std::invalid_argument("genus must be at least 2");
  const int rank = 2 * genus, n = rank + 1;
  Ribbon ribbon(n);
  auto comps = ribbon.boundaries();
  if (comps.size() != 2) throw std::logic_error("chain model: expected two boundary circles");
  const Raw& d = comps[0];
  const Raw& capped = comps[1];

  // The capped boundary is trivial: solve it for the last band loop.
  std::size_t k = 0, count = 0;
  for (std::size_t i = 0; i < capped.size(); ++i)
    if (std::abs(capped[i]) == n) {
      k = i;
      ++count;
    }
  if (count != 1) throw std::logic_error("chain model: capped boundary must contain the last band once");
  Raw xs = cat({inv(slice(capped, 0, k)), inv(slice(capped, k + 1, capped.size()))});
  Raw xn = capped[k] > 0 ? xs : inv(xs);
  std::vector<Raw> cap(n + 1);
  for (int i = 1; i < n; ++i) cap[i] = {i};
  cap[n] = xn;
  Raw dd = substitute(cap, d);

  auto band_twists = [&](int eps) {
    std::vector<std::vector<Raw>> out(n + 1);
    for (int i = 1; i <= n; ++i) {
      auto t = ribbon.twist(i, eps);
      out[i].resize(rank + 1);
      for (int j = 1; j <= rank; ++j) out[i][j] = substitute(cap, t[j]);
    }
    return out;
  };
  auto positive = band_twists(-1), negative = band_twists(1);

  auto handles = normalize(dd, rank);
  std::vector<Raw> psi(rank + 1);
  for (int i = 1; i <= genus; ++i) {
    psi[2 * i - 1] = handles[i - 1].first;
    psi[2 * i] = handles[i - 1].second;
  }
  std::vector<Raw> phi = nielsen_inverse(psi);
  FreeAutomorphism Psi(to_words(psi), to_words(phi));
  FreeAutomorphism Phi = Psi.inverse();
  SurfaceGroup group(genus);
  if (Psi.apply(group.relator()) != Word(dd))
    throw std::logic_error("chain model: normal form does not match the boundary word");

  std::vector<FreeAutomorphism> twists;
  for (int i = 1; i <= n; ++i) {
    FreeAutomorphism t(to_words(positive[i]), to_words(negative[i]));
    twists.push_back(compose(compose(Phi, t), Psi));
  }
  std::vector<Word> words;
  for (int i = 1; i <= rank; ++i) words.push_back(Phi.apply(Word({i})));
  words.push_back(Phi.apply(Word(xn)));

  // Change of marking h = t_1 ... t_{2g-1} t_{2g+1}^{-1}.
  FreeAutomorphism h = FreeAutomorphism::identity(rank);
  for (int i = 1; i < rank; ++i) h = compose(h, twists[i - 1]);
  h = compose(h, twists[n - 1].inverse());
  FreeAutomorphism h_inv = h.inverse();

  ChainModel model;
  model.genus = genus;
  for (int i = 0; i < n; ++i) {
    model.chain_twists.push_back(compose(compose(h, twists[i]), h_inv));
    model.chain_words.push_back(group.cyclic_reduce(h.apply(words[i])).word);
  }

  // s_j bounds the sub-chain c_1..c_{2j}; its twist is the chain relation
  // (t_1 ... t_{2j})^{4j+2} and its curve is the boundary of that sub-ribbon.
  for (int j = 1; j <= genus / 2; ++j) {
    FreeAutomorphism s = FreeAutomorphism::identity(rank);
    for (int rep = 0; rep < 4 * j + 2; ++rep)
      for (int i = 0; i < 2 * j; ++i) s = compose(s, model.chain_twists[i]);
    model.separating_twists.push_back(s);
    Raw sub_boundary = Ribbon(2 * j).boundaries().front();
    Word in_ab = Phi.apply(Word(substitute(cap, sub_boundary)));
    model.separating_words.push_back(group.cyclic_reduce(h.apply(in_ab)).word);
  }
  return model;
}

} // namespace lefschetz::detail
