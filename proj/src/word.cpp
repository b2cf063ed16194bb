#include "lefschetz/word.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lefschetz {

namespace {

void push_reduced(std::vector<Letter>& out, Letter x) {
  if (!out.empty() && out.back() == -x)
    out.pop_back();
  else
    out.push_back(x);
}

std::vector<Letter> free_reduce(const std::vector<Letter>& raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter x : raw) push_reduced(out, x);
  return out;
}

// Strip x ... x^{-1} from the ends; returns the stripped prefix length.
std::size_t cyclic_strip(std::vector<Letter>& w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  if (lo > 0) w = std::vector<Letter>(w.begin() + lo, w.begin() + hi);
  return lo;
}

std::vector<Letter> rotate_left(const std::vector<Letter>& w, std::size_t r) {
  std::vector<Letter> out(w.begin() + r, w.end());
  out.insert(out.end(), w.begin(), w.begin() + r);
  return out;
}

std::vector<Letter> min_rotation(const std::vector<Letter>& w) {
  if (w.empty()) return w;
  std::size_t n = w.size(), best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      Letter x = w[(r + k) % n], y = w[(best + k) % n];
      if (x != y) {
        if (x < y) best = r;
        break;
      }
    }
  }
  return rotate_left(w, best);
}

} // namespace

Word::Word(const std::vector<Letter>& raw) : letters_(free_reduce(raw)) {}

Word::Word(std::initializer_list<Letter> raw) : letters_(free_reduce(std::vector<Letter>(raw))) {}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(-*it);
  return out;
}

Word Word::operator*(const Word& other) const {
  Word out = *this;
  out *= other;
  return out;
}

Word& Word::operator*=(const Word& other) {
  for (Letter x : other.letters_) push_reduced(letters_, x);
  return *this;
}

Word Word::power(int k) const {
  Word base = k >= 0 ? *this : inverse();
  Word out;
  for (int i = 0; i < std::abs(k); ++i) out *= base;
  return out;
}

Word reduce(const std::vector<Letter>& raw, ReduceMode mode) {
  std::vector<Letter> w = free_reduce(raw);
  if (mode == ReduceMode::Cyclic) cyclic_strip(w);
  return Word(w);
}

std::string format_letter(Letter x) {
  int i = std::abs(x);
  std::string s(1, (i % 2 == 1) ? 'a' : 'b');
  if (x < 0) s[0] = static_cast<char>(std::toupper(s[0]));
  return s + std::to_string((i + 1) / 2);
}

std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << format_letter(w[i]);
  }
  return os.str();
}

Word parse_word(std::string_view text, int genus) {
  std::vector<Letter> raw;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    if (tok == "e" || tok == "1") continue;
    char c = tok[0];
    char lc = static_cast<char>(std::tolower(c));
    if ((lc != 'a' && lc != 'b') || tok.size() < 2)
      throw std::invalid_argument("bad word letter '" + tok + "'");
    int idx = 0;
    for (std::size_t k = 1; k < tok.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(tok[k])))
        throw std::invalid_argument("bad word letter '" + tok + "'");
      idx = idx * 10 + (tok[k] - '0');
    }
    if (idx < 1 || idx > genus)
      throw std::invalid_argument("letter '" + tok + "' out of range for genus " + std::to_string(genus));
    Letter x = lc == 'a' ? 2 * idx - 1 : 2 * idx;
    raw.push_back(std::isupper(static_cast<unsigned char>(c)) ? -x : x);
  }
  return Word(raw);
}

std::vector<int> abelianize(const Word& w, int genus) {
  std::vector<int> v(2 * genus, 0);
  for (Letter x : w.letters()) v[std::abs(x) - 1] += x > 0 ? 1 : -1;
  return v;
}

// ---------------------------------------------------------------------------

SurfaceGroup::SurfaceGroup(int genus) : genus_(genus) {
  if (genus < 2) throw std::invalid_argument("surface group needs genus >= 2");
  for (int i = 1; i <= genus; ++i) {
    int a = 2 * i - 1, b = 2 * i;
    for (Letter x : {a, b, -a, -b}) rel_plus_.push_back(x);
  }
  delta_ = Word(rel_plus_);
  rel_minus_ = delta_.inverse().letters();
  int n = 4 * genus;
  pos_plus_.assign(n, -1);
  pos_minus_.assign(n, -1);
  auto idx = [genus](Letter x) { return x > 0 ? x - 1 : 2 * genus - x - 1; };
  for (int k = 0; k < n; ++k) {
    pos_plus_[idx(rel_plus_[k])] = k;
    pos_minus_[idx(rel_minus_[k])] = k;
  }
}

int SurfaceGroup::relator_match(const std::vector<Letter>& w, std::size_t pos, int sign,
                                bool cyclic, int cap) const {
  const int n = 4 * genus_;
  const auto& rel = sign > 0 ? rel_plus_ : rel_minus_;
  const auto& where = sign > 0 ? pos_plus_ : pos_minus_;
  Letter x = w[pos];
  int p = where[x > 0 ? x - 1 : 2 * genus_ - x - 1];
  std::size_t m = w.size();
  int limit = std::min<int>(cap, n);
  if (cyclic)
    limit = std::min<int>(limit, static_cast<int>(m));
  else
    limit = std::min<int>(limit, static_cast<int>(m - pos));
  int k = 0;
  while (k < limit && w[(pos + k) % m] == rel[(p + k) % n]) ++k;
  return k;
}

std::vector<Letter> SurfaceGroup::complement_piece(Letter first, int sign, int len) const {
  const int n = 4 * genus_;
  const auto& rel = sign > 0 ? rel_plus_ : rel_minus_;
  const auto& where = sign > 0 ? pos_plus_ : pos_minus_;
  int p = where[first > 0 ? first - 1 : 2 * genus_ - first - 1];
  std::vector<Letter> out;
  for (int k = n - 1; k >= len; --k) out.push_back(-rel[(p + k) % n]);
  return out;
}

Word SurfaceGroup::dehn_reduce(const Word& w) const {
  std::vector<Letter> v = w.letters();
  const int half = 2 * genus_;
  std::size_t i = 0;
  while (i < v.size()) {
    int best = 0, best_sign = 0;
    for (int sign : {1, -1}) {
      int m = relator_match(v, i, sign, false, 4 * genus_);
      if (m > best) {
        best = m;
        best_sign = sign;
      }
    }
    if (best > half) {
      std::vector<Letter> rep = complement_piece(v[i], best_sign, best);
      std::vector<Letter> nv(v.begin(), v.begin() + i);
      nv.insert(nv.end(), rep.begin(), rep.end());
      nv.insert(nv.end(), v.begin() + i + best, v.end());
      v = free_reduce(nv);
      i = i > static_cast<std::size_t>(4 * genus_) ? i - 4 * genus_ : 0;
    } else {
      ++i;
    }
  }
  return Word(v);
}

SurfaceGroup::CyclicForm SurfaceGroup::cyclic_reduce(const Word& w) const {
  // invariant: cur = u * w * u^{-1} in G
  const int half = 2 * genus_;
  std::vector<Letter> cur = dehn_reduce(w).letters();
  Word u;
  for (;;) {
    std::size_t lo = 0, hi = cur.size();
    while (hi - lo >= 2 && cur[lo] == -cur[hi - 1]) {
      ++lo;
      --hi;
    }
    if (lo > 0) {
      Word x(std::vector<Letter>(cur.begin(), cur.begin() + lo));
      cur = std::vector<Letter>(cur.begin() + lo, cur.begin() + hi);
      u = x.inverse() * u;
    }
    if (cur.empty()) break;
    bool rotated = false;
    for (std::size_t i = 0; i < cur.size() && !rotated; ++i) {
      for (int sign : {1, -1}) {
        int m = relator_match(cur, i, sign, true, 4 * genus_);
        if (m > half) {
          Word p(std::vector<Letter>(cur.begin(), cur.begin() + i));
          cur = rotate_left(cur, i);
          u = p.inverse() * u;
          std::vector<Letter> rep = complement_piece(cur[0], sign, m);
          std::vector<Letter> nv = rep;
          nv.insert(nv.end(), cur.begin() + m, cur.end());
          cur = dehn_reduce(Word(nv)).letters();
          rotated = true;
          break;
        }
      }
    }
    if (!rotated) break;
  }
  return {Word(cur), u};
}

std::vector<SurfaceGroup::ClosureEntry> SurfaceGroup::closure(const Word& w, std::size_t limit) const {
  CyclicForm start = cyclic_reduce(w);
  std::vector<ClosureEntry> out;
  if (start.word.empty()) {
    out.push_back({{}, start.conjugator});
    return out;
  }
  const std::size_t budget = start.word.size() + 2;
  std::set<std::vector<Letter>> seen;
  std::deque<ClosureEntry> queue;
  seen.insert(min_rotation(start.word.letters()));
  queue.push_back({start.word.letters(), start.conjugator});
  const int n = 4 * genus_;
  while (!queue.empty() && out.size() < limit) {
    ClosureEntry e = queue.front();
    queue.pop_front();
    out.push_back(e);
    const auto& s = e.word;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (int sign : {1, -1}) {
        int m = relator_match(s, i, sign, true, n);
        for (int len = 2 * genus_ - 1; len <= m; ++len) {
          std::vector<Letter> r = rotate_left(s, i);
          Word p(std::vector<Letter>(s.begin(), s.begin() + i));
          std::vector<Letter> nv = complement_piece(r[0], sign, len);
          nv.insert(nv.end(), r.begin() + len, r.end());
          std::vector<Letter> red = free_reduce(nv);
          // cyclic strip with bookkeeping
          std::size_t lo = 0, hi = red.size();
          while (hi - lo >= 2 && red[lo] == -red[hi - 1]) {
            ++lo;
            --hi;
          }
          Word x(std::vector<Letter>(red.begin(), red.begin() + lo));
          std::vector<Letter> c(red.begin() + lo, red.begin() + hi);
          if (c.empty() || c.size() > budget) continue;
          auto key = min_rotation(c);
          if (seen.count(key)) continue;
          seen.insert(key);
          Word conj = x.inverse() * p.inverse() * e.conjugator;
          queue.push_back({c, conj});
        }
      }
    }
  }
  return out;
}

std::optional<Word> SurfaceGroup::conjugacy_witness(const Word& w1, const Word& w2) const {
  CyclicForm c2 = cyclic_reduce(w2);
  if (c2.word.empty()) {
    if (is_trivial(w1)) return Word();
    return std::nullopt;
  }
  const auto& target = c2.word.letters();
  for (const auto& e : closure(w1, 20000)) {
    if (e.word.size() != target.size()) continue;
    std::size_t n = target.size();
    for (std::size_t r = 0; r < n; ++r) {
      bool same = true;
      for (std::size_t k = 0; k < n && same; ++k) same = e.word[(r + k) % n] == target[k];
      if (!same) continue;
      Word p(std::vector<Letter>(e.word.begin(), e.word.begin() + r));
      Word u = dehn_reduce(c2.conjugator.inverse() * p.inverse() * e.conjugator);
      if (is_trivial(u * w1 * u.inverse() * w2.inverse())) return u;
    }
  }
  return std::nullopt;
}

std::vector<Letter> SurfaceGroup::conjugacy_key(const Word& w) const {
  auto cl = closure(w, 20000);
  std::size_t best_len = SIZE_MAX;
  for (const auto& e : cl) best_len = std::min(best_len, e.word.size());
  std::vector<Letter> best;
  bool have = false;
  for (const auto& e : cl) {
    if (e.word.size() != best_len) continue;
    auto r = min_rotation(e.word);
    if (!have || r < best) {
      best = r;
      have = true;
    }
  }
  return best;
}

std::vector<Letter> SurfaceGroup::curve_key(const Word& w) const {
  auto k1 = conjugacy_key(w);
  auto k2 = conjugacy_key(w.inverse());
  return std::min(k1, k2);
}

} // namespace lefschetz
