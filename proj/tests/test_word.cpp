#include "doctest.h"

#include "lefschetz/automorphism.hpp"
#include "lefschetz/word.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

using namespace lefschetz;

namespace {

Word random_word(std::mt19937& rng, int genus, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, 2 * genus);
  std::bernoulli_distribution sign;
  std::vector<Letter> raw;
  int n = len(rng);
  for (int i = 0; i < n; ++i) raw.push_back(sign(rng) ? gen(rng) : -gen(rng));
  return Word(raw);
}

} // namespace

TEST_CASE("free and cyclic reduction") {
  CHECK(reduce({1, -1}).empty());
  CHECK(reduce({2, 1, -1, 2}) == Word({2, 2}));
  CHECK(reduce({1, 2, -1}, ReduceMode::Cyclic) == Word({2}));
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    Word w = random_word(rng, 2, 20);
    CHECK(reduce(w.letters()) == w);
  }
}

TEST_CASE("word literals round trip") {
  Word w = parse_word("a1 b1 A1 B1", 2);
  CHECK(w == Word({1, 2, -1, -2}));
  CHECK(format_word(w) == "a1 b1 A1 B1");
  CHECK(parse_word("e", 2).empty());
  CHECK_THROWS_AS(parse_word("a3", 2), std::invalid_argument);
}

TEST_CASE("Dehn reduction recognises the relator") {
  for (int g = 2; g <= 4; ++g) {
    SurfaceGroup G(g);
    const Word& d = G.relator();
    CHECK(d.size() == static_cast<std::size_t>(4 * g));
    CHECK(G.dehn_reduce(d).empty());
    CHECK(G.dehn_reduce(d.inverse()).empty());
    CHECK(G.dehn_reduce(Word({1})) == Word({1}));
    CHECK(G.dehn_reduce(d * Word({1}) * d.inverse()) == Word({1}));
  }
}

TEST_CASE("Dehn reduction agrees with the normal closure on small products") {
  SurfaceGroup G(2);
  const Word d = G.relator();
  std::vector<Word> short_words{Word{}};
  for (int x = -4; x <= 4; ++x) {
    if (x == 0) continue;
    short_words.push_back(Word({x}));
    for (int y = -4; y <= 4; ++y)
      if (y != 0 && y != -x) short_words.push_back(Word({x, y}));
  }
  std::vector<Word> conjugates;
  for (const auto& u : short_words)
    for (int s : {1, -1}) conjugates.push_back(u * d.power(s) * u.inverse());
  for (std::size_t i = 0; i < conjugates.size(); ++i) {
    CHECK(G.is_trivial(conjugates[i]));
    for (std::size_t j = i; j < conjugates.size(); j += 7) CHECK(G.is_trivial(conjugates[i] * conjugates[j]));
  }
  // Nontrivial controls: anything with nonzero abelianization, and commutators
  // of a single handle with a different one.
  std::mt19937 rng(11);
  for (int t = 0; t < 300; ++t) {
    Word w = random_word(rng, 2, 12);
    auto ab = abelianize(w, 2);
    bool zero = std::all_of(ab.begin(), ab.end(), [](int v) { return v == 0; });
    if (!zero) CHECK_FALSE(G.is_trivial(w));
  }
  CHECK_FALSE(G.is_trivial(parse_word("a1 a2 A1 A2", 2)));
}

TEST_CASE("conjugacy witness") {
  SurfaceGroup G(2);
  Word a1 = parse_word("a1", 2), b1 = parse_word("b1", 2);
  auto u = G.conjugacy_witness(a1, a1);
  REQUIRE(u);
  CHECK(G.equal(*u * a1 * u->inverse(), a1));
  u = G.conjugacy_witness(a1, b1 * a1 * b1.inverse());
  REQUIRE(u);
  CHECK(G.equal(*u, b1));
  CHECK_FALSE(G.conjugacy_witness(a1, b1));

  std::mt19937 rng(3);
  for (int t = 0; t < 100; ++t) {
    Word w = random_word(rng, 2, 8), c = random_word(rng, 2, 6);
    if (G.is_trivial(w)) continue;
    Word w2 = c * w * c.inverse();
    auto fwd = G.conjugacy_witness(w, w2);
    REQUIRE(fwd);
    CHECK(G.equal(*fwd * w * fwd->inverse(), w2));
    auto back = G.conjugacy_witness(w2, w);
    REQUIRE(back);
    CHECK(G.equal(*back * w2 * back->inverse(), w));
    CHECK(G.conjugacy_key(w) == G.conjugacy_key(w2));
    CHECK(G.curve_key(w) == G.curve_key(w2.inverse()));
  }
}

TEST_CASE("automorphism composition") {
  const int rank = 4;
  SurfaceGroup G(2);
  auto id = FreeAutomorphism::identity(rank);
  auto conj = FreeAutomorphism::conjugation(G.relator(), rank);
  CHECK(compose(id, conj) == conj);
  CHECK(apply(conj, G.relator()) == G.relator());
  CHECK(compose(conj, conj.inverse()) == id);
  // A Nielsen move a1 -> a1 b1 and its inverse.
  FreeAutomorphism n({Word({1, 2}), Word({2}), Word({3}), Word({4})},
                     {Word({1, -2}), Word({2}), Word({3}), Word({4})});
  CHECK_THROWS(FreeAutomorphism({Word({1, 2}), Word({2}), Word({3}), Word({4})}, id.images()));
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    Word w = random_word(rng, 2, 20);
    CHECK(apply(compose(n, conj), w) == apply(n, apply(conj, w)));
    CHECK(apply(compose(conj, n), w) == apply(conj, apply(n, w)));
  }
}
