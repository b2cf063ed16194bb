#pragma once

// Exact word algebra in the free group F of rank 2g and in the closed
// surface group G = F / <<delta>>, delta = [a1,b1]...[ag,bg].
//
// Letters are signed generator indices: a_i = 2i-1, b_i = 2i, a negative
// letter is the inverse generator.  All words are kept freely reduced.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lefschetz {

using Letter = int;

class Word {
public:
  Word() = default;
  // Builds the freely reduced representative of a raw letter sequence.
  explicit Word(const std::vector<Letter>& raw);
  Word(std::initializer_list<Letter> raw);

  static Word generator(Letter x) { return Word({x}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word operator*(const Word& other) const;
  Word& operator*=(const Word& other);
  Word power(int k) const;

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return letters_ != o.letters_; }
  bool operator<(const Word& o) const { return letters_ < o.letters_; }

private:
  std::vector<Letter> letters_;
};

enum class ReduceMode { Free, Cyclic };

// reduce(w, Free) is the freely reduced word; Cyclic additionally strips
// matching first/last letter pairs.
Word reduce(const std::vector<Letter>& raw, ReduceMode mode = ReduceMode::Free);

// Word literal syntax: "a1 b1 A1 B1", uppercase letter is the inverse.
// "e" or an empty string is the identity.  Throws std::invalid_argument.
Word parse_word(std::string_view text, int genus);
std::string format_word(const Word& w);
std::string format_letter(Letter x);

// Homology class of a word (abelianization) in the basis a1,b1,...,ag,bg.
std::vector<int> abelianize(const Word& w, int genus);

// A closed genus-g surface group.  Holds the relator and implements Dehn's
// algorithm, cyclic reduction and the conjugacy search.
class SurfaceGroup {
public:
  explicit SurfaceGroup(int genus);

  int genus() const { return genus_; }
  int rank() const { return 2 * genus_; }
  const Word& relator() const { return delta_; }

  // Greedy relator replacement (leftmost, then longest match).  The result
  // contains no subword longer than 2g of a cyclic rotation of delta^{+-1};
  // it is empty iff w is trivial in G.
  Word dehn_reduce(const Word& w) const;
  bool is_trivial(const Word& w) const { return dehn_reduce(w).empty(); }
  bool equal(const Word& u, const Word& v) const { return is_trivial(u * v.inverse()); }

  struct CyclicForm {
    Word word;       // cyclically reduced, cyclically Dehn-reduced
    Word conjugator; // word = conjugator * w * conjugator^{-1} in G
  };
  CyclicForm cyclic_reduce(const Word& w) const;

  // Returns u with u * w1 * u^{-1} = w2 in G, or nothing.
  std::optional<Word> conjugacy_witness(const Word& w1, const Word& w2) const;

  // Canonical representative of the conjugacy class of w (oriented), and of
  // the unoriented class {w, w^{-1}}.  Used as a deduplication key.
  std::vector<Letter> conjugacy_key(const Word& w) const;
  std::vector<Letter> curve_key(const Word& w) const;

  // Longest prefix of the cyclic sequence starting at `pos` that agrees
  // with a cyclic rotation of delta (sign +1) or delta^{-1} (sign -1).
  int relator_match(const std::vector<Letter>& w, std::size_t pos, int sign,
                    bool cyclic, int cap) const;

private:
  struct ClosureEntry {
    std::vector<Letter> word;
    Word conjugator;
  };
  std::vector<ClosureEntry> closure(const Word& w, std::size_t limit) const;
  // Replace the relator piece of length len at the start of `w` (read with
  // the given sign) by the inverse of its complement.
  std::vector<Letter> complement_piece(Letter first, int sign, int len) const;

  int genus_;
  Word delta_;
  std::vector<int> pos_plus_;  // position of each letter in delta
  std::vector<int> pos_minus_; // position of each letter in delta^{-1}
  std::vector<Letter> rel_plus_, rel_minus_;
};

} // namespace lefschetz
