#pragma once

#include "lefschetz/automorphism.hpp"
#include "lefschetz/word.hpp"

#include <vector>

namespace lefschetz::detail {

// Twist generators and curve words for the standard chain c_1..c_{2g+1}
// and the separating curves s_1..s_{g/2}, expressed in the basis
// a_1,b_1,...,a_g,b_g with boundary word delta = prod [a_i,b_i].
struct ChainModel {
  int genus = 0;
  std::vector<FreeAutomorphism> chain_twists;      // positive twist about c_{i+1}
  std::vector<Word> chain_words;                   // cyclically reduced, oriented
  std::vector<FreeAutomorphism> separating_twists; // positive twist about s_{j+1}
  std::vector<Word> separating_words;
};

ChainModel build_chain_model(int genus);

} // namespace lefschetz::detail
