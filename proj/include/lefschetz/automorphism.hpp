#pragma once

#include "lefschetz/word.hpp"

#include <vector>

namespace lefschetz {

// An automorphism of the free group of rank n, stored by generator images
// together with the images of the inverse automorphism.
class FreeAutomorphism {
public:
  FreeAutomorphism() = default;
  // Throws std::invalid_argument unless images and inverse_images are
  // mutually inverse on every generator (checked in F when verify is set).
  FreeAutomorphism(std::vector<Word> images, std::vector<Word> inverse_images, bool verify = true);

  static FreeAutomorphism identity(int rank);
  // x -> u x u^{-1}
  static FreeAutomorphism conjugation(const Word& u, int rank);

  int rank() const { return static_cast<int>(images_.size()); }
  const Word& image(Letter generator) const { return images_[generator - 1]; }
  const std::vector<Word>& images() const { return images_; }
  const std::vector<Word>& inverse_images() const { return inverse_images_; }

  Word apply(const Word& w) const;
  FreeAutomorphism inverse() const;

  // Images reduced by Dehn's algorithm: the result represents the induced
  // automorphism of the surface group and is no longer checked in F.
  FreeAutomorphism reduced_in(const SurfaceGroup& group) const;

  bool operator==(const FreeAutomorphism& o) const { return images_ == o.images_; }
  bool operator!=(const FreeAutomorphism& o) const { return !(*this == o); }

  std::size_t total_length() const;

private:
  std::vector<Word> images_;
  std::vector<Word> inverse_images_;
};

// compose(phi, psi) = phi o psi, i.e. x -> phi(psi(x)).
FreeAutomorphism compose(const FreeAutomorphism& phi, const FreeAutomorphism& psi);
Word apply(const FreeAutomorphism& phi, const Word& w);
bool equal(const FreeAutomorphism& phi, const FreeAutomorphism& psi);

} // namespace lefschetz
