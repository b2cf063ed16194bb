#include "lefschetz/automorphism.hpp"

#include <stdexcept>

namespace lefschetz {

namespace {

Word substitute(const std::vector<Word>& images, const std::vector<Word>& inverse_of_images,
                const Word& w) {
  Word out;
  for (Letter x : w.letters()) {
    if (x > 0)
      out *= images[x - 1];
    else
      out *= inverse_of_images[-x - 1];
  }
  return out;
}

std::vector<Word> inverted(const std::vector<Word>& ws) {
  std::vector<Word> out;
  out.reserve(ws.size());
  for (const auto& w : ws) out.push_back(w.inverse());
  return out;
}

} // namespace

FreeAutomorphism::FreeAutomorphism(std::vector<Word> images, std::vector<Word> inverse_images, bool verify)
    : images_(std::move(images)), inverse_images_(std::move(inverse_images)) {
  if (images_.size() != inverse_images_.size())
    throw std::invalid_argument("automorphism: rank mismatch");
  if (!verify) return;
  auto inv_img = inverted(images_);
  auto inv_inv = inverted(inverse_images_);
  for (std::size_t k = 0; k < images_.size(); ++k) {
    Word gen = Word::generator(static_cast<Letter>(k + 1));
    if (substitute(images_, inv_img, inverse_images_[k]) != gen ||
        substitute(inverse_images_, inv_inv, images_[k]) != gen)
      throw std::invalid_argument("automorphism: images and inverse images do not compose to the identity");
  }
}

FreeAutomorphism FreeAutomorphism::identity(int rank) {
  std::vector<Word> g;
  for (int k = 1; k <= rank; ++k) g.push_back(Word::generator(k));
  return FreeAutomorphism(g, g, false);
}

FreeAutomorphism FreeAutomorphism::conjugation(const Word& u, int rank) {
  std::vector<Word> img, inv;
  Word ui = u.inverse();
  for (int k = 1; k <= rank; ++k) {
    Word x = Word::generator(k);
    img.push_back(u * x * ui);
    inv.push_back(ui * x * u);
  }
  return FreeAutomorphism(img, inv, false);
}

Word FreeAutomorphism::apply(const Word& w) const {
  Word out;
  for (Letter x : w.letters()) {
    if (x > 0)
      out *= images_[x - 1];
    else
      out *= images_[-x - 1].inverse();
  }
  return out;
}

FreeAutomorphism FreeAutomorphism::inverse() const {
  FreeAutomorphism out;
  out.images_ = inverse_images_;
  out.inverse_images_ = images_;
  return out;
}

FreeAutomorphism FreeAutomorphism::reduced_in(const SurfaceGroup& group) const {
  FreeAutomorphism out;
  for (const auto& w : images_) out.images_.push_back(group.dehn_reduce(w));
  for (const auto& w : inverse_images_) out.inverse_images_.push_back(group.dehn_reduce(w));
  return out;
}

std::size_t FreeAutomorphism::total_length() const {
  std::size_t n = 0;
  for (const auto& w : images_) n += w.size();
  return n;
}

FreeAutomorphism compose(const FreeAutomorphism& phi, const FreeAutomorphism& psi) {
  if (phi.rank() != psi.rank()) throw std::invalid_argument("compose: rank mismatch");
  std::vector<Word> img, inv;
  img.reserve(phi.rank());
  inv.reserve(phi.rank());
  FreeAutomorphism phi_inv = phi.inverse(), psi_inv = psi.inverse();
  for (int k = 1; k <= phi.rank(); ++k) {
    img.push_back(phi.apply(psi.image(k)));
    inv.push_back(psi_inv.apply(phi_inv.image(k)));
  }
  return FreeAutomorphism(std::move(img), std::move(inv), false);
}

Word apply(const FreeAutomorphism& phi, const Word& w) { return phi.apply(w); }

bool equal(const FreeAutomorphism& phi, const FreeAutomorphism& psi) { return phi == psi; }

} // namespace lefschetz
