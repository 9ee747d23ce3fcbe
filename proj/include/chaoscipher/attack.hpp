#pragma once

#include <stdexcept>
#include <utility>

#include "chaoscipher/cipher.hpp"
#include "chaoscipher/image.hpp"

namespace chaoscipher {

// Everything a chosen-plaintext adversary needs: the ciphertext of the
// all-zero image under the victim key. Valid for every image of this size.
struct EquivalentKey {
  RgbImage image;
};

// The two diffusion stages composed, with no key material involved.
inline RgbImage diffusion_only(const RgbImage& img) {
  return diffusion2(diffusion1(img));
}

// Both confusion stages are XOR masks and both diffusion stages are
// XOR-linear, so for any plaintext P:
//
//   E(P) = diffusion_only(P) xor E(0)
//
// One oracle query for the all-zero image therefore captures the whole
// key-dependent part of the cipher.
template <typename Oracle>
EquivalentKey build_equivalent_key(Oracle&& oracle, int height, int width) {
  RgbImage zero(height, width);
  return EquivalentKey{std::forward<Oracle>(oracle)(std::move(zero))};
}

inline RgbImage recover(const RgbImage& cipher, const EquivalentKey& equiv) {
  if (!cipher.same_size(equiv.image)) {
    throw std::invalid_argument("recover: ciphertext and equivalent key sizes differ");
  }
  return inverse_diffusion1(inverse_diffusion2(cipher ^ equiv.image));
}

}  // namespace chaoscipher
