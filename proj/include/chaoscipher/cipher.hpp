#pragma once

#include <cstddef>
#include <stdexcept>

#include "chaoscipher/chaos.hpp"
#include "chaoscipher/image.hpp"

namespace chaoscipher {

// Confusion I: mask every pixel with the four XOR keys, cycling the key index
// by three per pixel (row-major scan).
inline RgbImage confusion1(const RgbImage& img, const XorKeys& xk) {
  RgbImage out = img;
  const std::size_t n = img.pixel_count();
  for (std::size_t k = 0; k < n; ++k) {
    out.r[k] ^= xk.keys[(3 * k) % 4];
    out.g[k] ^= xk.keys[(3 * k + 1) % 4];
    out.b[k] ^= xk.keys[(3 * k + 2) % 4];
  }
  return out;
}

// Diffusion I: running XOR along the row-major scan, each channel chained
// with itself. Output k equals the XOR of inputs 0..k.
inline RgbImage diffusion1(const RgbImage& img) {
  RgbImage out = img;
  const std::size_t n = img.pixel_count();
  for (std::size_t k = 1; k < n; ++k) {
    out.r[k] ^= out.r[k - 1];
    out.g[k] ^= out.g[k - 1];
    out.b[k] ^= out.b[k - 1];
  }
  return out;
}

inline RgbImage inverse_diffusion1(const RgbImage& img) {
  RgbImage out = img;
  const std::size_t n = img.pixel_count();
  for (std::size_t k = 1; k < n; ++k) {
    out.r[k] = img.r[k] ^ img.r[k - 1];
    out.g[k] = img.g[k] ^ img.g[k - 1];
    out.b[k] = img.b[k] ^ img.b[k - 1];
  }
  return out;
}

namespace detail {

// Diffusion II walks pixels in column-major order: scan index k sits at
// row k % M, column k / M.
inline std::size_t column_major_flat(std::size_t k, int height, int width) {
  const std::size_t m = static_cast<std::size_t>(height);
  const std::size_t i = k % m;
  const std::size_t j = k / m;
  return i * static_cast<std::size_t>(width) + j;
}

}  // namespace detail

// Diffusion II: scan from the last column-major position down to the first,
// masking each pixel with the other two channels of its already-diffused
// successor in the scan.
inline RgbImage diffusion2(const RgbImage& img) {
  RgbImage out(img.height, img.width);
  const std::size_t n = img.pixel_count();
  const std::size_t last = detail::column_major_flat(n - 1, img.height, img.width);
  out.r[last] = img.r[last];
  out.g[last] = img.g[last];
  out.b[last] = img.b[last];
  for (std::size_t k = n - 1; k-- > 0;) {
    const std::size_t cur = detail::column_major_flat(k, img.height, img.width);
    const std::size_t pred = detail::column_major_flat(k + 1, img.height, img.width);
    out.r[cur] = img.r[cur] ^ out.g[pred] ^ out.b[pred];
    out.g[cur] = img.g[cur] ^ out.b[pred] ^ out.r[pred];
    out.b[cur] = img.b[cur] ^ out.r[pred] ^ out.g[pred];
  }
  return out;
}

// Inverse of diffusion II. The forward recurrence masks with already-diffused
// successors, so undoing it reads only input values; evaluation order is free.
inline RgbImage inverse_diffusion2(const RgbImage& img) {
  RgbImage out = img;
  const std::size_t n = img.pixel_count();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t cur = detail::column_major_flat(k, img.height, img.width);
    const std::size_t pred = detail::column_major_flat(k + 1, img.height, img.width);
    out.r[cur] = img.r[cur] ^ img.g[pred] ^ img.b[pred];
    out.g[cur] = img.g[cur] ^ img.b[pred] ^ img.r[pred];
    out.b[cur] = img.b[cur] ^ img.r[pred] ^ img.g[pred];
  }
  return out;
}

// Confusion II: per-pixel XOR with the keystream image. Self-inverse.
inline RgbImage confusion2(const RgbImage& img, const KeystreamImage& cks) {
  if (img.height != cks.height || img.width != cks.width) {
    throw std::invalid_argument("confusion2: image and keystream sizes differ");
  }
  RgbImage out = img;
  const std::size_t n = img.pixel_count();
  for (std::size_t k = 0; k < n; ++k) {
    out.r[k] ^= cks.r[k];
    out.g[k] ^= cks.g[k];
    out.b[k] ^= cks.b[k];
  }
  return out;
}

inline RgbImage encrypt(const RgbImage& img, const SecretKey& key) {
  const KeystreamMaterial km = generate_keystream(key, img.height, img.width);
  return confusion2(diffusion2(diffusion1(confusion1(img, km.xor_keys))), km.cks);
}

inline RgbImage decrypt(const RgbImage& img, const SecretKey& key) {
  const KeystreamMaterial km = generate_keystream(key, img.height, img.width);
  return confusion1(inverse_diffusion1(inverse_diffusion2(confusion2(img, km.cks))),
                    km.xor_keys);
}

}  // namespace chaoscipher
