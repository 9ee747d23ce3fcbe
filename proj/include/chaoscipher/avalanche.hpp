#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chaoscipher/cipher.hpp"
#include "chaoscipher/image.hpp"
#include "chaoscipher/key.hpp"

namespace chaoscipher {

// bit 0 is the least significant bit of the byte.
struct BitLocation {
  Channel channel;
  int row;
  int col;
  int bit;
};

struct DiffReport {
  int height = 0;
  int width = 0;
  // one 0/255 map per channel, row-major; 255 marks a changed pixel
  std::array<std::vector<std::uint8_t>, 3> changed_maps;
  // changed-bit counts indexed [channel][bit plane]
  std::array<std::array<std::uint64_t, 8>, 3> plane_counts{};
  std::uint64_t hamming_distance = 0;

  std::uint64_t total_bits() const {
    return 24ull * static_cast<std::uint64_t>(height) *
           static_cast<std::uint64_t>(width);
  }
};

inline RgbImage flip_bit(const RgbImage& img, const BitLocation& loc) {
  if (loc.row < 0 || loc.row >= img.height || loc.col < 0 ||
      loc.col >= img.width || loc.bit < 0 || loc.bit > 7) {
    throw std::out_of_range("flip_bit: location out of bounds");
  }
  RgbImage out = img;
  const std::size_t k = img.flat(loc.row, loc.col);
  out.plane(loc.channel)[k] ^= static_cast<std::uint8_t>(1u << loc.bit);
  return out;
}

inline DiffReport diff_images(const RgbImage& a, const RgbImage& b) {
  if (!a.same_size(b)) {
    throw std::invalid_argument("diff_images: image sizes differ");
  }
  DiffReport rep;
  rep.height = a.height;
  rep.width = a.width;
  const std::size_t n = a.pixel_count();
  for (int c = 0; c < 3; ++c) {
    const Channel ch = static_cast<Channel>(c);
    const std::vector<std::uint8_t>& pa = a.plane(ch);
    const std::vector<std::uint8_t>& pb = b.plane(ch);
    std::vector<std::uint8_t>& map = rep.changed_maps[static_cast<std::size_t>(c)];
    map.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint8_t x = pa[k] ^ pb[k];
      if (x == 0) continue;
      map[k] = 255;
      rep.hamming_distance += static_cast<std::uint64_t>(std::popcount(x));
      for (int bit = 0; bit < 8; ++bit) {
        rep.plane_counts[static_cast<std::size_t>(c)]
                        [static_cast<std::size_t>(bit)] += (x >> bit) & 1u;
      }
    }
  }
  return rep;
}

inline DiffReport avalanche_experiment(const RgbImage& img, const SecretKey& key,
                                       const BitLocation& loc) {
  return diff_images(encrypt(img, key), encrypt(flip_bit(img, loc), key));
}

}  // namespace chaoscipher
