#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace chaoscipher {

enum class Channel { red, green, blue };

// M x N three-channel byte image. Planes are stored row-major, so the flat
// index of pixel (i, j) is i * width + j.
struct RgbImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> r, g, b;

  RgbImage() = default;

  RgbImage(int height_, int width_) : height(height_), width(width_) {
    if (height < 1 || width < 1) {
      throw std::invalid_argument("image dimensions must be positive");
    }
    const std::size_t n = pixel_count();
    r.assign(n, 0);
    g.assign(n, 0);
    b.assign(n, 0);
  }

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }

  std::size_t flat(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(j);
  }

  bool same_size(const RgbImage& other) const {
    return height == other.height && width == other.width;
  }

  std::vector<std::uint8_t>& plane(Channel c) {
    switch (c) {
      case Channel::red: return r;
      case Channel::green: return g;
      default: return b;
    }
  }
  const std::vector<std::uint8_t>& plane(Channel c) const {
    return const_cast<RgbImage*>(this)->plane(c);
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Per-channel, per-pixel XOR of two equally sized images.
inline RgbImage operator^(const RgbImage& a, const RgbImage& b) {
  if (!a.same_size(b)) {
    throw std::invalid_argument("image XOR requires equal dimensions");
  }
  RgbImage out = a;
  const std::size_t n = a.pixel_count();
  for (std::size_t k = 0; k < n; ++k) {
    out.r[k] ^= b.r[k];
    out.g[k] ^= b.g[k];
    out.b[k] ^= b.b[k];
  }
  return out;
}

}  // namespace chaoscipher
