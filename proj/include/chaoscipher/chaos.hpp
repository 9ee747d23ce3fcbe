#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chaoscipher/key.hpp"

namespace chaoscipher {

// Sign-safe reduction of value into [0, modulus).
inline double reduce_mod(double value, double modulus) {
  double r = value - std::floor(value / modulus) * modulus;
  if (r >= modulus) r -= modulus;
  if (r < 0.0) r = 0.0;
  return r;
}

struct StandardMapState {
  double x = 0.0;
  double y = 0.0;
};

struct LogisticState {
  double z = 0.0;
};

// One iteration of the kicked standard map on the torus [0, 2pi)^2. The
// un-reduced intermediate t feeds the y update.
inline StandardMapState standard_step(StandardMapState s, double kick) {
  const double t = s.x + kick * std::sin(s.y);
  return {reduce_mod(t, kTwoPi), reduce_mod(s.y + t, kTwoPi)};
}

// One iteration of the logistic map z <- 4z(1-z), clamped against rounding
// excursions outside [0, 1].
inline LogisticState logistic_step(LogisticState s) {
  double z = 4.0 * s.z * (1.0 - s.z);
  if (z < 0.0) z = 0.0;
  if (z > 1.0) z = 1.0;
  return {z};
}

// Maps a value in [0, modulus] to a byte; floor(256 * v / modulus) touches
// 256 only at v == modulus, so clamp.
inline std::uint8_t quantize_byte(double value, double modulus) {
  const double scaled = std::floor(256.0 * value / modulus);
  return scaled > 255.0 ? 255 : static_cast<std::uint8_t>(scaled);
}

struct XorKeys {
  std::array<std::uint8_t, 4> keys{};

  friend bool operator==(const XorKeys&, const XorKeys&) = default;
};

// The four masking bytes derived arithmetically from the key components.
inline XorKeys derive_xor_keys(const SecretKey& key) {
  XorKeys xk;
  xk.keys[0] = quantize_byte(key.x0, kTwoPi);
  xk.keys[1] = quantize_byte(key.y0, kTwoPi);
  const double k_reduced = key.kick - 256.0 * std::floor(key.kick / 256.0);
  xk.keys[2] = static_cast<std::uint8_t>(std::floor(k_reduced));
  xk.keys[3] = static_cast<std::uint8_t>(key.warmup % 256);
  return xk;
}

// Keystream image: one byte plane per channel, same layout as RgbImage.
struct KeystreamImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> r, g, b;

  friend bool operator==(const KeystreamImage&, const KeystreamImage&) = default;
};

struct KeystreamMaterial {
  XorKeys xor_keys;
  KeystreamImage cks;
  // Set when the logistic seed starts on an orbit that collapses (absorbed at
  // 0 or pinned at 0.75); the blue plane degenerates but encryption proceeds.
  bool degenerate_logistic_seed = false;
};

inline bool logistic_seed_is_degenerate(double z0) {
  return z0 == 0.0 || z0 == 0.5 || z0 == 0.75 || z0 == 1.0;
}

// Derives all keystream material for an height x width image:
//   - warm the standard map up for `warmup` steps, then emit one state per
//     pixel; the red and green planes quantize x and y of those states;
//   - seed the logistic map with (x' + y') mod 1 taken after the warm-up,
//     warm it up for `warmup` steps, then emit one state per pixel for the
//     blue plane.
// The emitted state sequence depends only on the key and the pixel's flat
// index, never on the image dimensions.
inline KeystreamMaterial generate_keystream(const SecretKey& key, int height,
                                            int width) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("keystream dimensions must be positive");
  }
  KeystreamMaterial out;
  out.xor_keys = derive_xor_keys(key);
  out.cks.height = height;
  out.cks.width = width;
  const std::size_t n =
      static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  out.cks.r.resize(n);
  out.cks.g.resize(n);
  out.cks.b.resize(n);

  StandardMapState s{key.x0, key.y0};
  for (int i = 0; i < key.warmup; ++i) {
    s = standard_step(s, key.kick);
  }
  const double z0 = reduce_mod(s.x + s.y, 1.0);
  out.degenerate_logistic_seed = logistic_seed_is_degenerate(z0);
  for (std::size_t k = 0; k < n; ++k) {
    s = standard_step(s, key.kick);
    out.cks.r[k] = quantize_byte(s.x, kTwoPi);
    out.cks.g[k] = quantize_byte(s.y, kTwoPi);
  }

  LogisticState zs{z0};
  for (int i = 0; i < key.warmup; ++i) {
    zs = logistic_step(zs);
  }
  for (std::size_t k = 0; k < n; ++k) {
    zs = logistic_step(zs);
    out.cks.b[k] = quantize_byte(zs.z, 1.0);
  }
  return out;
}

}  // namespace chaoscipher
