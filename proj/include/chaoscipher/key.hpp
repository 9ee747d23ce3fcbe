#pragma once

#include <numbers>
#include <stdexcept>

namespace chaoscipher {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Cipher key: two seed angles for the standard map, the map's kick strength,
// and the warm-up iteration count shared by both maps.
//
// Domain: x0, y0 in (0, 2pi), kick > 18, 100 < warmup < 1100. Checked on
// construction so a SecretKey is valid by existence.
struct SecretKey {
  double x0;
  double y0;
  double kick;  // the standard map's K parameter
  int warmup;   // the L parameter

  SecretKey(double x0_, double y0_, double kick_, int warmup_)
      : x0(x0_), y0(y0_), kick(kick_), warmup(warmup_) {
    if (!(x0 > 0.0 && x0 < kTwoPi)) {
      throw std::invalid_argument("key: x0 must lie in (0, 2pi)");
    }
    if (!(y0 > 0.0 && y0 < kTwoPi)) {
      throw std::invalid_argument("key: y0 must lie in (0, 2pi)");
    }
    if (!(kick > 18.0)) {
      throw std::invalid_argument("key: K must be greater than 18");
    }
    if (warmup <= 100 || warmup >= 1100) {
      throw std::invalid_argument("key: L must satisfy 100 < L < 1100");
    }
  }
};

}  // namespace chaoscipher
