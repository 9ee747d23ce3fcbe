#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace chaoscipher {

// Packed bit string. Bytes expand most-significant-bit first; pad bits past
// n never influence any computation.
struct BitSequence {
  std::vector<std::uint8_t> bytes;
  std::size_t n = 0;

  BitSequence(std::vector<std::uint8_t> packed, std::size_t bit_count)
      : bytes(std::move(packed)), n(bit_count) {
    if (n == 0) throw std::invalid_argument("BitSequence: empty sequence");
    if (bytes.size() * 8 < n) {
      throw std::invalid_argument("BitSequence: bit count exceeds storage");
    }
  }

  static BitSequence from_string(std::string_view text) {
    std::vector<std::uint8_t> packed((text.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        packed[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
      } else if (text[i] != '0') {
        throw std::invalid_argument("BitSequence: text must be 0s and 1s");
      }
    }
    return BitSequence(std::move(packed), text.size());
  }

  bool bit(std::size_t i) const {
    return (bytes[i >> 3] >> (7 - (i & 7))) & 1u;
  }

  std::size_t count_ones() const {
    std::size_t ones = 0;
    const std::size_t full = n / 8;
    for (std::size_t i = 0; i < full; ++i) ones += std::popcount(bytes[i]);
    for (std::size_t i = full * 8; i < n; ++i) ones += bit(i) ? 1 : 0;
    return ones;
  }
};

}  // namespace chaoscipher
