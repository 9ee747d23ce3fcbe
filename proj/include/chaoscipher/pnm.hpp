#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoscipher/image.hpp"

namespace chaoscipher {

namespace detail {

// Reads the next header integer, skipping whitespace and '#' comments.
inline long pnm_header_int(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != std::istream::traits_type::eof()) {
    if (c == '#') {
      while (c != std::istream::traits_type::eof() && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == std::istream::traits_type::eof() || !std::isdigit(c)) {
    throw std::runtime_error(path + ": malformed pixmap header");
  }
  long value = 0;
  while (c != std::istream::traits_type::eof() && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1000000L) {
      throw std::runtime_error(path + ": pixmap header value out of range");
    }
    c = in.get();
  }
  // c is the single whitespace terminating the token; binary data may follow.
  if (c != std::istream::traits_type::eof() && !std::isspace(c)) {
    throw std::runtime_error(path + ": malformed pixmap header");
  }
  return value;
}

}  // namespace detail

inline RgbImage read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '6') {
    throw std::runtime_error(path + ": not a P6 pixmap (bad magic)");
  }
  const long width = detail::pnm_header_int(in, path);
  const long height = detail::pnm_header_int(in, path);
  const long maxval = detail::pnm_header_int(in, path);
  if (width < 1 || height < 1) {
    throw std::runtime_error(path + ": pixmap dimensions must be positive");
  }
  if (maxval != 255) {
    throw std::runtime_error(path + ": pixmap maxval must be 255");
  }
  RgbImage img(static_cast<int>(height), static_cast<int>(width));
  const std::size_t n = img.pixel_count();
  std::vector<char> raw(n * 3);
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw std::runtime_error(path + ": truncated pixmap payload");
  }
  for (std::size_t k = 0; k < n; ++k) {
    img.r[k] = static_cast<std::uint8_t>(raw[3 * k]);
    img.g[k] = static_cast<std::uint8_t>(raw[3 * k + 1]);
    img.b[k] = static_cast<std::uint8_t>(raw[3 * k + 2]);
  }
  return img;
}

inline void write_ppm(const RgbImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  const std::size_t n = img.pixel_count();
  std::vector<char> raw(n * 3);
  for (std::size_t k = 0; k < n; ++k) {
    raw[3 * k] = static_cast<char>(img.r[k]);
    raw[3 * k + 1] = static_cast<char>(img.g[k]);
    raw[3 * k + 2] = static_cast<char>(img.b[k]);
  }
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

// Grayscale P5 map, one byte per pixel, row-major.
inline void write_pgm(const std::vector<std::uint8_t>& pixels, int height,
                      int width, const std::string& path) {
  if (height < 1 || width < 1 ||
      pixels.size() != static_cast<std::size_t>(height) *
                           static_cast<std::size_t>(width)) {
    throw std::invalid_argument(path + ": graymap size mismatch");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace chaoscipher
