#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "chaoscipher/key.hpp"

namespace chaoscipher {

// Key files hold four whitespace-separated decimals: x0 y0 K L.
inline SecretKey read_key_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open key file");
  double x0 = 0.0;
  double y0 = 0.0;
  double kick = 0.0;
  long warmup = 0;
  if (!(in >> x0 >> y0 >> kick >> warmup)) {
    throw std::runtime_error(path + ": key file must hold x0 y0 K L");
  }
  std::string extra;
  if (in >> extra) {
    throw std::runtime_error(path + ": trailing content after the four values");
  }
  try {
    return SecretKey(x0, y0, kick, static_cast<int>(warmup));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline void write_key_file(const SecretKey& key, const std::string& path) {
  std::ostringstream text;
  text.precision(17);
  text << key.x0 << ' ' << key.y0 << ' ' << key.kick << ' ' << key.warmup
       << '\n';
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out << text.str();
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace chaoscipher
