#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "chaoscipher/avalanche.hpp"
#include "chaoscipher/nist.hpp"

namespace chaoscipher {

inline const char* to_string(TestStatus status) {
  switch (status) {
    case TestStatus::ok: return "ok";
    case TestStatus::not_applicable: return "not_applicable";
    default: return "prerequisite_failed";
  }
}

inline nlohmann::json to_json(const TestResult& r) {
  return nlohmann::json{{"test_name", r.test_name},
                        {"p_values", r.p_values},
                        {"pass", r.pass},
                        {"status", to_string(r.status)}};
}

inline nlohmann::json to_json(const BatteryReport& rep) {
  nlohmann::json results = nlohmann::json::array();
  for (const TestResult& r : rep.results) results.push_back(to_json(r));
  return nlohmann::json{{"sequence_count", rep.sequence_count},
                        {"results", results},
                        {"pass_counts", rep.pass_counts}};
}

inline nlohmann::json to_json(const DiffReport& rep) {
  const char* channels[3] = {"r", "g", "b"};
  nlohmann::json planes;
  nlohmann::json changed_pixels;
  for (int c = 0; c < 3; ++c) {
    planes[channels[c]] = rep.plane_counts[static_cast<std::size_t>(c)];
    std::size_t count = 0;
    for (std::uint8_t v : rep.changed_maps[static_cast<std::size_t>(c)]) {
      count += v != 0;
    }
    changed_pixels[channels[c]] = count;
  }
  return nlohmann::json{
      {"height", rep.height},
      {"width", rep.width},
      {"hamming_distance", rep.hamming_distance},
      {"total_bits", rep.total_bits()},
      {"changed_bit_fraction", static_cast<double>(rep.hamming_distance) /
                                   static_cast<double>(rep.total_bits())},
      {"plane_counts", planes},
      {"changed_pixels", changed_pixels}};
}

inline void write_json_report(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace chaoscipher
