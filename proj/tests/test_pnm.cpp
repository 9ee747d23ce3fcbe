#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "chaoscipher/keyfile.hpp"
#include "chaoscipher/pnm.hpp"
#include "test_util.hpp"

using namespace chaoscipher;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "chaoscipher_pnm_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void spit(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

}  // namespace

TEST_CASE("a single black pixel serializes to the canonical bytes") {
  const auto path = scratch_dir() / "black.ppm";
  write_ppm(RgbImage(1, 1), path.string());
  const std::string expected = std::string("P6\n1 1\n255\n") +
                               std::string(3, '\0');
  CHECK(slurp(path) == expected);
}

TEST_CASE("pixmaps round trip bit-exactly") {
  std::mt19937 rng(4242);
  for (auto [h, w] : {std::pair{1, 1}, {3, 5}, {16, 9}, {32, 32}}) {
    const RgbImage img = testutil::random_image(rng, h, w);
    const auto path = scratch_dir() / "roundtrip.ppm";
    write_ppm(img, path.string());
    CHECK(read_ppm(path.string()) == img);
  }
}

TEST_CASE("pixmap reader accepts header comments") {
  const auto path = scratch_dir() / "comment.ppm";
  spit(path, std::string("P6\n# a comment\n2 1\n# another\n255\n") +
                 std::string(6, '\x7f'));
  const RgbImage img = read_ppm(path.string());
  CHECK(img.height == 1);
  CHECK(img.width == 2);
  CHECK(img.r[0] == 0x7f);
  CHECK(img.b[1] == 0x7f);
}

TEST_CASE("pixmap reader rejects malformed files with distinct messages") {
  const auto dir = scratch_dir();

  spit(dir / "magic.ppm", "P5\n1 1\n255\n\0\0\0");
  CHECK_THROWS_WITH(read_ppm((dir / "magic.ppm").string()),
                    Catch::Matchers::ContainsSubstring("magic"));

  spit(dir / "maxval.ppm", std::string("P6\n1 1\n65535\n") + std::string(6, '\0'));
  CHECK_THROWS_WITH(read_ppm((dir / "maxval.ppm").string()),
                    Catch::Matchers::ContainsSubstring("maxval"));

  spit(dir / "short.ppm", std::string("P6\n2 2\n255\n") + std::string(5, '\0'));
  CHECK_THROWS_WITH(read_ppm((dir / "short.ppm").string()),
                    Catch::Matchers::ContainsSubstring("truncated"));

  spit(dir / "garbage.ppm", "P6\nxy z\n255\n");
  CHECK_THROWS_WITH(read_ppm((dir / "garbage.ppm").string()),
                    Catch::Matchers::ContainsSubstring("header"));

  CHECK_THROWS_WITH(read_ppm((dir / "missing.ppm").string()),
                    Catch::Matchers::ContainsSubstring("open"));
}

TEST_CASE("graymaps serialize with a P5 header") {
  const auto path = scratch_dir() / "map.pgm";
  write_pgm({0, 255, 128, 7, 9, 11}, 2, 3, path.string());
  const std::string data = slurp(path);
  CHECK(data.substr(0, 9) == "P5\n3 2\n25");
  CHECK(data.size() == 11 + 6);
  CHECK(static_cast<unsigned char>(data[12]) == 255);
  CHECK_THROWS_AS(write_pgm({1, 2, 3}, 2, 3, path.string()),
                  std::invalid_argument);
}

TEST_CASE("key files round trip and reject bad content") {
  const auto dir = scratch_dir();
  const auto path = dir / "key.txt";
  write_key_file(testutil::reference_key(), path.string());
  const SecretKey key = read_key_file(path.string());
  CHECK(key.x0 == 3.98235562892545);
  CHECK(key.y0 == 1.34536356538912);
  CHECK(key.kick == 108.54365761256745);
  CHECK(key.warmup == 110);

  spit(dir / "short.txt", "1.0 2.0 20.0\n");
  CHECK_THROWS_WITH(read_key_file((dir / "short.txt").string()),
                    Catch::Matchers::ContainsSubstring("x0 y0 K L"));

  spit(dir / "trailing.txt", "1.0 2.0 20.0 500 junk\n");
  CHECK_THROWS_WITH(read_key_file((dir / "trailing.txt").string()),
                    Catch::Matchers::ContainsSubstring("trailing"));

  spit(dir / "domain.txt", "9.9 2.0 20.0 500\n");
  CHECK_THROWS_WITH(read_key_file((dir / "domain.txt").string()),
                    Catch::Matchers::ContainsSubstring("x0"));

  CHECK_THROWS_WITH(read_key_file((dir / "absent.txt").string()),
                    Catch::Matchers::ContainsSubstring("open"));
}
