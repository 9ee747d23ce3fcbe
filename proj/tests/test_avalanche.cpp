#include <bit>
#include <cstdint>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "chaoscipher/avalanche.hpp"
#include "test_util.hpp"

using namespace chaoscipher;

TEST_CASE("flip_bit toggles exactly one bit") {
  RgbImage black(1, 1);
  const RgbImage flipped = flip_bit(black, {Channel::red, 0, 0, 7});
  CHECK(flipped.r[0] == 0x80);
  CHECK(flipped.g[0] == 0x00);
  CHECK(flipped.b[0] == 0x00);
  CHECK(flip_bit(flipped, {Channel::red, 0, 0, 7}) == black);

  std::mt19937 rng(11);
  const RgbImage img = testutil::random_image(rng, 4, 6);
  const BitLocation loc{Channel::green, 3, 2, 5};
  const RgbImage once = flip_bit(img, loc);
  CHECK(diff_images(img, once).hamming_distance == 1);
  CHECK(flip_bit(once, loc) == img);
}

TEST_CASE("flip_bit rejects out-of-bounds locations") {
  const RgbImage img(2, 3);
  CHECK_THROWS_AS(flip_bit(img, {Channel::red, 2, 0, 0}), std::out_of_range);
  CHECK_THROWS_AS(flip_bit(img, {Channel::red, 0, 3, 0}), std::out_of_range);
  CHECK_THROWS_AS(flip_bit(img, {Channel::red, -1, 0, 0}), std::out_of_range);
  CHECK_THROWS_AS(flip_bit(img, {Channel::red, 0, 0, 8}), std::out_of_range);
  CHECK_THROWS_AS(flip_bit(img, {Channel::red, 0, 0, -1}), std::out_of_range);
}

TEST_CASE("identical images diff to an all-zero report") {
  std::mt19937 rng(22);
  const RgbImage img = testutil::random_image(rng, 5, 5);
  const DiffReport rep = diff_images(img, img);
  CHECK(rep.hamming_distance == 0);
  for (const auto& map : rep.changed_maps) {
    for (std::uint8_t v : map) REQUIRE(v == 0);
  }
  for (const auto& channel : rep.plane_counts) {
    for (std::uint64_t c : channel) REQUIRE(c == 0);
  }
}

TEST_CASE("a single differing bit yields a one-bit report") {
  const RgbImage a(3, 3);
  RgbImage b(3, 3);
  b.b[4] = 0x10;
  const DiffReport rep = diff_images(a, b);
  CHECK(rep.hamming_distance == 1);
  CHECK(rep.plane_counts[2][4] == 1);
  CHECK(rep.changed_maps[2][4] == 255);
  std::uint64_t nonzero_planes = 0;
  std::uint64_t changed_pixels = 0;
  for (const auto& channel : rep.plane_counts) {
    for (std::uint64_t c : channel) nonzero_planes += c != 0;
  }
  for (const auto& map : rep.changed_maps) {
    for (std::uint8_t v : map) changed_pixels += v != 0;
  }
  CHECK(nonzero_planes == 1);
  CHECK(changed_pixels == 1);
}

TEST_CASE("diff report totals match a popcount oracle") {
  std::mt19937 rng(33);
  const RgbImage a = testutil::random_image(rng, 7, 9);
  const RgbImage b = testutil::random_image(rng, 7, 9);
  const DiffReport rep = diff_images(a, b);

  std::uint64_t hamming = 0;
  for (int c = 0; c < 3; ++c) {
    const Channel ch = static_cast<Channel>(c);
    for (std::size_t k = 0; k < a.pixel_count(); ++k) {
      const std::uint8_t x = a.plane(ch)[k] ^ b.plane(ch)[k];
      hamming += static_cast<std::uint64_t>(std::popcount(x));
      REQUIRE(rep.changed_maps[static_cast<std::size_t>(c)][k] ==
              (x != 0 ? 255 : 0));
    }
  }
  CHECK(rep.hamming_distance == hamming);

  std::uint64_t plane_total = 0;
  for (const auto& channel : rep.plane_counts) {
    for (std::uint64_t c : channel) plane_total += c;
  }
  CHECK(plane_total == hamming);
  CHECK(rep.total_bits() == 24u * 7u * 9u);
  CHECK_THROWS_AS(diff_images(a, RgbImage(7, 8)), std::invalid_argument);
}

TEST_CASE("a plaintext bit flip only disturbs its own bit plane") {
  std::mt19937 rng(44);
  std::uniform_int_distribution<int> channel(0, 2);
  std::uniform_int_distribution<int> bit(0, 7);
  bool saw_all_three_channels = false;
  for (int i = 0; i < 10; ++i) {
    const int h = 8 + i;
    const int w = 17 - i;
    const RgbImage img = testutil::random_image(rng, h, w);
    const SecretKey key = testutil::random_key(2700 + static_cast<std::uint64_t>(i));
    std::uniform_int_distribution<int> row(0, h - 1);
    std::uniform_int_distribution<int> col(0, w - 1);
    const BitLocation loc{static_cast<Channel>(channel(rng)), row(rng), col(rng),
                          bit(rng)};
    const DiffReport rep = avalanche_experiment(img, key, loc);
    REQUIRE(rep.hamming_distance > 0);
    int channels_hit = 0;
    for (const auto& counts : rep.plane_counts) {
      std::uint64_t off_plane = 0;
      for (int b = 0; b < 8; ++b) {
        if (b != loc.bit) off_plane += counts[static_cast<std::size_t>(b)];
      }
      REQUIRE(off_plane == 0);
      channels_hit += counts[static_cast<std::size_t>(loc.bit)] > 0 ? 1 : 0;
    }
    saw_all_three_channels = saw_all_three_channels || channels_hit == 3;
  }
  CHECK(saw_all_three_channels);
}

TEST_CASE("the changed fraction sits far below the ideal half") {
  std::mt19937 rng(55);
  const RgbImage img = testutil::random_image(rng, 32, 32);
  const SecretKey key = testutil::reference_key();
  const DiffReport rep =
      avalanche_experiment(img, key, {Channel::red, 13, 7, 6});
  const double fraction = static_cast<double>(rep.hamming_distance) /
                          static_cast<double>(rep.total_bits());
  CHECK(fraction > 0.0);
  CHECK(fraction < 0.2);
}
