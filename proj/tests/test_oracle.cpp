#include <vector>

#include "doctest.h"
#include "ovc/detector.hpp"
#include "ovc/nms.hpp"
#include "ovc/oracle.hpp"
#include "ovc/rng.hpp"
#include "test_util.hpp"

using namespace ovc;
using ovc::testing::flat_frame;
using ovc::testing::motif_frame;
using ovc::testing::noise_frame;

TEST_SUITE("oracle") {

TEST_CASE("sweep score of a uniform ring") {
  const std::vector<std::uint8_t> ring(16, 250);
  CHECK(oracle_score_by_sweep(100, ring) == 150);
}

TEST_CASE("sweep score of a mixed arc") {
  std::vector<std::uint8_t> ring(16, 105);  // d = 5
  for (int i = 0; i < 9; ++i) ring[i] = 130;  // d = 30
  CHECK(oracle_score_by_sweep(100, ring) == 30);
}

TEST_CASE("sweep score is zero without a qualifying arc") {
  std::vector<std::uint8_t> ring(16, 100);
  for (int i = 0; i < 8; ++i) ring[i] = 255;  // 8 contiguous, one short
  CHECK(oracle_score_by_sweep(100, ring) == 0);
}

TEST_CASE("flat frame yields nothing") {
  CHECK(oracle_detect(flat_frame(32, 32, 77), make_config(0, 1)).empty());
}

TEST_CASE("one ideal motif yields exactly one corner at its center") {
  // Center darker than all 16 ring points by 150: the full circle is one
  // bright arc.
  const Frame frame = motif_frame(48, 40, 20, 17, 200, 50);
  const std::vector<Corner> corners = oracle_detect(frame, make_config(20, 1));
  REQUIRE(corners.size() == 1);
  CHECK(corners[0] == Corner{20, 17, 150, Polarity::Bright});
}

TEST_CASE("sweep score equals corner_score on random rings") {
  SplitMix64 rng(0xBEEF);
  for (int trial = 0; trial < 3000; ++trial) {
    std::uint8_t center = std::uint8_t(rng.next());
    std::vector<std::uint8_t> ring(16);
    for (auto& v : ring) v = std::uint8_t(rng.next());
    const ScoreResult direct = corner_score(center, ring);
    CHECK(direct.score == oracle_score_by_sweep(center, ring));
  }
}

TEST_CASE("sweep score equals corner_score on the coarse alphabet") {
  const std::uint8_t alphabet[3] = {0, 128, 255};
  SplitMix64 rng(0xA1FA);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::uint8_t center = alphabet[rng.next_below(3)];
    std::vector<std::uint8_t> ring(16);
    for (auto& v : ring) v = alphabet[rng.next_below(3)];
    const ScoreResult direct = corner_score(center, ring);
    CHECK(direct.score == oracle_score_by_sweep(center, ring));
  }
}

TEST_CASE("oracle equals the streaming pipeline on seeded frames") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Frame frame = noise_frame(seed, 64, 64, std::uint32_t(seed % 5));
    const DetectorConfig config = make_config(20, 4);
    const std::vector<Corner> expected = oracle_detect(frame, config);
    const std::vector<Corner> batch =
        suppress_map(detect_frame(frame, config));
    CHECK(batch == expected);
  }
}

}  // TEST_SUITE
