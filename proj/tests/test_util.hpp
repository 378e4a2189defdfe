#pragma once

#include <cstdint>
#include <vector>

#include "doctest.h"
#include "ovc/detector.hpp"
#include "ovc/errors.hpp"
#include "ovc/sensor_sim.hpp"
#include "ovc/types.hpp"

namespace ovc::testing {

inline Frame noise_frame(std::uint64_t seed, std::uint16_t width,
                         std::uint16_t height, std::uint32_t motifs = 0) {
  Frame frame;
  frame.width = width;
  frame.height = height;
  frame.pixels = synth_pixels(seed, width, height, motifs);
  return frame;
}

inline Frame flat_frame(std::uint16_t width, std::uint16_t height,
                        std::uint8_t value) {
  Frame frame;
  frame.width = width;
  frame.height = height;
  frame.pixels.assign(frame.pixel_count(), value);
  return frame;
}

// Single isolated extremum: uniform background with one offset center pixel.
inline Frame motif_frame(std::uint16_t width, std::uint16_t height,
                         std::uint16_t cx, std::uint16_t cy,
                         std::uint8_t background, std::uint8_t center) {
  Frame frame = flat_frame(width, height, background);
  frame.pixels[std::size_t(cy) * width + cx] = center;
  return frame;
}

template <typename Fn>
void check_error(Fn&& fn, ErrorCode code) {
  try {
    fn();
    FAIL_CHECK("expected ovc::Error " << error_code_name(code));
  } catch (const Error& e) {
    CHECK_MESSAGE(e.code() == code, "expected " << error_code_name(code)
                                                << ", got " << e.what());
  } catch (const std::exception& e) {
    FAIL_CHECK("wrong exception type: " << e.what());
  }
}

// Streams a frame through push_pixels and assembles the emitted score rows
// into a full map, asserting rows arrive exactly once in ascending order.
inline ScoreMap collect_streaming_map(const Frame& frame,
                                      const DetectorConfig& config,
                                      std::vector<Corner>* candidates = nullptr) {
  AstDetector detector(frame.width, frame.height, config);
  ScoreMap map;
  map.width = frame.width;
  map.height = frame.height;
  map.score.assign(frame.pixel_count(), 0xFFFF);
  map.polarity.assign(frame.pixel_count(), Polarity::None);
  std::uint32_t rows_seen = 0;
  detector.on_score_row([&](const ScoreRow& row) {
    REQUIRE(row.y == rows_seen);
    REQUIRE(row.score.size() == frame.width);
    ++rows_seen;
    std::copy(row.score.begin(), row.score.end(),
              map.score.begin() + std::size_t(row.y) * frame.width);
    std::copy(row.polarity.begin(), row.polarity.end(),
              map.polarity.begin() + std::size_t(row.y) * frame.width);
  });
  if (candidates) {
    detector.on_candidate(
        [candidates](const Corner& c) { candidates->push_back(c); });
  }
  stream_frame(detector, frame);
  REQUIRE(rows_seen == frame.height);
  return map;
}

}  // namespace ovc::testing
