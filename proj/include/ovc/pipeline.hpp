#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ovc/config.hpp"
#include "ovc/detector.hpp"
#include "ovc/nms.hpp"
#include "ovc/types.hpp"

namespace ovc {

// Accumulated wall time per pipeline stage, in seconds.
struct StageTimings {
  double detector_s = 0.0;
  double nms_s = 0.0;
  double transport_s = 0.0;
};

// Detector -> NMS -> encode chain for one sensor at fixed dimensions.
// Reuses internal buffers across frames; one instance per sensor stream.
class FrontEnd {
 public:
  FrontEnd(std::uint16_t width, std::uint16_t height,
           const DetectorConfig& config);

  // Corners of this frame in raster order; the reference stays valid until
  // the next process() call.
  const std::vector<Corner>& process(const Frame& frame);

  // process() plus bundle encoding, timed as the transport stage.
  std::vector<std::uint8_t> process_encode(const Frame& frame);

  // Corners of the most recently processed frame.
  const std::vector<Corner>& last_corners() const noexcept { return corners_; }

  const StageTimings& timings() const noexcept { return timings_; }
  void reset_timings() { timings_ = {}; }

 private:
  DetectorConfig config_;
  std::uint16_t width_;
  std::uint16_t height_;
  ScoreMap map_;
  NmsSuppressor nms_;
  std::vector<Corner> corners_;
  StageTimings timings_;
};

// One-shot batch helper: detector + NMS at the configured lane width.
std::vector<Corner> detect_corners(const Frame& frame,
                                   const DetectorConfig& config);

// One-shot streaming helper: every pixel goes through push_pixels in lane
// groups and every score row through push_score_row. Identical output to
// detect_corners; kept separate so tests can drive the lane-parallel path.
std::vector<Corner> detect_corners_streaming(const Frame& frame,
                                             const DetectorConfig& config);

struct RunReport {
  std::uint64_t frames_processed = 0;  // stereo pairs
  std::uint64_t imu_samples = 0;
  std::uint64_t corners_total = 0;  // producer side, deterministic per seed
  std::uint64_t bundles_consumed = 0;
  std::uint64_t drops = 0;
  double wall_time_s = 0.0;
  double frames_per_second = 0.0;
  StageTimings stages;
};

struct BenchOptions {
  std::uint16_t width = 1280;
  std::uint16_t height = 1024;
  std::uint64_t seed = 7;
  std::uint32_t motifs = 20;
  std::uint32_t frames = 200;  // stereo pairs
  DetectorConfig config;
  std::optional<Frame> image;  // when set, used for both sensors
};

// Sustained detector+nms+encode throughput over `frames` stereo pairs.
// Frame content is pre-generated outside the timed loop.
RunReport run_bench(const BenchOptions& options);

}  // namespace ovc
