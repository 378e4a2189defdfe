#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ovc {

// Detector geometry is fixed by the segment test: a 16-entry ring inside a
// 7x7 window with a minimum qualifying arc of 9. Only the contrast threshold
// and the ingest lane width are tunable.
class DetectorConfig {
 public:
  static constexpr int kRingSize = 16;
  static constexpr int kMinArc = 9;
  static constexpr int kWindow = 7;

  DetectorConfig() = default;

  // Throws Error(BadThreshold) outside [0, 254], Error(BadLaneWidth) when
  // lane_width is not one of {1, 2, 4, 8}.
  DetectorConfig(int threshold, int lane_width);

  int threshold() const noexcept { return threshold_; }
  int lane_width() const noexcept { return lane_width_; }

 private:
  int threshold_ = 20;
  int lane_width_ = 4;
};

DetectorConfig make_config(int threshold, int lane_width);

struct SyntheticSource {};

// Cycles binary PGM (P5) files; each file feeds both sensors of a pair.
struct ImageSequenceSource {
  std::vector<std::string> paths;
  bool loop = false;
};

struct SensorRigConfig {
  std::uint16_t width = 1280;
  std::uint16_t height = 1024;
  std::uint32_t frame_rate_hz = 20;
  std::uint32_t imu_rate_hz = 200;
  std::uint64_t seed = 7;
  // Number of 7x7 corner motifs stamped into each synthetic frame.
  std::uint32_t motifs_per_frame = 20;
  std::variant<SyntheticSource, ImageSequenceSource> source = SyntheticSource{};
};

}  // namespace ovc
