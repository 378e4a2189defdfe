#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ovc/config.hpp"
#include "ovc/types.hpp"

namespace ovc {

// Synchronized stereo pair: both frames share the trigger timestamp and the
// frame id, differing only in sensor id and content.
struct FramePair {
  Frame left;
  Frame right;
};

using SensorEvent = std::variant<ImuSample, FramePair>;

std::uint64_t event_timestamp(const SensorEvent& event);

struct RateReport {
  std::uint32_t ratio = 0;  // imu_rate / frame_rate
  std::uint64_t frame_period_ns = 0;
  std::uint64_t imu_period_ns = 0;
};

// Throws Error(BadRateRatio) when imu_rate is not a positive integer
// multiple of frame_rate.
RateReport frames_per_imu_window(const SensorRigConfig& config);

// Deterministic event source for the synchronized dual-camera + IMU rig.
// Frame pairs trigger at k * (1e9 / frame_rate) ns, IMU samples at
// k * (1e9 / imu_rate) ns, all on one monotonic timebase starting at 0.
// Coincident events are ordered Imu before FramePair. Synthetic mode is a
// pure function of the seed; image-sequence mode cycles the provided PGM
// files, feeding each file to both sensors of a pair.
class SensorRig {
 public:
  // open_rig: validates the config and, in sequence mode, loads every file
  // up front (Error(FileNotFound) / Error(BadImageFormat)).
  explicit SensorRig(SensorRigConfig config);

  // nullopt only in image-sequence mode once the sequence is exhausted and
  // looping is disabled.
  std::optional<SensorEvent> next_event();

  const SensorRigConfig& config() const noexcept { return config_; }

 private:
  Frame make_frame(SensorId sensor, std::uint64_t frame_id,
                   std::uint64_t timestamp_ns) const;
  ImuSample make_imu(std::uint64_t seq, std::uint64_t timestamp_ns) const;

  SensorRigConfig config_;
  std::uint64_t next_frame_ = 0;
  std::uint64_t next_imu_ = 0;
  std::vector<Frame> sequence_;  // preloaded sequence images (meta zeroed)
};

inline SensorRig open_rig(SensorRigConfig config) {
  return SensorRig(std::move(config));
}

// Seeded white noise with `motifs` 7x7 corner motifs stamped at random
// positions: a uniform patch whose center pixel is offset by +-160, giving
// one isolated high-contrast candidate per motif. Pure function of the
// arguments, bit-reproducible across platforms.
std::vector<std::uint8_t> synth_pixels(std::uint64_t seed, std::uint16_t width,
                                       std::uint16_t height,
                                       std::uint32_t motifs);

}  // namespace ovc
