#include "ovc/sensor_sim.hpp"

#include <string>

#include "ovc/errors.hpp"
#include "ovc/pgm.hpp"
#include "ovc/rng.hpp"

namespace ovc {

namespace {

constexpr std::uint64_t kNsPerSecond = 1'000'000'000ull;
constexpr double kGravity = 9.80665;

// Stream tags keep frame, IMU and per-sensor noise streams independent.
std::uint64_t frame_tag(std::uint64_t frame_id, SensorId sensor) {
  return (frame_id << 2) | std::uint64_t(sensor);
}

std::uint64_t imu_tag(std::uint64_t seq) { return (seq << 2) | 2; }

}  // namespace

std::uint64_t event_timestamp(const SensorEvent& event) {
  if (const auto* imu = std::get_if<ImuSample>(&event)) {
    return imu->timestamp_ns;
  }
  return std::get<FramePair>(event).left.timestamp_ns;
}

RateReport frames_per_imu_window(const SensorRigConfig& config) {
  if (config.frame_rate_hz == 0 || config.imu_rate_hz == 0 ||
      config.imu_rate_hz % config.frame_rate_hz != 0) {
    throw Error(ErrorCode::BadRateRatio,
                "imu rate " + std::to_string(config.imu_rate_hz) +
                    " Hz is not a positive multiple of frame rate " +
                    std::to_string(config.frame_rate_hz) + " Hz");
  }
  RateReport report;
  report.ratio = config.imu_rate_hz / config.frame_rate_hz;
  report.frame_period_ns = kNsPerSecond / config.frame_rate_hz;
  report.imu_period_ns = kNsPerSecond / config.imu_rate_hz;
  return report;
}

SensorRig::SensorRig(SensorRigConfig config) : config_(std::move(config)) {
  frames_per_imu_window(config_);  // validates the rate ratio
  if (config_.imu_rate_hz > kNsPerSecond) {
    throw Error(ErrorCode::BadRateRatio, "imu period below 1 ns");
  }
  if (config_.width < 7 || config_.height < 7) {
    throw Error(ErrorCode::DimensionTooSmall,
                std::to_string(config_.width) + "x" +
                    std::to_string(config_.height));
  }
  if (const auto* seq = std::get_if<ImageSequenceSource>(&config_.source)) {
    if (seq->paths.empty()) {
      throw Error(ErrorCode::FileNotFound, "empty image sequence");
    }
    sequence_.reserve(seq->paths.size());
    for (const std::string& path : seq->paths) {
      Frame frame = read_pgm(path);
      validate_frame(frame);
      sequence_.push_back(std::move(frame));
    }
  }
}

std::optional<SensorEvent> SensorRig::next_event() {
  const std::uint64_t t_imu =
      next_imu_ * kNsPerSecond / config_.imu_rate_hz;
  const std::uint64_t t_frame =
      next_frame_ * kNsPerSecond / config_.frame_rate_hz;
  // Coincident timestamps are ordered Imu before FramePair.
  if (t_imu <= t_frame) {
    const ImuSample sample = make_imu(next_imu_, t_imu);
    ++next_imu_;
    return SensorEvent{sample};
  }

  if (const auto* seq = std::get_if<ImageSequenceSource>(&config_.source)) {
    if (!seq->loop && next_frame_ >= sequence_.size()) {
      return std::nullopt;  // end of sequence
    }
  }
  FramePair pair{make_frame(SensorId::Left, next_frame_, t_frame),
                 make_frame(SensorId::Right, next_frame_, t_frame)};
  ++next_frame_;
  return SensorEvent{std::move(pair)};
}

Frame SensorRig::make_frame(SensorId sensor, std::uint64_t frame_id,
                            std::uint64_t timestamp_ns) const {
  Frame frame;
  frame.sensor_id = sensor;
  frame.frame_id = frame_id;
  frame.timestamp_ns = timestamp_ns;
  if (std::holds_alternative<SyntheticSource>(config_.source)) {
    frame.width = config_.width;
    frame.height = config_.height;
    frame.pixels =
        synth_pixels(mix_seed(config_.seed, frame_tag(frame_id, sensor)),
                     frame.width, frame.height, config_.motifs_per_frame);
  } else {
    const Frame& image = sequence_[frame_id % sequence_.size()];
    frame.width = image.width;
    frame.height = image.height;
    frame.pixels = image.pixels;
  }
  return frame;
}

ImuSample SensorRig::make_imu(std::uint64_t seq,
                              std::uint64_t timestamp_ns) const {
  SplitMix64 rng(mix_seed(config_.seed, imu_tag(seq)));
  auto noise = [&rng](double amplitude) {
    return (rng.next_unit() * 2.0 - 1.0) * amplitude;
  };
  ImuSample sample;
  sample.timestamp_ns = timestamp_ns;
  sample.seq = seq;
  sample.accel = {noise(0.05), noise(0.05), kGravity + noise(0.05)};
  sample.gyro = {noise(0.01), noise(0.01), noise(0.01)};
  return sample;
}

std::vector<std::uint8_t> synth_pixels(std::uint64_t seed, std::uint16_t width,
                                       std::uint16_t height,
                                       std::uint32_t motifs) {
  std::vector<std::uint8_t> pixels(std::size_t(width) * height);
  SplitMix64 rng(seed);
  std::size_t i = 0;
  for (; i + 8 <= pixels.size(); i += 8) {
    const std::uint64_t word = rng.next();
    for (int b = 0; b < 8; ++b) {
      pixels[i + b] = std::uint8_t(word >> (8 * b));
    }
  }
  if (i < pixels.size()) {
    const std::uint64_t word = rng.next();
    for (int b = 0; i < pixels.size(); ++i, ++b) {
      pixels[i] = std::uint8_t(word >> (8 * b));
    }
  }

  // Each motif is a uniform 7x7 patch whose center pixel sits 160 intensity
  // units off the patch value: one isolated high-contrast candidate.
  for (std::uint32_t m = 0; m < motifs; ++m) {
    const std::uint32_t x0 = rng.next_below(width - 6);
    const std::uint32_t y0 = rng.next_below(height - 6);
    const bool bright_ring = (rng.next() & 1) != 0;
    std::uint8_t base, center;
    if (bright_ring) {
      base = std::uint8_t(180 + rng.next_below(60));
      center = std::uint8_t(base - 160);
    } else {
      base = std::uint8_t(16 + rng.next_below(60));
      center = std::uint8_t(base + 160);
    }
    for (int dy = 0; dy < 7; ++dy) {
      std::uint8_t* row = pixels.data() + std::size_t(y0 + dy) * width + x0;
      for (int dx = 0; dx < 7; ++dx) row[dx] = base;
    }
    pixels[std::size_t(y0 + 3) * width + (x0 + 3)] = center;
  }
  return pixels;
}

}  // namespace ovc
