#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ovc {

enum class SensorId : std::uint8_t { Left = 0, Right = 1 };

// Whether the qualifying ring arc is brighter or darker than the center.
enum class Polarity : std::uint8_t { None = 0, Bright = 1, Dark = 2 };

const char* to_string(SensorId id);
const char* to_string(Polarity p);

// One 8-bit monochrome image with its trigger timestamp on the common timebase.
struct Frame {
  SensorId sensor_id = SensorId::Left;
  std::uint64_t frame_id = 0;
  std::uint64_t timestamp_ns = 0;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, width * height

  std::uint8_t at(std::uint32_t x, std::uint32_t y) const {
    return pixels[std::size_t(y) * width + x];
  }
  std::size_t pixel_count() const { return std::size_t(width) * height; }
};

// Accel + gyro on the same timebase as Frame timestamps.
struct ImuSample {
  std::uint64_t timestamp_ns = 0;
  std::array<double, 3> accel{};  // m/s^2
  std::array<double, 3> gyro{};   // rad/s
  std::uint64_t seq = 0;
};

// Feature surviving non-maximal suppression. The same shape is used for
// pre-NMS candidates emitted by the detector.
struct Corner {
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  std::uint16_t score = 0;
  Polarity polarity = Polarity::None;

  friend bool operator==(const Corner&, const Corner&) = default;
};

// Throws Error(DimensionTooSmall) when the 7x7 detector window cannot fit,
// Error(LengthMismatch) when pixel count != width * height.
void validate_frame(const Frame& frame);

}  // namespace ovc
