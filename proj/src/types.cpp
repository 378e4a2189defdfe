#include "ovc/types.hpp"

#include <string>

#include "ovc/config.hpp"
#include "ovc/errors.hpp"

namespace ovc {

const char* to_string(SensorId id) {
  return id == SensorId::Left ? "left" : "right";
}

const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::Bright: return "bright";
    case Polarity::Dark: return "dark";
    case Polarity::None: break;
  }
  return "none";
}

void validate_frame(const Frame& frame) {
  if (frame.width < DetectorConfig::kWindow ||
      frame.height < DetectorConfig::kWindow) {
    throw Error(ErrorCode::DimensionTooSmall,
                std::to_string(frame.width) + "x" +
                    std::to_string(frame.height) + " frame cannot hold a " +
                    std::to_string(DetectorConfig::kWindow) + "x" +
                    std::to_string(DetectorConfig::kWindow) + " window");
  }
  if (frame.pixels.size() != frame.pixel_count()) {
    throw Error(ErrorCode::LengthMismatch,
                "expected " + std::to_string(frame.pixel_count()) +
                    " pixels, got " + std::to_string(frame.pixels.size()));
  }
}

}  // namespace ovc
