#include "ovc/config.hpp"

#include <string>

#include "ovc/errors.hpp"

namespace ovc {

DetectorConfig::DetectorConfig(int threshold, int lane_width) {
  if (threshold < 0 || threshold > 254) {
    throw Error(ErrorCode::BadThreshold,
                std::to_string(threshold) + " outside [0, 254]");
  }
  if (lane_width != 1 && lane_width != 2 && lane_width != 4 &&
      lane_width != 8) {
    throw Error(ErrorCode::BadLaneWidth,
                std::to_string(lane_width) + " not one of {1, 2, 4, 8}");
  }
  threshold_ = threshold;
  lane_width_ = lane_width;
}

DetectorConfig make_config(int threshold, int lane_width) {
  return DetectorConfig(threshold, lane_width);
}

}  // namespace ovc
