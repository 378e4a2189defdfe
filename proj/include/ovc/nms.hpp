#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ovc/detector.hpp"
#include "ovc/types.hpp"

namespace ovc {

// Streaming 3x3 non-maximal suppression over candidate score rows. A corner
// at row r is emitted while row r+1 is being pushed: its score must be > 0
// and strictly greater than all 8 neighbors (missing neighbors count as 0,
// equal-score neighbors suppress each other).
class NmsSuppressor {
 public:
  using CornerSink = std::function<void(const Corner&)>;

  explicit NmsSuppressor(std::uint16_t width);

  void on_corner(CornerSink sink) { sink_ = std::move(sink); }

  // Rows must arrive in ascending y order with no gaps; throws
  // Error(RowOrderViolation) otherwise.
  void push_score_row(const ScoreRow& row);

  // Flushes the last pushed row, treating the missing row below as zeros.
  void finish();

  void reset();

  std::uint16_t width() const noexcept { return std::uint16_t(width_); }

 private:
  void suppress_middle(std::uint32_t y, const std::uint16_t* above,
                       const std::uint16_t* mid, const Polarity* mid_pol,
                       const std::uint16_t* below);

  int width_;
  bool started_ = false;
  bool have_two_ = false;
  bool finished_ = false;
  std::uint32_t last_y_ = 0;

  // Rolling buffer of the most recent score rows: prev_ holds y-1, above_
  // holds y-2 while row y is being pushed.
  std::vector<std::uint16_t> above_score_;
  std::vector<std::uint16_t> prev_score_;
  std::vector<Polarity> prev_polarity_;
  std::vector<std::uint16_t> zero_row_;

  CornerSink sink_;
};

// Batch wrapper: suppresses a complete score map, exactly equivalent to
// streaming all rows through push_score_row and calling finish(). Output is
// in raster order.
std::vector<Corner> suppress_map(const ScoreMap& map);

}  // namespace ovc
