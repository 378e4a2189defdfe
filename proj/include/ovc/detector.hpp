#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ovc/config.hpp"
#include "ovc/types.hpp"

namespace ovc {

// One (dx, dy) step from the candidate pixel to a ring entry.
struct RingOffset {
  std::int8_t dx;
  std::int8_t dy;

  friend bool operator==(const RingOffset&, const RingOffset&) = default;
};

// The 16 offsets of the circle discretized into a 7x7 window, clockwise
// starting at (0, -3). The set is symmetric under negation and under 90
// degree rotation.
const std::array<RingOffset, 16>& ring_offsets();

// Classifies one center/ring sample: Bright when some wrap-around arc of
// >= 9 ring entries satisfies ring - center > threshold for every member,
// Dark when every member satisfies center - ring > threshold. Bright and
// dark arcs cannot both qualify (two disjoint arcs of 9 do not fit in 16).
Polarity segment_test(std::uint8_t center, std::span<const std::uint8_t> ring,
                      int threshold);

struct ScoreResult {
  std::uint16_t score = 0;
  Polarity polarity = Polarity::None;
};

// Weakest-link contrast of the best qualifying arc: the maximum over all
// wrap-around same-sign arcs of length >= 9 of the minimum |ring - center|
// inside the arc. Equals the largest threshold at which the pixel is still
// a candidate, so segment_test(c, ring, t) != None  <=>  score > t.
ScoreResult corner_score(std::uint8_t center, std::span<const std::uint8_t> ring);

// Dense per-pixel candidate scores for one frame, post-threshold: entries are
// 0 where the pixel is not a candidate. Border rows/columns (first and last
// three) are always 0 because the 7x7 window must fit entirely inside.
struct ScoreMap {
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::vector<std::uint16_t> score;
  std::vector<Polarity> polarity;

  std::uint16_t score_at(std::uint32_t x, std::uint32_t y) const {
    return score[std::size_t(y) * width + x];
  }
  Polarity polarity_at(std::uint32_t x, std::uint32_t y) const {
    return polarity[std::size_t(y) * width + x];
  }
};


// One completed row of the candidate score map. Spans alias detector-owned
// buffers and are only valid during the sink callback.
struct ScoreRow {
  std::uint16_t y = 0;
  std::span<const std::uint16_t> score;
  std::span<const Polarity> polarity;
};

inline ScoreRow score_map_row(const ScoreMap& map, std::uint16_t y) {
  const std::size_t offset = std::size_t(y) * map.width;
  return ScoreRow{
      y,
      std::span<const std::uint16_t>(map.score.data() + offset, map.width),
      std::span<const Polarity>(map.polarity.data() + offset, map.width),
  };
}

// Streaming AST detector: consumes pixels in raster order through a rolling
// 7-line buffer, lane_width adjacent pixels per push, and evaluates each
// candidate as soon as its 7x7 context is resident. Candidates of row r are
// emitted before any pixel of row r+4 is consumed.
//
// Per-row dataflow: while pixel row w streams in, candidates of row w-3 are
// scored; when row w completes, score row w-3 is forwarded. The three
// trailing border score rows are flushed when the image completes.
class AstDetector {
 public:
  using CandidateSink = std::function<void(const Corner&)>;
  using ScoreRowSink = std::function<void(const ScoreRow&)>;

  // Throws Error(DimensionTooSmall) when width or height < 7.
  AstDetector(std::uint16_t width, std::uint16_t height,
              const DetectorConfig& config);

  void on_candidate(CandidateSink sink) { candidate_sink_ = std::move(sink); }
  void on_score_row(ScoreRowSink sink) { row_sink_ = std::move(sink); }

  // Ingests exactly lane_width pixels at the raster cursor. When the row has
  // fewer than lane_width pixels left, the group is zero-padded by the caller
  // and the pad positions are dropped. Throws Error(GeometryOverflow) when
  // the image is already complete.
  void push_pixels(std::span<const std::uint8_t> lane_group);

  // Clears all state for a new image of the same dimensions.
  void reset();

  bool image_complete() const noexcept { return write_row_ == height_; }

  std::uint16_t width() const noexcept { return std::uint16_t(width_); }
  std::uint16_t height() const noexcept { return std::uint16_t(height_); }
  const DetectorConfig& config() const noexcept { return config_; }

  // Row index of the pixel row currently being consumed (== height once the
  // image is complete). Exposed so tests can assert the streaming latency
  // bound at emission time.
  int current_write_row() const noexcept { return write_row_; }

 private:
  const std::uint8_t* buffered_row(int row) const {
    return rows_.data() + std::size_t(row % 7) * width_;
  }
  std::uint8_t* buffered_row(int row) {
    return rows_.data() + std::size_t(row % 7) * width_;
  }
  void evaluate_span(int row, int x_begin, int x_end);
  void emit_score_row(int row, bool evaluated);

  DetectorConfig config_;
  int width_ = 0;
  int height_ = 0;

  std::vector<std::uint8_t> rows_;  // 7-line rolling buffer
  int write_row_ = 0;
  int write_col_ = 0;
  int next_eval_x_ = 3;

  std::vector<std::uint16_t> score_row_;
  std::vector<Polarity> polarity_row_;
  std::vector<std::uint16_t> zero_score_row_;
  std::vector<Polarity> zero_polarity_row_;

  CandidateSink candidate_sink_;
  ScoreRowSink row_sink_;
};

// Streams a whole frame through detector.push_pixels in raster order,
// zero-padding the final lane group of each row when the width is not a
// multiple of the lane width. The frame dimensions must match the detector.
void stream_frame(AstDetector& detector, const Frame& frame);

// Batch wrapper: the dense candidate score map for one frame, exactly
// equivalent to streaming the frame through push_pixels. Uses a row-batched
// kernel (SSE2 where available) that is property-tested identical to the
// streaming path.
ScoreMap detect_frame(const Frame& frame, const DetectorConfig& config);

// Same as detect_frame but reuses the caller's buffers.
void detect_frame_into(const Frame& frame, const DetectorConfig& config,
                       ScoreMap& out);

namespace detail {

// Scores all positions x in [x_begin, x_end] of one row given direct
// pointers to the 7 context rows (index dy+3). Writes thresholded scores and
// polarities; reference scalar and SSE2 versions produce identical output.
void score_row_span(const std::uint8_t* const rows[7], int x_begin, int x_end,
                    int threshold, std::uint16_t* score_out,
                    Polarity* polarity_out);

ScoreResult score_ring_diffs(const std::int16_t d[16]);

}  // namespace detail

}  // namespace ovc
