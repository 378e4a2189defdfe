#include "ovc/nms.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <string>

#include "ovc/errors.hpp"

namespace ovc {

NmsSuppressor::NmsSuppressor(std::uint16_t width) : width_(width) {
  if (width == 0) throw std::invalid_argument("nms width must be > 0");
  above_score_.assign(width_, 0);
  prev_score_.assign(width_, 0);
  prev_polarity_.assign(width_, Polarity::None);
  zero_row_.assign(width_, 0);
}

void NmsSuppressor::reset() {
  started_ = false;
  have_two_ = false;
  finished_ = false;
  last_y_ = 0;
  std::fill(above_score_.begin(), above_score_.end(), 0);
  std::fill(prev_score_.begin(), prev_score_.end(), 0);
}

void NmsSuppressor::push_score_row(const ScoreRow& row) {
  if (finished_) throw std::logic_error("push_score_row after finish");
  if (int(row.score.size()) != width_ || int(row.polarity.size()) != width_) {
    throw std::invalid_argument("score row width mismatch");
  }
  if (started_ && row.y != last_y_ + 1) {
    throw Error(ErrorCode::RowOrderViolation,
                "expected row " + std::to_string(last_y_ + 1) + ", got " +
                    std::to_string(row.y));
  }
  if (started_) {
    // Row last_y_ becomes decidable now that its row below is resident.
    const std::uint16_t* above =
        have_two_ ? above_score_.data() : zero_row_.data();
    suppress_middle(last_y_, above, prev_score_.data(), prev_polarity_.data(),
                    row.score.data());
    std::swap(above_score_, prev_score_);
    have_two_ = true;
  }
  std::copy(row.score.begin(), row.score.end(), prev_score_.begin());
  std::copy(row.polarity.begin(), row.polarity.end(), prev_polarity_.begin());
  last_y_ = row.y;
  started_ = true;
}

void NmsSuppressor::finish() {
  if (finished_) return;
  finished_ = true;
  if (!started_) return;
  const std::uint16_t* above =
      have_two_ ? above_score_.data() : zero_row_.data();
  suppress_middle(last_y_, above, prev_score_.data(), prev_polarity_.data(),
                  zero_row_.data());
}

void NmsSuppressor::suppress_middle(std::uint32_t y,
                                    const std::uint16_t* above,
                                    const std::uint16_t* mid,
                                    const Polarity* mid_pol,
                                    const std::uint16_t* below) {
  auto consider = [&](int x) {
    const std::uint16_t s = mid[x];
    if (s == 0) return;
    const bool has_left = x > 0;
    const bool has_right = x + 1 < width_;
    if (has_left && mid[x - 1] >= s) return;
    if (has_right && mid[x + 1] >= s) return;
    if (above[x] >= s) return;
    if (has_left && above[x - 1] >= s) return;
    if (has_right && above[x + 1] >= s) return;
    if (below[x] >= s) return;
    if (has_left && below[x - 1] >= s) return;
    if (has_right && below[x + 1] >= s) return;
    if (sink_) {
      sink_(Corner{std::uint16_t(x), std::uint16_t(y), s, mid_pol[x]});
    }
  };

  // Candidate rows are sparse; skip four zero scores at a time.
  int x = 0;
  for (; x + 4 <= width_; x += 4) {
    std::uint64_t chunk;
    std::memcpy(&chunk, mid + x, sizeof(chunk));
    if (chunk == 0) continue;
    consider(x);
    consider(x + 1);
    consider(x + 2);
    consider(x + 3);
  }
  for (; x < width_; ++x) consider(x);
}

std::vector<Corner> suppress_map(const ScoreMap& map) {
  NmsSuppressor nms(map.width);
  std::vector<Corner> corners;
  nms.on_corner([&corners](const Corner& c) { corners.push_back(c); });
  for (std::uint16_t y = 0; y < map.height; ++y) {
    nms.push_score_row(score_map_row(map, y));
  }
  nms.finish();
  return corners;
}

}  // namespace ovc
