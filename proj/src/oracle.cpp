#include "ovc/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "ovc/detector.hpp"

namespace ovc {

namespace {

// The oracle keeps its own copy of the discretized circle so that no arc
// enumeration code is shared with the streaming detector.
constexpr int kCircleDx[16] = {0, 1, 2, 3, 3, 3, 2, 1,
                               0, -1, -2, -3, -3, -3, -2, -1};
constexpr int kCircleDy[16] = {-3, -3, -2, -1, 0, 1, 2, 3,
                               3, 3, 2, 1, 0, -1, -2, -3};

struct NaiveScore {
  int score = 0;
  Polarity polarity = Polarity::None;
};

// Enumerates every wrap-around arc of every length 9..16 and takes the arc
// minimum (bright) or maximum (dark) directly.
NaiveScore naive_score(const Frame& frame, int x, int y) {
  const int center = frame.at(x, y);
  int d[16];
  for (int i = 0; i < 16; ++i) {
    d[i] = int(frame.at(x + kCircleDx[i], y + kCircleDy[i])) - center;
  }
  int bright = 0;
  int dark = 0;
  for (int start = 0; start < 16; ++start) {
    int arc_min = d[start];
    int arc_max = d[start];
    for (int len = 2; len <= 16; ++len) {
      const int v = d[(start + len - 1) % 16];
      arc_min = std::min(arc_min, v);
      arc_max = std::max(arc_max, v);
      if (len >= 9) {
        if (arc_min > 0) bright = std::max(bright, arc_min);
        if (arc_max < 0) dark = std::max(dark, -arc_max);
      }
    }
  }
  if (bright == 0 && dark == 0) return {0, Polarity::None};
  if (bright >= dark) return {bright, Polarity::Bright};
  return {dark, Polarity::Dark};
}

}  // namespace

std::vector<Corner> oracle_detect(const Frame& frame,
                                  const DetectorConfig& config) {
  validate_frame(frame);
  const int w = frame.width;
  const int h = frame.height;
  const int t = config.threshold();

  std::vector<int> score(frame.pixel_count(), 0);
  std::vector<Polarity> polarity(frame.pixel_count(), Polarity::None);
  for (int y = 3; y <= h - 4; ++y) {
    for (int x = 3; x <= w - 4; ++x) {
      const NaiveScore r = naive_score(frame, x, y);
      if (r.score > t) {
        score[std::size_t(y) * w + x] = r.score;
        polarity[std::size_t(y) * w + x] = r.polarity;
      }
    }
  }

  auto score_at = [&](int x, int y) -> int {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0;
    return score[std::size_t(y) * w + x];
  };

  std::vector<Corner> corners;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int s = score_at(x, y);
      if (s == 0) continue;
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (score_at(x + dx, y + dy) >= s) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) {
        corners.push_back(Corner{std::uint16_t(x), std::uint16_t(y),
                                 std::uint16_t(s),
                                 polarity[std::size_t(y) * w + x]});
      }
    }
  }
  return corners;
}

std::uint16_t oracle_score_by_sweep(std::uint8_t center,
                                    std::span<const std::uint8_t> ring) {
  if (ring.size() != 16) {
    throw std::invalid_argument("oracle_score_by_sweep needs a 16-entry ring");
  }
  std::uint16_t best = 0;
  for (int t = 1; t <= 255; ++t) {
    if (segment_test(center, ring, t - 1) != Polarity::None) {
      best = std::uint16_t(t);
    }
  }
  return best;
}

}  // namespace ovc
