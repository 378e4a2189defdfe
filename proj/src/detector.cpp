#include "ovc/detector.hpp"

#include <algorithm>
#include <climits>
#include <cstring>
#include <stdexcept>
#include <string>

#include "ovc/errors.hpp"

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

namespace ovc {

namespace {

// Clockwise from (0, -3): the radius-3 circle discretized to 16 lattice
// points inside a 7x7 window.
constexpr std::array<RingOffset, 16> kRing = {{
    {0, -3}, {1, -3}, {2, -2}, {3, -1}, {3, 0}, {3, 1}, {2, 2}, {1, 3},
    {0, 3}, {-1, 3}, {-2, 2}, {-3, 1}, {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3},
}};

// Ring entry i lives at row (dy + 3) relative to the top of the 7-row
// context, column x + dx.
constexpr int kRingRow[16] = {0, 0, 1, 2, 3, 4, 5, 6,
                              6, 6, 5, 4, 3, 2, 1, 0};
constexpr int kRingDx[16] = {0, 1, 2, 3, 3, 3, 2, 1,
                             0, -1, -2, -3, -3, -3, -2, -1};

inline int min3(int a, int b, int c) { return std::min(std::min(a, b), c); }
inline int max3(int a, int b, int c) { return std::max(std::max(a, b), c); }

}  // namespace

const std::array<RingOffset, 16>& ring_offsets() { return kRing; }

Polarity segment_test(std::uint8_t center, std::span<const std::uint8_t> ring,
                      int threshold) {
  if (ring.size() != 16) {
    throw std::invalid_argument("segment_test needs a 16-entry ring");
  }
  // Longest wrap-around runs, found by scanning the circle twice. Two
  // disjoint arcs of nine cannot fit in sixteen entries, so at most one
  // polarity can qualify for any threshold >= 0.
  int best_bright = 0, best_dark = 0;
  int run_bright = 0, run_dark = 0;
  for (int i = 0; i < 32; ++i) {
    const int d = int(ring[i & 15]) - int(center);
    if (d > threshold) {
      run_bright = std::min(run_bright + 1, 16);
      best_bright = std::max(best_bright, run_bright);
    } else {
      run_bright = 0;
    }
    if (d < -threshold) {
      run_dark = std::min(run_dark + 1, 16);
      best_dark = std::max(best_dark, run_dark);
    } else {
      run_dark = 0;
    }
  }
  if (best_bright >= DetectorConfig::kMinArc) return Polarity::Bright;
  if (best_dark >= DetectorConfig::kMinArc) return Polarity::Dark;
  return Polarity::None;
}

namespace detail {

ScoreResult score_ring_diffs(const std::int16_t d[16]) {
  // Weakest-link contrast: any qualifying arc of length >= 9 contains a
  // window of exactly 9, and extending an arc can only lower its minimum,
  // so max-over-arcs(min) == max over the 16 nine-entry windows. A window
  // qualifies as bright iff its minimum is positive, so the plain max of
  // window minima already yields the bright score (non-qualifying windows
  // contribute <= 0). Dark is the mirror image on the window maxima.
  int dd[18];
  for (int i = 0; i < 18; ++i) dd[i] = d[i & 15];
  int lo3[22], hi3[22];
  for (int i = 0; i < 16; ++i) {
    lo3[i] = min3(dd[i], dd[i + 1], dd[i + 2]);
    hi3[i] = max3(dd[i], dd[i + 1], dd[i + 2]);
  }
  for (int i = 16; i < 22; ++i) {
    lo3[i] = lo3[i - 16];
    hi3[i] = hi3[i - 16];
  }
  int best_min9 = INT_MIN, worst_max9 = INT_MAX;
  for (int s = 0; s < 16; ++s) {
    best_min9 = std::max(best_min9, min3(lo3[s], lo3[s + 3], lo3[s + 6]));
    worst_max9 = std::min(worst_max9, max3(hi3[s], hi3[s + 3], hi3[s + 6]));
  }
  const int bright = std::max(best_min9, 0);
  const int dark = std::max(-worst_max9, 0);
  if (bright == 0 && dark == 0) return {0, Polarity::None};
  // Both positive is impossible (disjoint arcs of nine in sixteen entries).
  if (bright >= dark) return {std::uint16_t(bright), Polarity::Bright};
  return {std::uint16_t(dark), Polarity::Dark};
}

namespace {

void score_row_span_scalar(const std::uint8_t* const rows[7], int x_begin,
                           int x_end, int threshold, std::uint16_t* score_out,
                           Polarity* polarity_out) {
  const std::uint8_t* mid = rows[3];
  for (int x = x_begin; x <= x_end; ++x) {
    const int center = mid[x];
    // Any nine-entry window contains at least two of the four compass
    // points (ring indices 0, 4, 8, 12), so fewer than two qualifying
    // compass points on both polarities rules the pixel out at this
    // threshold.
    const int c0 = rows[0][x] - center;
    const int c1 = mid[x + 3] - center;
    const int c2 = rows[6][x] - center;
    const int c3 = mid[x - 3] - center;
    const int nb = (c0 > threshold) + (c1 > threshold) + (c2 > threshold) +
                   (c3 > threshold);
    if (nb < 2) {
      const int nd = (c0 < -threshold) + (c1 < -threshold) +
                     (c2 < -threshold) + (c3 < -threshold);
      if (nd < 2) {
        score_out[x] = 0;
        polarity_out[x] = Polarity::None;
        continue;
      }
    }
    std::int16_t d[16];
    for (int i = 0; i < 16; ++i) {
      d[i] = std::int16_t(rows[kRingRow[i]][x + kRingDx[i]] - center);
    }
    const ScoreResult r = score_ring_diffs(d);
    if (int(r.score) > threshold) {
      score_out[x] = r.score;
      polarity_out[x] = r.polarity;
    } else {
      score_out[x] = 0;
      polarity_out[x] = Polarity::None;
    }
  }
}

#if defined(__SSE2__)

inline __m128i load8_epi16(const std::uint8_t* p) {
  const __m128i v = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(p));
  return _mm_unpacklo_epi8(v, _mm_setzero_si128());
}

// Eight positions per iteration, same exact integer arithmetic as the
// scalar path (differences fit int16, scores fit [0, 255]).
void score_row_span_sse2(const std::uint8_t* const rows[7], int x_begin,
                         int x_end, int threshold, std::uint16_t* score_out,
                         Polarity* polarity_out) {
  const __m128i zero = _mm_setzero_si128();
  const __m128i tvec = _mm_set1_epi16(std::int16_t(threshold));
  int x = x_begin;
  for (; x + 7 <= x_end; x += 8) {
    const __m128i center = load8_epi16(rows[3] + x);
    __m128i d[16];
    for (int i = 0; i < 16; ++i) {
      d[i] = _mm_sub_epi16(load8_epi16(rows[kRingRow[i]] + x + kRingDx[i]),
                           center);
    }
    __m128i lo3[16], hi3[16];
    for (int i = 0; i < 16; ++i) {
      const __m128i a = d[i];
      const __m128i b = d[(i + 1) & 15];
      const __m128i c = d[(i + 2) & 15];
      lo3[i] = _mm_min_epi16(_mm_min_epi16(a, b), c);
      hi3[i] = _mm_max_epi16(_mm_max_epi16(a, b), c);
    }
    __m128i best_min9 = _mm_set1_epi16(SHRT_MIN);
    __m128i worst_max9 = _mm_set1_epi16(SHRT_MAX);
    for (int s = 0; s < 16; ++s) {
      const __m128i mn9 = _mm_min_epi16(
          _mm_min_epi16(lo3[s], lo3[(s + 3) & 15]), lo3[(s + 6) & 15]);
      best_min9 = _mm_max_epi16(best_min9, mn9);
      const __m128i mx9 = _mm_max_epi16(
          _mm_max_epi16(hi3[s], hi3[(s + 3) & 15]), hi3[(s + 6) & 15]);
      worst_max9 = _mm_min_epi16(worst_max9, mx9);
    }
    const __m128i bright = _mm_max_epi16(best_min9, zero);
    const __m128i dark = _mm_max_epi16(_mm_sub_epi16(zero, worst_max9), zero);
    const __m128i score = _mm_max_epi16(bright, dark);
    const __m128i cand = _mm_cmpgt_epi16(score, tvec);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(score_out + x),
                     _mm_and_si128(score, cand));
    const __m128i pol_bright =
        _mm_and_si128(_mm_cmpgt_epi16(bright, tvec), _mm_set1_epi16(1));
    const __m128i pol_dark =
        _mm_and_si128(_mm_cmpgt_epi16(dark, tvec), _mm_set1_epi16(2));
    const __m128i pol8 =
        _mm_packus_epi16(_mm_or_si128(pol_bright, pol_dark), zero);
    _mm_storel_epi64(reinterpret_cast<__m128i*>(polarity_out + x), pol8);
  }
  score_row_span_scalar(rows, x, x_end, threshold, score_out, polarity_out);
}

#endif  // __SSE2__

}  // namespace

void score_row_span(const std::uint8_t* const rows[7], int x_begin, int x_end,
                    int threshold, std::uint16_t* score_out,
                    Polarity* polarity_out) {
  if (x_begin > x_end) return;
#if defined(__SSE2__)
  score_row_span_sse2(rows, x_begin, x_end, threshold, score_out,
                      polarity_out);
#else
  score_row_span_scalar(rows, x_begin, x_end, threshold, score_out,
                        polarity_out);
#endif
}

}  // namespace detail

ScoreResult corner_score(std::uint8_t center,
                         std::span<const std::uint8_t> ring) {
  if (ring.size() != 16) {
    throw std::invalid_argument("corner_score needs a 16-entry ring");
  }
  std::int16_t d[16];
  for (int i = 0; i < 16; ++i) d[i] = std::int16_t(int(ring[i]) - int(center));
  return detail::score_ring_diffs(d);
}

AstDetector::AstDetector(std::uint16_t width, std::uint16_t height,
                         const DetectorConfig& config)
    : config_(config), width_(width), height_(height) {
  if (width < DetectorConfig::kWindow || height < DetectorConfig::kWindow) {
    throw Error(ErrorCode::DimensionTooSmall,
                std::to_string(width) + "x" + std::to_string(height) +
                    " is smaller than the detector window");
  }
  rows_.resize(std::size_t(7) * width_);
  score_row_.assign(width_, 0);
  polarity_row_.assign(width_, Polarity::None);
  zero_score_row_.assign(width_, 0);
  zero_polarity_row_.assign(width_, Polarity::None);
}

void AstDetector::reset() {
  write_row_ = 0;
  write_col_ = 0;
  next_eval_x_ = 3;
  std::fill(score_row_.begin(), score_row_.end(), 0);
  std::fill(polarity_row_.begin(), polarity_row_.end(), Polarity::None);
}

void AstDetector::push_pixels(std::span<const std::uint8_t> lane_group) {
  if (int(lane_group.size()) != config_.lane_width()) {
    throw std::invalid_argument("lane group size must equal lane_width");
  }
  if (write_row_ >= height_) {
    throw Error(ErrorCode::GeometryOverflow,
                "image of " + std::to_string(std::size_t(width_) * height_) +
                    " pixels is already complete");
  }

  // Pad positions past the row end are dropped, never evaluated.
  const int take = std::min(int(lane_group.size()), width_ - write_col_);
  std::memcpy(buffered_row(write_row_) + write_col_, lane_group.data(),
              std::size_t(take));
  write_col_ += take;

  if (write_row_ >= 6) {
    // Row write_row_ - 3 becomes evaluable up to three columns behind the
    // freshly written context.
    const int x_hi = std::min(write_col_ - 4, width_ - 4);
    if (x_hi >= next_eval_x_) {
      evaluate_span(write_row_ - 3, next_eval_x_, x_hi);
      next_eval_x_ = x_hi + 1;
    }
  }

  if (write_col_ == width_) {
    if (write_row_ >= 3) {
      emit_score_row(write_row_ - 3, /*evaluated=*/write_row_ >= 6);
    }
    ++write_row_;
    write_col_ = 0;
    next_eval_x_ = 3;
    if (write_row_ == height_) {
      // Trailing border rows have no candidates; flush them so consumers
      // see a complete map.
      for (int r = height_ - 3; r < height_; ++r) {
        emit_score_row(r, /*evaluated=*/false);
      }
    }
  }
}

void AstDetector::evaluate_span(int row, int x_begin, int x_end) {
  const std::uint8_t* rows[7];
  for (int i = 0; i < 7; ++i) rows[i] = buffered_row(row - 3 + i);
  detail::score_row_span(rows, x_begin, x_end, config_.threshold(),
                         score_row_.data(), polarity_row_.data());
  if (candidate_sink_) {
    for (int x = x_begin; x <= x_end; ++x) {
      if (score_row_[x] != 0) {
        candidate_sink_(Corner{std::uint16_t(x), std::uint16_t(row),
                               score_row_[x], polarity_row_[x]});
      }
    }
  }
}

void AstDetector::emit_score_row(int row, bool evaluated) {
  if (row_sink_) {
    const ScoreRow out{
        std::uint16_t(row),
        std::span<const std::uint16_t>(
            evaluated ? score_row_.data() : zero_score_row_.data(),
            std::size_t(width_)),
        std::span<const Polarity>(
            evaluated ? polarity_row_.data() : zero_polarity_row_.data(),
            std::size_t(width_)),
    };
    row_sink_(out);
  }
  if (evaluated) {
    std::fill(score_row_.begin(), score_row_.end(), 0);
    std::fill(polarity_row_.begin(), polarity_row_.end(), Polarity::None);
  }
}

void stream_frame(AstDetector& detector, const Frame& frame) {
  if (frame.width != detector.width() || frame.height != detector.height()) {
    throw std::invalid_argument("frame dimensions do not match detector");
  }
  const int lane = detector.config().lane_width();
  const int w = frame.width;
  std::array<std::uint8_t, 8> padded{};
  for (int y = 0; y < int(frame.height); ++y) {
    const std::uint8_t* row = frame.pixels.data() + std::size_t(y) * w;
    int x = 0;
    for (; x + lane <= w; x += lane) {
      detector.push_pixels({row + x, std::size_t(lane)});
    }
    if (x < w) {
      padded.fill(0);
      std::copy(row + x, row + w, padded.begin());
      detector.push_pixels({padded.data(), std::size_t(lane)});
    }
  }
}

void detect_frame_into(const Frame& frame, const DetectorConfig& config,
                       ScoreMap& out) {
  validate_frame(frame);
  const int w = frame.width;
  const int h = frame.height;
  out.width = frame.width;
  out.height = frame.height;
  out.score.assign(frame.pixel_count(), 0);
  out.polarity.assign(frame.pixel_count(), Polarity::None);
  for (int r = 3; r + 3 < h; ++r) {
    const std::uint8_t* rows[7];
    for (int i = 0; i < 7; ++i) {
      rows[i] = frame.pixels.data() + std::size_t(r - 3 + i) * w;
    }
    detail::score_row_span(rows, 3, w - 4, config.threshold(),
                           out.score.data() + std::size_t(r) * w,
                           out.polarity.data() + std::size_t(r) * w);
  }
}

ScoreMap detect_frame(const Frame& frame, const DetectorConfig& config) {
  ScoreMap map;
  detect_frame_into(frame, config, map);
  return map;
}

}  // namespace ovc
