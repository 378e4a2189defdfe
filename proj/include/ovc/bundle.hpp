#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ovc/types.hpp"

namespace ovc {

// Simulated DMA payload: one contiguous buffer holding the header, the raw
// pixels, and the feature list immediately following the pixels.
//
// Wire layout (little-endian, frozen):
//   magic        u32   0x4F564331 ("OVC1")
//   version      u16   1
//   sensor_id    u8
//   flags        u8    0 (reserved)
//   frame_id     u64
//   timestamp_ns u64
//   width        u16
//   height       u16
//   feature_count u32
//   pixels       width * height bytes, row-major
//   features     feature_count records of {x u16, y u16, score u16,
//                polarity u8, pad u8}
inline constexpr std::uint32_t kBundleMagic = 0x4F564331u;  // "OVC1"
inline constexpr std::uint16_t kBundleVersion = 1;
inline constexpr std::size_t kBundleHeaderSize = 32;
inline constexpr std::size_t kFeatureRecordSize = 8;

inline constexpr std::size_t bundle_size(std::uint16_t width,
                                         std::uint16_t height,
                                         std::size_t feature_count) {
  return kBundleHeaderSize + std::size_t(width) * height +
         kFeatureRecordSize * feature_count;
}

// Corners must lie inside the frame. Throws Error(TooManyFeatures) when the
// feature count does not fit the u32 header field.
std::vector<std::uint8_t> encode_bundle(const Frame& frame,
                                        std::span<const Corner> corners);

struct DecodedBundle {
  Frame frame;
  std::vector<Corner> corners;
};

// Inverse of encode_bundle. Throws Error with BadMagic, BadVersion,
// TruncatedBundle (shorter than the header describes) or LengthMismatch
// (trailing bytes beyond the described length).
DecodedBundle decode_bundle(std::span<const std::uint8_t> bytes);

}  // namespace ovc
