#include "ovc/bundle.hpp"

#include <cstring>
#include <stdexcept>
#include <string>

#include "ovc/errors.hpp"

namespace ovc {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(std::uint8_t(v & 0xff));
  out.push_back(std::uint8_t(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t off) {
  return std::uint16_t(b[off] | (std::uint16_t(b[off + 1]) << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t off) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[off + i];
  return v;
}

std::uint64_t get_u64(std::span<const std::uint8_t> b, std::size_t off) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[off + i];
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_bundle(const Frame& frame,
                                        std::span<const Corner> corners) {
  validate_frame(frame);
  if (corners.size() > 0xFFFFFFFFull) {
    throw Error(ErrorCode::TooManyFeatures,
                std::to_string(corners.size()) + " features exceed the u32 "
                                                 "header field");
  }
  for (const Corner& c : corners) {
    if (c.x >= frame.width || c.y >= frame.height) {
      throw std::invalid_argument("corner outside frame bounds");
    }
  }

  std::vector<std::uint8_t> out;
  out.reserve(bundle_size(frame.width, frame.height, corners.size()));
  put_u32(out, kBundleMagic);
  put_u16(out, kBundleVersion);
  out.push_back(std::uint8_t(frame.sensor_id));
  out.push_back(0);  // flags, reserved
  put_u64(out, frame.frame_id);
  put_u64(out, frame.timestamp_ns);
  put_u16(out, frame.width);
  put_u16(out, frame.height);
  put_u32(out, std::uint32_t(corners.size()));
  out.insert(out.end(), frame.pixels.begin(), frame.pixels.end());
  for (const Corner& c : corners) {
    put_u16(out, c.x);
    put_u16(out, c.y);
    put_u16(out, c.score);
    out.push_back(std::uint8_t(c.polarity));
    out.push_back(0);  // pad
  }
  return out;
}

DecodedBundle decode_bundle(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) {
    throw Error(ErrorCode::TruncatedBundle, "shorter than the magic field");
  }
  if (get_u32(bytes, 0) != kBundleMagic) {
    throw Error(ErrorCode::BadMagic, "not an OVC1 bundle");
  }
  if (bytes.size() < 6) {
    throw Error(ErrorCode::TruncatedBundle, "shorter than the version field");
  }
  const std::uint16_t version = get_u16(bytes, 4);
  if (version != kBundleVersion) {
    throw Error(ErrorCode::BadVersion,
                "version " + std::to_string(version) + ", expected " +
                    std::to_string(kBundleVersion));
  }
  if (bytes.size() < kBundleHeaderSize) {
    throw Error(ErrorCode::TruncatedBundle, "incomplete header");
  }

  DecodedBundle out;
  out.frame.sensor_id = SensorId(bytes[6]);
  out.frame.frame_id = get_u64(bytes, 8);
  out.frame.timestamp_ns = get_u64(bytes, 16);
  out.frame.width = get_u16(bytes, 24);
  out.frame.height = get_u16(bytes, 26);
  const std::uint32_t feature_count = get_u32(bytes, 28);

  const std::size_t expected =
      bundle_size(out.frame.width, out.frame.height, feature_count);
  if (bytes.size() < expected) {
    throw Error(ErrorCode::TruncatedBundle,
                std::to_string(bytes.size()) + " bytes, header describes " +
                    std::to_string(expected));
  }
  if (bytes.size() > expected) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(bytes.size() - expected) + " trailing bytes");
  }

  const std::size_t pixel_count = out.frame.pixel_count();
  out.frame.pixels.assign(bytes.begin() + kBundleHeaderSize,
                          bytes.begin() + kBundleHeaderSize + pixel_count);
  std::size_t off = kBundleHeaderSize + pixel_count;
  out.corners.reserve(feature_count);
  for (std::uint32_t i = 0; i < feature_count; ++i, off += kFeatureRecordSize) {
    Corner c;
    c.x = get_u16(bytes, off);
    c.y = get_u16(bytes, off + 2);
    c.score = get_u16(bytes, off + 4);
    c.polarity = Polarity(bytes[off + 6]);
    out.corners.push_back(c);
  }
  return out;
}

}  // namespace ovc
