#include "ovc/pgm.hpp"

#include <fstream>
#include <string>

#include "ovc/errors.hpp"

namespace ovc {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(char(c));
  }
  return token;
}

long parse_field(const std::string& token, const std::string& what) {
  if (token.empty()) {
    throw Error(ErrorCode::BadImageFormat, "missing " + what);
  }
  try {
    std::size_t pos = 0;
    const long value = std::stol(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadImageFormat, "bad " + what + " '" + token + "'");
  }
}

}  // namespace

Frame read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::FileNotFound, path);
  }

  if (next_token(in) != "P5") {
    throw Error(ErrorCode::BadImageFormat, path + ": not a binary PGM (P5)");
  }
  const long width = parse_field(next_token(in), "width");
  const long height = parse_field(next_token(in), "height");
  const long maxval = parse_field(next_token(in), "maxval");
  if (width < 1 || width > 0xFFFF || height < 1 || height > 0xFFFF) {
    throw Error(ErrorCode::BadImageFormat,
                path + ": unsupported dimensions " + std::to_string(width) +
                    "x" + std::to_string(height));
  }
  if (maxval != 255) {
    throw Error(ErrorCode::BadImageFormat,
                path + ": maxval " + std::to_string(maxval) +
                    ", only 8-bit (255) is supported");
  }
  // next_token consumed exactly the single whitespace byte after maxval.

  Frame frame;
  frame.width = std::uint16_t(width);
  frame.height = std::uint16_t(height);
  frame.pixels.resize(frame.pixel_count());
  in.read(reinterpret_cast<char*>(frame.pixels.data()),
          std::streamsize(frame.pixels.size()));
  if (std::size_t(in.gcount()) != frame.pixels.size()) {
    throw Error(ErrorCode::BadImageFormat, path + ": truncated pixel data");
  }
  return frame;
}

void write_pgm(const std::string& path, const Frame& frame) {
  validate_frame(frame);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::FileNotFound, path + ": cannot open for writing");
  }
  out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            std::streamsize(frame.pixels.size()));
  if (!out) {
    throw Error(ErrorCode::BadImageFormat, path + ": write failed");
  }
}

}  // namespace ovc
