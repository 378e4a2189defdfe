#pragma once

#include <string>

#include "ovc/types.hpp"

namespace ovc {

// Binary PGM (P5), 8-bit, maxval 255. Frame metadata (ids, timestamp) is
// zeroed; callers fill it in. Throws Error(FileNotFound) when the file
// cannot be opened and Error(BadImageFormat) on any parse problem.
Frame read_pgm(const std::string& path);

void write_pgm(const std::string& path, const Frame& frame);

}  // namespace ovc
