#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ovc/config.hpp"
#include "ovc/types.hpp"

namespace ovc {

// Brute-force reference for the full detect -> score -> suppress chain.
// Written for readability, deliberately ignores lanes, line buffers and
// streaming, and shares no arc-enumeration code with the detector so that a
// shared bug cannot hide from the equivalence tests. Performance is
// explicitly not a goal.
std::vector<Corner> oracle_detect(const Frame& frame,
                                  const DetectorConfig& config);

// Independent score formulation: the largest t such that
// segment_test(center, ring, t - 1) != None, found by sweeping t linearly
// from 0 to 255. Returns 0 when no arc of length >= 9 qualifies at any t.
std::uint16_t oracle_score_by_sweep(std::uint8_t center,
                                    std::span<const std::uint8_t> ring);

}  // namespace ovc
