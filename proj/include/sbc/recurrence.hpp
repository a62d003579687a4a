#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sbc/bit_sequence.hpp"

namespace sbc {

inline constexpr std::size_t kDefaultDensityBuckets = 16;

struct RecurrenceStats {
  unsigned m = 0;
  std::uint64_t total_windows = 0;
  /// Fraction of windows whose pattern occurs at least twice.
  double repeat_fraction = 0.0;
  /// Mean distance between successive start positions of equal patterns;
  /// absent when no pattern repeats.
  std::optional<double> mean_gap;
  /// Windows per position bucket. Buckets split the window start positions
  /// into equal ranges; the last bucket takes the remainder.
  std::vector<std::uint64_t> positional_density;
};

RecurrenceStats recurrence_stats(const BitSequence& seq, unsigned m,
                                 std::size_t buckets = kDefaultDensityBuckets);

}  // namespace sbc
