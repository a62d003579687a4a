#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sbc/frequency_table.hpp"
#include "sbc/window_stats.hpp"

namespace sbc {

/// How many patterns occur exactly k times, for every k present. All
/// single-table metrics except deviation depend only on this profile.
struct CountProfile {
  unsigned m = 0;
  std::uint64_t total_windows = 0;
  std::uint64_t distinct = 0;
  /// (count, number of patterns with that count), ascending by count.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> multiplicities;
};

CountProfile count_profile(const FrequencyTable& table);
CountProfile count_profile(const WindowScanner& scan);

/// Shannon entropy in bits of the normalized pattern distribution (0 log 0 = 0).
double entropy(const FrequencyTable& table);
double entropy(const CountProfile& profile);

/// Upper bound on entropy(table): min(m, log2(total_windows)).
double entropy_ceiling(const FrequencyTable& table);

/// L1 distance between two normalized tables over the union of present
/// patterns. Range [0, 2].
double deviation(const FrequencyTable& a, const FrequencyTable& b);

/// L1 distance from the ideal table in which all 2^m patterns have
/// frequency 2^-m. Absent patterns contribute 2^-m each.
double uniform_deviation(const FrequencyTable& table);
double uniform_deviation(const CountProfile& profile);

/// Largest normalized frequency.
double max_frequency(const FrequencyTable& table);
double max_frequency(const CountProfile& profile);

/// Distinct patterns / total windows.
double distinct_ratio(const FrequencyTable& table);
double distinct_ratio(const CountProfile& profile);

/// Normalized mass of the ceil(10%) most frequent present patterns.
double top_decile_mass(const FrequencyTable& table);
double top_decile_mass(const CountProfile& profile);

}  // namespace sbc
