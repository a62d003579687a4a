#include "sbc/recurrence.hpp"

#include <algorithm>

#include "sbc/error.hpp"
#include "sbc/window_stats.hpp"

namespace sbc {

RecurrenceStats recurrence_stats(const BitSequence& seq, unsigned m, std::size_t buckets) {
  check_pattern_length(seq, m);
  if (buckets < 1) throw ValidationError("positional density needs at least one bucket");

  thread_local WindowScanner scanner;
  scanner.scan(seq, m);
  const std::size_t windows = scanner.total_windows();

  std::uint64_t repeated = 0;
  std::uint64_t gap_sum = 0;
  std::uint64_t gap_count = 0;
  for (const auto& p : scanner.patterns()) {
    if (p.count < 2) continue;
    repeated += p.count;
    // successive gaps telescope to last - first
    gap_sum += p.last - p.first;
    gap_count += p.count - 1;
  }

  RecurrenceStats stats;
  stats.m = m;
  stats.total_windows = windows;
  stats.repeat_fraction = static_cast<double>(repeated) / static_cast<double>(windows);
  if (gap_count > 0) stats.mean_gap = static_cast<double>(gap_sum) / static_cast<double>(gap_count);

  stats.positional_density.assign(buckets, 0);
  const std::size_t width = std::max<std::size_t>(1, windows / buckets);
  for (std::size_t i = 0; i < windows; ++i) {
    ++stats.positional_density[std::min(i / width, buckets - 1)];
  }
  return stats;
}

}  // namespace sbc
