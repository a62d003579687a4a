#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sbc/bit_sequence.hpp"

namespace sbc {

/// Occurrence summary of one distinct window value.
struct PatternSpan {
  std::uint64_t value;
  std::uint64_t count;
  std::uint64_t first;  ///< start position of the first occurrence
  std::uint64_t last;   ///< start position of the last occurrence
};

/// Reusable scratch for one-pass window statistics. Patterns are tracked in
/// first-seen order through a dense index (m <= 16) or an open-addressing
/// table; reusing one scanner across sequences avoids reallocating either.
class WindowScanner {
 public:
  /// Validates m against the sequence, then scans every window.
  void scan(const BitSequence& seq, unsigned m);

  unsigned m() const noexcept { return m_; }
  std::uint64_t total_windows() const noexcept { return total_; }

  /// Distinct patterns in first-seen order (not sorted by value).
  std::span<const PatternSpan> patterns() const noexcept { return patterns_; }

 private:
  void reset();
  std::uint32_t& slot_for(std::uint64_t value);

  unsigned m_ = 0;
  std::uint64_t total_ = 0;
  std::vector<PatternSpan> patterns_;
  std::vector<std::uint32_t> dense_;   // value -> index + 1
  std::vector<std::uint64_t> keys_;    // open addressing keys
  std::vector<std::uint32_t> slots_;   // open addressing: index + 1, 0 = empty
  std::vector<std::size_t> used_;      // occupied open-addressing positions
};

}  // namespace sbc
