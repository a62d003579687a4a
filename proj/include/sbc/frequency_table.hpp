#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sbc/bit_sequence.hpp"
#include "sbc/corpus.hpp"

namespace sbc {

struct PatternCount {
  std::uint64_t value;
  std::uint64_t count;

  friend bool operator==(const PatternCount&, const PatternCount&) = default;
};

/// Occurrence counts of every length-m window seen in one sequence or a whole
/// corpus. Entries are sorted by pattern value, every count is >= 1 and the
/// counts sum to total_windows(). A table with no windows is the identity for
/// merge_tables.
class FrequencyTable {
 public:
  explicit FrequencyTable(unsigned m);

  /// Validates sortedness, counts >= 1 and value width.
  FrequencyTable(unsigned m, std::vector<PatternCount> entries);

  unsigned m() const noexcept { return m_; }
  std::uint64_t total_windows() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::span<const PatternCount> entries() const noexcept { return entries_; }

  std::uint64_t count(std::uint64_t value) const noexcept;
  std::uint64_t count(const Pattern& p) const;

  /// count / total_windows; 0 for absent patterns or an empty table.
  double normalized(const Pattern& p) const;
  double normalized(const PatternCount& e) const noexcept {
    return static_cast<double>(e.count) / static_cast<double>(total_);
  }

  friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;

 private:
  unsigned m_;
  std::uint64_t total_ = 0;
  std::vector<PatternCount> entries_;
};

/// Sliding-window (stride 1, overlapping) pattern counts of one sequence.
FrequencyTable extract_frequencies(const BitSequence& seq, unsigned m);

/// Counts over every sequence of a corpus; equal to merging per-sequence tables.
FrequencyTable extract_aggregate(const Corpus& corpus, unsigned m);

/// Per-sequence tables, in corpus order.
std::vector<FrequencyTable> extract_per_sequence(const Corpus& corpus, unsigned m);

FrequencyTable merge_tables(const FrequencyTable& a, const FrequencyTable& b);
FrequencyTable merge_tables(std::span<const FrequencyTable> tables);

namespace detail {

/// Appends every length-m window value of `seq` to `out`.
void append_windows(const BitSequence& seq, unsigned m, std::vector<std::uint64_t>& out);

/// Sorts window values and collapses runs into counts.
std::vector<PatternCount> count_sorted_runs(std::vector<std::uint64_t>& values, unsigned m);

}  // namespace detail

}  // namespace sbc
