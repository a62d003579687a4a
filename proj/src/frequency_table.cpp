#include "sbc/frequency_table.hpp"

#include <algorithm>
#include <string>

#include "sbc/error.hpp"
#include "sbc/parallel.hpp"

namespace sbc {

namespace {

constexpr unsigned kDenseMaxBits = 16;

void check_m(unsigned m) {
  if (m < 1 || m > kMaxPatternBits) {
    throw ValidationError("unsupported pattern length " + std::to_string(m) + " (must be 1..64)");
  }
}

// Calls visit(value) for each window, rolling one new bit per step.
template <typename Visit>
void for_each_window(const BitSequence& seq, unsigned m, Visit&& visit) {
  const std::uint64_t mask = low_mask(m);
  const auto bytes = seq.bytes();
  const std::size_t n = seq.size();
  std::uint64_t window = 0;
  std::size_t i = 0;
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    const unsigned byte = bytes[b];
    const unsigned bits_here = static_cast<unsigned>(std::min<std::size_t>(8, n - 8 * b));
    for (unsigned k = 0; k < bits_here; ++k, ++i) {
      window = ((window << 1) | ((byte >> (7 - k)) & 1u)) & mask;
      if (i + 1 >= m) visit(window);
    }
  }
}

// LSD radix sort on 32-bit keys, 11-bit digits.
void radix_sort_u32(std::vector<std::uint64_t>& values) {
  std::vector<std::uint32_t> a(values.begin(), values.end());
  std::vector<std::uint32_t> tmp(a.size());
  constexpr unsigned kBits = 11;
  constexpr std::uint32_t kBuckets = 1u << kBits;
  for (unsigned shift = 0; shift < 32; shift += kBits) {
    std::vector<std::size_t> offsets(kBuckets + 1, 0);
    for (auto v : a) ++offsets[((v >> shift) & (kBuckets - 1)) + 1];
    for (std::uint32_t d = 0; d < kBuckets; ++d) offsets[d + 1] += offsets[d];
    for (auto v : a) tmp[offsets[(v >> shift) & (kBuckets - 1)]++] = v;
    a.swap(tmp);
  }
  std::copy(a.begin(), a.end(), values.begin());
}

class DenseCounter {
 public:
  explicit DenseCounter(unsigned m) : m_(m), counts_(std::size_t{1} << m, 0) {}

  void add(const BitSequence& seq) {
    for_each_window(seq, m_, [&](std::uint64_t w) { ++counts_[w]; });
  }

  std::vector<PatternCount> entries() const {
    std::vector<PatternCount> out;
    for (std::size_t v = 0; v < counts_.size(); ++v) {
      if (counts_[v] != 0) out.push_back({v, counts_[v]});
    }
    return out;
  }

 private:
  unsigned m_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace

FrequencyTable::FrequencyTable(unsigned m) : m_(m) { check_m(m); }

FrequencyTable::FrequencyTable(unsigned m, std::vector<PatternCount> entries)
    : m_(m), entries_(std::move(entries)) {
  check_m(m);
  const std::uint64_t mask = low_mask(m);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    if (e.count == 0) throw ValidationError("frequency table entry with zero count");
    if ((e.value & ~mask) != 0) throw ValidationError("frequency table entry wider than m bits");
    if (k > 0 && entries_[k - 1].value >= e.value) {
      throw ValidationError("frequency table entries not strictly ascending");
    }
    total_ += e.count;
  }
}

std::uint64_t FrequencyTable::count(std::uint64_t value) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), value,
                             [](const PatternCount& e, std::uint64_t v) { return e.value < v; });
  return it != entries_.end() && it->value == value ? it->count : 0;
}

std::uint64_t FrequencyTable::count(const Pattern& p) const {
  if (p.length() != m_) {
    throw ValidationError("pattern of length " + std::to_string(p.length()) +
                          " queried in table with m=" + std::to_string(m_));
  }
  return count(p.value());
}

double FrequencyTable::normalized(const Pattern& p) const {
  const auto c = count(p);
  return total_ == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(total_);
}

namespace detail {

void append_windows(const BitSequence& seq, unsigned m, std::vector<std::uint64_t>& out) {
  out.reserve(out.size() + (seq.size() - m + 1));
  for_each_window(seq, m, [&](std::uint64_t w) { out.push_back(w); });
}

std::vector<PatternCount> count_sorted_runs(std::vector<std::uint64_t>& values, unsigned m) {
  if (m <= 32 && values.size() > 4096) {
    radix_sort_u32(values);
  } else {
    std::sort(values.begin(), values.end());
  }
  std::vector<PatternCount> out;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    out.push_back({values[i], j - i});
    i = j;
  }
  return out;
}

}  // namespace detail

FrequencyTable extract_frequencies(const BitSequence& seq, unsigned m) {
  check_pattern_length(seq, m);
  if (m <= kDenseMaxBits && (std::size_t{1} << m) <= 4 * seq.size()) {
    DenseCounter counter(m);
    counter.add(seq);
    return FrequencyTable(m, counter.entries());
  }
  std::vector<std::uint64_t> windows;
  detail::append_windows(seq, m, windows);
  return FrequencyTable(m, detail::count_sorted_runs(windows, m));
}

FrequencyTable extract_aggregate(const Corpus& corpus, unsigned m) {
  check_m(m);
  for (const auto& s : corpus.sequences) check_pattern_length(s, m);
  if (m <= kDenseMaxBits) {
    DenseCounter counter(m);
    for (const auto& s : corpus.sequences) counter.add(s);
    return FrequencyTable(m, counter.entries());
  }
  std::vector<std::uint64_t> windows;
  windows.reserve(corpus.total_bits());
  for (const auto& s : corpus.sequences) detail::append_windows(s, m, windows);
  return FrequencyTable(m, detail::count_sorted_runs(windows, m));
}

std::vector<FrequencyTable> extract_per_sequence(const Corpus& corpus, unsigned m) {
  std::vector<FrequencyTable> out(corpus.size(), FrequencyTable(m));
  parallel_for(corpus.size(), [&](std::size_t i) { out[i] = extract_frequencies(corpus.sequences[i], m); });
  return out;
}

FrequencyTable merge_tables(const FrequencyTable& a, const FrequencyTable& b) {
  if (a.m() != b.m()) {
    throw ValidationError("cannot merge tables with m=" + std::to_string(a.m()) + " and m=" +
                          std::to_string(b.m()));
  }
  const auto x = a.entries();
  const auto y = b.entries();
  std::vector<PatternCount> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].value < y[j].value) {
      out.push_back(x[i++]);
    } else if (y[j].value < x[i].value) {
      out.push_back(y[j++]);
    } else {
      out.push_back({x[i].value, x[i].count + y[j].count});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
  out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(j), y.end());
  return FrequencyTable(a.m(), std::move(out));
}

FrequencyTable merge_tables(std::span<const FrequencyTable> tables) {
  if (tables.empty()) throw ValidationError("merge of zero tables has no pattern length");
  std::vector<FrequencyTable> level(tables.begin(), tables.end());
  while (level.size() > 1) {
    std::vector<FrequencyTable> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t k = 0; k + 1 < level.size(); k += 2) next.push_back(merge_tables(level[k], level[k + 1]));
    if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
    level.swap(next);
  }
  return std::move(level.front());
}

}  // namespace sbc
