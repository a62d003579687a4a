#include "sbc/window_stats.hpp"

#include <algorithm>
#include <bit>

namespace sbc {

namespace {

constexpr unsigned kDenseMaxBits = 16;

inline std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  return x;
}

}  // namespace

void WindowScanner::reset() {
  if (!dense_.empty()) {
    for (const auto& p : patterns_) dense_[p.value] = 0;
  }
  for (auto pos : used_) slots_[pos] = 0;
  used_.clear();
  patterns_.clear();
  total_ = 0;
}

std::uint32_t& WindowScanner::slot_for(std::uint64_t value) {
  if (m_ <= kDenseMaxBits) return dense_[value];
  const std::size_t mask = slots_.size() - 1;
  std::size_t pos = mix(value) & mask;
  while (slots_[pos] != 0 && keys_[pos] != value) pos = (pos + 1) & mask;
  if (slots_[pos] == 0) {
    keys_[pos] = value;
    used_.push_back(pos);
  }
  return slots_[pos];
}

void WindowScanner::scan(const BitSequence& seq, unsigned m) {
  check_pattern_length(seq, m);
  reset();
  m_ = m;
  const std::size_t windows = seq.size() - m + 1;
  if (m <= kDenseMaxBits) {
    const std::size_t want = std::size_t{1} << m;
    if (dense_.size() != want) dense_.assign(want, 0);
  } else {
    dense_.clear();
    const std::size_t cap = std::bit_ceil(2 * windows);
    if (slots_.size() < cap) {
      slots_.assign(cap, 0);
      keys_.assign(cap, 0);
      used_.clear();
    }
  }
  patterns_.reserve(std::min<std::size_t>(windows, std::size_t{1} << std::min(m, 24u)));

  const std::uint64_t mask = low_mask(m);
  const auto bytes = seq.bytes();
  const std::size_t n = seq.size();
  std::uint64_t window = 0;
  for (std::size_t i = 0; i < n; ++i) {
    window = ((window << 1) | ((bytes[i >> 3] >> (7 - (i & 7))) & 1u)) & mask;
    if (i + 1 < m) continue;
    const std::uint64_t pos = i + 1 - m;
    std::uint32_t& slot = slot_for(window);
    if (slot == 0) {
      patterns_.push_back({window, 1, pos, pos});
      slot = static_cast<std::uint32_t>(patterns_.size());
    } else {
      auto& p = patterns_[slot - 1];
      ++p.count;
      p.last = pos;
    }
  }
  total_ = windows;
}

}  // namespace sbc
