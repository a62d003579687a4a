#include "sbc/matching.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace sbc {

namespace {

std::vector<std::uint8_t> pattern_bits(const Pattern& p) {
  std::vector<std::uint8_t> out(p.length());
  for (unsigned j = 0; j < p.length(); ++j) out[j] = p.bit(j);
  return out;
}

// suff[i] = length of the longest common suffix of x[0..i] and x.
std::vector<std::ptrdiff_t> suffix_lengths(const std::vector<std::uint8_t>& x) {
  const auto m = static_cast<std::ptrdiff_t>(x.size());
  std::vector<std::ptrdiff_t> suff(x.size());
  suff[m - 1] = m;
  std::ptrdiff_t g = m - 1;
  std::ptrdiff_t f = m - 1;
  for (std::ptrdiff_t i = m - 2; i >= 0; --i) {
    if (i > g && suff[i + m - 1 - f] < i - g) {
      suff[i] = suff[i + m - 1 - f];
    } else {
      if (i < g) g = i;
      f = i;
      while (g >= 0 && x[g] == x[g + m - 1 - f]) --g;
      suff[i] = f - g;
    }
  }
  return suff;
}

std::vector<std::ptrdiff_t> good_suffix_shifts(const std::vector<std::uint8_t>& x) {
  const auto m = static_cast<std::ptrdiff_t>(x.size());
  const auto suff = suffix_lengths(x);
  std::vector<std::ptrdiff_t> shift(x.size(), m);
  std::ptrdiff_t j = 0;
  for (std::ptrdiff_t i = m - 1; i >= 0; --i) {
    if (suff[i] == i + 1) {
      for (; j < m - 1 - i; ++j) {
        if (shift[j] == m) shift[j] = m - 1 - i;
      }
    }
  }
  for (std::ptrdiff_t i = 0; i <= m - 2; ++i) shift[m - 1 - suff[i]] = m - 1 - i;
  return shift;
}

}  // namespace

std::uint64_t count_occurrences_naive(const BitSequence& seq, const Pattern& pattern) {
  check_pattern_length(seq, pattern.length());
  const unsigned m = pattern.length();
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i + m <= seq.size(); ++i) {
    if (window_at(seq, i, m) == pattern) ++hits;
  }
  return hits;
}

std::uint64_t count_occurrences_kmp(const BitSequence& seq, const Pattern& pattern) {
  check_pattern_length(seq, pattern.length());
  const auto p = pattern_bits(pattern);
  const std::size_t m = p.size();

  std::vector<std::size_t> fail(m, 0);
  for (std::size_t q = 1, k = 0; q < m; ++q) {
    while (k > 0 && p[k] != p[q]) k = fail[k - 1];
    if (p[k] == p[q]) ++k;
    fail[q] = k;
  }

  std::uint64_t hits = 0;
  std::size_t q = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const std::uint8_t c = seq[i];
    while (q > 0 && p[q] != c) q = fail[q - 1];
    if (p[q] == c) ++q;
    if (q == m) {
      ++hits;
      q = fail[m - 1];
    }
  }
  return hits;
}

std::uint64_t count_occurrences_bm(const BitSequence& seq, const Pattern& pattern) {
  check_pattern_length(seq, pattern.length());
  const auto p = pattern_bits(pattern);
  const auto m = static_cast<std::ptrdiff_t>(p.size());
  const auto n = static_cast<std::ptrdiff_t>(seq.size());

  std::array<std::ptrdiff_t, 2> last{-1, -1};
  for (std::ptrdiff_t j = 0; j < m; ++j) last[p[j]] = j;
  const auto good_suffix = good_suffix_shifts(p);

  std::uint64_t hits = 0;
  std::ptrdiff_t s = 0;
  while (s <= n - m) {
    std::ptrdiff_t i = m - 1;
    while (i >= 0 && p[i] == seq[static_cast<std::size_t>(s + i)]) --i;
    if (i < 0) {
      ++hits;
      s += 1;
    } else {
      const std::ptrdiff_t bad_char = i - last[seq[static_cast<std::size_t>(s + i)]];
      s += std::max(good_suffix[i], bad_char);
    }
  }
  return hits;
}

std::uint64_t count_occurrences(const BitSequence& seq, const Pattern& pattern, MatchAlgorithm algo) {
  switch (algo) {
    case MatchAlgorithm::naive: return count_occurrences_naive(seq, pattern);
    case MatchAlgorithm::kmp: return count_occurrences_kmp(seq, pattern);
    case MatchAlgorithm::bm: return count_occurrences_bm(seq, pattern);
  }
  return 0;
}

}  // namespace sbc
