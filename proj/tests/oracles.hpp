#pragma once

// Independent reference computations for the tests. These deliberately read
// bits one at a time and use std::map so they share no code path with the
// library's packed, dense or hashed implementations.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sbc/bit_sequence.hpp"
#include "sbc/corpus.hpp"

namespace oracle {

inline int bit(const sbc::BitSequence& s, std::size_t k) {
  return (s.bytes()[k / 8] >> (7 - k % 8)) & 1;
}

inline std::uint64_t window(const sbc::BitSequence& s, std::size_t i, unsigned m) {
  std::uint64_t v = 0;
  for (unsigned j = 0; j < m; ++j) v = (v << 1) | static_cast<std::uint64_t>(bit(s, i + j));
  return v;
}

inline std::string bit_string(const sbc::BitSequence& s) {
  std::string out(s.size(), '0');
  for (std::size_t k = 0; k < s.size(); ++k) out[k] = bit(s, k) ? '1' : '0';
  return out;
}

inline std::map<std::uint64_t, std::uint64_t> counts(const std::string& bits, unsigned m) {
  std::map<std::uint64_t, std::uint64_t> c;
  for (std::size_t i = 0; i + m <= bits.size(); ++i) {
    std::uint64_t v = 0;
    for (unsigned j = 0; j < m; ++j) v = (v << 1) | (bits[i + j] == '1' ? 1u : 0u);
    ++c[v];
  }
  return c;
}

inline std::map<std::uint64_t, std::uint64_t> counts(const sbc::BitSequence& s, unsigned m) {
  return counts(bit_string(s), m);
}

inline std::map<std::uint64_t, std::uint64_t> counts(const sbc::Corpus& c, unsigned m) {
  std::map<std::uint64_t, std::uint64_t> total;
  for (const auto& s : c.sequences) {
    for (const auto& [v, k] : counts(s, m)) total[v] += k;
  }
  return total;
}

inline std::uint64_t occurrences(const std::string& text, const std::string& pat) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i + pat.size() <= text.size(); ++i) {
    if (text.compare(i, pat.size(), pat) == 0) ++n;
  }
  return n;
}

// -sum p log2 p, one term per pattern.
inline double entropy(const std::map<std::uint64_t, std::uint64_t>& c) {
  double total = 0;
  for (const auto& [v, k] : c) total += static_cast<double>(k);
  double h = 0;
  for (const auto& [v, k] : c) {
    const double p = static_cast<double>(k) / total;
    h -= p * std::log2(p);
  }
  return h;
}

// Sum over all 2^m patterns of |f - 2^-m|, enumerated explicitly (small m).
inline double uniform_deviation(const std::map<std::uint64_t, std::uint64_t>& c, unsigned m) {
  double total = 0;
  for (const auto& [v, k] : c) total += static_cast<double>(k);
  const double ideal = std::ldexp(1.0, -static_cast<int>(m));
  double d = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
    auto it = c.find(v);
    const double f = it == c.end() ? 0.0 : static_cast<double>(it->second) / total;
    d += std::fabs(f - ideal);
  }
  return d;
}

inline std::string random_bits(std::mt19937_64& rng, std::size_t n) {
  std::string s(n, '0');
  for (auto& ch : s) ch = (rng() & 1) ? '1' : '0';
  return s;
}

}  // namespace oracle
