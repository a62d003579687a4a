#pragma once

#include <cstdint>

#include "sbc/bit_sequence.hpp"

namespace sbc {

// Overlapping occurrence counts of P in S: the number of positions i with
// S[i .. i+m-1] == P. All three share one contract and must agree exactly.
// Each throws ValidationError when the pattern is longer than the sequence.

/// Reference oracle: compares the window at every position.
std::uint64_t count_occurrences_naive(const BitSequence& seq, const Pattern& pattern);

/// Knuth-Morris-Pratt over the binary alphabet, O(n + m).
std::uint64_t count_occurrences_kmp(const BitSequence& seq, const Pattern& pattern);

/// Boyer-Moore with bad-character and good-suffix rules; advances by one
/// position after every full match so overlapping occurrences are counted.
std::uint64_t count_occurrences_bm(const BitSequence& seq, const Pattern& pattern);

enum class MatchAlgorithm { naive, kmp, bm };

std::uint64_t count_occurrences(const BitSequence& seq, const Pattern& pattern, MatchAlgorithm algo);

}  // namespace sbc
