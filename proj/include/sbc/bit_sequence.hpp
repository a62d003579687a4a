#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbc/error.hpp"

namespace sbc {

inline constexpr unsigned kMaxPatternBits = 64;

/// A bit string of 1..64 bits held right-aligned in one machine word.
/// The first bit of the string is the most significant of the `length` bits.
class Pattern {
 public:
  Pattern(std::uint64_t value, unsigned length);

  std::uint64_t value() const noexcept { return value_; }
  unsigned length() const noexcept { return length_; }

  /// Bit `j` of the string, counting from the first (most significant) bit.
  bool bit(unsigned j) const noexcept { return (value_ >> (length_ - 1 - j)) & 1u; }

  std::string to_bit_string() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

  static Pattern from_bit_string(std::string_view bits);

 private:
  std::uint64_t value_;
  unsigned length_;
};

/// Mask with the low `m` bits set (m in 0..64).
constexpr std::uint64_t low_mask(unsigned m) noexcept {
  return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

/// Immutable packed binary sequence. Bits are stored MSB-first: bit i lives in
/// bit (7 - i % 8) of byte i / 8. Padding bits of the last byte are zero.
class BitSequence {
 public:
  /// Strict constructor: rejects empty sequences, a payload of the wrong size
  /// and nonzero padding bits.
  BitSequence(std::vector<std::uint8_t> bytes, std::size_t length_bits);

  /// Takes the first `length_bits` bits of `bytes`, dropping extra bytes and
  /// clearing padding bits.
  static BitSequence from_bytes(std::vector<std::uint8_t> bytes, std::size_t length_bits);

  /// Parses a string of '0'/'1' characters, e.g. "10110".
  static BitSequence from_bit_string(std::string_view bits);

  std::size_t size() const noexcept { return length_bits_; }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

  bool operator[](std::size_t i) const noexcept {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
  }

  /// Checked bit access.
  bool at(std::size_t i) const;

  /// The first `k` bits (1 <= k <= size()).
  BitSequence prefix(std::size_t k) const;

  std::string to_bit_string() const;

  friend bool operator==(const BitSequence&, const BitSequence&) = default;

 private:
  BitSequence() = default;

  std::vector<std::uint8_t> bytes_;
  std::size_t length_bits_ = 0;
};

/// The `m` bits of `seq` starting at 0-based position `pos`.
Pattern window_at(const BitSequence& seq, std::size_t pos, unsigned m);

/// Unchecked window read used by the hot loops; requires pos + m <= seq.size()
/// and 1 <= m <= 64.
std::uint64_t window_value(const BitSequence& seq, std::size_t pos, unsigned m) noexcept;

BitSequence pack_bits(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> unpack_bits(const BitSequence& seq);

/// Throws unless 1 <= m <= 64 and m <= seq.size().
void check_pattern_length(const BitSequence& seq, unsigned m);

}  // namespace sbc
