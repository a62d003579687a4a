#include "sbc/bit_sequence.hpp"

#include <string>
#include <utility>

namespace sbc {

namespace {

std::size_t payload_bytes(std::size_t length_bits) { return (length_bits + 7) / 8; }

std::uint8_t padding_mask(std::size_t length_bits) {
  const unsigned used = length_bits % 8;
  return used == 0 ? 0 : static_cast<std::uint8_t>(0xFFu >> used);
}

}  // namespace

Pattern::Pattern(std::uint64_t value, unsigned length) : value_(value), length_(length) {
  if (length < 1 || length > kMaxPatternBits) {
    throw ValidationError("unsupported pattern length " + std::to_string(length) +
                          " (must be 1..64)");
  }
  if ((value & ~low_mask(length)) != 0) {
    throw ValidationError("pattern value has bits set above length " + std::to_string(length));
  }
}

std::string Pattern::to_bit_string() const {
  std::string out(length_, '0');
  for (unsigned j = 0; j < length_; ++j) {
    if (bit(j)) out[j] = '1';
  }
  return out;
}

Pattern Pattern::from_bit_string(std::string_view bits) {
  if (bits.empty() || bits.size() > kMaxPatternBits) {
    throw ValidationError("pattern bit string must have 1..64 characters");
  }
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ValidationError("pattern bit string must contain only 0/1");
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return Pattern(v, static_cast<unsigned>(bits.size()));
}

BitSequence::BitSequence(std::vector<std::uint8_t> bytes, std::size_t length_bits)
    : bytes_(std::move(bytes)), length_bits_(length_bits) {
  if (length_bits_ == 0) throw ValidationError("bit sequence must be nonempty");
  if (bytes_.size() != payload_bytes(length_bits_)) {
    throw ValidationError("payload of " + std::to_string(bytes_.size()) + " bytes does not hold " +
                          std::to_string(length_bits_) + " bits");
  }
  if ((bytes_.back() & padding_mask(length_bits_)) != 0) {
    throw ValidationError("nonzero padding bits in last payload byte");
  }
}

BitSequence BitSequence::from_bytes(std::vector<std::uint8_t> bytes, std::size_t length_bits) {
  if (length_bits == 0) throw ValidationError("bit sequence must be nonempty");
  if (bytes.size() * 8 < length_bits) {
    throw ValidationError("byte buffer shorter than requested bit length");
  }
  bytes.resize(payload_bytes(length_bits));
  bytes.back() &= static_cast<std::uint8_t>(~padding_mask(length_bits));
  BitSequence seq;
  seq.bytes_ = std::move(bytes);
  seq.length_bits_ = length_bits;
  return seq;
}

BitSequence BitSequence::from_bit_string(std::string_view bits) {
  std::vector<std::uint8_t> values;
  values.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw ValidationError("bit string must contain only 0/1");
    values.push_back(static_cast<std::uint8_t>(c == '1'));
  }
  return pack_bits(values);
}

bool BitSequence::at(std::size_t i) const {
  if (i >= length_bits_) {
    throw BoundsError("bit index " + std::to_string(i) + " out of range for sequence of " +
                      std::to_string(length_bits_) + " bits");
  }
  return (*this)[i];
}

BitSequence BitSequence::prefix(std::size_t k) const {
  if (k == 0 || k > length_bits_) {
    throw BoundsError("prefix length " + std::to_string(k) + " out of range for sequence of " +
                      std::to_string(length_bits_) + " bits");
  }
  return from_bytes(std::vector<std::uint8_t>(bytes_.begin(), bytes_.begin() + payload_bytes(k)), k);
}

std::string BitSequence::to_bit_string() const {
  std::string out(length_bits_, '0');
  for (std::size_t i = 0; i < length_bits_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::uint64_t window_value(const BitSequence& seq, std::size_t pos, unsigned m) noexcept {
  const auto bytes = seq.bytes();
  const std::size_t first = pos >> 3;
  const unsigned skip = pos & 7;
  const std::size_t nbytes = (skip + m + 7) / 8;  // at most 9
  unsigned __int128 acc = 0;
  for (std::size_t k = 0; k < nbytes; ++k) acc = (acc << 8) | bytes[first + k];
  const unsigned drop = static_cast<unsigned>(nbytes * 8 - skip - m);
  return static_cast<std::uint64_t>(acc >> drop) & low_mask(m);
}

void check_pattern_length(const BitSequence& seq, unsigned m) {
  if (m < 1 || m > kMaxPatternBits) {
    throw ValidationError("unsupported pattern length " + std::to_string(m) + " (must be 1..64)");
  }
  if (m > seq.size()) {
    throw ValidationError("sequence shorter than pattern: " + std::to_string(seq.size()) +
                          " bits < m=" + std::to_string(m));
  }
}

Pattern window_at(const BitSequence& seq, std::size_t pos, unsigned m) {
  if (m < 1 || m > kMaxPatternBits) {
    throw BoundsError("window length m=" + std::to_string(m) + " out of range 1..64");
  }
  if (m > seq.size() || pos > seq.size() - m) {
    throw BoundsError("window start index " + std::to_string(pos) + " with m=" + std::to_string(m) +
                      " exceeds sequence of " + std::to_string(seq.size()) + " bits");
  }
  return Pattern(window_value(seq, pos, m), m);
}

BitSequence pack_bits(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw ValidationError("cannot pack an empty bit list");
  std::vector<std::uint8_t> bytes(payload_bytes(bits.size()), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) {
      throw ValidationError("bit list entry " + std::to_string(i) + " is not 0 or 1");
    }
    if (bits[i]) bytes[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
  }
  return BitSequence(std::move(bytes), bits.size());
}

std::vector<std::uint8_t> unpack_bits(const BitSequence& seq) {
  std::vector<std::uint8_t> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) out[i] = seq[i];
  return out;
}

}  // namespace sbc
