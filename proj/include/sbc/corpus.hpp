#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sbc/bit_sequence.hpp"
#include "sbc/generator_spec.hpp"

namespace sbc {

/// Ordered collection of sequences sharing a label such as "cipher" or "random".
struct Corpus {
  std::vector<BitSequence> sequences;
  std::string label;
  /// Provenance only; not part of the serialized form.
  std::optional<GeneratorSpec> generator_spec;

  std::size_t size() const noexcept { return sequences.size(); }
  bool empty() const noexcept { return sequences.empty(); }

  /// Total number of bits over all sequences.
  std::size_t total_bits() const noexcept;

  /// Equality of serialized contents (sequences and label).
  bool same_contents(const Corpus& other) const { return label == other.label && sequences == other.sequences; }
};

// SBC1 corpus file:
//   "SBC1" | u32le record count | { u32le bit length L | ceil(L/8) bytes } * count
//   | u8 label length | label bytes (UTF-8)
inline constexpr char kCorpusMagic[4] = {'S', 'B', 'C', '1'};

void write_corpus(std::ostream& out, const Corpus& corpus);
Corpus read_corpus(std::istream& in);

/// Parses a complete SBC1 image held in memory.
Corpus parse_corpus(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> serialize_corpus(const Corpus& corpus);

void save_corpus(const std::filesystem::path& path, const Corpus& corpus);
Corpus load_corpus(const std::filesystem::path& path);

/// Treats the whole file as a single sequence of 8 * file-size bits.
Corpus load_raw_sequence(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> data);

}  // namespace sbc
