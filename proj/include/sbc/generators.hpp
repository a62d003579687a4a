#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "sbc/bit_sequence.hpp"
#include "sbc/corpus.hpp"
#include "sbc/generator_spec.hpp"

namespace sbc {

/// First `length_bits` bits of the ChaCha20 keystream for (key, nonce), block
/// counter starting at 0, MSB-first within each keystream byte.
BitSequence generate_keystream(const ChaChaKey& key, const ChaChaNonce& nonce,
                               std::size_t length_bits);

/// `length_bits` bits of a seeded CSPRNG stream (AES-256-CTR keyed from the seed).
BitSequence generate_uniform(std::uint64_t seed, std::size_t length_bits);

/// biased-bit, lcg-truncated and repeat-block sources.
BitSequence generate_structured(const GeneratorSpec& spec, std::size_t length_bits);

/// Dispatches on spec.kind.
BitSequence generate(const GeneratorSpec& spec, std::size_t length_bits);

/// The spec used for sequence `index` of a corpus: seed = base_seed + index,
/// or for chacha20 the low 32 bits of the nonce (bytes 8..11, big-endian)
/// replaced by (base_seed + index) mod 2^32.
GeneratorSpec sequence_spec(const GeneratorSpec& spec, std::uint64_t base_seed, std::size_t index);

/// `count` sequences of `length_bits` bits each. The seed carried by `spec`
/// (if any) is replaced per sequence; the recorded provenance carries
/// base_seed. An empty label defaults to the generator kind name.
Corpus generate_corpus(const GeneratorSpec& spec, std::size_t count, std::size_t length_bits,
                       std::uint64_t base_seed, std::string label = {});

}  // namespace sbc
