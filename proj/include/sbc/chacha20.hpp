#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sbc/generator_spec.hpp"

namespace sbc::chacha20 {

using Block = std::array<std::uint8_t, 64>;

/// One 64-byte ChaCha20 block (20 rounds) for the given key, block counter and
/// 96-bit nonce, serialized little-endian word by word.
Block block(const ChaChaKey& key, std::uint32_t counter, const ChaChaNonce& nonce);

/// `nbytes` bytes of keystream starting at block `counter`.
std::vector<std::uint8_t> keystream(const ChaChaKey& key, const ChaChaNonce& nonce,
                                    std::uint32_t counter, std::size_t nbytes);

/// XORs `data` with the keystream starting at block `counter`.
void apply(const ChaChaKey& key, const ChaChaNonce& nonce, std::uint32_t counter,
           std::span<std::uint8_t> data);

}  // namespace sbc::chacha20
