#include "sbc/chacha20.hpp"

#include <algorithm>
#include <bit>

#include "sbc/error.hpp"

namespace sbc::chacha20 {

namespace {

inline std::uint32_t load_le32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
         std::uint32_t{p[3]} << 24;
}

inline void quarter_round(std::array<std::uint32_t, 16>& x, int a, int b, int c, int d) {
  x[a] += x[b]; x[d] ^= x[a]; x[d] = std::rotl(x[d], 16);
  x[c] += x[d]; x[b] ^= x[c]; x[b] = std::rotl(x[b], 12);
  x[a] += x[b]; x[d] ^= x[a]; x[d] = std::rotl(x[d], 8);
  x[c] += x[d]; x[b] ^= x[c]; x[b] = std::rotl(x[b], 7);
}

}  // namespace

Block block(const ChaChaKey& key, std::uint32_t counter, const ChaChaNonce& nonce) {
  std::array<std::uint32_t, 16> state{0x61707865, 0x3320646e, 0x79622d32, 0x6b206574};
  for (int i = 0; i < 8; ++i) state[4 + i] = load_le32(key.data() + 4 * i);
  state[12] = counter;
  for (int i = 0; i < 3; ++i) state[13 + i] = load_le32(nonce.data() + 4 * i);

  auto x = state;
  for (int round = 0; round < 10; ++round) {
    quarter_round(x, 0, 4, 8, 12);
    quarter_round(x, 1, 5, 9, 13);
    quarter_round(x, 2, 6, 10, 14);
    quarter_round(x, 3, 7, 11, 15);
    quarter_round(x, 0, 5, 10, 15);
    quarter_round(x, 1, 6, 11, 12);
    quarter_round(x, 2, 7, 8, 13);
    quarter_round(x, 3, 4, 9, 14);
  }

  Block out;
  for (int i = 0; i < 16; ++i) {
    const std::uint32_t w = x[i] + state[i];
    for (int k = 0; k < 4; ++k) out[4 * i + k] = static_cast<std::uint8_t>(w >> (8 * k));
  }
  return out;
}

std::vector<std::uint8_t> keystream(const ChaChaKey& key, const ChaChaNonce& nonce,
                                    std::uint32_t counter, std::size_t nbytes) {
  std::vector<std::uint8_t> out(nbytes, 0);
  apply(key, nonce, counter, out);
  return out;
}

void apply(const ChaChaKey& key, const ChaChaNonce& nonce, std::uint32_t counter,
           std::span<std::uint8_t> data) {
  const std::size_t blocks = (data.size() + 63) / 64;
  if (blocks > 0 && blocks - 1 > std::uint64_t{0xFFFFFFFFu} - counter) {
    throw ValidationError("ChaCha20 block counter would wrap");
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    const Block ks = block(key, counter + static_cast<std::uint32_t>(b), nonce);
    const std::size_t base = b * 64;
    const std::size_t n = std::min<std::size_t>(64, data.size() - base);
    for (std::size_t i = 0; i < n; ++i) data[base + i] ^= ks[i];
  }
}

}  // namespace sbc::chacha20
