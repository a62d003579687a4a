#include "sbc/generators.hpp"

#include <openssl/evp.h>

#include <bit>
#include <memory>
#include <random>
#include <string_view>

#include "sbc/chacha20.hpp"
#include "sbc/error.hpp"
#include "sbc/hashing.hpp"
#include "sbc/parallel.hpp"

namespace sbc {

namespace {

std::size_t byte_count(std::size_t length_bits) { return (length_bits + 7) / 8; }

void require_length(std::size_t length_bits) {
  if (length_bits == 0) throw ValidationError("requested sequence length must be >= 1 bit");
}

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};

// Bits drawn MSB-first from successive 64-bit engine outputs.
class EngineBits {
 public:
  explicit EngineBits(std::uint64_t seed) : engine_(seed) {}

  bool next() {
    if (left_ == 0) {
      word_ = engine_();
      left_ = 64;
    }
    --left_;
    return (word_ >> left_) & 1u;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t word_ = 0;
  unsigned left_ = 0;
};

class BitWriter {
 public:
  explicit BitWriter(std::size_t length_bits) : bytes_(byte_count(length_bits), 0), n_(length_bits) {}

  void set(std::size_t i, bool v) {
    if (v) bytes_[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
  }

  BitSequence finish() && { return BitSequence(std::move(bytes_), n_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t n_;
};

BitSequence biased_bits(std::uint64_t seed, double p, std::size_t n) {
  std::mt19937_64 engine(seed);
  BitWriter out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    out.set(i, u < p);
  }
  return std::move(out).finish();
}

BitSequence lcg_bits(std::uint64_t seed, const LcgParams& lcg, std::size_t n) {
  const unsigned width = static_cast<unsigned>(std::bit_width(lcg.modulus - 1));
  const unsigned shift = width - 8;
  std::uint64_t state = seed % lcg.modulus;
  std::vector<std::uint8_t> bytes(byte_count(n));
  for (auto& b : bytes) {
    state = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(lcg.multiplier) * state + lcg.increment) % lcg.modulus);
    b = static_cast<std::uint8_t>(state >> shift);
  }
  return BitSequence::from_bytes(std::move(bytes), n);
}

BitSequence repeat_bits(std::uint64_t seed, std::uint64_t period, std::size_t n) {
  const std::size_t block_len = static_cast<std::size_t>(std::min<std::uint64_t>(period, n));
  EngineBits source(seed);
  std::vector<bool> block(block_len);
  for (std::size_t j = 0; j < block_len; ++j) block[j] = source.next();
  BitWriter out(n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, block[i % block_len]);
  return std::move(out).finish();
}

}  // namespace

BitSequence generate_keystream(const ChaChaKey& key, const ChaChaNonce& nonce, std::size_t length_bits) {
  require_length(length_bits);
  return BitSequence::from_bytes(chacha20::keystream(key, nonce, 0, byte_count(length_bits)), length_bits);
}

BitSequence generate_uniform(std::uint64_t seed, std::size_t length_bits) {
  require_length(length_bits);
  static constexpr std::string_view kDomain = "sbc/uniform/aes-256-ctr/v1";
  std::vector<std::uint8_t> material(kDomain.begin(), kDomain.end());
  for (int k = 0; k < 8; ++k) material.push_back(static_cast<std::uint8_t>(seed >> (8 * k)));
  const Sha256Digest key = sha256(material);
  const std::uint8_t iv[16] = {};

  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_ctr(), nullptr, key.data(), iv) != 1) {
    throw Error("AES-256-CTR initialization failed");
  }
  std::vector<std::uint8_t> bytes(byte_count(length_bits), 0);
  int produced = 0;
  if (EVP_EncryptUpdate(ctx.get(), bytes.data(), &produced, bytes.data(),
                        static_cast<int>(bytes.size())) != 1 ||
      static_cast<std::size_t>(produced) != bytes.size()) {
    throw Error("AES-256-CTR keystream generation failed");
  }
  return BitSequence::from_bytes(std::move(bytes), length_bits);
}

BitSequence generate_structured(const GeneratorSpec& spec, std::size_t length_bits) {
  spec.validate();
  require_length(length_bits);
  switch (spec.kind) {
    case GeneratorKind::biased_bit: return biased_bits(*spec.seed, *spec.p, length_bits);
    case GeneratorKind::lcg_truncated: return lcg_bits(*spec.seed, *spec.lcg, length_bits);
    case GeneratorKind::repeat_block: return repeat_bits(*spec.seed, *spec.period, length_bits);
    case GeneratorKind::chacha20:
    case GeneratorKind::uniform: break;
  }
  throw ValidationError("generate_structured does not handle kind " + std::string(to_string(spec.kind)));
}

BitSequence generate(const GeneratorSpec& spec, std::size_t length_bits) {
  spec.validate();
  switch (spec.kind) {
    case GeneratorKind::chacha20: return generate_keystream(*spec.key, *spec.nonce, length_bits);
    case GeneratorKind::uniform: return generate_uniform(*spec.seed, length_bits);
    default: return generate_structured(spec, length_bits);
  }
}

GeneratorSpec sequence_spec(const GeneratorSpec& spec, std::uint64_t base_seed, std::size_t index) {
  GeneratorSpec out = spec;
  const std::uint64_t derived = base_seed + index;
  if (spec.kind == GeneratorKind::chacha20) {
    if (!out.nonce) throw ValidationError("chacha20 generator requires 'nonce'");
    const auto low = static_cast<std::uint32_t>(derived);
    for (int k = 0; k < 4; ++k) (*out.nonce)[8 + k] = static_cast<std::uint8_t>(low >> (24 - 8 * k));
  } else {
    out.seed = derived;
  }
  return out;
}

Corpus generate_corpus(const GeneratorSpec& spec, std::size_t count, std::size_t length_bits,
                       std::uint64_t base_seed, std::string label) {
  if (count < 1) throw ValidationError("corpus must contain at least one sequence");
  require_length(length_bits);
  GeneratorSpec provenance = spec;
  if (spec.kind != GeneratorKind::chacha20) provenance.seed = base_seed;
  provenance.validate();

  std::vector<std::optional<BitSequence>> slots(count);
  parallel_for(count, [&](std::size_t i) { slots[i] = generate(sequence_spec(provenance, base_seed, i), length_bits); });

  Corpus corpus;
  corpus.label = label.empty() ? std::string(to_string(spec.kind)) : std::move(label);
  corpus.generator_spec = provenance;
  corpus.sequences.reserve(count);
  for (auto& s : slots) corpus.sequences.push_back(std::move(*s));
  return corpus;
}

}  // namespace sbc
