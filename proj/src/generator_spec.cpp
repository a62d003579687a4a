#include "sbc/generator_spec.hpp"

#include <cmath>
#include <cstdio>

#include "sbc/error.hpp"
#include "sbc/hex.hpp"

namespace sbc {

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::chacha20: return "chacha20";
    case GeneratorKind::uniform: return "uniform";
    case GeneratorKind::biased_bit: return "biased-bit";
    case GeneratorKind::lcg_truncated: return "lcg-truncated";
    case GeneratorKind::repeat_block: return "repeat-block";
  }
  return "?";
}

GeneratorKind parse_generator_kind(std::string_view name) {
  for (auto k : {GeneratorKind::chacha20, GeneratorKind::uniform, GeneratorKind::biased_bit,
                 GeneratorKind::lcg_truncated, GeneratorKind::repeat_block}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("unknown generator kind '" + std::string(name) + "'");
}

namespace {

void require(bool present, bool wanted, GeneratorKind kind, const char* field) {
  if (present && !wanted) {
    throw ValidationError(std::string(to_string(kind)) + " generator does not take '" + field + "'");
  }
  if (!present && wanted) {
    throw ValidationError(std::string(to_string(kind)) + " generator requires '" + field + "'");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void GeneratorSpec::validate() const {
  const bool is_chacha = kind == GeneratorKind::chacha20;
  require(key.has_value(), is_chacha, kind, "key");
  require(nonce.has_value(), is_chacha, kind, "nonce");
  require(seed.has_value(), !is_chacha, kind, "seed");
  require(p.has_value(), kind == GeneratorKind::biased_bit, kind, "p");
  require(lcg.has_value(), kind == GeneratorKind::lcg_truncated, kind, "lcg");
  require(period.has_value(), kind == GeneratorKind::repeat_block, kind, "period");

  // p = 0 and p = 1 are accepted as degenerate constant sources.
  if (p && !(*p >= 0.0 && *p <= 1.0)) {
    throw ValidationError("biased-bit p=" + format_double(*p) + " outside [0,1]");
  }
  if (lcg && lcg->modulus < 256) {
    throw ValidationError("lcg modulus must be at least 256 to yield 8 output bits");
  }
  if (period && *period < 1) throw ValidationError("repeat-block period must be >= 1");
}

std::string GeneratorSpec::describe() const {
  std::string out = "kind=" + std::string(to_string(kind));
  if (key) out += " key=" + to_hex(*key);
  if (nonce) out += " nonce=" + to_hex(*nonce);
  if (seed) out += " seed=" + std::to_string(*seed);
  if (p) out += " p=" + format_double(*p);
  if (lcg) {
    out += " lcg_multiplier=" + std::to_string(lcg->multiplier) +
           " lcg_increment=" + std::to_string(lcg->increment) +
           " lcg_modulus=" + std::to_string(lcg->modulus);
  }
  if (period) out += " period=" + std::to_string(*period);
  return out;
}

GeneratorSpec GeneratorSpec::chacha20(const ChaChaKey& key, const ChaChaNonce& nonce) {
  GeneratorSpec s;
  s.kind = GeneratorKind::chacha20;
  s.key = key;
  s.nonce = nonce;
  return s;
}

GeneratorSpec GeneratorSpec::uniform(std::uint64_t seed) {
  GeneratorSpec s;
  s.kind = GeneratorKind::uniform;
  s.seed = seed;
  return s;
}

GeneratorSpec GeneratorSpec::biased_bit(std::uint64_t seed, double p) {
  GeneratorSpec s;
  s.kind = GeneratorKind::biased_bit;
  s.seed = seed;
  s.p = p;
  return s;
}

GeneratorSpec GeneratorSpec::lcg_truncated(std::uint64_t seed, LcgParams params) {
  GeneratorSpec s;
  s.kind = GeneratorKind::lcg_truncated;
  s.seed = seed;
  s.lcg = params;
  return s;
}

GeneratorSpec GeneratorSpec::repeat_block(std::uint64_t seed, std::uint64_t period) {
  GeneratorSpec s;
  s.kind = GeneratorKind::repeat_block;
  s.seed = seed;
  s.period = period;
  return s;
}

}  // namespace sbc
