// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "rfc_vectors.hpp"
#include "sbc/chacha20.hpp"
#include "sbc/experiment.hpp"
#include "sbc/frequency_table.hpp"
#include "sbc/generators.hpp"
#include "sbc/hex.hpp"
#include "sbc/matching.hpp"
#include "sbc/metrics.hpp"
#include "sbc/reports.hpp"

using namespace sbc;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void verdict(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double num(const ReportFields& r, const char* key) { return std::stod(field(r, key)); }
double num(const StructuredReport& r, const char* key) { return std::stod(r.global(key)); }

const ReportFields& record_for(const StructuredReport& r, unsigned m) {
  for (const auto& rec : r.records) {
    if (field(rec, "m") == std::to_string(m)) return rec;
  }
  throw Error("no record for m=" + std::to_string(m));
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "sbc-acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

ExperimentResult run(ExperimentConfig config, const std::string& name) {
  config.output_dir = scratch() / name;
  auto result = run_experiment(config);
  fs::remove_all(config.output_dir);  // reports stay in memory; tables are large
  return result;
}

// --- 1 -------------------------------------------------------------------
void oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t disagreements = 0, total_matches = 0;
  auto check = [&](const BitSequence& s, const Pattern& p) {
    const auto naive = count_occurrences_naive(s, p);
    total_matches += naive;
    if (count_occurrences_kmp(s, p) != naive || count_occurrences_bm(s, p) != naive) ++disagreements;
  };
  constexpr int kPairs = 10000;
  for (int k = 0; k < kPairs; ++k) {
    const std::size_t n = 1 + rng() % 4096;
    const unsigned m = 1 + static_cast<unsigned>(rng() % std::min<std::size_t>(n, 32));
    switch (k % 5) {
      case 0: {  // P = S
        const std::size_t len = 1 + rng() % 32;
        const auto s = generate_uniform(rng(), len);
        check(s, window_at(s, 0, static_cast<unsigned>(len)));
        break;
      }
      case 1: {  // all zeros
        const auto s = BitSequence::from_bit_string(std::string(n, '0'));
        const auto pv = (rng() % 2) ? 0 : (rng() & low_mask(m));
        check(s, Pattern(pv, m));
        break;
      }
      case 2: {  // alternating text and alternating or near-alternating patterns
        std::string text(n, '0');
        for (std::size_t i = 1; i < n; i += 2) text[i] = '1';
        const auto s = BitSequence::from_bit_string(text);
        std::uint64_t pv = window_at(s, rng() % (n - m + 1), m).value();
        if (rng() % 3 == 0) pv ^= std::uint64_t{1} << (rng() % m);
        check(s, Pattern(pv, m));
        break;
      }
      case 3: {  // pattern cut from the text
        const auto s = generate_uniform(rng(), n);
        check(s, window_at(s, rng() % (n - m + 1), m));
        break;
      }
      default: {  // independent random pattern over a biased text
        const auto s = generate_structured(GeneratorSpec::biased_bit(rng(), 0.15), n);
        check(s, Pattern(rng() & low_mask(m), m));
        break;
      }
    }
  }
  const double secs = seconds_since(t0);
  verdict(1, "oracle equivalence", disagreements == 0 && secs < 10.0,
          std::to_string(kPairs) + " pairs, " + std::to_string(disagreements) + " disagreements, " +
              std::to_string(total_matches) + " total matches, " + fmt("%.2f s (limit 10 s)", secs));
}

// --- 2 -------------------------------------------------------------------
void conservation() {
  std::vector<Corpus> corpora{generate_corpus(GeneratorSpec::uniform(0), 200, 4096, 7),
                              generate_corpus(GeneratorSpec::repeat_block(0, 100), 50, 3001, 9),
                              generate_corpus(GeneratorSpec::biased_bit(0, 0.9), 50, 777, 3)};
  std::size_t tables = 0;
  bool ok = true;
  for (const auto& corpus : corpora) {
    for (unsigned m : {1u, 8u, 16u, 17u, 32u, 64u}) {
      std::uint64_t expected_total = 0;
      for (const auto& t : extract_per_sequence(corpus, m)) {
        std::uint64_t sum = 0;
        for (const auto& e : t.entries()) sum += e.count;
        ok = ok && sum == t.total_windows();
        expected_total += t.total_windows();
        ++tables;
      }
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& s = corpus.sequences[i];
        const auto t = extract_frequencies(s, m);
        std::uint64_t sum = 0;
        for (const auto& e : t.entries()) sum += e.count;
        ok = ok && sum == s.size() - m + 1;
        ++tables;
      }
      const auto agg = extract_aggregate(corpus, m);
      std::uint64_t sum = 0;
      for (const auto& e : agg.entries()) sum += e.count;
      ok = ok && sum == expected_total && agg.total_windows() == expected_total;
      ++tables;
    }
  }
  verdict(2, "conservation", ok, std::to_string(tables) + " tables, exact integer sums");
}

// --- 3, 4 ----------------------------------------------------------------
void uniform_baseline_and_entropy() {
  const auto t0 = Clock::now();
  const auto corpus = generate_corpus(GeneratorSpec::uniform(0), 1000, 4096, 31337);
  const auto table = extract_aggregate(corpus, 8);
  const double secs = seconds_since(t0);

  const double p = 1.0 / 256;
  const double n = static_cast<double>(table.total_windows());
  const double sigma = std::sqrt(p * (1 - p) / n);
  std::mt19937_64 rng(8);
  int within = 0;
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const Pattern pat(rng() & 0xff, 8);
    const double z = std::fabs(table.normalized(pat) - p) / sigma;
    worst = std::max(worst, z);
    if (z <= 3.0) ++within;
  }
  verdict(3, "uniform baseline", within >= 18 && secs < 5.0,
          std::to_string(within) + "/20 patterns within 3 sigma of 2^-8 (need 18), max |z| " + fmt("%.2f", worst) +
              fmt(", %.2f s (limit 5 s)", secs));

  const double h8 = entropy(table);
  double lo = 1e9, hi = -1e9;
  for (const auto& s : corpus.sequences) {
    const double h = entropy(extract_frequencies(s, 16));
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  const double ceiling = std::log2(4081.0);
  const bool ok = h8 >= 7.95 && h8 <= 8.0 && lo >= 11.5 && hi <= ceiling;
  verdict(4, "entropy ceiling", ok,
          fmt("aggregate H_8 = %.6f in [7.95, 8]; per-sequence H_16 in [%.4f, %.4f], ceiling log2(4081) = %.4f", h8,
              lo, hi, ceiling) +
              " (a value of 16 is unreachable with 4081 windows)");
}

// --- 5, 6, 7 -------------------------------------------------------------
double null_deviation = 0;

void null_experiment() {
  ExperimentConfig c;
  c.cipher = SourceConfig::of(GeneratorKind::uniform, 0);
  c.random = SourceConfig::of(GeneratorKind::uniform, std::uint64_t{1} << 32);
  c.count = 1000;
  const auto r = run(c, "null");
  null_deviation = num(record_for(r.compare, 8), "deviation");
  const double ci_low = num(r.distinguish, "ci_low");
  verdict(5, "null experiment", null_deviation < 0.02 && ci_low <= 0.05,
          fmt("D_8 = %.5f (< 0.02); advantage %.4f, 95%% CI [%.4f, %.4f], lower end <= 0.05", null_deviation,
              num(r.distinguish, "advantage"), ci_low, num(r.distinguish, "ci_high")));
}

void signal_experiment() {
  ExperimentConfig c;
  c.cipher = SourceConfig::of(GeneratorKind::biased_bit, 0);
  c.cipher.p = 0.6;
  c.count = 1000;
  const auto r = run(c, "signal");
  const double adv = num(r.distinguish, "advantage");
  const double d8 = num(record_for(r.compare, 8), "deviation");
  verdict(6, "signal experiment", adv >= 0.9 && d8 >= 10 * null_deviation,
          fmt("advantage %.4f (>= 0.9); D_8 = %.5f = %.1fx the null deviation (need 10x)", adv, d8,
              d8 / null_deviation) +
              ", feature " + r.distinguish.global("feature_name"));
}

void security_regime() {
  ExperimentConfig c;  // chacha20 vs uniform
  c.count = 2000;
  c.train_fraction = 0.5;
  const auto r = run(c, "security");
  const double adv = num(r.distinguish, "advantage");
  verdict(7, "security regime", adv < 0.1 && r.distinguish.global("test_cipher") == "1000",
          fmt("advantage %.4f (< 0.1), 95%% CI [%.4f, %.4f]", adv, num(r.distinguish, "ci_low"),
              num(r.distinguish, "ci_high")) +
              " on " + r.distinguish.global("test_cipher") + " + " + r.distinguish.global("test_random") +
              " held-out sequences, feature " + r.distinguish.global("feature_name"));
}

// --- 8 -------------------------------------------------------------------
void chacha_vectors() {
  int matched = 0;
  for (const auto& v : rfc::kVectors) {
    const auto key_bytes = parse_hex(v.key);
    const auto nonce_bytes = parse_hex(v.nonce);
    ChaChaKey key{};
    ChaChaNonce nonce{};
    std::copy(key_bytes.begin(), key_bytes.end(), key.begin());
    std::copy(nonce_bytes.begin(), nonce_bytes.end(), nonce.begin());
    const auto expect = parse_hex(v.keystream);
    if (chacha20::keystream(key, nonce, v.counter, expect.size()) == expect) ++matched;
  }
  const int total = static_cast<int>(rfc::kVectors.size());
  verdict(8, "chacha20 correctness", matched == total && total >= 3,
          std::to_string(matched) + "/" + std::to_string(total) + " published keystream vectors byte-exact");
}

// --- 9 -------------------------------------------------------------------
void determinism() {
  ExperimentConfig c;  // defaults: 10,000 + 10,000 sequences of 4096 bits
  c.output_dir = scratch() / "default";
  auto t0 = Clock::now();
  run_experiment(c);
  const double first = seconds_since(t0);
  const auto manifest_a = read_text_file(c.output_dir / "manifest.json");
  fs::remove_all(c.output_dir);

  t0 = Clock::now();
  run_experiment(c);
  const double second = seconds_since(t0);
  const auto manifest_b = read_text_file(c.output_dir / "manifest.json");
  fs::remove_all(c.output_dir);

  const double slowest = std::max(first, second);
  verdict(9, "determinism", manifest_a == manifest_b && slowest < 60.0,
          std::string(manifest_a == manifest_b ? "manifests byte-identical" : "manifests differ") +
              fmt("; full 20,000-sequence runs %.1f s and %.1f s (limit 60 s)", first, second));
}

template <typename F>
void guarded(int id, const char* name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    verdict(id, name, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, "oracle equivalence", oracle_equivalence);
  guarded(2, "conservation", conservation);
  guarded(3, "uniform baseline", uniform_baseline_and_entropy);
  guarded(5, "null experiment", null_experiment);
  guarded(6, "signal experiment", signal_experiment);
  guarded(7, "security regime", security_regime);
  guarded(8, "chacha20 correctness", chacha_vectors);
  guarded(9, "determinism", determinism);
  fs::remove_all(scratch());
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
