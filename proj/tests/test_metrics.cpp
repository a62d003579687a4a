#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sbc/features.hpp"
#include "sbc/frequency_table.hpp"
#include "sbc/generators.hpp"
#include "sbc/metrics.hpp"

using namespace sbc;

namespace {

BitSequence alternating(std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 1; i < n; i += 2) s[i] = '1';
  return BitSequence::from_bit_string(s);
}

FrequencyTable table_of(unsigned m, const std::map<std::uint64_t, std::uint64_t>& counts) {
  std::vector<PatternCount> entries;
  for (const auto& [v, c] : counts) entries.push_back({v, c});
  return FrequencyTable(m, std::move(entries));
}

}  // namespace

TEST_CASE("entropy closed forms") {
  const auto zeros = BitSequence::from_bit_string(std::string(300, '0'));
  for (unsigned m : {1u, 8u, 32u}) CHECK(entropy(extract_frequencies(zeros, m)) == 0.0);

  for (unsigned m : {1u, 4u, 10u}) {
    std::vector<PatternCount> flat;
    for (std::uint64_t v = 0; v < (1u << m); ++v) flat.push_back({v, 7});
    CHECK(entropy(FrequencyTable(m, flat)) == static_cast<double>(m));
  }

  // counts 2048 ("01") and 2047 ("10")
  const double p = 2048.0 / 4095.0, q = 2047.0 / 4095.0;
  const double expect = -p * std::log2(p) - q * std::log2(q);
  const auto t = extract_frequencies(alternating(4096), 2);
  CHECK(t.count(Pattern(0b01, 2)) == 2048);
  CHECK(t.count(Pattern(0b10, 2)) == 2047);
  CHECK(entropy(t) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(std::fabs(entropy(t) - 1.0) < 1e-6);
}

TEST_CASE("entropy and uniform deviation match direct formulas") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 16 + rng() % 5000;
    std::string str = oracle::random_bits(rng, n);
    if (trial % 2) {
      for (auto& ch : str) ch = rng() % 5 == 0 ? '1' : '0';
    }
    const auto seq = BitSequence::from_bit_string(str);
    for (unsigned m : {1u, 3u, 8u, 12u}) {
      const auto counts = oracle::counts(str, m);
      const auto t = extract_frequencies(seq, m);
      CHECK(entropy(t) == doctest::Approx(oracle::entropy(counts)).epsilon(1e-12));
      CHECK(uniform_deviation(t) == doctest::Approx(oracle::uniform_deviation(counts, m)).epsilon(1e-12));
    }
  }
}

TEST_CASE("entropy bounds") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 3000;
    std::string str = oracle::random_bits(rng, n);
    if (trial % 4 == 0) {
      for (auto& ch : str) ch = rng() % 50 == 0 ? '1' : '0';
    }
    const unsigned m = 1 + static_cast<unsigned>(rng() % std::min<std::size_t>(n, 40));
    const auto t = extract_frequencies(BitSequence::from_bit_string(str), m);
    const double h = entropy(t);
    CHECK(h >= 0.0);
    CHECK(h <= entropy_ceiling(t) + 1e-9);
    CHECK(entropy_ceiling(t) == std::min<double>(m, std::log2(static_cast<double>(n - m + 1))));
    CHECK((h == 0.0) == (t.distinct() == 1));
  }
}

TEST_CASE("deviation") {
  const auto a = extract_frequencies(BitSequence::from_bit_string("0101"), 2);
  const auto b = extract_frequencies(BitSequence::from_bit_string("0000"), 2);
  CHECK(deviation(a, b) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(deviation(a, a) == 0.0);
  CHECK_THROWS_AS(deviation(a, extract_frequencies(BitSequence::from_bit_string("0000"), 3)), ValidationError);

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = oracle::random_bits(rng, 10 + rng() % 800);
    auto y = oracle::random_bits(rng, 10 + rng() % 800);
    if (trial % 3 == 0) {
      for (auto& ch : y) ch = '1';
    }
    const unsigned m = 1 + static_cast<unsigned>(rng() % 10);
    const auto cx = oracle::counts(x, m);
    const auto cy = oracle::counts(y, m);
    const auto tx = table_of(m, cx), ty = table_of(m, cy);
    const double d = deviation(tx, ty);
    CHECK(d == deviation(ty, tx));
    CHECK(d >= 0.0);
    CHECK(d <= 2.0 + 1e-12);
    double expect = 0;
    for (std::uint64_t v = 0; v < (1u << m); ++v) {
      const double fx = cx.count(v) ? static_cast<double>(cx.at(v)) / tx.total_windows() : 0.0;
      const double fy = cy.count(v) ? static_cast<double>(cy.at(v)) / ty.total_windows() : 0.0;
      expect += std::fabs(fx - fy);
    }
    CHECK(d == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("uniform deviation") {
  std::vector<PatternCount> flat;
  for (std::uint64_t v = 0; v < 256; ++v) flat.push_back({v, 3});
  CHECK(uniform_deviation(FrequencyTable(8, flat)) == 0.0);

  const auto zeros = extract_frequencies(BitSequence::from_bit_string(std::string(4096, '0')), 8);
  CHECK(uniform_deviation(zeros) == (1.0 - 1.0 / 256) + 255.0 / 256);
  CHECK(uniform_deviation(zeros) == doctest::Approx(1.9922).epsilon(1e-4));

  double previous = 3.0;
  for (std::size_t count : {10u, 100u, 1000u}) {
    const double u = uniform_deviation(extract_aggregate(generate_corpus(GeneratorSpec::uniform(0), count, 4096, 600), 8));
    CHECK(u > 0.0);
    CHECK(u < previous);
    previous = u;
  }
}

TEST_CASE("max frequency, distinct ratio and top decile") {
  const FrequencyTable t(4, {{0, 10}, {1, 5}, {2, 5}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}, {9, 1}, {10, 1}, {11, 2}});
  CHECK(t.total_windows() == 30);
  CHECK(max_frequency(t) == 10.0 / 30);
  CHECK(distinct_ratio(t) == 12.0 / 30);
  CHECK(top_decile_mass(t) == 15.0 / 30);  // ceil(1.2) = 2 patterns: 10 + 5
  CHECK_THROWS_AS(entropy(FrequencyTable(4)), ValidationError);
  CHECK_THROWS_AS(max_frequency(FrequencyTable(4)), ValidationError);
}

TEST_CASE("feature vectors") {
  const auto zeros = BitSequence::from_bit_string(std::string(4096, '0'));
  const std::vector<unsigned> eight{8};
  const auto fv = feature_vector(zeros, eight);
  REQUIRE(fv.dimension() == 4);
  CHECK(fv.values[0] == 0.0);
  CHECK(fv.values[1] == doctest::Approx(1.9922).epsilon(1e-4));
  CHECK(fv.values[2] == 1.0);
  CHECK(fv.values[3] == 1.0 / 4089);

  const auto seq = generate_uniform(3, 4096);
  CHECK(feature_vector(seq, kDefaultPatternLengths).dimension() == 12);
  const std::vector<unsigned> shuffled{32, 8, 16, 8};
  const auto a = feature_vector(seq, shuffled);
  const auto b = feature_vector(seq, kDefaultPatternLengths);
  CHECK(a.lengths == std::vector<unsigned>{8, 16, 32});
  CHECK(a.values == b.values);
  CHECK(feature_name(a.lengths, 0) == "H_8");
  CHECK(feature_name(a.lengths, 5) == "U_16");
  CHECK(feature_name(a.lengths, 10) == "maxfreq_32");
  CHECK(feature_name(a.lengths, 11) == "distinct_32");
  CHECK(a.at(16, FeatureStat::max_frequency) == a.values[6]);

  const std::vector<unsigned> too_long{8, 65};
  CHECK_THROWS_AS(feature_vector(seq, too_long), ValidationError);
  const std::vector<unsigned> longer_than_seq{8};
  CHECK_THROWS_AS(feature_vector(BitSequence::from_bit_string("0101"), longer_than_seq), ValidationError);
}

TEST_CASE("feature fast path agrees with table metrics") {
  const std::vector<unsigned> lengths{1, 5, 8, 16, 17, 32, 64};
  const auto corpus = generate_corpus(GeneratorSpec::repeat_block(0, 300), 5, 4096, 7);
  auto mixed = generate_corpus(GeneratorSpec::uniform(0), 5, 4096, 9);
  mixed.sequences.insert(mixed.sequences.end(), corpus.sequences.begin(), corpus.sequences.end());
  mixed.sequences.push_back(generate_structured(GeneratorSpec::biased_bit(2, 0.9), 3000));
  const auto features = corpus_features(mixed, lengths);
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    std::vector<double> expect;
    for (unsigned m : lengths) append_table_features(extract_frequencies(mixed.sequences[i], m), expect);
    REQUIRE(features[i].values.size() == expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k) {
      CAPTURE(k);
      CHECK(features[i].values[k] == doctest::Approx(expect[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("feature invariants on random inputs") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const auto seq = generate_structured(GeneratorSpec::biased_bit(rng(), 0.05 + 0.9 * (trial / 50.0)), 64 + rng() % 4000);
    const auto fv = feature_vector(seq, kDefaultPatternLengths);
    for (unsigned m : fv.lengths) {
      const double windows = static_cast<double>(seq.size() - m + 1);
      CHECK(fv.at(m, FeatureStat::entropy) >= 0.0);
      CHECK(fv.at(m, FeatureStat::entropy) <= std::min<double>(m, std::log2(windows)) + 1e-9);
      CHECK(fv.at(m, FeatureStat::max_frequency) > 0.0);
      CHECK(fv.at(m, FeatureStat::max_frequency) <= 1.0);
      CHECK(fv.at(m, FeatureStat::distinct_ratio) > 0.0);
      CHECK(fv.at(m, FeatureStat::distinct_ratio) <= 1.0);
    }
  }
}
