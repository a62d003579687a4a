#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sbc/corpus.hpp"
#include "sbc/features.hpp"

namespace sbc {

using FeatureRow = std::vector<double>;

/// Which side of the threshold is classified as "cipher" (decision 1).
enum class Polarity {
  above,  ///< x > threshold -> 1
  below,  ///< x <= threshold -> 1
};

std::string_view to_string(Polarity p);
Polarity parse_polarity(std::string_view s);

/// One-feature decision stump.
struct ThresholdClassifier {
  std::size_t feature_index = 0;
  double threshold = 0.0;
  Polarity polarity = Polarity::above;
  /// Empirical advantage on the data it was trained on.
  double training_advantage = 0.0;

  /// Decision in {0, 1}; throws if the row is too short.
  int decide(std::span<const double> x) const;
};

/// Scans every coordinate and every midpoint between adjacent distinct sorted
/// values; keeps the stump with the highest empirical advantage, ties going
/// to the lowest feature index and then the lowest threshold. A coordinate
/// with a single distinct value offers that value as its only (zero
/// advantage) threshold, so indistinguishable data still yields a classifier.
ThresholdClassifier train_threshold(std::span<const FeatureRow> cipher, std::span<const FeatureRow> random);
ThresholdClassifier train_threshold(std::span<const FeatureVector> cipher,
                                    std::span<const FeatureVector> random);

struct AdvantageReport {
  double advantage = 0.0;
  double p_hit_cipher = 0.0;
  double p_hit_random = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t train_cipher = 0;
  std::size_t train_random = 0;
  std::size_t test_cipher = 0;
  std::size_t test_random = 0;
};

inline constexpr std::size_t kBootstrapResamples = 1000;

/// Hit rates on held-out rows, advantage |p_c - p_r| and a 95% percentile
/// bootstrap interval. The interval is computed on the signed difference and
/// mapped through |.|; it is widened if needed so it always contains the
/// point estimate.
AdvantageReport estimate_advantage(const ThresholdClassifier& classifier,
                                   std::span<const FeatureRow> test_cipher,
                                   std::span<const FeatureRow> test_random, std::uint64_t bootstrap_seed,
                                   std::size_t resamples = kBootstrapResamples);

AdvantageReport estimate_advantage(const ThresholdClassifier& classifier, const Corpus& test_cipher,
                                   const Corpus& test_random, std::span<const unsigned> lengths,
                                   std::uint64_t bootstrap_seed);

std::vector<FeatureRow> feature_rows(std::span<const FeatureVector> features);

/// Uniform integer in [0, n) by rejection sampling; portable across standard
/// libraries, unlike std::uniform_int_distribution.
std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n);

/// Seeded Fisher-Yates partition of [0, n): the first round(train_fraction * n)
/// shuffled indices (clamped to leave at least one on each side) form the
/// training part. Both parts are returned in ascending order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n, double train_fraction,
                                                                            std::uint64_t seed);

/// Seeded Fisher-Yates split: the first round(train_fraction * size)
/// shuffled indices form the training part (clamped to leave at least one
/// sequence on each side).
std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, double train_fraction, std::uint64_t seed);

}  // namespace sbc
