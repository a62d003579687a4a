#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sbc/bit_sequence.hpp"
#include "sbc/corpus.hpp"
#include "sbc/frequency_table.hpp"

namespace sbc {

/// Pattern lengths used by default for the feature map.
inline const std::vector<unsigned> kDefaultPatternLengths{8, 16, 32};

/// Statistics computed per pattern length, in feature order.
enum class FeatureStat { entropy = 0, uniform_deviation = 1, max_frequency = 2, distinct_ratio = 3 };
inline constexpr std::size_t kStatsPerLength = 4;

/// Sorts ascending and removes duplicates; throws on an empty set or a
/// length outside 1..64.
std::vector<unsigned> canonical_lengths(std::vector<unsigned> lengths);

/// Structural statistics of one sequence: for each m (ascending) the four
/// values entropy, uniform deviation, max frequency, distinct ratio.
struct FeatureVector {
  std::vector<unsigned> lengths;
  std::vector<double> values;

  std::size_t dimension() const noexcept { return values.size(); }
  double at(unsigned m, FeatureStat stat) const;
};

/// "H_8", "U_16", "maxfreq_32", "distinct_8", ... for coordinate `index`.
std::string feature_name(std::span<const unsigned> lengths, std::size_t index);

/// Fills the four statistics of one table into `out`.
void append_table_features(const FrequencyTable& table, std::vector<double>& out);

FeatureVector feature_vector(const BitSequence& seq, std::span<const unsigned> lengths);

/// Feature vectors of every sequence, in corpus order.
std::vector<FeatureVector> corpus_features(const Corpus& corpus, std::span<const unsigned> lengths);

}  // namespace sbc
