#include "sbc/features.hpp"

#include <algorithm>

#include "sbc/error.hpp"
#include "sbc/metrics.hpp"
#include "sbc/parallel.hpp"
#include "sbc/window_stats.hpp"

namespace sbc {

std::vector<unsigned> canonical_lengths(std::vector<unsigned> lengths) {
  if (lengths.empty()) throw ValidationError("pattern length set is empty");
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  for (unsigned m : lengths) {
    if (m < 1 || m > kMaxPatternBits) {
      throw ValidationError("unsupported pattern length " + std::to_string(m) + " (must be 1..64)");
    }
  }
  return lengths;
}

double FeatureVector::at(unsigned m, FeatureStat stat) const {
  auto it = std::find(lengths.begin(), lengths.end(), m);
  if (it == lengths.end()) throw ValidationError("feature vector has no m=" + std::to_string(m));
  const auto slot = static_cast<std::size_t>(it - lengths.begin());
  return values[slot * kStatsPerLength + static_cast<std::size_t>(stat)];
}

std::string feature_name(std::span<const unsigned> lengths, std::size_t index) {
  static constexpr const char* kNames[kStatsPerLength] = {"H", "U", "maxfreq", "distinct"};
  if (index >= lengths.size() * kStatsPerLength) throw ValidationError("feature index out of range");
  return std::string(kNames[index % kStatsPerLength]) + "_" + std::to_string(lengths[index / kStatsPerLength]);
}

void append_table_features(const FrequencyTable& table, std::vector<double>& out) {
  out.push_back(entropy(table));
  out.push_back(uniform_deviation(table));
  out.push_back(max_frequency(table));
  out.push_back(distinct_ratio(table));
}

namespace {

FeatureVector features_with(WindowScanner& scanner, const BitSequence& seq, std::vector<unsigned> lengths) {
  FeatureVector fv;
  fv.lengths = std::move(lengths);
  fv.values.reserve(fv.lengths.size() * kStatsPerLength);
  for (unsigned m : fv.lengths) {
    scanner.scan(seq, m);
    const CountProfile profile = count_profile(scanner);
    fv.values.push_back(entropy(profile));
    fv.values.push_back(uniform_deviation(profile));
    fv.values.push_back(max_frequency(profile));
    fv.values.push_back(distinct_ratio(profile));
  }
  return fv;
}

}  // namespace

FeatureVector feature_vector(const BitSequence& seq, std::span<const unsigned> lengths) {
  WindowScanner scanner;
  return features_with(scanner, seq, canonical_lengths({lengths.begin(), lengths.end()}));
}

std::vector<FeatureVector> corpus_features(const Corpus& corpus, std::span<const unsigned> lengths) {
  const auto canonical = canonical_lengths({lengths.begin(), lengths.end()});
  std::vector<FeatureVector> out(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    thread_local WindowScanner scanner;
    out[i] = features_with(scanner, corpus.sequences[i], canonical);
  });
  return out;
}

}  // namespace sbc
