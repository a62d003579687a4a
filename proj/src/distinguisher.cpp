#include "sbc/distinguisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sbc/error.hpp"

namespace sbc {

std::string_view to_string(Polarity p) { return p == Polarity::above ? "above" : "below"; }

Polarity parse_polarity(std::string_view s) {
  if (s == "above") return Polarity::above;
  if (s == "below") return Polarity::below;
  throw ValidationError("unknown polarity '" + std::string(s) + "'");
}

int ThresholdClassifier::decide(std::span<const double> x) const {
  if (feature_index >= x.size()) {
    throw ValidationError("feature index " + std::to_string(feature_index) + " outside vector of dimension " +
                          std::to_string(x.size()));
  }
  const bool above = x[feature_index] > threshold;
  return (polarity == Polarity::above) == above ? 1 : 0;
}

namespace {

std::size_t common_dimension(std::span<const FeatureRow> cipher, std::span<const FeatureRow> random) {
  if (cipher.empty() || random.empty()) throw ValidationError("training needs examples of both classes");
  const std::size_t d = cipher.front().size();
  if (d == 0) throw ValidationError("feature vectors are empty");
  auto check = [d](std::span<const FeatureRow> rows) {
    for (const auto& r : rows) {
      if (r.size() != d) throw ValidationError("feature dimension mismatch");
    }
  };
  check(cipher);
  check(random);
  return d;
}

struct Labeled {
  double value;
  bool cipher;
};

}  // namespace

ThresholdClassifier train_threshold(std::span<const FeatureRow> cipher, std::span<const FeatureRow> random) {
  const std::size_t d = common_dimension(cipher, random);
  const auto nc = static_cast<std::int64_t>(cipher.size());
  const auto nr = static_cast<std::int64_t>(random.size());

  ThresholdClassifier best;
  // Advantage compared exactly as |c_above * nr - r_above * nc| over nc * nr.
  std::int64_t best_score = -1;

  std::vector<Labeled> items;
  items.reserve(cipher.size() + random.size());
  for (std::size_t f = 0; f < d; ++f) {
    items.clear();
    for (const auto& r : cipher) items.push_back({r[f], true});
    for (const auto& r : random) items.push_back({r[f], false});
    std::sort(items.begin(), items.end(), [](const Labeled& a, const Labeled& b) { return a.value < b.value; });

    auto consider = [&](double threshold, std::int64_t c_above, std::int64_t r_above) {
      const std::int64_t signed_score = c_above * nr - r_above * nc;
      const std::int64_t score = signed_score < 0 ? -signed_score : signed_score;
      if (score > best_score) {
        best_score = score;
        best.feature_index = f;
        best.threshold = threshold;
        best.polarity = signed_score >= 0 ? Polarity::above : Polarity::below;
      }
    };

    if (items.front().value == items.back().value) {
      consider(items.front().value, 0, 0);
      continue;
    }
    // Everything at index >= k lies above a threshold between k-1 and k.
    std::int64_t c_above = nc;
    std::int64_t r_above = nr;
    for (std::size_t k = 1; k < items.size(); ++k) {
      if (items[k - 1].cipher) --c_above; else --r_above;
      const double lo = items[k - 1].value;
      const double hi = items[k].value;
      if (lo == hi) continue;
      consider(lo + (hi - lo) / 2, c_above, r_above);
    }
  }
  best.training_advantage = static_cast<double>(best_score) / static_cast<double>(nc * nr);
  return best;
}

std::vector<FeatureRow> feature_rows(std::span<const FeatureVector> features) {
  std::vector<FeatureRow> rows;
  rows.reserve(features.size());
  for (const auto& f : features) rows.push_back(f.values);
  return rows;
}

ThresholdClassifier train_threshold(std::span<const FeatureVector> cipher, std::span<const FeatureVector> random) {
  const auto c = feature_rows(cipher);
  const auto r = feature_rows(random);
  return train_threshold(std::span<const FeatureRow>(c), std::span<const FeatureRow>(r));
}

std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n) {
  if (n == 0) throw ValidationError("uniform_index over an empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t x = engine();
    if (x < limit) return x % n;
  }
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

}  // namespace

AdvantageReport estimate_advantage(const ThresholdClassifier& classifier, std::span<const FeatureRow> test_cipher,
                                   std::span<const FeatureRow> test_random, std::uint64_t bootstrap_seed,
                                   std::size_t resamples) {
  if (test_cipher.empty() || test_random.empty()) throw ValidationError("advantage estimate needs nonempty test sets");
  if (resamples < 1) throw ValidationError("bootstrap needs at least one resample");

  auto decisions = [&](std::span<const FeatureRow> rows) {
    std::vector<std::uint8_t> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(static_cast<std::uint8_t>(classifier.decide(r)));
    return out;
  };
  const auto dc = decisions(test_cipher);
  const auto dr = decisions(test_random);
  auto rate = [](const std::vector<std::uint8_t>& d) {
    std::size_t hits = 0;
    for (auto v : d) hits += v;
    return static_cast<double>(hits) / static_cast<double>(d.size());
  };

  AdvantageReport report;
  report.p_hit_cipher = rate(dc);
  report.p_hit_random = rate(dr);
  report.advantage = std::fabs(report.p_hit_cipher - report.p_hit_random);
  report.test_cipher = dc.size();
  report.test_random = dr.size();

  std::mt19937_64 engine(bootstrap_seed);
  auto resampled_rate = [&](const std::vector<std::uint8_t>& d) {
    std::size_t hits = 0;
    for (std::size_t k = 0; k < d.size(); ++k) hits += d[uniform_index(engine, d.size())];
    return static_cast<double>(hits) / static_cast<double>(d.size());
  };
  std::vector<double> diffs(resamples);
  for (auto& diff : diffs) {
    const double pc = resampled_rate(dc);
    const double pr = resampled_rate(dr);
    diff = pc - pr;
  }
  std::sort(diffs.begin(), diffs.end());
  const double lo = quantile(diffs, 0.025);
  const double hi = quantile(diffs, 0.975);
  if (lo <= 0.0 && hi >= 0.0) {
    report.ci_low = 0.0;
    report.ci_high = std::max(-lo, hi);
  } else {
    report.ci_low = std::min(std::fabs(lo), std::fabs(hi));
    report.ci_high = std::max(std::fabs(lo), std::fabs(hi));
  }
  report.ci_low = std::clamp(std::min(report.ci_low, report.advantage), 0.0, 1.0);
  report.ci_high = std::clamp(std::max(report.ci_high, report.advantage), 0.0, 1.0);
  return report;
}

AdvantageReport estimate_advantage(const ThresholdClassifier& classifier, const Corpus& test_cipher,
                                   const Corpus& test_random, std::span<const unsigned> lengths,
                                   std::uint64_t bootstrap_seed) {
  if (test_cipher.empty() || test_random.empty()) throw ValidationError("advantage estimate needs nonempty corpora");
  const auto c = feature_rows(corpus_features(test_cipher, lengths));
  const auto r = feature_rows(corpus_features(test_random, lengths));
  if (classifier.feature_index >= c.front().size()) {
    throw ValidationError("classifier feature index exceeds feature dimension");
  }
  return estimate_advantage(classifier, c, r, bootstrap_seed);
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n, double train_fraction,
                                                                            std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ValidationError("train fraction must lie in (0,1)");
  if (n < 2) throw ValidationError("cannot split fewer than 2 sequences");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 engine(seed);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_index(engine, i + 1)]);

  auto train_n = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  train_n = std::clamp<std::size_t>(train_n, 1, n - 1);
  std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_n));
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(train_n), order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, double train_fraction, std::uint64_t seed) {
  const auto [train, test] = split_indices(corpus.size(), train_fraction, seed);
  std::pair<Corpus, Corpus> parts;
  for (auto* part : {&parts.first, &parts.second}) {
    part->label = corpus.label;
    part->generator_spec = corpus.generator_spec;
  }
  for (auto i : train) parts.first.sequences.push_back(corpus.sequences[i]);
  for (auto i : test) parts.second.sequences.push_back(corpus.sequences[i]);
  return parts;
}

}  // namespace sbc
