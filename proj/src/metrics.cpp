#include "sbc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "sbc/error.hpp"

namespace sbc {

namespace {

void require_nonempty(std::uint64_t total) {
  if (total == 0) throw ValidationError("metric of an empty frequency table");
}

// Histogram of counts: small counts in an array, the rest in a map.
template <typename Counts>
CountProfile build_profile(unsigned m, std::uint64_t total, std::uint64_t distinct, Counts&& for_each_count) {
  constexpr std::uint64_t kSmall = 4096;
  std::vector<std::uint64_t> small(kSmall, 0);
  std::map<std::uint64_t, std::uint64_t> large;
  for_each_count([&](std::uint64_t c) {
    if (c < kSmall) ++small[c];
    else ++large[c];
  });
  CountProfile p;
  p.m = m;
  p.total_windows = total;
  p.distinct = distinct;
  for (std::uint64_t c = 1; c < kSmall; ++c) {
    if (small[c]) p.multiplicities.emplace_back(c, small[c]);
  }
  for (const auto& [c, k] : large) p.multiplicities.emplace_back(c, k);
  return p;
}

}  // namespace

CountProfile count_profile(const FrequencyTable& table) {
  return build_profile(table.m(), table.total_windows(), table.distinct(), [&](auto&& add) {
    for (const auto& e : table.entries()) add(e.count);
  });
}

CountProfile count_profile(const WindowScanner& scan) {
  return build_profile(scan.m(), scan.total_windows(), scan.patterns().size(), [&](auto&& add) {
    for (const auto& p : scan.patterns()) add(p.count);
  });
}

double entropy(const CountProfile& profile) {
  require_nonempty(profile.total_windows);
  const auto total = static_cast<long double>(profile.total_windows);
  long double h = 0;
  for (const auto& [count, patterns] : profile.multiplicities) {
    const long double p = static_cast<long double>(count) / total;
    h -= static_cast<long double>(patterns) * p * std::log2(p);
  }
  return std::max(0.0, static_cast<double>(h));
}

double entropy(const FrequencyTable& table) { return entropy(count_profile(table)); }

double entropy_ceiling(const FrequencyTable& table) {
  require_nonempty(table.total_windows());
  return std::min(static_cast<double>(table.m()), std::log2(static_cast<double>(table.total_windows())));
}

double deviation(const FrequencyTable& a, const FrequencyTable& b) {
  if (a.m() != b.m()) {
    throw ValidationError("deviation between tables with m=" + std::to_string(a.m()) + " and m=" +
                          std::to_string(b.m()));
  }
  require_nonempty(a.total_windows());
  require_nonempty(b.total_windows());
  const auto x = a.entries();
  const auto y = b.entries();
  const auto ta = static_cast<long double>(a.total_windows());
  const auto tb = static_cast<long double>(b.total_windows());
  long double d = 0;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].value < y[j].value)) {
      d += x[i++].count / ta;
    } else if (i == x.size() || y[j].value < x[i].value) {
      d += y[j++].count / tb;
    } else {
      d += std::fabs(x[i++].count / ta - y[j++].count / tb);
    }
  }
  return static_cast<double>(d);
}

double uniform_deviation(const CountProfile& profile) {
  require_nonempty(profile.total_windows);
  const long double ideal = std::ldexp(1.0L, -static_cast<int>(profile.m));
  const auto total = static_cast<long double>(profile.total_windows);
  long double d = 0;
  for (const auto& [count, patterns] : profile.multiplicities) {
    d += static_cast<long double>(patterns) * std::fabs(count / total - ideal);
  }
  // absent patterns: (2^m - present) * 2^-m
  d += 1.0L - static_cast<long double>(profile.distinct) * ideal;
  return static_cast<double>(d);
}

double uniform_deviation(const FrequencyTable& table) { return uniform_deviation(count_profile(table)); }

double max_frequency(const CountProfile& profile) {
  require_nonempty(profile.total_windows);
  return static_cast<double>(profile.multiplicities.back().first) / static_cast<double>(profile.total_windows);
}

double max_frequency(const FrequencyTable& table) {
  require_nonempty(table.total_windows());
  std::uint64_t best = 0;
  for (const auto& e : table.entries()) best = std::max(best, e.count);
  return static_cast<double>(best) / static_cast<double>(table.total_windows());
}

double distinct_ratio(const CountProfile& profile) {
  require_nonempty(profile.total_windows);
  return static_cast<double>(profile.distinct) / static_cast<double>(profile.total_windows);
}

double distinct_ratio(const FrequencyTable& table) {
  require_nonempty(table.total_windows());
  return static_cast<double>(table.distinct()) / static_cast<double>(table.total_windows());
}

double top_decile_mass(const CountProfile& profile) {
  require_nonempty(profile.total_windows);
  std::uint64_t want = (profile.distinct + 9) / 10;
  std::uint64_t mass = 0;
  for (auto it = profile.multiplicities.rbegin(); it != profile.multiplicities.rend() && want > 0; ++it) {
    const std::uint64_t take = std::min(want, it->second);
    mass += take * it->first;
    want -= take;
  }
  return static_cast<double>(mass) / static_cast<double>(profile.total_windows);
}

double top_decile_mass(const FrequencyTable& table) { return top_decile_mass(count_profile(table)); }

}  // namespace sbc
