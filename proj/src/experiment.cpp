#include "sbc/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>

#include "json.hpp"

#include "sbc/error.hpp"
#include "sbc/features.hpp"
#include "sbc/generators.hpp"
#include "sbc/hashing.hpp"
#include "sbc/hex.hpp"
#include "sbc/metrics.hpp"
#include "sbc/recurrence.hpp"

namespace sbc {

namespace fs = std::filesystem;

namespace {

constexpr ChaChaKey kDefaultKey = {0,  1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12, 13, 14, 15,
                                   16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31};
constexpr ChaChaNonce kDefaultNonce = {0, 0, 0, 0, 0, 0, 0, 0x4a, 0, 0, 0, 0};

template <typename T>
T parse_unsigned(std::string_view key, std::string_view value) {
  T out{};
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw ValidationError("config key '" + std::string(key) + "': '" + std::string(value) +
                          "' is not an unsigned integer");
  }
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  double out = 0;
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw ValidationError("config key '" + std::string(key) + "': '" + std::string(value) + "' is not a number");
  }
  return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> parse_fixed_hex(std::string_view key, std::string_view value) {
  const auto bytes = parse_hex(value);
  if (bytes.size() != N) {
    throw ValidationError("config key '" + std::string(key) + "' needs " + std::to_string(2 * N) + " hex digits");
  }
  std::array<std::uint8_t, N> out{};
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return out;
}

std::vector<unsigned> parse_lengths(std::string_view value) {
  std::vector<unsigned> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    std::size_t comma = value.find(',', pos);
    if (comma == std::string_view::npos) comma = value.size();
    out.push_back(parse_unsigned<unsigned>("m", value.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void set_source(SourceConfig& src, std::string_view key, std::string_view value) {
  if (key == "kind") {
    src.kind = parse_generator_kind(value);
  } else if (key == "seed") {
    src.seed = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "key") {
    src.key = parse_fixed_hex<32>(key, value);
  } else if (key == "nonce") {
    src.nonce = parse_fixed_hex<12>(key, value);
  } else if (key == "p") {
    src.p = parse_real(key, value);
  } else if (key == "period") {
    src.period = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "lcg-multiplier") {
    if (!src.lcg) src.lcg = LcgParams{};
    src.lcg->multiplier = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "lcg-increment") {
    if (!src.lcg) src.lcg = LcgParams{};
    src.lcg->increment = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "lcg-modulus") {
    if (!src.lcg) src.lcg = LcgParams{};
    src.lcg->modulus = parse_unsigned<std::uint64_t>(key, value);
  } else {
    throw ValidationError("unknown config key '" + std::string(key) + "'");
  }
}

void render_source(std::string& out, std::string_view prefix, const SourceConfig& src) {
  auto line = [&](std::string_view k, const std::string& v) {
    out += prefix;
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  };
  line("kind", std::string(to_string(src.kind)));
  line("seed", std::to_string(src.seed));
  if (src.key) line("key", to_hex(*src.key));
  if (src.nonce) line("nonce", to_hex(*src.nonce));
  if (src.p) line("p", format_real(*src.p));
  if (src.period) line("period", std::to_string(*src.period));
  if (src.lcg) {
    line("lcg-multiplier", std::to_string(src.lcg->multiplier));
    line("lcg-increment", std::to_string(src.lcg->increment));
    line("lcg-modulus", std::to_string(src.lcg->modulus));
  }
}

}  // namespace

GeneratorSpec SourceConfig::spec() const {
  GeneratorSpec s;
  s.kind = kind;
  s.key = key;
  s.nonce = nonce;
  s.p = p;
  s.period = period;
  s.lcg = lcg;
  if (kind == GeneratorKind::chacha20) {
    if (!s.key) s.key = kDefaultKey;
    if (!s.nonce) s.nonce = kDefaultNonce;
  } else {
    s.seed = seed;
  }
  if (kind == GeneratorKind::lcg_truncated && !s.lcg) s.lcg = LcgParams{};
  s.validate();
  return s;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (std::string prefix : {"cipher-", "random-"}) {
      for (const char* f : {"kind", "seed", "key", "nonce", "p", "period", "lcg-multiplier", "lcg-increment",
                            "lcg-modulus"}) {
        k.push_back(prefix + f);
      }
    }
    for (const char* f : {"count", "len-bits", "m", "train-frac", "split-seed", "bootstrap-seed", "out"}) k.push_back(f);
    return k;
  }();
  return keys;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key.starts_with("cipher-")) {
    set_source(cipher, key.substr(7), value);
  } else if (key.starts_with("random-")) {
    set_source(random, key.substr(7), value);
  } else if (key == "count") {
    count = parse_unsigned<std::size_t>(key, value);
  } else if (key == "len-bits") {
    length_bits = parse_unsigned<std::size_t>(key, value);
  } else if (key == "m") {
    lengths = parse_lengths(value);
  } else if (key == "train-frac") {
    train_fraction = parse_real(key, value);
  } else if (key == "split-seed") {
    split_seed = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "bootstrap-seed") {
    bootstrap_seed = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "out") {
    output_dir = std::string(value);
  } else {
    throw ValidationError("unknown config key '" + std::string(key) + "'");
  }
}

void ExperimentConfig::validate() const {
  cipher.spec();
  random.spec();
  if (count < 2) throw ValidationError("count must be at least 2 so each corpus can be split");
  if (length_bits < 1) throw ValidationError("len-bits must be at least 1");
  const auto canonical = canonical_lengths(lengths);
  for (unsigned m : canonical) {
    if (m > length_bits) {
      throw ValidationError("pattern length " + std::to_string(m) + " exceeds len-bits " + std::to_string(length_bits));
    }
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ValidationError("train-frac must lie in (0,1)");
  if (output_dir.empty()) throw ValidationError("output directory is empty");
}

std::string ExperimentConfig::render() const {
  std::string out;
  render_source(out, "cipher-", cipher);
  render_source(out, "random-", random);
  out += "count = " + std::to_string(count) + '\n';
  out += "len-bits = " + std::to_string(length_bits) + '\n';
  std::string ms;
  for (unsigned m : canonical_lengths(lengths)) ms += (ms.empty() ? "" : ",") + std::to_string(m);
  out += "m = " + ms + '\n';
  out += "train-frac = " + format_real(train_fraction) + '\n';
  out += "split-seed = " + std::to_string(split_seed) + '\n';
  out += "bootstrap-seed = " + std::to_string(bootstrap_seed) + '\n';
  return out;
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    base.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

// ---------------------------------------------------------------------------

namespace {

const char* kManifestName = "manifest.json";

nlohmann::json file_entry(const fs::path& file) {
  return {{"bytes", fs::file_size(file)}, {"sha256", sha256_file_hex(file)}};
}

std::string features_csv(const std::vector<FeatureVector>& features, std::span<const unsigned> lengths) {
  std::string out = "index";
  for (std::size_t k = 0; k < lengths.size() * kStatsPerLength; ++k) out += "," + feature_name(lengths, k);
  out += '\n';
  for (std::size_t i = 0; i < features.size(); ++i) {
    out += std::to_string(i);
    for (double v : features[i].values) out += "," + format_real(v);
    out += '\n';
  }
  return out;
}

struct RecurrenceSummary {
  double repeat_fraction_sum = 0;
  double mean_gap_sum = 0;
  std::size_t mean_gap_defined = 0;
  std::vector<std::uint64_t> density;
};

std::string recurrence_csv(const Corpus& cipher, const Corpus& random, std::span<const unsigned> lengths) {
  std::string out = "corpus,m,sequences,mean_repeat_fraction,mean_gap,sequences_with_repeats";
  for (std::size_t b = 0; b < kDefaultDensityBuckets; ++b) out += ",density_" + std::to_string(b);
  out += '\n';
  for (const Corpus* corpus : {&cipher, &random}) {
    for (unsigned m : lengths) {
      RecurrenceSummary sum;
      sum.density.assign(kDefaultDensityBuckets, 0);
      for (const auto& seq : corpus->sequences) {
        const auto r = recurrence_stats(seq, m);
        sum.repeat_fraction_sum += r.repeat_fraction;
        if (r.mean_gap) {
          sum.mean_gap_sum += *r.mean_gap;
          ++sum.mean_gap_defined;
        }
        for (std::size_t b = 0; b < sum.density.size(); ++b) sum.density[b] += r.positional_density[b];
      }
      const auto n = static_cast<double>(corpus->size());
      out += corpus->label + "," + std::to_string(m) + "," + std::to_string(corpus->size()) + "," +
             format_real(sum.repeat_fraction_sum / n) + "," +
             (sum.mean_gap_defined ? format_real(sum.mean_gap_sum / static_cast<double>(sum.mean_gap_defined)) : "") +
             "," + std::to_string(sum.mean_gap_defined);
      for (auto d : sum.density) out += "," + std::to_string(d);
      out += '\n';
    }
  }
  return out;
}

std::vector<FeatureRow> select_rows(const std::vector<FeatureVector>& features, const std::vector<std::size_t>& idx) {
  std::vector<FeatureRow> rows;
  rows.reserve(idx.size());
  for (auto i : idx) rows.push_back(features[i].values);
  return rows;
}

template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

void prepare_staging(const fs::path& staging) {
  if (fs::exists(staging)) fs::remove_all(staging);
  fs::create_directories(staging / "plots");
}

void install_bundle(const fs::path& staging, const fs::path& target) {
  if (fs::exists(target)) {
    const bool previous_bundle = fs::is_directory(target) && fs::exists(target / kManifestName);
    const bool empty_dir = fs::is_directory(target) && fs::is_empty(target);
    if (!previous_bundle && !empty_dir) {
      throw Error("output '" + target.string() + "' exists and is not an experiment bundle");
    }
    fs::remove_all(target);
  }
  fs::rename(staging, target);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  stage("config", [&] { config.validate(); });
  const auto lengths = canonical_lengths(config.lengths);
  const fs::path target = config.output_dir;
  fs::path staging = target;
  staging += ".partial";

  ExperimentResult result;
  result.output_dir = target;
  try {
    stage("setup", [&] {
      if (target.has_parent_path()) fs::create_directories(target.parent_path());
      prepare_staging(staging);
      write_text_file(staging / "config.txt", config.render());
    });

    const auto [cipher, random] = stage("generate", [&] {
      auto c = generate_corpus(config.cipher.spec(), config.count, config.length_bits, config.cipher.seed, "cipher");
      auto r = generate_corpus(config.random.spec(), config.count, config.length_bits, config.random.seed, "random");
      save_corpus(staging / "cipher.sbc", c);
      save_corpus(staging / "random.sbc", r);
      return std::pair{std::move(c), std::move(r)};
    });

    // Aggregate tables are written and reduced to compare records one
    // length at a time; the m=32 tables dominate memory.
    result.compare = stage("extract", [&] {
      std::ofstream tc(staging / "tables_cipher.txt", std::ios::binary);
      std::ofstream tr(staging / "tables_random.txt", std::ios::binary);
      if (!tc || !tr) throw Error("cannot create table files");
      StructuredReport compare;
      for (unsigned m : lengths) {
        const auto a = extract_aggregate(cipher, m);
        write_table(tc, a);
        const auto b = extract_aggregate(random, m);
        write_table(tr, b);
        auto one = compare_report(std::span(&a, 1), std::span(&b, 1));
        if (compare.kind.empty()) compare = std::move(one);
        else compare.records.push_back(std::move(one.records.front()));
      }
      write_text_file(staging / "compare.txt", render_report(compare));
      write_text_file(staging / "recurrence.csv", recurrence_csv(cipher, random, lengths));
      return compare;
    });

    result.distinguish = stage("distinguish", [&] {
      const auto fc = corpus_features(cipher, lengths);
      const auto fr = corpus_features(random, lengths);
      write_text_file(staging / "features_cipher.csv", features_csv(fc, lengths));
      write_text_file(staging / "features_random.csv", features_csv(fr, lengths));

      const auto [train_c, test_c] = split_indices(fc.size(), config.train_fraction, config.split_seed);
      const auto [train_r, test_r] = split_indices(fr.size(), config.train_fraction, config.split_seed);
      const auto classifier = train_threshold(std::span<const FeatureRow>(select_rows(fc, train_c)),
                                              std::span<const FeatureRow>(select_rows(fr, train_r)));
      auto adv = estimate_advantage(classifier, select_rows(fc, test_c), select_rows(fr, test_r),
                                    config.bootstrap_seed);
      adv.train_cipher = train_c.size();
      adv.train_random = train_r.size();
      DistinguishSettings settings{lengths, config.train_fraction, config.split_seed, config.bootstrap_seed};
      auto report = distinguish_report(settings, classifier, adv, result.compare);
      write_text_file(staging / "distinguish.txt", render_report(report));
      return report;
    });

    stage("report", [&] { write_plot_data(result.distinguish, staging / "plots"); });

    stage("manifest", [&] {
      nlohmann::json files = nlohmann::json::object();
      for (const auto& entry : fs::recursive_directory_iterator(staging)) {
        if (!entry.is_regular_file()) continue;
        const std::string rel = fs::relative(entry.path(), staging).generic_string();
        files[rel] = file_entry(entry.path());
        result.files.push_back(rel);
      }
      nlohmann::json config_json = nlohmann::json::object();
      std::string text = config.render();
      for (std::size_t pos = 0; pos < text.size();) {
        const auto end = text.find('\n', pos);
        const auto line = std::string_view(text).substr(pos, end - pos);
        const auto eq = line.find(" = ");
        config_json[std::string(line.substr(0, eq))] = std::string(line.substr(eq + 3));
        pos = end + 1;
      }
      nlohmann::json manifest = {{"config", config_json}, {"files", files}};
      write_text_file(staging / kManifestName, manifest.dump(2) + "\n");
      result.files.push_back(kManifestName);
      std::sort(result.files.begin(), result.files.end());
    });

    stage("install", [&] { install_bundle(staging, target); });
  } catch (...) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    throw;
  }
  return result;
}

void record_manifest_entry(const fs::path& file, const std::string& command) {
  const fs::path dir = file.has_parent_path() ? file.parent_path() : fs::path(".");
  const fs::path manifest_path = dir / kManifestName;
  nlohmann::json manifest = nlohmann::json::object();
  if (fs::exists(manifest_path)) {
    try {
      manifest = nlohmann::json::parse(read_text_file(manifest_path));
    } catch (const nlohmann::json::exception&) {
      throw Error("existing manifest '" + manifest_path.string() + "' is not valid JSON");
    }
  }
  auto entry = file_entry(file);
  entry["command"] = command;
  manifest["files"][file.filename().generic_string()] = entry;
  write_text_file(manifest_path, manifest.dump(2) + "\n");
}

}  // namespace sbc
