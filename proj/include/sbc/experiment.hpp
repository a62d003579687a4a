#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sbc/generator_spec.hpp"
#include "sbc/reports.hpp"

namespace sbc {

/// One corpus source of an experiment: generator parameters plus the corpus
/// base seed. Optional fields left empty fall back to kind defaults.
struct SourceConfig {
  GeneratorKind kind = GeneratorKind::uniform;
  std::uint64_t seed = 0;
  std::optional<ChaChaKey> key;
  std::optional<ChaChaNonce> nonce;
  std::optional<double> p;
  std::optional<std::uint64_t> period;
  std::optional<LcgParams> lcg;

  /// Validated generator spec; chacha20 without key/nonce uses a fixed
  /// default pair and lcg-truncated without parameters uses LcgParams{}.
  GeneratorSpec spec() const;

  static SourceConfig of(GeneratorKind kind, std::uint64_t seed) {
    SourceConfig s;
    s.kind = kind;
    s.seed = seed;
    return s;
  }
};

/// Defaults reproduce the reference experiment shape: 10,000 + 10,000
/// sequences of 4096 bits, pattern lengths {8, 16, 32}.
struct ExperimentConfig {
  SourceConfig cipher = SourceConfig::of(GeneratorKind::chacha20, 0);
  SourceConfig random = SourceConfig::of(GeneratorKind::uniform, std::uint64_t{1} << 32);
  std::size_t count = 10000;
  std::size_t length_bits = 4096;
  std::vector<unsigned> lengths{8, 16, 32};
  double train_fraction = 0.5;
  std::uint64_t split_seed = 1;
  std::uint64_t bootstrap_seed = 2;
  std::filesystem::path output_dir = "sbc-experiment";

  void validate() const;

  /// Flat `key = value` text accepted by parse_config; output_dir excluded.
  std::string render() const;

  /// Applies one key (same spelling as the `sbc run` flags, without dashes).
  void set(std::string_view key, std::string_view value);
};

/// Parses `key = value` lines ('#' comments) on top of `base`.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});

/// Keys accepted by ExperimentConfig::set, in canonical order.
const std::vector<std::string>& config_keys();

struct ExperimentResult {
  std::filesystem::path output_dir;
  std::vector<std::string> files;  ///< relative to output_dir, sorted
  StructuredReport compare;
  StructuredReport distinguish;
};

/// Raised by run_experiment; names the failing stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error("stage '" + stage + "' failed: " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Generates both corpora, extracts aggregate tables and per-sequence
/// statistics, runs the distinguisher and writes the bundle plus
/// manifest.json (written last). The bundle is staged in a sibling
/// "<output_dir>.partial" directory and moved into place only on success.
ExperimentResult run_experiment(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Manifests
// ---------------------------------------------------------------------------

/// Adds or replaces the entry for `file` in manifest.json of the file's
/// directory: sha256, size in bytes and the producing command line.
void record_manifest_entry(const std::filesystem::path& file, const std::string& command);

}  // namespace sbc
