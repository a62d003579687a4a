#include "sbc/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "sbc/corpus.hpp"
#include "sbc/distinguisher.hpp"
#include "sbc/error.hpp"
#include "sbc/experiment.hpp"
#include "sbc/features.hpp"
#include "sbc/frequency_table.hpp"
#include "sbc/generators.hpp"
#include "sbc/hex.hpp"
#include "sbc/matching.hpp"
#include "sbc/reports.hpp"

namespace sbc {

namespace fs = std::filesystem;

namespace {

/// Bad flag values discovered after CLI11 parsing; reported with exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct GenOptions {
  std::string kind;
  std::size_t count = 0;
  std::size_t len_bits = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> key;
  std::optional<std::string> nonce;
  std::optional<double> p;
  std::optional<std::uint64_t> period;
  std::optional<std::uint64_t> lcg_multiplier;
  std::optional<std::uint64_t> lcg_increment;
  std::optional<std::uint64_t> lcg_modulus;
  std::string label;
  std::string out;
};

struct ExtractOptions {
  std::string in;
  bool raw = false;
  std::vector<unsigned> lengths{8, 16, 32};
  bool per_sequence = false;
  bool aggregate = false;
  std::string out;
};

struct SearchOptions {
  std::string in;
  bool raw = false;
  std::string pattern;
  std::string algo = "kmp";
};

struct CompareOptions {
  std::string a;
  std::string b;
  std::string out;
};

struct DistinguishOptions {
  std::string cipher;
  std::string random;
  std::vector<unsigned> lengths{8, 16, 32};
  double train_frac = 0.5;
  std::uint64_t split_seed = 0;
  std::uint64_t bootstrap_seed = 0;
  std::string out;
};

struct ReportOptions {
  std::string in;
  std::string plot_data;
};

struct RunOptions {
  std::string config;
  std::map<std::string, std::string> overrides;
};

template <std::size_t N>
std::array<std::uint8_t, N> fixed_hex(const std::string& flag, const std::string& value) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = parse_hex(value);
  } catch (const ValidationError& e) {
    throw UsageError(flag + ": " + e.what());
  }
  if (bytes.size() != N) throw UsageError(flag + " needs exactly " + std::to_string(2 * N) + " hex digits");
  std::array<std::uint8_t, N> out{};
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return out;
}

GeneratorSpec spec_from(const GenOptions& o) {
  GeneratorSpec spec;
  try {
    spec.kind = parse_generator_kind(o.kind);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  if (o.key) spec.key = fixed_hex<32>("--key", *o.key);
  if (o.nonce) spec.nonce = fixed_hex<12>("--nonce", *o.nonce);
  if (spec.kind != GeneratorKind::chacha20) spec.seed = o.seed;
  spec.p = o.p;
  spec.period = o.period;
  if (o.lcg_multiplier || o.lcg_increment || o.lcg_modulus || spec.kind == GeneratorKind::lcg_truncated) {
    LcgParams lcg;
    if (o.lcg_multiplier) lcg.multiplier = *o.lcg_multiplier;
    if (o.lcg_increment) lcg.increment = *o.lcg_increment;
    if (o.lcg_modulus) lcg.modulus = *o.lcg_modulus;
    spec.lcg = lcg;
  }
  try {
    spec.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  return spec;
}

Corpus load_input(const std::string& path, bool raw) { return raw ? load_raw_sequence(path) : load_corpus(path); }

Pattern parse_pattern_flag(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--pattern must look like <hex>:<mbits>");
  const std::string hex = text.substr(0, colon);
  const std::string bits = text.substr(colon + 1);
  unsigned m = 0;
  std::uint64_t value = 0;
  auto r1 = std::from_chars(bits.data(), bits.data() + bits.size(), m);
  auto r2 = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
  if (bits.empty() || hex.empty() || r1.ec != std::errc() || r1.ptr != bits.data() + bits.size() ||
      r2.ec != std::errc() || r2.ptr != hex.data() + hex.size()) {
    throw UsageError("--pattern must look like <hex>:<mbits>");
  }
  try {
    return Pattern(value, m);
  } catch (const ValidationError& e) {
    throw UsageError(std::string("--pattern: ") + e.what());
  }
}

MatchAlgorithm parse_algo(const std::string& s) {
  if (s == "naive") return MatchAlgorithm::naive;
  if (s == "kmp") return MatchAlgorithm::kmp;
  if (s == "bm") return MatchAlgorithm::bm;
  throw UsageError("--algo must be naive, kmp or bm");
}

std::string command_line(const std::vector<std::string>& args) {
  std::string out = "sbc";
  for (const auto& a : args) out += " " + a;
  return out;
}

std::vector<FrequencyTable> aggregate_tables(const Corpus& corpus, std::span<const unsigned> lengths) {
  std::vector<FrequencyTable> out;
  for (unsigned m : lengths) out.push_back(extract_aggregate(corpus, m));
  return out;
}

// --- command bodies --------------------------------------------------------

void do_gen(const GenOptions& o, const std::string& cmd, std::ostream& out) {
  const auto spec = spec_from(o);
  if (o.count < 1) throw UsageError("--count must be >= 1");
  if (o.len_bits < 1) throw UsageError("--len-bits must be >= 1");
  const auto corpus = generate_corpus(spec, o.count, o.len_bits, o.seed, o.label);
  save_corpus(o.out, corpus);
  record_manifest_entry(o.out, cmd);
  out << "wrote " << corpus.size() << " sequences of " << o.len_bits << " bits to " << o.out << '\n';
}

void do_extract(const ExtractOptions& o, const std::string& cmd, std::ostream& out) {
  if (o.per_sequence && o.aggregate) throw UsageError("--per-sequence and --aggregate are exclusive");
  const auto lengths = canonical_lengths(o.lengths);
  const Corpus corpus = load_input(o.in, o.raw);
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + o.out + "' for writing");
  if (o.per_sequence) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      file << "# sequence " << i << '\n';
      for (unsigned m : lengths) write_table(file, extract_frequencies(corpus.sequences[i], m));
    }
  } else {
    for (unsigned m : lengths) write_table(file, extract_aggregate(corpus, m));
  }
  file.close();
  if (!file) throw Error("failed writing '" + o.out + "'");
  record_manifest_entry(o.out, cmd);
  out << "wrote " << (o.per_sequence ? "per-sequence" : "aggregate") << " tables for " << corpus.size()
      << " sequences to " << o.out << '\n';
}

void do_search(const SearchOptions& o, std::ostream& out) {
  const Pattern pattern = parse_pattern_flag(o.pattern);
  const MatchAlgorithm algo = parse_algo(o.algo);
  const Corpus corpus = load_input(o.in, o.raw);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out << i << ' ' << count_occurrences(corpus.sequences[i], pattern, algo) << '\n';
  }
}

void do_compare(const CompareOptions& o, const std::string& cmd, std::ostream& out) {
  const auto a = aggregate_by_length(load_tables(o.a));
  const auto b = aggregate_by_length(load_tables(o.b));
  const auto report = compare_report(a, b);
  write_text_file(o.out, render_report(report));
  record_manifest_entry(o.out, cmd);
  for (const auto& r : report.records) {
    out << "m=" << field(r, "m") << " deviation=" << field(r, "deviation") << " entropy_a=" << field(r, "entropy_a")
        << " entropy_b=" << field(r, "entropy_b") << '\n';
  }
}

void do_distinguish(const DistinguishOptions& o, const std::string& cmd, std::ostream& out) {
  if (!(o.train_frac > 0.0 && o.train_frac < 1.0)) throw UsageError("--train-frac must lie in (0,1)");
  const auto lengths = canonical_lengths(o.lengths);
  const Corpus cipher = load_corpus(o.cipher);
  const Corpus random = load_corpus(o.random);

  const auto fc = corpus_features(cipher, lengths);
  const auto fr = corpus_features(random, lengths);
  const auto [train_c, test_c] = split_indices(fc.size(), o.train_frac, o.split_seed);
  const auto [train_r, test_r] = split_indices(fr.size(), o.train_frac, o.split_seed);
  auto rows = [](const std::vector<FeatureVector>& f, const std::vector<std::size_t>& idx) {
    std::vector<FeatureRow> r;
    for (auto i : idx) r.push_back(f[i].values);
    return r;
  };
  const auto classifier = train_threshold(std::span<const FeatureRow>(rows(fc, train_c)),
                                          std::span<const FeatureRow>(rows(fr, train_r)));
  auto adv = estimate_advantage(classifier, rows(fc, test_c), rows(fr, test_r), o.bootstrap_seed);
  adv.train_cipher = train_c.size();
  adv.train_random = train_r.size();

  const auto report = distinguish_report({lengths, o.train_frac, o.split_seed, o.bootstrap_seed}, classifier, adv,
                                         aggregate_tables(cipher, lengths), aggregate_tables(random, lengths));
  write_text_file(o.out, render_report(report));
  record_manifest_entry(o.out, cmd);
  out << "feature=" << report.global("feature_name") << " threshold=" << report.global("threshold")
      << " advantage=" << report.global("advantage") << " ci=[" << report.global("ci_low") << ", "
      << report.global("ci_high") << "]\n";
}

void do_report(const ReportOptions& o, const std::string& cmd, std::ostream& out) {
  const auto report = parse_report(read_text_file(o.in));
  for (const auto& path : write_plot_data(report, o.plot_data)) {
    record_manifest_entry(path, cmd);
    out << "wrote " << path.string() << '\n';
  }
}

void do_run(const RunOptions& o, std::ostream& out) {
  ExperimentConfig config;
  try {
    if (!o.config.empty()) config = parse_config(read_text_file(o.config));
    for (const auto& [key, value] : o.overrides) config.set(key, value);
    config.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  const auto result = run_experiment(config);
  out << "bundle " << result.output_dir.string() << " (" << result.files.size() << " files)\n";
  for (const auto& r : result.compare.records) {
    out << "m=" << field(r, "m") << " deviation=" << field(r, "deviation") << " entropy_cipher=" << field(r, "entropy_a")
        << " entropy_random=" << field(r, "entropy_b") << '\n';
  }
  out << "feature=" << result.distinguish.global("feature_name")
      << " advantage=" << result.distinguish.global("advantage") << " ci=[" << result.distinguish.global("ci_low")
      << ", " << result.distinguish.global("ci_high") << "]\n";
}

void add_lengths_option(CLI::App* cmd, std::vector<unsigned>& lengths) {
  cmd->add_option("--m", lengths, "Pattern lengths, comma separated (1..64)")
      ->delimiter(',')
      ->check(CLI::Range(1u, 64u))
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stringology-based analysis of keystream and random bit sequences", "sbc"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a corpus and write it as an SBC1 file");
  gen_cmd->add_option("--kind", gen.kind, "chacha20 | uniform | biased-bit | lcg-truncated | repeat-block")->required();
  gen_cmd->add_option("--count", gen.count, "Number of sequences")->required();
  gen_cmd->add_option("--len-bits", gen.len_bits, "Bits per sequence")->required();
  gen_cmd->add_option("--seed", gen.seed, "Base seed; sequence i uses seed+i (chacha20: nonce low 32 bits)")->required();
  gen_cmd->add_option("--key", gen.key, "chacha20 key, 64 hex digits");
  gen_cmd->add_option("--nonce", gen.nonce, "chacha20 nonce, 24 hex digits");
  gen_cmd->add_option("--p", gen.p, "biased-bit probability of a 1");
  gen_cmd->add_option("--period", gen.period, "repeat-block period in bits");
  gen_cmd->add_option("--lcg-multiplier", gen.lcg_multiplier, "lcg-truncated multiplier");
  gen_cmd->add_option("--lcg-increment", gen.lcg_increment, "lcg-truncated increment");
  gen_cmd->add_option("--lcg-modulus", gen.lcg_modulus, "lcg-truncated modulus (>= 256)");
  gen_cmd->add_option("--label", gen.label, "Corpus label (default: generator kind)");
  gen_cmd->add_option("--out", gen.out, "Output corpus path")->required();

  ExtractOptions ext;
  auto* ext_cmd = app.add_subcommand("extract", "Write sliding-window frequency tables");
  ext_cmd->add_option("--in", ext.in, "Input corpus")->required();
  ext_cmd->add_flag("--raw", ext.raw, "Treat the input as one raw sequence of 8*size bits");
  add_lengths_option(ext_cmd, ext.lengths);
  ext_cmd->add_flag("--per-sequence", ext.per_sequence, "One table per sequence and length");
  ext_cmd->add_flag("--aggregate", ext.aggregate, "One table per length over the whole corpus (default)");
  ext_cmd->add_option("--out", ext.out, "Output table file")->required();

  SearchOptions search;
  auto* search_cmd = app.add_subcommand("search", "Count occurrences of a pattern in every sequence");
  search_cmd->add_option("--in", search.in, "Input corpus")->required();
  search_cmd->add_flag("--raw", search.raw, "Treat the input as one raw sequence of 8*size bits");
  search_cmd->add_option("--pattern", search.pattern, "<hex>:<mbits>, e.g. a5:8")->required();
  search_cmd->add_option("--algo", search.algo, "naive | kmp | bm")->capture_default_str();

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Deviation and entropy between two table files");
  cmp_cmd->add_option("--a", cmp.a, "First table file")->required();
  cmp_cmd->add_option("--b", cmp.b, "Second table file")->required();
  cmp_cmd->add_option("--out", cmp.out, "Output report")->required();

  DistinguishOptions dis;
  auto* dis_cmd = app.add_subcommand("distinguish", "Train a decision stump and estimate its advantage");
  dis_cmd->add_option("--cipher", dis.cipher, "Cipher corpus")->required();
  dis_cmd->add_option("--random", dis.random, "Random corpus")->required();
  add_lengths_option(dis_cmd, dis.lengths);
  dis_cmd->add_option("--train-frac", dis.train_frac, "Training fraction in (0,1)")->capture_default_str();
  dis_cmd->add_option("--split-seed", dis.split_seed, "Seed of the train/test split")->capture_default_str();
  dis_cmd->add_option("--bootstrap-seed", dis.bootstrap_seed, "Seed of the bootstrap interval")->capture_default_str();
  dis_cmd->add_option("--out", dis.out, "Output report")->required();

  ReportOptions rep;
  auto* rep_cmd = app.add_subcommand("report", "Emit CSV plot data from a compare or distinguish report");
  rep_cmd->add_option("--in", rep.in, "Report file")->required();
  rep_cmd->add_option("--plot-data", rep.plot_data, "Output directory for CSV files")->required();

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run a full experiment and write a bundle with a manifest");
  run_cmd->add_option("--config", run.config, "Config file of key = value lines");
  for (const auto& key : config_keys()) {
    run_cmd->add_option_function<std::string>(
        "--" + key, [&run, key](const std::string& v) { run.overrides[key] = v; }, "Overrides config key " + key);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "sbc: error: " << e.what() << '\n';
    return 2;
  }

  const std::string cmd = command_line(args);
  try {
    if (*gen_cmd) do_gen(gen, cmd, out);
    else if (*ext_cmd) do_extract(ext, cmd, out);
    else if (*search_cmd) do_search(search, out);
    else if (*cmp_cmd) do_compare(cmp, cmd, out);
    else if (*dis_cmd) do_distinguish(dis, cmd, out);
    else if (*rep_cmd) do_report(rep, cmd, out);
    else if (*run_cmd) do_run(run, out);
  } catch (const UsageError& e) {
    err << "sbc: error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "sbc: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace sbc
