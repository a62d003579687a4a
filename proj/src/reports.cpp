#include "sbc/reports.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "sbc/error.hpp"
#include "sbc/metrics.hpp"

namespace sbc {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

void append_uint(std::string& out, std::uint64_t v) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void append_rows(std::string& out, const FrequencyTable& table, std::span<const PatternCount> rows, bool header) {
  if (header) {
    out += "m=";
    append_uint(out, table.m());
    out += " total_windows=";
    append_uint(out, table.total_windows());
    out += '\n';
  }
  const unsigned digits = (table.m() + 3) / 4;
  const auto total = static_cast<double>(table.total_windows());
  // " <count> <frequency>\n" for small counts, which dominate large tables
  constexpr std::uint64_t kCached = 64;
  std::string cache[kCached];
  char buf[48];
  auto suffix = [&](std::uint64_t count, std::string& dst) {
    dst += ' ';
    append_uint(dst, count);
    dst += ' ';
    auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(count) / total,
                             std::chars_format::general, 10);
    dst.append(buf, res.ptr);
    dst += '\n';
  };
  for (const auto& e : rows) {
    for (unsigned d = digits; d-- > 0;) out += kHexDigits[(e.value >> (4 * d)) & 15];
    if (e.count < kCached) {
      auto& text = cache[e.count];
      if (text.empty()) suffix(e.count, text);
      out += text;
    } else {
      suffix(e.count, out);
    }
  }
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_hex_value(std::string_view s, std::uint64_t& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out, 16);
  return !s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) parts.push_back(line.substr(i, j - i));
    i = j;
  }
  return parts;
}

// Iterates lines with their starting byte offsets.
template <typename Visit>
void for_each_line(std::string_view text, Visit&& visit) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    visit(line, pos);
    pos = end + 1;
  }
}

}  // namespace

std::string format_table(const FrequencyTable& table) {
  std::string out;
  out.reserve(64 + table.distinct() * (table.m() / 4 + 24));
  append_rows(out, table, table.entries(), true);
  return out;
}

void write_table(std::ostream& out, const FrequencyTable& table) {
  // Large aggregate tables are streamed in slices to bound memory.
  constexpr std::size_t kSlice = 1 << 16;
  const auto entries = table.entries();
  std::string text;
  for (std::size_t start = 0; start == 0 || start < entries.size(); start += kSlice) {
    text.clear();
    const std::size_t stop = std::min(entries.size(), start + kSlice);
    append_rows(text, table, entries.subspan(start, stop - start), start == 0);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
  if (!out) throw Error("failed writing frequency table");
}

std::vector<TableRecord> parse_tables(std::string_view text) {
  std::vector<TableRecord> records;
  struct Pending {
    std::optional<std::size_t> sequence;
    unsigned m = 0;
    std::uint64_t total = 0;
    std::size_t header_offset = 0;
    std::vector<PatternCount> entries;
  };
  std::optional<Pending> current;
  std::optional<std::size_t> next_sequence;

  auto flush = [&] {
    if (!current) return;
    try {
      FrequencyTable t(current->m, std::move(current->entries));
      if (t.total_windows() != current->total) {
        throw FormatError("table counts sum to " + std::to_string(t.total_windows()) + " but header says " +
                              std::to_string(current->total),
                          current->header_offset);
      }
      records.push_back({current->sequence, std::move(t)});
    } catch (const ValidationError& e) {
      throw FormatError(e.what(), current->header_offset);
    }
    current.reset();
  };

  for_each_line(text, [&](std::string_view line, std::size_t offset) {
    if (line.empty()) return;
    if (line.front() == '#') {
      const auto parts = split_ws(line.substr(1));
      std::size_t idx = 0;
      if (parts.size() == 2 && parts[0] == "sequence" && parse_number(parts[1], idx)) {
        flush();
        next_sequence = idx;
      }
      return;
    }
    if (line.starts_with("m=")) {
      flush();
      const auto parts = split_ws(line);
      Pending p;
      p.header_offset = offset;
      p.sequence = next_sequence;
      next_sequence.reset();
      if (parts.size() != 2 || !parts[1].starts_with("total_windows=") ||
          !parse_number(parts[0].substr(2), p.m) || !parse_number(parts[1].substr(14), p.total)) {
        throw FormatError("malformed table header", offset);
      }
      if (p.m < 1 || p.m > kMaxPatternBits) throw FormatError("unsupported pattern length in header", offset);
      current = std::move(p);
      return;
    }
    if (!current) throw FormatError("table row before any header", offset);
    const auto parts = split_ws(line);
    PatternCount e{};
    double normalized = 0;
    if (parts.size() != 3 || parts[0].size() != (current->m + 3) / 4 || !parse_hex_value(parts[0], e.value) ||
        !parse_number(parts[1], e.count) || !parse_number(parts[2], normalized)) {
      throw FormatError("malformed table row", offset);
    }
    current->entries.push_back(e);
  });
  flush();
  return records;
}

std::vector<TableRecord> load_tables(const std::filesystem::path& path) { return parse_tables(read_text_file(path)); }

std::vector<FrequencyTable> aggregate_by_length(std::span<const TableRecord> records) {
  std::map<unsigned, std::vector<FrequencyTable>> by_m;
  for (const auto& r : records) by_m[r.table.m()].push_back(r.table);
  std::vector<FrequencyTable> out;
  for (auto& [m, tables] : by_m) out.push_back(merge_tables(tables));
  return out;
}

// ---------------------------------------------------------------------------

std::string format_real(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const std::string& field(const ReportFields& fields, std::string_view key) {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  throw FormatError("report is missing key '" + std::string(key) + "'", 0);
}

const std::string& StructuredReport::global(std::string_view key) const { return field(globals, key); }

std::string render_report(const StructuredReport& report) {
  std::ostringstream out;
  out << "report=" << report.kind << '\n';
  for (const auto& [k, v] : report.globals) out << k << '=' << v << '\n';
  for (const auto& record : report.records) {
    out << '\n';
    for (const auto& [k, v] : record) out << k << '=' << v << '\n';
  }
  return out.str();
}

StructuredReport parse_report(std::string_view text) {
  StructuredReport report;
  bool have_kind = false;
  for_each_line(text, [&](std::string_view line, std::size_t offset) {
    if (line.empty() || line.front() == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || eq == 0) throw FormatError("expected key=value", offset);
    std::string key(line.substr(0, eq));
    std::string value(line.substr(eq + 1));
    if (!have_kind) {
      if (key != "report") throw FormatError("report must start with report=<kind>", offset);
      report.kind = std::move(value);
      have_kind = true;
      return;
    }
    if (key == "m") report.records.emplace_back();
    (report.records.empty() ? report.globals : report.records.back()).emplace_back(std::move(key), std::move(value));
  });
  if (!have_kind) throw FormatError("empty report", 0);
  return report;
}

namespace {

ReportFields compare_fields(const FrequencyTable& a, const FrequencyTable& b) {
  return {
      {"m", std::to_string(a.m())},
      {"deviation", format_real(deviation(a, b))},
      {"entropy_a", format_real(entropy(a))},
      {"entropy_b", format_real(entropy(b))},
      {"entropy_ceiling_a", format_real(entropy_ceiling(a))},
      {"entropy_ceiling_b", format_real(entropy_ceiling(b))},
      {"uniform_deviation_a", format_real(uniform_deviation(a))},
      {"uniform_deviation_b", format_real(uniform_deviation(b))},
      {"max_frequency_a", format_real(max_frequency(a))},
      {"max_frequency_b", format_real(max_frequency(b))},
      {"top_decile_mass_a", format_real(top_decile_mass(a))},
      {"top_decile_mass_b", format_real(top_decile_mass(b))},
      {"distinct_a", std::to_string(a.distinct())},
      {"distinct_b", std::to_string(b.distinct())},
      {"total_windows_a", std::to_string(a.total_windows())},
      {"total_windows_b", std::to_string(b.total_windows())},
  };
}

std::vector<ReportFields> compare_records(std::span<const FrequencyTable> a, std::span<const FrequencyTable> b) {
  std::vector<ReportFields> records;
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      if (ta.m() == tb.m()) records.push_back(compare_fields(ta, tb));
    }
  }
  if (records.empty()) throw ValidationError("the two table sets share no pattern length");
  return records;
}

std::string join_lengths(std::span<const unsigned> lengths) {
  std::string out;
  for (unsigned m : lengths) {
    if (!out.empty()) out += ',';
    out += std::to_string(m);
  }
  return out;
}

}  // namespace

StructuredReport compare_report(std::span<const FrequencyTable> a, std::span<const FrequencyTable> b) {
  StructuredReport report;
  report.kind = "compare";
  report.globals = {{"entropy_bound", "min(m,log2(total_windows))"}};
  report.records = compare_records(a, b);
  return report;
}

StructuredReport distinguish_report(const DistinguishSettings& settings, const ThresholdClassifier& classifier,
                                    const AdvantageReport& adv, std::span<const FrequencyTable> cipher_tables,
                                    std::span<const FrequencyTable> random_tables) {
  return distinguish_report(settings, classifier, adv, compare_report(cipher_tables, random_tables));
}

StructuredReport distinguish_report(const DistinguishSettings& settings, const ThresholdClassifier& classifier,
                                    const AdvantageReport& adv, const StructuredReport& compare) {
  StructuredReport report;
  report.kind = "distinguish";
  report.globals = {
      {"entropy_bound", "min(m,log2(total_windows))"},
      {"lengths", join_lengths(settings.lengths)},
      {"train_frac", format_real(settings.train_fraction)},
      {"split_seed", std::to_string(settings.split_seed)},
      {"bootstrap_seed", std::to_string(settings.bootstrap_seed)},
      {"bootstrap_resamples", std::to_string(kBootstrapResamples)},
      {"feature_index", std::to_string(classifier.feature_index)},
      {"feature_name", feature_name(settings.lengths, classifier.feature_index)},
      {"polarity", std::string(to_string(classifier.polarity))},
      {"threshold", format_real(classifier.threshold)},
      {"training_advantage", format_real(classifier.training_advantage)},
      {"advantage", format_real(adv.advantage)},
      {"ci_low", format_real(adv.ci_low)},
      {"ci_high", format_real(adv.ci_high)},
      {"p_hit_cipher", format_real(adv.p_hit_cipher)},
      {"p_hit_random", format_real(adv.p_hit_random)},
      {"train_cipher", std::to_string(adv.train_cipher)},
      {"train_random", std::to_string(adv.train_random)},
      {"test_cipher", std::to_string(adv.test_cipher)},
      {"test_random", std::to_string(adv.test_random)},
  };
  report.records = compare.records;
  return report;
}

namespace {

void write_csv(const std::filesystem::path& path, std::string_view title, std::span<const std::string_view> columns,
               const std::vector<ReportFields>& rows) {
  std::string text = "# ";
  text += title;
  text += '\n';
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) text += ',';
    text += columns[c];
  }
  text += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) text += ',';
      text += field(row, columns[c]);
    }
    text += '\n';
  }
  write_text_file(path, text);
}

}  // namespace

std::vector<std::filesystem::path> write_plot_data(const StructuredReport& report, const std::filesystem::path& dir) {
  if (report.kind != "compare" && report.kind != "distinguish") {
    throw FormatError("unknown report kind '" + report.kind + "'", 0);
  }
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;

  static constexpr std::string_view kDeviation[] = {"m", "deviation"};
  written.push_back(dir / "deviation_vs_m.csv");
  write_csv(written.back(), "deviation between table sets a and b by pattern length", kDeviation, report.records);

  static constexpr std::string_view kFrequency[] = {"m", "max_frequency_a", "max_frequency_b", "top_decile_mass_a",
                                                     "top_decile_mass_b"};
  written.push_back(dir / "frequency_bars.csv");
  write_csv(written.back(),
            "largest normalized pattern frequency and mass of the top 10% of patterns by pattern length",
            kFrequency, report.records);

  static constexpr std::string_view kEntropy[] = {"m", "entropy_a", "entropy_b", "entropy_ceiling_a",
                                                   "entropy_ceiling_b"};
  written.push_back(dir / "entropy_bars.csv");
  write_csv(written.back(), "pattern entropy (bits) by pattern length; ceiling = min(m, log2(total_windows))",
            kEntropy, report.records);

  if (report.kind == "distinguish") {
    static constexpr std::string_view kAdvantage[] = {"feature_index", "feature_name", "polarity", "threshold",
                                                       "advantage", "ci_low", "ci_high", "p_hit_cipher",
                                                       "p_hit_random"};
    written.push_back(dir / "advantage.csv");
    write_csv(written.back(), "held-out distinguisher advantage with 95% bootstrap interval", kAdvantage,
              {report.globals});
  }
  return written;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace sbc
