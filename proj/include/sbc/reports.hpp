#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sbc/distinguisher.hpp"
#include "sbc/frequency_table.hpp"

namespace sbc {

// ---------------------------------------------------------------------------
// Frequency table export.
//
//   m=<m> total_windows=<w>
//   <hex pattern, ceil(m/4) digits> <count> <normalized, 10 significant digits>
//   ...
//
// Rows are sorted by pattern value. A file may hold several tables back to
// back; lines starting with '#' are comments (per-sequence exports mark each
// sequence with "# sequence <index>").
// ---------------------------------------------------------------------------

void write_table(std::ostream& out, const FrequencyTable& table);
std::string format_table(const FrequencyTable& table);

struct TableRecord {
  std::optional<std::size_t> sequence;
  FrequencyTable table;
};

/// Parses every table in a table file. Throws FormatError with the byte
/// offset of the offending line.
std::vector<TableRecord> parse_tables(std::string_view text);
std::vector<TableRecord> load_tables(const std::filesystem::path& path);

/// Sums all tables with equal m, ascending m.
std::vector<FrequencyTable> aggregate_by_length(std::span<const TableRecord> records);

// ---------------------------------------------------------------------------
// Structured reports: `key=value` lines. `report=<kind>` comes first, then
// global keys, then one record per pattern length, each introduced by `m=`.
// ---------------------------------------------------------------------------

using ReportFields = std::vector<std::pair<std::string, std::string>>;

struct StructuredReport {
  std::string kind;
  ReportFields globals;
  std::vector<ReportFields> records;

  /// Value of a global key; throws FormatError if missing.
  const std::string& global(std::string_view key) const;
};

const std::string& field(const ReportFields& fields, std::string_view key);

std::string render_report(const StructuredReport& report);
StructuredReport parse_report(std::string_view text);

/// Shortest round-trip decimal form of a double.
std::string format_real(double v);

/// Per-length metrics of two table sets (a vs b). Lengths missing from
/// either side are skipped; throws if no length is shared.
StructuredReport compare_report(std::span<const FrequencyTable> a, std::span<const FrequencyTable> b);

struct DistinguishSettings {
  std::vector<unsigned> lengths;
  double train_fraction = 0.5;
  std::uint64_t split_seed = 0;
  std::uint64_t bootstrap_seed = 0;
};

/// Compare records of the aggregate tables plus the stump and its held-out
/// advantage as global keys.
StructuredReport distinguish_report(const DistinguishSettings& settings, const ThresholdClassifier& classifier,
                                    const AdvantageReport& advantage, std::span<const FrequencyTable> cipher_tables,
                                    std::span<const FrequencyTable> random_tables);

/// Same, reusing the per-length records of an existing compare report.
StructuredReport distinguish_report(const DistinguishSettings& settings, const ThresholdClassifier& classifier,
                                    const AdvantageReport& advantage, const StructuredReport& compare);

/// Writes the CSV series derived from a compare or distinguish report into
/// `dir` and returns the written paths. Values are copied verbatim from the
/// report text.
std::vector<std::filesystem::path> write_plot_data(const StructuredReport& report, const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace sbc
