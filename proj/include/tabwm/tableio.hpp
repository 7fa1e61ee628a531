#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tabwm/detection.hpp"
#include "tabwm/fidelity.hpp"
#include "tabwm/robustness.hpp"
#include "tabwm/smoothness.hpp"
#include "tabwm/table.hpp"

namespace tabwm {

// A CSV column that did not parse as numbers. Cells are kept as the exact
// bytes found between delimiters, quotes included.
struct TextColumn {
  std::string name;
  std::vector<std::string> cells;

  friend bool operator==(const TextColumn&, const TextColumn&) = default;
};

struct Passthrough {
  // Header order of the source file, numeric and text columns interleaved.
  // Empty means numeric columns first, then text columns.
  std::vector<std::string> column_order;
  std::vector<TextColumn> columns;

  friend bool operator==(const Passthrough&, const Passthrough&) = default;
};

struct CsvTable {
  NumericTable numeric;
  Passthrough passthrough;
};

// CSV grammar: header row of unique names, comma delimiter, '.' decimal
// point, no thousands separators, optional double-quoted fields without
// embedded newlines. A column is numeric when every cell parses completely
// as a real; a numeric-looking NaN/inf literal is a DomainError with the cell
// address. Ragged rows are a ParseError with the line number. In a
// header-only file every column reads as numeric.
CsvTable parse_csv(std::string_view text, const std::string& source = "<memory>");
CsvTable read_table(const std::filesystem::path& path);

// Numeric cells use the shortest decimal that parses back to the same double.
std::string format_csv(const NumericTable& table, const Passthrough& passthrough = {});
void write_table(const NumericTable& table, const Passthrough& passthrough, const std::filesystem::path& path);

std::string format_double(double v);

// Standard base64 with '=' padding.
std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);

// Bit k lands in byte k / 8 at position k % 8.
std::vector<std::uint8_t> pack_bits(const std::vector<bool>& bits);
std::vector<bool> unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t m);

// Key document (JSON). Parsing is strict: unknown fields, bad base64, a bit
// length that disagrees with m, or std <= 0 are errors naming the field.
std::string serialize_key(const WatermarkKey& key);
WatermarkKey parse_key(std::string_view text);
void write_key(const WatermarkKey& key, const std::filesystem::path& path);
WatermarkKey read_key(const std::filesystem::path& path);

std::string serialize_report(const DetectionReport& report);
DetectionReport parse_report(std::string_view text);

std::string serialize_selection(const ColumnSelection& selection);
ColumnSelection parse_selection(std::string_view text);

std::string serialize_fidelity(const FidelityReport& report);
FidelityReport parse_fidelity(std::string_view text);
// Flat per-column CSV: column,m,linf,w1,w1_raw
std::string fidelity_csv(const FidelityReport& report);

std::string serialize_bound(const RobustnessBound& bound);
RobustnessBound parse_bound(std::string_view text);

// Seeds and settings of one CLI run, so the run can be repeated exactly.
struct RunMetadata {
  std::string subcommand;
  std::uint64_t seed = 0;
  bool seed_from_entropy = false;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  unsigned threads = 1;

  friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

std::string serialize_metadata(const RunMetadata& meta);
RunMetadata parse_metadata(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace tabwm
