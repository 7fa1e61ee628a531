#include "tabwm/tableio.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "tabwm/error.hpp"

namespace tabwm {
namespace {

using nlohmann::json;

constexpr std::string_view kB64Alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

constexpr int kReportVersion = 1;

// Splits one CSV record on commas outside double quotes; fields keep their
// raw bytes.
std::vector<std::string> split_record(std::string_view line, std::size_t line_no, const std::string& source) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
      current.push_back(ch);
    } else if (ch == ',' && !quoted) {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (quoted) throw ParseError(source + ":" + std::to_string(line_no) + ": unterminated quoted field");
  fields.push_back(std::move(current));
  return fields;
}

enum class CellKind { kNumber, kNonFinite, kText };

CellKind parse_cell(std::string_view cell, double& out) {
  std::string_view body = cell;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  if (body.empty()) return CellKind::kText;
  const char* first = body.data();
  const char* last = body.data() + body.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec == std::errc::result_out_of_range) {
    // Magnitude beyond double range reads as infinite.
    return CellKind::kNonFinite;
  }
  if (ec != std::errc() || ptr != last) return CellKind::kText;
  return std::isfinite(out) ? CellKind::kNumber : CellKind::kNonFinite;
}

std::string unquote_header(const std::string& raw) {
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
      if (raw[i] == '"' && i + 2 < raw.size() && raw[i + 1] == '"') ++i;
      out.push_back(raw[i]);
    }
    return out;
  }
  return raw;
}

std::string quote_header(const std::string& name) {
  if (name.find_first_of(",\"") == std::string::npos) return name;
  std::string out = "\"";
  for (char ch : name) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void check_fields(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == k;
    if (!ok) throw SchemaError(where + ": unknown field '" + k + "'");
  }
}

const json& require(const json& obj, const char* field, const std::string& where) {
  const auto it = obj.find(field);
  if (it == obj.end()) throw SchemaError(where + ": missing field '" + field + "'");
  return *it;
}

template <class T>
T get_as(const json& obj, const char* field, const std::string& where) {
  const json& v = require(obj, field, where);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw SchemaError(where + "." + field + ": wrong type");
  }
}

double get_number(const json& obj, const char* field, const std::string& where) {
  const json& v = require(obj, field, where);
  if (!v.is_number()) throw SchemaError(where + "." + field + ": expected a number");
  return v.get<double>();
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

void check_document(const json& doc, std::string_view format, const std::string& where) {
  if (get_as<std::string>(doc, "format", where) != format) {
    throw SchemaError(where + ".format: expected '" + std::string(format) + "'");
  }
  const int version = get_as<int>(doc, "version", where);
  if (version != kReportVersion) throw SchemaError(where + ": unsupported version " + std::to_string(version));
}

}  // namespace

// ---------------------------------------------------------------------------
// CSV

CsvTable parse_csv(std::string_view text, const std::string& source) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(source + ": missing header row");

  const auto header = split_record(lines[0], 1, source);
  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  for (const auto& raw : header) {
    names.push_back(unquote_header(raw));
    if (!seen.insert(names.back()).second) throw SchemaError(source + ": duplicate column '" + names.back() + "'");
  }
  const std::size_t p = names.size();
  const std::size_t n = lines.size() - 1;

  std::vector<std::vector<std::string>> cells(p, std::vector<std::string>(n));
  for (std::size_t r = 0; r < n; ++r) {
    auto fields = split_record(lines[r + 1], r + 2, source);
    if (fields.size() != p) {
      throw ParseError(source + ":" + std::to_string(r + 2) + ": row has " + std::to_string(fields.size()) +
                       " fields, header has " + std::to_string(p));
    }
    for (std::size_t j = 0; j < p; ++j) cells[j][r] = std::move(fields[j]);
  }

  std::vector<std::string> numeric_names;
  std::vector<std::vector<double>> numeric_cols;
  CsvTable out;
  out.passthrough.column_order = names;
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<double> values(n);
    bool numeric = true;
    std::size_t bad_row = n;
    for (std::size_t r = 0; r < n && numeric; ++r) {
      const CellKind kind = parse_cell(cells[j][r], values[r]);
      if (kind == CellKind::kText) numeric = false;
      if (kind == CellKind::kNonFinite && bad_row == n) bad_row = r;
    }
    if (numeric && bad_row != n) {
      throw DomainError(source + ": non-finite value '" + cells[j][bad_row] + "' at line " +
                        std::to_string(bad_row + 2) + ", column '" + names[j] + "'");
    }
    if (numeric) {
      numeric_names.push_back(names[j]);
      numeric_cols.push_back(std::move(values));
    } else {
      out.passthrough.columns.push_back({names[j], std::move(cells[j])});
    }
  }
  out.numeric = NumericTable(std::move(numeric_names), std::move(numeric_cols));
  return out;
}

CsvTable read_table(const std::filesystem::path& path) {
  return parse_csv(read_text_file(path), path.string());
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw DomainError("cannot format value");
  return std::string(buf.data(), ptr);
}

std::string format_csv(const NumericTable& table, const Passthrough& passthrough) {
  struct Source {
    const std::string* name;
    std::optional<std::size_t> numeric;
    const TextColumn* text = nullptr;
  };
  std::vector<Source> order;
  auto text_by_name = [&](const std::string& name) -> const TextColumn* {
    for (const auto& c : passthrough.columns) {
      if (c.name == name) return &c;
    }
    return nullptr;
  };
  if (passthrough.column_order.empty()) {
    for (std::size_t j = 0; j < table.cols(); ++j) order.push_back({&table.name(j), j, nullptr});
    for (const auto& c : passthrough.columns) order.push_back({&c.name, std::nullopt, &c});
  } else {
    for (const auto& name : passthrough.column_order) {
      if (auto idx = table.index_of(name)) {
        order.push_back({&name, idx, nullptr});
      } else if (const TextColumn* c = text_by_name(name)) {
        order.push_back({&name, std::nullopt, c});
      } else {
        throw SchemaError("column '" + name + "' in output order has no data");
      }
    }
    if (order.size() != table.cols() + passthrough.columns.size()) {
      throw SchemaError("output column order does not cover every column");
    }
  }
  const std::size_t n = table.cols() > 0 ? table.rows()
                        : passthrough.columns.empty() ? 0
                                                      : passthrough.columns.front().cells.size();
  for (const auto& c : passthrough.columns) {
    if (c.cells.size() != n) throw SchemaError("text column '" + c.name + "' has the wrong number of rows");
  }

  std::string out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k) out.push_back(',');
    out += quote_header(*order[k].name);
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k) out.push_back(',');
      if (order[k].numeric) {
        out += format_double(table.at(r, *order[k].numeric));
      } else {
        out += order[k].text->cells[r];
      }
    }
    out.push_back('\n');
  }
  return out;
}

void write_table(const NumericTable& table, const Passthrough& passthrough, const std::filesystem::path& path) {
  write_text_file(path, format_csv(table, passthrough));
}

// ---------------------------------------------------------------------------
// base64 / bit packing

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    const std::uint32_t b0 = bytes[i];
    const std::uint32_t b1 = i + 1 < bytes.size() ? bytes[i + 1] : 0;
    const std::uint32_t b2 = i + 2 < bytes.size() ? bytes[i + 2] : 0;
    const std::uint32_t chunk = (b0 << 16) | (b1 << 8) | b2;
    out.push_back(kB64Alphabet[(chunk >> 18) & 63]);
    out.push_back(kB64Alphabet[(chunk >> 12) & 63]);
    out.push_back(i + 1 < bytes.size() ? kB64Alphabet[(chunk >> 6) & 63] : '=');
    out.push_back(i + 2 < bytes.size() ? kB64Alphabet[chunk & 63] : '=');
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw SchemaError("base64 length is not a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::uint32_t chunk = 0;
    int pad = 0;
    for (int k = 0; k < 4; ++k) {
      const char ch = text[i + k];
      std::uint32_t v = 0;
      if (ch == '=') {
        if (i + 4 != text.size() || k < 2) throw SchemaError("misplaced base64 padding");
        ++pad;
      } else {
        if (pad) throw SchemaError("misplaced base64 padding");
        const auto pos = kB64Alphabet.find(ch);
        if (pos == std::string_view::npos) throw SchemaError(std::string("invalid base64 character '") + ch + "'");
        v = static_cast<std::uint32_t>(pos);
      }
      chunk = (chunk << 6) | v;
    }
    out.push_back(static_cast<std::uint8_t>(chunk >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>(chunk >> 8));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(chunk));
    if ((pad == 1 && (chunk & 0xff) != 0) || (pad == 2 && (chunk & 0xffff) != 0)) {
      throw SchemaError("non-canonical base64 padding bits");
    }
  }
  return out;
}

std::vector<std::uint8_t> pack_bits(const std::vector<bool>& bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) bytes[k / 8] |= static_cast<std::uint8_t>(1u << (k % 8));
  }
  return bytes;
}

std::vector<bool> unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t m) {
  if (bytes.size() != (m + 7) / 8) {
    throw SchemaError("bit string holds " + std::to_string(bytes.size()) + " bytes, m = " + std::to_string(m) +
                      " needs " + std::to_string((m + 7) / 8));
  }
  std::vector<bool> bits(m);
  for (std::size_t k = 0; k < m; ++k) bits[k] = (bytes[k / 8] >> (k % 8)) & 1u;
  for (std::size_t k = m; k < bytes.size() * 8; ++k) {
    if ((bytes[k / 8] >> (k % 8)) & 1u) throw SchemaError("bit string has set bits beyond m");
  }
  return bits;
}

// ---------------------------------------------------------------------------
// key documents

std::string serialize_key(const WatermarkKey& key) {
  key.validate();
  json doc;
  doc["version"] = key.version;
  doc["alpha_default"] = key.alpha_default;
  doc["columns"] = json::array();
  for (const auto& c : key.columns) {
    json col;
    col["name"] = c.name;
    col["m"] = c.m();
    col["bits"] = base64_encode(pack_bits(c.green.bits()));
    if (c.normalizer) col["normalizer"] = {{"mean", c.normalizer->mean}, {"std", c.normalizer->std}};
    doc["columns"].push_back(std::move(col));
  }
  return doc.dump(2) + "\n";
}

WatermarkKey parse_key(std::string_view text) {
  const json doc = parse_json(text, "key document");
  const std::string where = "key";
  if (!doc.is_object()) throw SchemaError("key: expected an object");
  const int version = get_as<int>(doc, "version", where);
  if (version != kKeyFormatVersion) throw SchemaError("key: unsupported version " + std::to_string(version));
  check_fields(doc, {"version", "alpha_default", "columns"}, where);

  WatermarkKey key;
  key.version = version;
  key.alpha_default = get_number(doc, "alpha_default", where);
  const json& cols = require(doc, "columns", where);
  if (!cols.is_array()) throw SchemaError("key.columns: expected an array");
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const std::string at = "key.columns[" + std::to_string(i) + "]";
    const json& col = cols[i];
    check_fields(col, {"name", "m", "bits", "normalizer"}, at);
    const auto name = get_as<std::string>(col, "name", at);
    const json& mj = require(col, "m", at);
    if (!mj.is_number_unsigned() || mj.get<std::uint64_t>() == 0) throw SchemaError(at + ".m: expected a positive integer");
    const auto m = mj.get<std::size_t>();
    std::vector<bool> bits;
    try {
      bits = unpack_bits(base64_decode(get_as<std::string>(col, "bits", at)), m);
    } catch (const SchemaError& e) {
      throw SchemaError(at + ".bits: " + e.what());
    }
    std::optional<Normalizer> norm;
    if (const auto it = col.find("normalizer"); it != col.end()) {
      const std::string nat = at + ".normalizer";
      check_fields(*it, {"mean", "std"}, nat);
      norm = Normalizer{get_number(*it, "mean", nat), get_number(*it, "std", nat)};
      if (!(norm->std > 0.0)) throw DomainError(nat + ".std: must be > 0");
    }
    key.columns.push_back(KeyColumn{name, GreenList(m, std::move(bits)), norm});
  }
  key.validate();
  return key;
}

void write_key(const WatermarkKey& key, const std::filesystem::path& path) {
  write_text_file(path, serialize_key(key));
}

WatermarkKey read_key(const std::filesystem::path& path) { return parse_key(read_text_file(path)); }

// ---------------------------------------------------------------------------
// reports

std::string serialize_report(const DetectionReport& report) {
  json doc;
  doc["format"] = "tabwm.detection";
  doc["version"] = kReportVersion;
  doc["per_column"] = json::array();
  for (const auto& c : report.per_column) {
    doc["per_column"].push_back({{"column", c.column_name},
                                 {"n", c.n},
                                 {"green_count", c.green_count},
                                 {"binomial_p_value", c.binomial_p_value},
                                 {"z", c.z}});
  }
  doc["chi_square_stat"] = report.chi_square_stat;
  doc["degrees"] = report.degrees;
  doc["global_p_value"] = report.global_p_value;
  doc["alpha"] = report.alpha;
  doc["decision"] = to_string(report.decision);
  return doc.dump(2) + "\n";
}

DetectionReport parse_report(std::string_view text) {
  const json doc = parse_json(text, "detection report");
  const std::string where = "report";
  check_fields(doc, {"format", "version", "per_column", "chi_square_stat", "degrees", "global_p_value", "alpha",
                     "decision"},
               where);
  check_document(doc, "tabwm.detection", where);
  DetectionReport r;
  const json& cols = require(doc, "per_column", where);
  if (!cols.is_array()) throw SchemaError("report.per_column: expected an array");
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const std::string at = "report.per_column[" + std::to_string(i) + "]";
    check_fields(cols[i], {"column", "n", "green_count", "binomial_p_value", "z"}, at);
    r.per_column.push_back({get_as<std::string>(cols[i], "column", at), get_as<std::int64_t>(cols[i], "n", at),
                            get_as<std::int64_t>(cols[i], "green_count", at),
                            get_number(cols[i], "binomial_p_value", at), get_number(cols[i], "z", at)});
  }
  r.chi_square_stat = get_number(doc, "chi_square_stat", where);
  r.degrees = get_as<std::int64_t>(doc, "degrees", where);
  r.global_p_value = get_number(doc, "global_p_value", where);
  r.alpha = get_number(doc, "alpha", where);
  const auto decision = get_as<std::string>(doc, "decision", where);
  if (decision == "watermarked") {
    r.decision = Verdict::kWatermarked;
  } else if (decision == "not-watermarked") {
    r.decision = Verdict::kNotWatermarked;
  } else {
    throw SchemaError("report.decision: unknown verdict '" + decision + "'");
  }
  return r;
}

std::string serialize_selection(const ColumnSelection& selection) {
  json doc;
  doc["format"] = "tabwm.selection";
  doc["version"] = kReportVersion;
  doc["kept"] = json::array();
  for (const auto& k : selection.kept) {
    doc["kept"].push_back({{"column", k.column_name},
                           {"m", k.chosen_m},
                           {"in_range_count", k.in_range_count},
                           {"total_in_range", k.total_in_range}});
  }
  doc["rejected"] = json::array();
  for (const auto& r : selection.rejected) {
    doc["rejected"].push_back({{"column", r.column_name}, {"out_of_range_count", r.out_of_range_count}});
  }
  return doc.dump(2) + "\n";
}

ColumnSelection parse_selection(std::string_view text) {
  const json doc = parse_json(text, "selection");
  const std::string where = "selection";
  check_fields(doc, {"format", "version", "kept", "rejected"}, where);
  check_document(doc, "tabwm.selection", where);
  ColumnSelection s;
  for (const auto& k : require(doc, "kept", where)) {
    check_fields(k, {"column", "m", "in_range_count", "total_in_range"}, "selection.kept");
    s.kept.push_back({get_as<std::string>(k, "column", "selection.kept"), get_as<std::size_t>(k, "m", "selection.kept"),
                      get_as<int>(k, "in_range_count", "selection.kept"),
                      get_as<int>(k, "total_in_range", "selection.kept")});
  }
  for (const auto& r : require(doc, "rejected", where)) {
    check_fields(r, {"column", "out_of_range_count"}, "selection.rejected");
    s.rejected.push_back({get_as<std::string>(r, "column", "selection.rejected"),
                          get_as<int>(r, "out_of_range_count", "selection.rejected")});
  }
  return s;
}

std::string serialize_fidelity(const FidelityReport& report) {
  json doc;
  doc["format"] = "tabwm.fidelity";
  doc["version"] = kReportVersion;
  doc["linf"] = report.linf;
  doc["per_column"] = json::array();
  for (const auto& c : report.per_column) {
    doc["per_column"].push_back(
        {{"column", c.column_name}, {"m", c.m}, {"linf", c.linf}, {"w1", c.w1}, {"w1_raw", c.w1_raw}});
  }
  doc["multivariate_w1_bound"] = report.multivariate_w1_bound;
  doc["row_paired_w1"] = report.row_paired_w1;
  doc["max_corr_diff"] = report.max_corr_diff ? json(*report.max_corr_diff) : json(nullptr);
  return doc.dump(2) + "\n";
}

FidelityReport parse_fidelity(std::string_view text) {
  const json doc = parse_json(text, "fidelity report");
  const std::string where = "fidelity";
  check_fields(doc, {"format", "version", "linf", "per_column", "multivariate_w1_bound", "row_paired_w1",
                     "max_corr_diff"},
               where);
  check_document(doc, "tabwm.fidelity", where);
  FidelityReport r;
  r.linf = get_number(doc, "linf", where);
  for (const auto& c : require(doc, "per_column", where)) {
    const std::string at = "fidelity.per_column";
    check_fields(c, {"column", "m", "linf", "w1", "w1_raw"}, at);
    r.per_column.push_back({get_as<std::string>(c, "column", at), get_as<std::size_t>(c, "m", at),
                            get_number(c, "linf", at), get_number(c, "w1", at), get_number(c, "w1_raw", at)});
  }
  r.multivariate_w1_bound = get_number(doc, "multivariate_w1_bound", where);
  r.row_paired_w1 = get_number(doc, "row_paired_w1", where);
  const json& corr = require(doc, "max_corr_diff", where);
  if (!corr.is_null()) r.max_corr_diff = get_number(doc, "max_corr_diff", where);
  return r;
}

std::string fidelity_csv(const FidelityReport& report) {
  std::string out = "column,m,linf,w1,w1_raw\n";
  for (const auto& c : report.per_column) {
    out += quote_header(c.column_name) + "," + std::to_string(c.m) + "," + format_double(c.linf) + "," +
           format_double(c.w1) + "," + format_double(c.w1_raw) + "\n";
  }
  return out;
}

std::string serialize_bound(const RobustnessBound& b) {
  json doc;
  doc["format"] = "tabwm.bounds";
  doc["version"] = kReportVersion;
  doc["n"] = b.n;
  doc["p"] = b.p;
  doc["alpha"] = b.alpha;
  doc["chi_square_quantile"] = b.chi_square_quantile;
  doc["min_flips"] = b.min_flips;
  doc["max_attacked"] = b.max_attacked;
  doc["failure_prob_lb"] = b.failure_prob_lb;
  return doc.dump(2) + "\n";
}

RobustnessBound parse_bound(std::string_view text) {
  const json doc = parse_json(text, "bounds");
  const std::string where = "bounds";
  check_fields(doc, {"format", "version", "n", "p", "alpha", "chi_square_quantile", "min_flips", "max_attacked",
                     "failure_prob_lb"},
               where);
  check_document(doc, "tabwm.bounds", where);
  RobustnessBound b;
  b.n = get_as<std::int64_t>(doc, "n", where);
  b.p = get_as<std::int64_t>(doc, "p", where);
  b.alpha = get_number(doc, "alpha", where);
  b.chi_square_quantile = get_number(doc, "chi_square_quantile", where);
  b.min_flips = get_number(doc, "min_flips", where);
  b.max_attacked = get_number(doc, "max_attacked", where);
  b.failure_prob_lb = get_number(doc, "failure_prob_lb", where);
  return b;
}

std::string serialize_metadata(const RunMetadata& meta) {
  json doc;
  doc["format"] = "tabwm.run";
  doc["version"] = kReportVersion;
  doc["subcommand"] = meta.subcommand;
  doc["seed"] = meta.seed;
  doc["seed_from_entropy"] = meta.seed_from_entropy;
  doc["inputs"] = meta.inputs;
  doc["outputs"] = meta.outputs;
  doc["threads"] = meta.threads;
  return doc.dump(2) + "\n";
}

RunMetadata parse_metadata(std::string_view text) {
  const json doc = parse_json(text, "run metadata");
  const std::string where = "run";
  check_fields(doc, {"format", "version", "subcommand", "seed", "seed_from_entropy", "inputs", "outputs", "threads"},
               where);
  check_document(doc, "tabwm.run", where);
  RunMetadata m;
  m.subcommand = get_as<std::string>(doc, "subcommand", where);
  m.seed = get_as<std::uint64_t>(doc, "seed", where);
  m.seed_from_entropy = get_as<bool>(doc, "seed_from_entropy", where);
  m.inputs = get_as<std::vector<std::string>>(doc, "inputs", where);
  m.outputs = get_as<std::vector<std::string>>(doc, "outputs", where);
  m.threads = get_as<unsigned>(doc, "threads", where);
  return m;
}

// ---------------------------------------------------------------------------
// files

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace tabwm
