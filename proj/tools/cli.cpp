#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tabwm/detection.hpp"
#include "tabwm/embedding.hpp"
#include "tabwm/error.hpp"
#include "tabwm/fidelity.hpp"
#include "tabwm/harness.hpp"
#include "tabwm/parallel.hpp"
#include "tabwm/random.hpp"
#include "tabwm/robustness.hpp"
#include "tabwm/smoothness.hpp"
#include "tabwm/tableio.hpp"

namespace tabwm::cli {
namespace {

struct SeedOption {
  std::uint64_t value = 0;
  CLI::Option* opt = nullptr;

  // Explicit seed, or a fresh one announced on stderr.
  std::uint64_t resolve(std::ostream& err, bool& from_entropy) {
    from_entropy = opt->count() == 0;
    if (from_entropy) {
      value = entropy_seed();
      err << "seed: " << value << "\n";
    }
    return value;
  }
};

struct Options {
  unsigned threads = 0;
  std::string metadata;

  // keygen / embed / detect / attack / filter / fidelity
  std::string input;
  std::string output;
  std::string key;
  std::string key_out;
  std::string selection;
  std::string columns_arg;
  std::string m_arg;
  bool no_normalize = false;
  double alpha = kDefaultAlpha;
  CLI::Option* alpha_opt = nullptr;
  std::string format = "text";
  std::string fidelity_format = "json";
  std::string scope = "keyed";

  // attack
  std::string kind = "additive-gaussian";
  double noise_std = 0.0;
  double noise_var = 0.0;
  CLI::Option* noise_std_opt = nullptr;
  CLI::Option* noise_var_opt = nullptr;
  bool relative = false;
  double proportion = 1.0;
  bool fixed_count = false;
  std::vector<std::string> attack_columns;
  std::vector<std::int64_t> flips;

  // fidelity
  std::string original;
  std::string watermarked;

  // filter
  double delta = 0.01;
  int repeats = 5;
  double reject_fraction = 0.10;
  std::vector<std::size_t> m_grid;

  // bounds
  std::int64_t n = 0;
  std::int64_t p = 0;

  // simulate
  std::string config;
  std::string scenario;
  std::string scale = "full";
  std::string sim_scope;
  int trials = 0;

  SeedOption seed;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

void save_metadata(const Options& o, const std::string& sub, std::uint64_t seed, bool from_entropy,
                   std::vector<std::string> inputs, std::vector<std::string> outputs) {
  if (o.metadata.empty()) return;
  RunMetadata meta;
  meta.subcommand = sub;
  meta.seed = seed;
  meta.seed_from_entropy = from_entropy;
  std::erase(inputs, std::string());
  std::erase(outputs, std::string());
  meta.inputs = std::move(inputs);
  meta.outputs = std::move(outputs);
  meta.threads = resolve_threads(o.threads);
  write_text_file(o.metadata, serialize_metadata(meta));
}

// "auto" or a positive integer.
std::optional<std::size_t> parse_m(const std::string& s) {
  if (s == "auto") return std::nullopt;
  std::size_t m = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), m);
  if (ec != std::errc() || ptr != s.data() + s.size() || m == 0) {
    throw CLI::ValidationError("--m", "expected a positive integer or 'auto', got '" + s + "'");
  }
  return m;
}

int cmd_keygen(Options& o, std::ostream& out, std::ostream& err) {
  const std::optional<std::size_t> fixed_m = parse_m(o.m_arg);
  const bool auto_columns = o.columns_arg == "auto";
  bool from_entropy = false;
  const std::uint64_t seed = o.seed.resolve(err, from_entropy);
  const CsvTable csv = read_table(o.input);
  const NumericTable& table = csv.numeric;
  if (table.cols() == 0) throw SchemaError("'" + o.input + "' has no numeric columns");

  std::vector<std::string> columns = auto_columns || o.columns_arg.empty() ? table.column_names()
                                                                            : split_list(o.columns_arg);
  for (const auto& c : columns) {
    if (!table.index_of(c)) throw SchemaError("unknown column '" + c + "'");
  }
  std::vector<std::size_t> ms(columns.size(), fixed_m.value_or(0));
  if (auto_columns || !fixed_m) {
    const ColumnSelection sel = select_columns(table, SmoothnessConfig{}, seed, o.threads);
    for (const auto& r : sel.rejected) err << "rejected column '" << r.column_name << "'\n";
    std::vector<std::string> kept_columns;
    std::vector<std::size_t> kept_ms;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto it = std::find_if(sel.kept.begin(), sel.kept.end(),
                                   [&](const KeptColumn& k) { return k.column_name == columns[c]; });
      if (it == sel.kept.end()) {
        if (!auto_columns) throw DomainError("column '" + columns[c] + "' fails the smoothness filter");
        continue;
      }
      kept_columns.push_back(columns[c]);
      kept_ms.push_back(fixed_m.value_or(it->chosen_m));
    }
    columns = std::move(kept_columns);
    ms = std::move(kept_ms);
    if (columns.empty()) throw DomainError("no column passes the smoothness filter");
  }
  const double alpha = o.alpha_opt->count() ? o.alpha : kDefaultAlpha;
  const WatermarkKey key = make_key(table, columns, ms, seed, !o.no_normalize, alpha);
  write_or_print(o.output, serialize_key(key), out);
  save_metadata(o, "keygen", seed, from_entropy, {o.input}, {o.output});
  return kExitOk;
}

WatermarkKey key_from_selection(const NumericTable& table, const ColumnSelection& sel, std::uint64_t seed,
                                bool normalize) {
  std::vector<std::string> columns;
  std::vector<std::size_t> ms;
  for (const auto& k : sel.kept) {
    columns.push_back(k.column_name);
    ms.push_back(k.chosen_m);
  }
  return make_key(table, columns, ms, mix_seed(seed), normalize);
}

int cmd_embed(Options& o, std::ostream& out, std::ostream& err) {
  if (o.key.empty() == o.selection.empty()) {
    throw CLI::ValidationError("embed", "give exactly one of --key and --key-from-selection");
  }
  if (!o.selection.empty() && o.key_out.empty()) {
    throw CLI::ValidationError("embed", "--key-from-selection needs --key-out");
  }
  if (o.output.empty()) throw CLI::ValidationError("embed", "--out is required");
  bool from_entropy = false;
  const std::uint64_t seed = o.seed.resolve(err, from_entropy);
  const CsvTable csv = read_table(o.input);
  WatermarkKey key;
  if (!o.key.empty()) {
    key = read_key(o.key);
  } else {
    key = key_from_selection(csv.numeric, parse_selection(read_text_file(o.selection)), seed, !o.no_normalize);
    write_key(key, o.key_out);
  }
  const NumericTable wm = embed_table(csv.numeric, key, RandomStream(seed), o.threads);
  write_table(wm, csv.passthrough, o.output);

  const FidelityReport fid = fidelity_report(csv.numeric, wm, key);
  double bound = 0.0;
  for (const auto& c : key.columns) bound = std::max(bound, 1.0 / static_cast<double>(c.m()));
  out << "linf " << format_double(fid.linf) << " (bound " << format_double(bound) << ")\n";
  for (const auto& c : fid.per_column) {
    out << "w1 " << c.column_name << " " << format_double(c.w1) << " (raw " << format_double(c.w1_raw) << ")\n";
  }
  save_metadata(o, "embed", seed, from_entropy, {o.input, o.key, o.selection}, {o.output, o.key_out});
  return kExitOk;
}

std::string report_text(const DetectionReport& r) {
  std::ostringstream s;
  s << "column,n,green,z,p_value\n";
  for (const auto& c : r.per_column) {
    s << c.column_name << "," << c.n << "," << c.green_count << "," << format_double(c.z) << ","
      << format_double(c.binomial_p_value) << "\n";
  }
  s << "chi_square " << format_double(r.chi_square_stat) << " (dof " << r.degrees << ")\n";
  s << "global_p_value " << format_double(r.global_p_value) << "\n";
  s << "alpha " << format_double(r.alpha) << "\n";
  s << "decision " << to_string(r.decision) << "\n";
  return s.str();
}

int cmd_detect(Options& o, std::ostream& out, std::ostream&) {
  if (o.format != "text" && o.format != "json") throw CLI::ValidationError("--format", "expected text or json");
  if (o.scope != "keyed" && o.scope != "all") throw CLI::ValidationError("--scope", "expected keyed or all");
  const WatermarkKey key = read_key(o.key);
  const CsvTable csv = read_table(o.input);
  DetectOptions opts;
  opts.scope = o.scope == "all" ? DetectScope::kAllColumns : DetectScope::kKeyedColumns;
  opts.threads = o.threads;
  const double alpha = o.alpha_opt->count() ? o.alpha : key.alpha_default;
  const DetectionReport report = detect(csv.numeric, key, alpha, opts);
  write_or_print(o.output, o.format == "json" ? serialize_report(report) : report_text(report), out);
  save_metadata(o, "detect", 0, false, {o.input, o.key}, {o.output});
  return report.decision == Verdict::kWatermarked ? kExitOk : kExitNotWatermarked;
}

int cmd_attack(Options& o, std::ostream& out, std::ostream& err) {
  if (o.output.empty()) throw CLI::ValidationError("attack", "--out is required");
  bool from_entropy = false;
  const std::uint64_t seed = o.seed.resolve(err, from_entropy);
  const CsvTable csv = read_table(o.input);
  NumericTable attacked;
  if (o.kind == "additive-gaussian") {
    if (o.noise_std_opt->count() && o.noise_var_opt->count()) {
      throw CLI::ValidationError("attack", "give --noise-std or --noise-var, not both");
    }
    AttackSpec spec;
    spec.noise_std = o.noise_var_opt->count() ? std::sqrt(o.noise_var) : o.noise_std;
    spec.relative = o.relative;
    spec.proportion = o.proportion;
    spec.fixed_count = o.fixed_count;
    spec.columns = o.attack_columns;
    spec.seed = seed;
    attacked = additive_noise_attack(csv.numeric, spec);
  } else if (o.kind == "targeted-flip") {
    if (o.key.empty()) throw CLI::ValidationError("attack", "targeted-flip needs --key");
    attacked = targeted_flip_attack(csv.numeric, read_key(o.key), o.flips, RandomStream(seed));
  } else {
    throw CLI::ValidationError("--kind", "expected additive-gaussian or targeted-flip");
  }
  write_table(attacked, csv.passthrough, o.output);
  (void)out;
  save_metadata(o, "attack", seed, from_entropy, {o.input, o.key}, {o.output});
  return kExitOk;
}

int cmd_fidelity(Options& o, std::ostream& out, std::ostream&) {
  if (o.fidelity_format != "json" && o.fidelity_format != "csv") {
    throw CLI::ValidationError("--format", "expected json or csv");
  }
  const WatermarkKey key = read_key(o.key);
  const CsvTable a = read_table(o.original);
  const CsvTable b = read_table(o.watermarked);
  const FidelityReport report = fidelity_report(a.numeric, b.numeric, key);
  write_or_print(o.output, o.fidelity_format == "json" ? serialize_fidelity(report) : fidelity_csv(report), out);
  save_metadata(o, "fidelity", 0, false, {o.original, o.watermarked, o.key}, {o.output});
  return kExitOk;
}

int cmd_filter(Options& o, std::ostream& out, std::ostream& err) {
  bool from_entropy = false;
  const std::uint64_t seed = o.seed.resolve(err, from_entropy);
  SmoothnessConfig cfg;
  cfg.delta = o.delta;
  cfg.repeats = o.repeats;
  cfg.reject_fraction = o.reject_fraction;
  if (!o.m_grid.empty()) cfg.m_grid = o.m_grid;
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw CLI::ValidationError("filter", e.what());
  }
  const CsvTable csv = read_table(o.input);
  const ColumnSelection sel = select_columns(csv.numeric, cfg, seed, o.threads);
  write_or_print(o.output, serialize_selection(sel), out);
  save_metadata(o, "filter", seed, from_entropy, {o.input}, {o.output});
  return kExitOk;
}

int cmd_bounds(Options& o, std::ostream& out, std::ostream&) {
  RobustnessBound b;
  if (!o.input.empty()) {
    if (o.key.empty()) throw CLI::ValidationError("bounds", "--input needs --key");
    b = robustness_bound_for(read_table(o.input).numeric, read_key(o.key), o.alpha);
  } else {
    if (o.n < 1 || o.p < 1) throw CLI::ValidationError("bounds", "give --n and --p (>= 1) or --input with --key");
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw CLI::ValidationError("--alpha", "must lie in (0, 1)");
    b = robustness_bound(o.n, o.p, o.alpha);
  }
  write_or_print(o.output, serialize_bound(b), out);
  return kExitOk;
}

int cmd_simulate(Options& o, std::ostream& out, std::ostream& err) {
  if (o.config.empty() && o.scenario.empty()) {
    throw CLI::ValidationError("simulate", "give --config or --scenario");
  }
  ExperimentConfig cfg;
  Scale scale = Scale::kFull;
  try {
    scale = parse_scale(o.scale);
    cfg = o.config.empty() ? default_config(parse_scenario(o.scenario))
                           : parse_experiment_config(read_text_file(o.config));
    if (!o.config.empty() && !o.scenario.empty() && parse_scenario(o.scenario) != cfg.scenario) {
      throw CLI::ValidationError("--scenario", "does not match the config file");
    }
    if (!o.sim_scope.empty()) cfg.scope = parse_scope(o.sim_scope);
  } catch (const SchemaError& e) {
    if (o.config.empty()) throw CLI::ValidationError("simulate", e.what());
    throw;
  }
  if (o.trials > 0) cfg.trials = o.trials;
  bool from_entropy = false;
  if (o.seed.opt->count()) {
    cfg.seed = o.seed.value;
  } else if (o.config.empty()) {
    cfg.seed = o.seed.resolve(err, from_entropy);
  }
  cfg = scaled(cfg, scale);
  const auto rows = run_experiment(cfg, o.threads);
  write_or_print(o.output, results_csv(rows), out);
  save_metadata(o, "simulate", cfg.seed, from_entropy, {o.config}, {o.output});
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Green-list watermarking for numeric tables", "tabwm"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "Worker threads (0 = available parallelism)");
    sub->add_option("--metadata", o.metadata, "Write run metadata (seed, files) as JSON");
  };
  auto seeded = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed.value, "RNG seed (default: entropy, printed to stderr)");
  };

  auto* keygen = app.add_subcommand("keygen", "Create a watermark key");
  keygen->add_option("--input", o.input, "Input CSV")->required();
  keygen->add_option("--columns", o.columns_arg, "Comma-separated columns or 'auto' (default: all numeric)");
  keygen->add_option("--m", o.m_arg, "Green intervals per column, or 'auto'")->required();
  keygen->add_flag("--no-normalize", o.no_normalize, "Bin raw values instead of standardized ones");
  o.alpha_opt = keygen->add_option("--alpha", o.alpha, "Default significance level stored in the key");
  keygen->add_option("--out", o.output, "Key file (default: stdout)");
  seeded(keygen);
  common(keygen);

  auto* embed = app.add_subcommand("embed", "Watermark a CSV table");
  embed->add_option("--input", o.input, "Input CSV")->required();
  embed->add_option("--key", o.key, "Key file");
  embed->add_option("--key-from-selection", o.selection, "Build the key from a filter selection document");
  embed->add_option("--key-out", o.key_out, "Where to write a key built from a selection");
  embed->add_flag("--no-normalize", o.no_normalize, "With --key-from-selection: bin raw values");
  embed->add_option("--out", o.output, "Watermarked CSV");
  seeded(embed);
  common(embed);

  auto* detect_cmd = app.add_subcommand("detect", "Test a CSV table for the watermark (exit 3: not watermarked)");
  detect_cmd->add_option("--input", o.input, "Input CSV")->required();
  detect_cmd->add_option("--key", o.key, "Key file")->required();
  auto* detect_alpha = detect_cmd->add_option("--alpha", o.alpha, "Significance level (default: from key)");
  detect_cmd->add_option("--format", o.format, "text or json");
  detect_cmd->add_option("--scope", o.scope, "keyed: key columns only; all: every table column");
  detect_cmd->add_option("--out", o.output, "Report file (default: stdout)");
  common(detect_cmd);

  auto* attack = app.add_subcommand("attack", "Perturb a CSV table");
  attack->add_option("--input", o.input, "Input CSV")->required();
  attack->add_option("--out", o.output, "Output CSV");
  attack->add_option("--kind", o.kind, "additive-gaussian or targeted-flip");
  o.noise_std_opt = attack->add_option("--noise-std", o.noise_std, "Noise standard deviation");
  o.noise_var_opt = attack->add_option("--noise-var", o.noise_var, "Noise variance");
  attack->add_flag("--relative", o.relative, "Scale noise by each column's std");
  attack->add_option("--proportion", o.proportion, "Share of elements perturbed");
  attack->add_flag("--fixed-count", o.fixed_count, "Perturb exactly round(proportion * n) rows per column");
  attack->add_option("--columns", o.attack_columns, "Restrict to these columns")->delimiter(',');
  attack->add_option("--key", o.key, "Key file (targeted-flip)");
  attack->add_option("--flips", o.flips, "Flip count per key column (targeted-flip)")->delimiter(',');
  seeded(attack);
  common(attack);

  auto* fidelity = app.add_subcommand("fidelity", "Distortion between an original and a watermarked table");
  fidelity->add_option("--original", o.original, "Original CSV")->required();
  fidelity->add_option("--watermarked", o.watermarked, "Watermarked CSV")->required();
  fidelity->add_option("--key", o.key, "Key file")->required();
  fidelity->add_option("--format", o.fidelity_format, "json or csv");
  fidelity->add_option("--out", o.output, "Report file (default: stdout)");
  common(fidelity);

  auto* filter = app.add_subcommand("filter", "Smoothness filter and per-column m choice");
  filter->add_option("--input", o.input, "Input CSV")->required();
  filter->add_option("--delta", o.delta, "Half-width of the accepted band around 1/2");
  filter->add_option("--repeats", o.repeats, "Experiments per grid point");
  filter->add_option("--reject-fraction", o.reject_fraction, "Rejection share of out-of-band experiments");
  filter->add_option("--m-grid", o.m_grid, "Grid of m values")->delimiter(',');
  filter->add_option("--out", o.output, "Selection document (default: stdout)");
  seeded(filter);
  common(filter);

  auto* bounds = app.add_subcommand("bounds", "Robustness bound calculator");
  bounds->add_option("--n", o.n, "Rows");
  bounds->add_option("--p", o.p, "Columns");
  bounds->add_option("--alpha", o.alpha, "Significance level");
  bounds->add_option("--input", o.input, "Take n and p from a watermarked CSV");
  bounds->add_option("--key", o.key, "Key file for --input");
  bounds->add_option("--out", o.output, "Bound document (default: stdout)");
  common(bounds);

  auto* simulate = app.add_subcommand("simulate", "Run a synthetic experiment sweep");
  simulate->add_option("--config", o.config, "Experiment config (JSON)");
  simulate->add_option("--scenario", o.scenario,
                       "single-column, all-columns, attack-grid, high-dim or independence");
  simulate->add_option("--scale", o.scale, "full or ci");
  simulate->add_option("--scope", o.sim_scope, "single-column or all-columns");
  simulate->add_option("--trials", o.trials, "Override the trial count");
  simulate->add_option("--out", o.output, "Results CSV (default: stdout)");
  seeded(simulate);
  common(simulate);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
    CLI::App* chosen = app.get_subcommands().front();
    if (chosen->get_option_no_throw("--seed")) o.seed.opt = chosen->get_option("--seed");
    if (chosen == detect_cmd) o.alpha_opt = detect_alpha;
    if (keygen->parsed()) return cmd_keygen(o, out, err);
    if (embed->parsed()) return cmd_embed(o, out, err);
    if (detect_cmd->parsed()) return cmd_detect(o, out, err);
    if (attack->parsed()) return cmd_attack(o, out, err);
    if (fidelity->parsed()) return cmd_fidelity(o, out, err);
    if (filter->parsed()) return cmd_filter(o, out, err);
    if (bounds->parsed()) return cmd_bounds(o, out, err);
    if (simulate->parsed()) return cmd_simulate(o, out, err);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace tabwm::cli
