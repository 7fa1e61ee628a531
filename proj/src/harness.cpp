#include "tabwm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "json.hpp"
#include "tabwm/detection.hpp"
#include "tabwm/embedding.hpp"
#include "tabwm/error.hpp"
#include "tabwm/parallel.hpp"
#include "tabwm/random.hpp"
#include "tabwm/robustness.hpp"
#include "tabwm/tableio.hpp"

namespace tabwm {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Streams derived from one trial's RandomStream.
enum TrialStream : std::uint64_t { kBaseTable, kNullTable, kKeyBits, kEmbed, kAttackWatermarked, kAttackNull };

std::vector<std::string> column_names(std::size_t p) {
  std::vector<std::string> names(p);
  for (std::size_t j = 0; j < p; ++j) names[j] = "x" + std::to_string(j);
  return names;
}

struct AttackCell {
  double noise_var = 0.0;
  double proportion = 0.0;
};

struct TrialOutcome {
  std::vector<double> watermarked_p;
  std::vector<double> null_p;
  std::vector<double> ms;
};

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

TrialOutcome run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t p, const std::vector<AttackCell>& cells,
                       const RandomStream& trial) {
  const auto setup_start = Clock::now();
  const NumericTable base = generate(cfg.generator, n, p, cfg.components, trial.substream(kBaseTable).seed());
  const NumericTable null = generate(cfg.generator, n, p, cfg.components, trial.substream(kNullTable).seed());
  const WatermarkKey key = make_key(base, base.column_names(), std::vector<std::size_t>(p, cfg.m),
                                    trial.substream(kKeyBits).seed(), /*normalize=*/false, cfg.alpha);
  WatermarkKey embed_key = key;
  if (cfg.scope == ExperimentScope::kSingleColumn) {
    embed_key.columns.erase(embed_key.columns.begin() + 1, embed_key.columns.end());
  }
  const NumericTable watermarked = embed_table(base, embed_key, trial.substream(kEmbed));
  const double setup_ms = elapsed_ms(setup_start);

  TrialOutcome out;
  for (const AttackCell& cell : cells) {
    const auto start = Clock::now();
    double wm_p = 0.0;
    double null_p = 0.0;
    if (cell.proportion == 0.0 || cell.noise_var == 0.0) {
      wm_p = detect(watermarked, key, cfg.alpha).global_p_value;
      null_p = detect(null, key, cfg.alpha).global_p_value;
    } else {
      AttackSpec spec;
      spec.noise_std = std::sqrt(cell.noise_var);
      spec.proportion = cell.proportion;
      wm_p = detect(additive_noise_attack(watermarked, spec, trial.substream(kAttackWatermarked)), key, cfg.alpha)
                 .global_p_value;
      null_p = detect(additive_noise_attack(null, spec, trial.substream(kAttackNull)), key, cfg.alpha).global_p_value;
    }
    out.watermarked_p.push_back(wm_p);
    out.null_p.push_back(null_p);
    out.ms.push_back(setup_ms + elapsed_ms(start));
  }
  return out;
}

std::vector<SweepRow> run_grid(const ExperimentConfig& cfg, const std::vector<AttackCell>& cells, unsigned threads) {
  cfg.validate();
  const RandomStream root(cfg.seed);
  std::vector<SweepRow> rows;
  for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
    for (std::size_t pi = 0; pi < cfg.p_grid.size(); ++pi) {
      const std::size_t n = cfg.n_grid[ni];
      const std::size_t p = cfg.p_grid[pi];
      const RandomStream cell_stream = root.substream(ni * cfg.p_grid.size() + pi);
      std::vector<TrialOutcome> trials(static_cast<std::size_t>(cfg.trials));
      parallel_for(trials.size(), threads,
                   [&](std::size_t t) { trials[t] = run_trial(cfg, n, p, cells, cell_stream.substream(t)); });

      for (std::size_t c = 0; c < cells.size(); ++c) {
        SweepRow row;
        row.scenario = to_string(cfg.scenario);
        row.n = n;
        row.p = p;
        row.m = cfg.m;
        row.noise_var = cells[c].noise_var;
        row.proportion = cells[c].proportion;
        row.trial_count = cfg.trials;
        double total_ms = 0.0;
        int detected = 0;
        int cleared = 0;
        for (const TrialOutcome& t : trials) {
          row.watermarked_p.push_back(t.watermarked_p[c]);
          row.null_p.push_back(t.null_p[c]);
          detected += t.watermarked_p[c] < cfg.alpha ? 1 : 0;
          cleared += t.null_p[c] >= cfg.alpha ? 1 : 0;
          total_ms += t.ms[c];
        }
        row.tpr = static_cast<double>(detected) / cfg.trials;
        row.tnr = static_cast<double>(cleared) / cfg.trials;
        row.auc = roc_auc(row.watermarked_p, row.null_p);
        row.mean_runtime_ms = total_ms / cfg.trials;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

template <class T>
std::vector<T> get_list(const json& doc, const char* field, std::vector<T> fallback) {
  const auto it = doc.find(field);
  if (it == doc.end()) return fallback;
  if (!it->is_array()) throw SchemaError(std::string("config.") + field + ": expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& v = (*it)[i];
    const bool ok = std::is_integral_v<T> ? v.is_number_unsigned() : v.is_number();
    if (!ok) throw SchemaError(std::string("config.") + field + "[" + std::to_string(i) + "]: wrong type");
    out.push_back(v.get<T>());
  }
  return out;
}

template <class T>
T get_scalar(const json& doc, const char* field, T fallback) {
  const auto it = doc.find(field);
  if (it == doc.end()) return fallback;
  const bool ok = std::is_integral_v<T> ? it->is_number_integer() : it->is_number();
  if (!ok) throw SchemaError(std::string("config.") + field + ": wrong type");
  if (std::is_unsigned_v<T> && !it->is_number_unsigned()) {
    throw SchemaError(std::string("config.") + field + ": must be non-negative");
  }
  return it->get<T>();
}

std::string get_string(const json& doc, const char* field, std::string fallback) {
  const auto it = doc.find(field);
  if (it == doc.end()) return fallback;
  if (!it->is_string()) throw SchemaError(std::string("config.") + field + ": expected a string");
  return it->get<std::string>();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n_grid.empty() || p_grid.empty() || noise_grid.empty() || proportion_grid.empty()) {
    throw DomainError("experiment grids must not be empty");
  }
  for (auto n : n_grid) {
    if (n == 0) throw DomainError("n grid values must be >= 1");
  }
  for (auto p : p_grid) {
    if (p == 0) throw DomainError("p grid values must be >= 1");
  }
  for (double v : noise_grid) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("noise variances must be finite and >= 0");
  }
  for (double v : proportion_grid) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("proportions must lie in [0, 1]");
  }
  if (m == 0) throw DomainError("m must be >= 1");
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (components < 1) throw DomainError("mixture components must be >= 1");
  if (scenario == Scenario::kSingleColumn && scope != ExperimentScope::kSingleColumn) {
    throw DomainError("scenario single-column needs scope single-column");
  }
  if (scenario == Scenario::kAllColumns && scope != ExperimentScope::kAllColumns) {
    throw DomainError("scenario all-columns needs scope all-columns");
  }
}

ExperimentConfig default_config(Scenario scenario) {
  ExperimentConfig cfg;
  cfg.scenario = scenario;
  switch (scenario) {
    case Scenario::kSingleColumn:
      cfg.scope = ExperimentScope::kSingleColumn;
      break;
    case Scenario::kAllColumns:
      break;
    case Scenario::kAttackGrid:
      cfg.n_grid = {5000};
      cfg.p_grid = {100};
      cfg.noise_grid = {0.001, 0.01, 0.1, 1.0, 10.0};
      cfg.proportion_grid = {0.50, 0.75, 0.90, 0.95};
      break;
    case Scenario::kHighDim:
      cfg.n_grid = {100};
      cfg.p_grid = {100, 1000, 10000};
      cfg.trials = 100;
      break;
    case Scenario::kIndependence:
      cfg.generator = Generator::kCorrelated;
      break;
  }
  return cfg;
}

ExperimentConfig scaled(ExperimentConfig cfg, Scale scale) {
  if (scale == Scale::kFull) return cfg;
  cfg.trials = std::min(cfg.trials, 100);
  if (cfg.scenario == Scenario::kAttackGrid) {
    for (auto& n : cfg.n_grid) n = std::min<std::size_t>(n, 500);
    for (auto& p : cfg.p_grid) p = std::min<std::size_t>(p, 20);
  }
  return cfg;
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::kSingleColumn: return "single-column";
    case Scenario::kAllColumns: return "all-columns";
    case Scenario::kAttackGrid: return "attack-grid";
    case Scenario::kHighDim: return "high-dim";
    case Scenario::kIndependence: return "independence";
  }
  return "?";
}

std::string to_string(ExperimentScope s) {
  return s == ExperimentScope::kSingleColumn ? "single-column" : "all-columns";
}

std::string to_string(Generator g) {
  switch (g) {
    case Generator::kGaussian: return "gaussian";
    case Generator::kCorrelated: return "correlated";
    case Generator::kMixture: return "mixture";
  }
  return "?";
}

Scenario parse_scenario(std::string_view s) {
  for (auto v : {Scenario::kSingleColumn, Scenario::kAllColumns, Scenario::kAttackGrid, Scenario::kHighDim,
                 Scenario::kIndependence}) {
    if (to_string(v) == s) return v;
  }
  throw SchemaError("unknown scenario '" + std::string(s) + "'");
}

ExperimentScope parse_scope(std::string_view s) {
  if (s == "single-column") return ExperimentScope::kSingleColumn;
  if (s == "all-columns") return ExperimentScope::kAllColumns;
  throw SchemaError("unknown scope '" + std::string(s) + "'");
}

Generator parse_generator(std::string_view s) {
  for (auto v : {Generator::kGaussian, Generator::kCorrelated, Generator::kMixture}) {
    if (to_string(v) == s) return v;
  }
  throw SchemaError("unknown generator '" + std::string(s) + "'");
}

Scale parse_scale(std::string_view s) {
  if (s == "full") return Scale::kFull;
  if (s == "ci") return Scale::kCi;
  throw SchemaError("unknown scale '" + std::string(s) + "'");
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("config: expected an object");
  static const std::vector<std::string> allowed = {"scenario", "scope",  "generator",  "components",
                                                   "n_grid",   "p_grid", "m",          "trials",
                                                   "alpha",    "noise_grid", "proportion_grid", "seed"};
  for (const auto& [k, v] : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw SchemaError("config: unknown field '" + k + "'");
    }
  }
  const ExperimentConfig base = default_config(parse_scenario(get_string(doc, "scenario", "all-columns")));
  ExperimentConfig cfg = base;
  cfg.scope = parse_scope(get_string(doc, "scope", to_string(base.scope)));
  cfg.generator = parse_generator(get_string(doc, "generator", to_string(base.generator)));
  cfg.components = get_scalar<int>(doc, "components", base.components);
  cfg.n_grid = get_list<std::size_t>(doc, "n_grid", base.n_grid);
  cfg.p_grid = get_list<std::size_t>(doc, "p_grid", base.p_grid);
  cfg.m = get_scalar<std::size_t>(doc, "m", base.m);
  cfg.trials = get_scalar<int>(doc, "trials", base.trials);
  cfg.alpha = get_scalar<double>(doc, "alpha", base.alpha);
  cfg.noise_grid = get_list<double>(doc, "noise_grid", base.noise_grid);
  cfg.proportion_grid = get_list<double>(doc, "proportion_grid", base.proportion_grid);
  cfg.seed = get_scalar<std::uint64_t>(doc, "seed", base.seed);
  cfg.validate();
  return cfg;
}

std::string serialize_experiment_config(const ExperimentConfig& cfg) {
  json doc;
  doc["scenario"] = to_string(cfg.scenario);
  doc["scope"] = to_string(cfg.scope);
  doc["generator"] = to_string(cfg.generator);
  doc["components"] = cfg.components;
  doc["n_grid"] = cfg.n_grid;
  doc["p_grid"] = cfg.p_grid;
  doc["m"] = cfg.m;
  doc["trials"] = cfg.trials;
  doc["alpha"] = cfg.alpha;
  doc["noise_grid"] = cfg.noise_grid;
  doc["proportion_grid"] = cfg.proportion_grid;
  doc["seed"] = cfg.seed;
  return doc.dump(2) + "\n";
}

NumericTable gen_gaussian_table(std::size_t n, std::size_t p, std::uint64_t seed) {
  const RandomStream root(seed);
  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  for (std::size_t j = 0; j < p; ++j) {
    RandomStream rng = root.substream(j);
    for (double& v : cols[j]) v = rng.normal();
  }
  return NumericTable(column_names(p), std::move(cols));
}

NumericTable gen_correlated_table(std::size_t n, std::size_t p, std::uint64_t seed) {
  const RandomStream root(seed);
  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  for (std::size_t j = 0; j < p; ++j) {
    RandomStream rng = root.substream(j);
    for (std::size_t i = 0; i < n; ++i) {
      const double e = rng.normal();
      if (j == 0) {
        cols[j][i] = e;
      } else if (j % 2 == 1) {
        // previous column has odd 1-based number j
        cols[j][i] = 1.1 * cols[j - 1][i] + e;
      } else {
        cols[j][i] = cols[j - 1][i] / 1.1 + e;
      }
    }
  }
  return NumericTable(column_names(p), std::move(cols));
}

NumericTable gen_mixture_table(std::size_t n, std::size_t p, int components, std::uint64_t seed) {
  if (components < 1) throw DomainError("mixture components must be >= 1");
  const RandomStream root(seed);
  const auto k = static_cast<std::size_t>(components);
  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  for (std::size_t j = 0; j < p; ++j) {
    RandomStream rng = root.substream(j);
    std::vector<double> cumulative(k);
    std::vector<double> means(k);
    std::vector<double> stds(k);
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      // Normalized Exp(1) draws give Dirichlet(1, ..., 1) weights.
      total += -std::log1p(-rng.uniform());
      cumulative[c] = total;
      means[c] = rng.uniform(-3.0, 3.0);
      stds[c] = rng.uniform(0.2, 1.0);
    }
    for (double& w : cumulative) w /= total;
    for (double& v : cols[j]) {
      const double u = rng.uniform();
      const auto c = std::min<std::size_t>(
          static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin()),
          k - 1);
      v = rng.normal(means[c], stds[c]);
    }
  }
  return NumericTable(column_names(p), std::move(cols));
}

NumericTable generate(Generator g, std::size_t n, std::size_t p, int components, std::uint64_t seed) {
  switch (g) {
    case Generator::kGaussian: return gen_gaussian_table(n, p, seed);
    case Generator::kCorrelated: return gen_correlated_table(n, p, seed);
    case Generator::kMixture: return gen_mixture_table(n, p, components, seed);
  }
  throw DomainError("unknown generator");
}

double roc_auc(std::span<const double> watermarked_p, std::span<const double> null_p) {
  if (watermarked_p.empty() || null_p.empty()) throw DomainError("AUC needs both samples non-empty");
  std::vector<double> sorted(null_p.begin(), null_p.end());
  std::sort(sorted.begin(), sorted.end());
  double wins = 0.0;
  for (double w : watermarked_p) {
    const auto lower = std::lower_bound(sorted.begin(), sorted.end(), w);
    const auto upper = std::upper_bound(lower, sorted.end(), w);
    wins += static_cast<double>(sorted.end() - upper) + 0.5 * static_cast<double>(upper - lower);
  }
  return wins / (static_cast<double>(watermarked_p.size()) * static_cast<double>(null_p.size()));
}

std::vector<SweepRow> detection_rate_sweep(const ExperimentConfig& cfg, unsigned threads) {
  return run_grid(cfg, {AttackCell{}}, threads);
}

std::vector<SweepRow> attack_sweep(const ExperimentConfig& cfg, unsigned threads) {
  std::vector<AttackCell> cells;
  for (double var : cfg.noise_grid) {
    for (double prop : cfg.proportion_grid) cells.push_back({var, prop});
  }
  return run_grid(cfg, cells, threads);
}

std::vector<SweepRow> high_dim_sweep(const ExperimentConfig& cfg, unsigned threads) {
  return run_grid(cfg, {AttackCell{}}, threads);
}

std::vector<SweepRow> run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  switch (cfg.scenario) {
    case Scenario::kAttackGrid: return attack_sweep(cfg, threads);
    case Scenario::kHighDim: return high_dim_sweep(cfg, threads);
    default: return detection_rate_sweep(cfg, threads);
  }
}

std::string results_csv(const std::vector<SweepRow>& rows) {
  std::string out = "scenario,n,p,m,noise_var,proportion,trial_count,tpr,tnr,auc,mean_runtime_ms\n";
  for (const auto& r : rows) {
    out += r.scenario + "," + std::to_string(r.n) + "," + std::to_string(r.p) + "," + std::to_string(r.m) + "," +
           format_double(r.noise_var) + "," + format_double(r.proportion) + "," + std::to_string(r.trial_count) +
           "," + format_double(r.tpr) + "," + format_double(r.tnr) + "," + format_double(r.auc) + "," +
           format_double(r.mean_runtime_ms) + "\n";
  }
  return out;
}

}  // namespace tabwm
