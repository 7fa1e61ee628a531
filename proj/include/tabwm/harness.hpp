#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tabwm/table.hpp"

namespace tabwm {

enum class Scenario { kSingleColumn, kAllColumns, kAttackGrid, kHighDim, kIndependence };

// kSingleColumn keys every column but embeds only the first one.
enum class ExperimentScope { kSingleColumn, kAllColumns };

enum class Generator { kGaussian, kCorrelated, kMixture };

enum class Scale { kFull, kCi };

struct ExperimentConfig {
  Scenario scenario = Scenario::kAllColumns;
  ExperimentScope scope = ExperimentScope::kAllColumns;
  Generator generator = Generator::kGaussian;
  int components = 5;  // mixture generator only
  std::vector<std::size_t> n_grid = {10, 100, 1000};
  std::vector<std::size_t> p_grid = {10, 100, 1000};
  std::size_t m = 1000;
  int trials = 1000;
  double alpha = kDefaultAlpha;
  std::vector<double> noise_grid = {0.0};  // noise variances
  std::vector<double> proportion_grid = {0.0};
  std::uint64_t seed = 0;

  void validate() const;
};

// Full-size settings for a scenario.
ExperimentConfig default_config(Scenario scenario);

// CI scale caps trials at 100 and attack-grid tables at 500 x 20.
ExperimentConfig scaled(ExperimentConfig cfg, Scale scale);

std::string to_string(Scenario s);
std::string to_string(ExperimentScope s);
std::string to_string(Generator g);
Scenario parse_scenario(std::string_view s);
ExperimentScope parse_scope(std::string_view s);
Generator parse_generator(std::string_view s);
Scale parse_scale(std::string_view s);

// JSON document; absent fields take default_config(scenario) values.
ExperimentConfig parse_experiment_config(std::string_view text);
std::string serialize_experiment_config(const ExperimentConfig& cfg);

// Column names are x0, x1, ...; column j draws from substream j of the seed.
NumericTable gen_gaussian_table(std::size_t n, std::size_t p, std::uint64_t seed);

// First column standard normal; with 1-based column numbers,
// X[j+1] = 1.1 X[j] + e for odd j and X[j] / 1.1 + e for even j.
NumericTable gen_correlated_table(std::size_t n, std::size_t p, std::uint64_t seed);

// Each column i.i.d. from its own mixture: means U[-3, 3], stds U[0.2, 1],
// flat-Dirichlet weights.
NumericTable gen_mixture_table(std::size_t n, std::size_t p, int components, std::uint64_t seed);

NumericTable generate(Generator g, std::size_t n, std::size_t p, int components, std::uint64_t seed);

struct SweepRow {
  std::string scenario;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t m = 0;
  double noise_var = 0.0;
  double proportion = 0.0;
  int trial_count = 0;
  double tpr = 0.0;
  double tnr = 0.0;
  double auc = 0.0;
  double mean_runtime_ms = 0.0;
  // Global p-values by trial index.
  std::vector<double> watermarked_p;
  std::vector<double> null_p;
};

// P(a watermarked p-value < a null p-value), ties counted 1/2.
double roc_auc(std::span<const double> watermarked_p, std::span<const double> null_p);

// Per (n, p) cell: trial t builds a watermarked and an independent null
// table, both detected with the same key. Results depend only on
// (cfg, trial index), never on scheduling.
std::vector<SweepRow> detection_rate_sweep(const ExperimentConfig& cfg, unsigned threads = 1);

// As above, then both tables of every trial receive additive noise for each
// (variance, proportion) cell. The unattacked tables are shared across
// cells, so proportion 0 reproduces the detection sweep.
std::vector<SweepRow> attack_sweep(const ExperimentConfig& cfg, unsigned threads = 1);

// Detection sweep intended for p >> n grids.
std::vector<SweepRow> high_dim_sweep(const ExperimentConfig& cfg, unsigned threads = 1);

// Dispatches on cfg.scenario.
std::vector<SweepRow> run_experiment(const ExperimentConfig& cfg, unsigned threads = 1);

// scenario,n,p,m,noise_var,proportion,trial_count,tpr,tnr,auc,mean_runtime_ms
std::string results_csv(const std::vector<SweepRow>& rows);

}  // namespace tabwm
