#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tabwm/random.hpp"
#include "tabwm/table.hpp"

namespace tabwm::testing {

using Big = boost::multiprecision::cpp_bin_float_50;

// P(Bin(n, 1/2) >= t) in 50-digit arithmetic: I_{1/2}(t, n - t + 1).
inline double oracle_binomial_tail(std::int64_t t, std::int64_t n) {
  if (t <= 0) return 1.0;
  return static_cast<double>(boost::math::ibeta(Big(t), Big(n - t + 1), Big(0.5)));
}

inline double oracle_chi_square_sf(double x, double dof) {
  return static_cast<double>(boost::math::gamma_q(Big(dof) / 2, Big(x) / 2));
}

inline double oracle_chi_square_quantile(double q, double dof) {
  return static_cast<double>(2 * boost::math::gamma_p_inv(Big(dof) / 2, Big(q)));
}

inline double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

inline NumericTable gaussian_columns(std::size_t n, std::size_t p, std::uint64_t seed, double scale = 1.0,
                                     double shift = 0.0) {
  RandomStream rng(seed);
  std::vector<std::string> names;
  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  for (std::size_t j = 0; j < p; ++j) {
    names.push_back("c" + std::to_string(j));
    for (double& v : cols[j]) v = shift + scale * rng.normal();
  }
  return NumericTable(names, cols);
}

inline std::vector<std::string> all_names(const NumericTable& t) { return t.column_names(); }

inline WatermarkKey full_key(const NumericTable& t, std::size_t m, std::uint64_t seed, bool normalize = true) {
  return make_key(t, t.column_names(), std::vector<std::size_t>(t.cols(), m), seed, normalize);
}

// Fresh directory under the system temp path, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("tabwm-" + tag + "-" + std::to_string(entropy_seed()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace tabwm::testing
