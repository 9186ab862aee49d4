#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locstat/kernels.hpp"
#include "locstat/levy.hpp"
#include "locstat/optimize.hpp"

namespace locstat {

enum class Estimator { Lse, Qmle, Whittle };

Estimator parse_estimator(std::string_view text);
std::string to_string(Estimator estimator);

/// One Monte Carlo study: for every N and replication one path on [0, horizon] is
/// simulated and the coefficient is estimated at every u point.
struct StudyConfig {
  Estimator estimator = Estimator::Lse;
  // LSE: builtin curve name (a1, a2, a3) or a constant rate when `constant_rate` is set.
  std::string curve = "a2";
  std::optional<double> constant_rate;
  double lse_lo = 1e-3, lse_hi = 10.0;
  // QMLE / Whittle: family and truth; an empty `constant_theta` selects the time-varying curves.
  std::string family = "example2d";
  std::vector<double> constant_theta;
  std::vector<double> box_lo, box_hi;  // empty: the family's default box

  LevySpec noise = default_nig_noise();
  std::vector<int> N_list{1, 4, 16, 64};
  int replications = 100;
  KernelKind kernel = KernelKind::Rectangular;
  double horizon = 2000.0;
  double bandwidth_constant = 400.0;
  std::vector<double> u_points;  // empty: 21 equispaced points on [0.2 T, 0.8 T]
  int sim_ratio = 1000;
  std::uint64_t seed = 1;
  DeConfig de;
  int threads = 0;  // 0: hardware concurrency
  std::string output_dir;  // empty: nothing written

  /// Full-size study: 400 replications, N up to 256, 101 points.
  static StudyConfig full_scale(Estimator estimator);

  std::vector<double> resolved_u_points() const;
  /// Throws ConfigError when the configuration is inconsistent.
  void validate() const;

  std::string to_json() const;
  /// Keys absent from the JSON keep their defaults. Throws ConfigError on bad input.
  static StudyConfig from_json(const std::string& text);
};

/// One (N, u, replication) cell.
struct EstimateRow {
  int N = 0;
  int u_index = 0;
  double u = 0.0;
  int replication = 0;
  std::vector<double> truth;
  std::vector<double> estimate;  // empty when the cell failed
  double sigma_hat = 0.0;        // LSE plug-in variance
  double std_error = 0.0;        // LSE standardized error
  double objective = 0.0;        // QMLE objective at the estimate (QMLE and Whittle)
  double whittle_value = 0.0;    // Whittle objective at the estimate (Whittle only)
  double riccati_residual = 0.0;
  bool clamped = false;
  std::string error;             // nonempty when the cell failed

  bool ok() const { return error.empty(); }
};

struct StudyResult {
  StudyConfig config;
  std::vector<double> u_points;
  std::vector<EstimateRow> rows;  // ordered by (N, replication, u)
  // Aggregates indexed [N index][component] and [N index][u index][component].
  std::vector<std::vector<double>> mise;
  std::vector<std::vector<std::vector<double>>> mse;
  std::vector<int> failures;  // failed cells per N

  /// Standardized errors of the successful LSE cells for one N (all u points).
  std::vector<double> standardized_errors(int N) const;
};

/// Runs the study; deterministic given the config regardless of `threads`.
/// Writes estimates.csv, mise.csv, mse.csv, qq.csv (LSE) and manifest.json when
/// output_dir is set.
StudyResult run_study(const StudyConfig& config);

/// Mean over replications of sum_i (est[r][i] - truth(u_i))^2 du, du = u_1 - u_0.
/// Throws DomainError for fewer than two points.
double mise(const std::vector<std::vector<double>>& estimates, std::span<const double> u,
            const std::function<double(double)>& truth);

/// Mean of (est - truth)^2.
double mse(std::span<const double> estimates, double truth);

/// Sorted sample against standard-normal quantiles at (k - 0.5)/n. Needs >= 10 samples.
std::vector<std::pair<double, double>> qq_export(std::vector<double> errors);
/// max_k |sample_k - theoretical_k|.
double qq_max_deviation(const std::vector<std::pair<double, double>>& pairs);

void write_estimates_csv(const StudyResult& result, std::ostream& out);
std::vector<EstimateRow> read_estimates_csv(std::istream& in);
void write_qq_csv(const std::vector<std::pair<double, double>>& pairs, std::ostream& out);

/// 64-bit FNV-1a of `text`, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// Library version string including the git description captured at configure time.
std::string version_string();

/// JSON manifest echoing the configuration with its hash, the version and the aggregates.
std::string manifest_json(const StudyResult& result);

}  // namespace locstat
