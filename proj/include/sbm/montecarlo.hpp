#ifndef SBM_MONTECARLO_HPP_
#define SBM_MONTECARLO_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sbm/graph_model.hpp"
#include "sbm/inference.hpp"
#include "sbm/signed_cycles.hpp"

namespace sbm {

struct ExperimentConfig {
  ModelParams model;
  bool er_null = false;  // sample G(n, p_hat) instead of the two-block model
  int trials = 1;
  std::vector<int> ks = {3};
  std::uint64_t master_seed = 0;
  // Centering: model p_hat by default; empirical density when set.
  bool plugin_centering = false;
  bool with_overlap = false;
  bool with_estimate = false;
  int estimate_k = 3;
  int threads = 1;
};

struct TrialRecord {
  int index = 0;
  std::uint64_t seed = 0;
  std::vector<CycleStat> stats;
  std::optional<double> ov_abs;
  std::optional<AbEstimate> estimate;
};

struct NormalityReport {
  double mean = 0.0;
  double variance = 0.0;
  double ks_stat = 0.0;  // vs the target normal
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  std::size_t count = 0;
};

struct MomentCheck {
  double value = 0.0;  // empirical covariance / standardized moment
  double se = 0.0;
};

// Deterministic given (config.master_seed); trial i draws from a stream
// derived from (master_seed, i), so records do not depend on execution
// order or thread count.
std::vector<TrialRecord> run_trials(const ExperimentConfig& config);

// Kolmogorov-Smirnov statistic of the samples against Normal(mu, sigma2)
// plus moment summaries. Degenerate inputs (zero variance) are reported,
// not rejected.
NormalityReport normality_check(std::span<const double> samples, double mu,
                                double sigma2);

// Empirical covariance of paired samples with its standard error.
MomentCheck cross_moment_check(std::span<const double> xs, std::span<const double> ys);

// Empirical E[(C/sqrt(2k))^4] with standard error; 3 for a Gaussian limit.
MomentCheck wick_fourth_moment_check(std::span<const double> samples, int k);

// Extract the per-trial values of the statistic for one cycle length.
std::vector<double> stat_series(const std::vector<TrialRecord>& records, int k);

struct SweepPoint {
  double c = 0.0;
  double t = 0.0;
  double rate = 0.0;  // fraction of trials exceeding the calibrated threshold
};

struct SweepResult {
  double threshold = 0.0;  // empirical (1 - alpha) null quantile
  int null_trials = 0;
  int trials = 0;
  std::vector<SweepPoint> points;
};

// Phase-diagram sweep of the spectral-edge test over signal strengths c at
// fixed (n, p_hat). The rejection threshold is the empirical (1 - alpha)
// quantile of the statistic over `trials` simulated null graphs, so the
// test has size ~alpha by construction; its power jumps across the
// singularity boundary t = 1, i.e. c = 2 (1 - p_hat).
SweepResult threshold_sweep(int n, double p_hat, const std::vector<double>& c_grid,
                            int trials, double alpha, std::uint64_t master_seed,
                            int threads = 1);

}  // namespace sbm

#endif  // SBM_MONTECARLO_HPP_
