#include "sbm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "sbm/stats.hpp"

namespace sbm {

std::vector<TrialRecord> run_trials(const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  for (int k : config.ks) {
    if (k < 3 || k > 5) {
      throw std::invalid_argument("run_trials: fast statistics need k in [3, 5]");
    }
  }
  const ModelParams& mp = config.model;
  std::vector<TrialRecord> records(config.trials);

  auto run_range = [&](int lo, int hi) {
    for (int idx = lo; idx < hi; ++idx) {
      TrialRecord rec;
      rec.index = idx;
      rec.seed = derive_seed(config.master_seed, std::uint64_t(idx));
      Rng rng(rec.seed);
      Labels sigma;
      Graph g = [&] {
        if (config.er_null) return sample_er(mp.n, mp.p_hat(), rng);
        sigma = sample_labels(mp.n, rng);
        return sample_sbm(mp, sigma, rng);
      }();

      double p_av = mp.p_hat();
      if (config.plugin_centering) {
        p_av = 2.0 * double(g.edge_count()) / (double(mp.n) * (mp.n - 1));
      }
      for (int k : config.ks) {
        double value = signed_cycle_fast(g, p_av, k);
        rec.stats.push_back(CycleStat{k, value, CycleMethod::trace, p_av});
      }
      if (config.with_overlap && !config.er_null) {
        double density = 2.0 * double(g.edge_count()) / (double(mp.n) * (mp.n - 1));
        if (density > 0.0 && density < 1.0) {
          Labels tau = spectral_labels(g, density);
          rec.ov_abs = std::abs(overlap(sigma, tau));
        } else {
          rec.ov_abs = 0.0;
        }
      }
      if (config.with_estimate) {
        rec.estimate = estimate_ab(g, config.estimate_k);
      }
      records[idx] = std::move(rec);
    }
  };

  int threads = std::max(1, std::min(config.threads, config.trials));
  if (threads == 1) {
    run_range(0, config.trials);
  } else {
    std::vector<std::thread> pool;
    int chunk = (config.trials + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      int lo = t * chunk, hi = std::min(config.trials, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return records;
}

NormalityReport normality_check(std::span<const double> samples, double mu,
                                double sigma2) {
  if (samples.empty()) throw std::invalid_argument("normality_check: no samples");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("normality_check: sigma2 must be > 0");
  NormalityReport rep;
  rep.count = samples.size();
  const double n = double(samples.size());

  double sum = 0.0;
  for (double x : samples) sum += x;
  rep.mean = sum / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : samples) {
    double d = x - rep.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  rep.variance = samples.size() > 1 ? m2 / (n - 1.0) : 0.0;
  if (m2 > 0.0) {
    double s = std::sqrt(m2 / n);
    rep.skewness = (m3 / n) / (s * s * s);
    rep.excess_kurtosis = (m4 / n) / (s * s * s * s) - 3.0;
  }

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double sd = std::sqrt(sigma2);
  double d_max = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double f = normal_cdf((sorted[i] - mu) / sd);
    d_max = std::max(d_max, std::max(f - double(i) / n, double(i + 1) / n - f));
  }
  rep.ks_stat = d_max;
  return rep;
}

MomentCheck cross_moment_check(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("cross_moment_check: need paired samples, length >= 2");
  }
  const double n = double(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double cov = 0.0, var_prod = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mx) * (ys[i] - my);
  }
  cov /= (n - 1.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double d = (xs[i] - mx) * (ys[i] - my) - cov;
    var_prod += d * d;
  }
  MomentCheck out;
  out.value = cov;
  out.se = std::sqrt(var_prod / (n - 1.0)) / std::sqrt(n);
  return out;
}

MomentCheck wick_fourth_moment_check(std::span<const double> samples, int k) {
  if (samples.size() < 2) throw std::invalid_argument("need at least 2 samples");
  if (k < 1) throw std::invalid_argument("k must be positive");
  const double n = double(samples.size());
  const double scale2 = 2.0 * k;
  double m = 0.0, s2 = 0.0;
  for (double x : samples) {
    double z = x * x / scale2;  // (C / sqrt(2k))^2
    m += z * z;
  }
  m /= n;
  for (double x : samples) {
    double z = x * x / scale2;
    double d = z * z - m;
    s2 += d * d;
  }
  MomentCheck out;
  out.value = m;
  out.se = std::sqrt(s2 / (n - 1.0)) / std::sqrt(n);
  return out;
}

namespace {

// Run fn(i) for i in [0, count) across the requested number of threads.
template <typename F>
void parallel_for(int count, int threads, F&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  int chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int lo = t * chunk, hi = std::min(count, lo + chunk);
    if (lo < hi) {
      pool.emplace_back([lo, hi, &fn] {
        for (int i = lo; i < hi; ++i) fn(i);
      });
    }
  }
  for (auto& th : pool) th.join();
}

}  // namespace

SweepResult threshold_sweep(int n, double p_hat, const std::vector<double>& c_grid,
                            int trials, double alpha, std::uint64_t master_seed,
                            int threads) {
  if (trials < 2) throw std::invalid_argument("threshold_sweep: trials must be >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("threshold_sweep: alpha must lie in (0, 1)");
  }
  if (!(p_hat > 0.0 && p_hat < 1.0)) {
    throw std::invalid_argument("threshold_sweep: p_hat must lie in (0, 1)");
  }
  SweepResult res;
  res.null_trials = trials;
  res.trials = trials;

  // Null calibration: empirical (1 - alpha) quantile over simulated nulls.
  std::vector<double> null_stats(trials);
  parallel_for(trials, threads, [&](int i) {
    Rng rng(derive_seed(master_seed, std::uint64_t(i)));
    Graph g = sample_er(n, p_hat, rng);
    null_stats[i] = spectral_edge_statistic(g, p_hat);
  });
  std::sort(null_stats.begin(), null_stats.end());
  std::size_t qi = std::min<std::size_t>(
      null_stats.size() - 1,
      std::size_t(std::ceil((1.0 - alpha) * null_stats.size())));
  res.threshold = null_stats[qi];

  for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
    double d = std::sqrt(c_grid[ci] * p_hat / (2.0 * n));
    ModelParams mp = ModelParams::from_pq(n, p_hat + d, p_hat - d);
    std::vector<char> reject(trials, 0);
    parallel_for(trials, threads, [&](int i) {
      Rng rng(derive_seed(master_seed, (ci + 1) * 1000003ULL + std::uint64_t(i)));
      Labels sigma = sample_labels(n, rng);
      Graph g = sample_sbm(mp, sigma, rng);
      reject[i] = spectral_edge_statistic(g, p_hat) > res.threshold;
    });
    int rej = 0;
    for (char r : reject) rej += r;
    res.points.push_back(SweepPoint{c_grid[ci], mp.t(), double(rej) / trials});
  }
  return res;
}

std::vector<double> stat_series(const std::vector<TrialRecord>& records, int k) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    for (const auto& st : rec.stats) {
      if (st.k == k) {
        out.push_back(st.value);
        break;
      }
    }
  }
  return out;
}

}  // namespace sbm
