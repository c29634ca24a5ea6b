#include "sbm/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sbm {

double wuv_weight(const ModelParams& params, bool same_label, bool edge_present) {
  const double ph = params.p_hat();
  if (!(ph > 0.0 && ph < 1.0)) {
    throw std::invalid_argument("wuv_weight: p_hat must lie in (0, 1)");
  }
  double e = same_label ? params.p : params.q;
  return edge_present ? e / ph : (1.0 - e) / (1.0 - ph);
}

namespace {

double log_sum_exp(const std::vector<double>& logs) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : logs) mx = std::max(mx, v);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double v : logs) s += std::exp(v - mx);
  return mx + std::log(s);
}

}  // namespace

double likelihood_ratio_exact(const Graph& g, const ModelParams& params) {
  const int n = g.node_count();
  if (n != params.n) throw std::invalid_argument("graph / params size mismatch");
  if (n > 20) {
    throw std::invalid_argument(
        "likelihood_ratio_exact enumerates 2^n labelings; n must be <= 20");
  }
  if (params.p == params.q) return 1.0;  // every weight collapses to 1
  const double ph = params.p_hat();
  if (!(ph > 0.0 && ph < 1.0)) {
    throw std::invalid_argument("likelihood_ratio_exact: p_hat must lie in (0, 1)");
  }

  struct PairInfo {
    std::uint32_t mask_u, mask_v;
    bool edge;
  };
  std::vector<PairInfo> pairs;
  pairs.reserve(std::size_t(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      pairs.push_back({1u << u, 1u << v, g.has_edge(u, v)});
    }
  }

  // log of the four weights; -inf marks an impossible configuration.
  auto safe_log = [](double x) {
    return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
  };
  const double lw_same_e = safe_log(params.p / ph);
  const double lw_diff_e = safe_log(params.q / ph);
  const double lw_same_a = safe_log((1.0 - params.p) / (1.0 - ph));
  const double lw_diff_a = safe_log((1.0 - params.q) / (1.0 - ph));

  std::vector<double> logs;
  logs.reserve(std::size_t(1) << n);
  for (std::uint32_t sigma = 0; sigma < (1u << n); ++sigma) {
    int same_e = 0, same_a = 0, diff_e = 0, diff_a = 0;
    for (const PairInfo& pr : pairs) {
      bool same = ((sigma & pr.mask_u) != 0) == ((sigma & pr.mask_v) != 0);
      if (same) {
        (pr.edge ? same_e : same_a)++;
      } else {
        (pr.edge ? diff_e : diff_a)++;
      }
    }
    double l = 0.0;
    if (same_e) l += same_e * lw_same_e;
    if (same_a) l += same_a * lw_same_a;
    if (diff_e) l += diff_e * lw_diff_e;
    if (diff_a) l += diff_a * lw_diff_a;
    logs.push_back(l);
  }
  return std::exp(log_sum_exp(logs) - n * std::log(2.0));
}

double exact_second_moment(int n, double t) {
  if (n < 1) throw std::invalid_argument("exact_second_moment: n must be positive");
  if (!(t >= 0.0 && t < double(n))) {
    throw std::invalid_argument("exact_second_moment requires 0 <= t < n");
  }
  const double lp = std::log1p(t / n);
  const double lm = std::log1p(-t / n);
  std::vector<double> logs;
  logs.reserve(n + 1);
  for (int m = 0; m <= n; ++m) {
    AgreementProfile prof{n, m};
    double lbinom = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
    logs.push_back(lbinom - n * std::log(2.0) + prof.s_plus() * lp + prof.s_minus() * lm);
  }
  return std::exp(log_sum_exp(logs));
}

double limit_second_moment(double t) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw std::invalid_argument("limit_second_moment requires 0 <= t < 1");
  }
  return std::exp(-0.5 * t - 0.25 * t * t) / std::sqrt(1.0 - t);
}

double w_truncated_sample(double t, int m_trunc, Rng& rng) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw std::invalid_argument("w_truncated_sample requires 0 <= t < 1");
  }
  if (m_trunc < 3) throw std::invalid_argument("truncation index must be >= 3");
  double expo = 0.0;
  for (int i = 3; i <= m_trunc; ++i) {
    double z = rng.normal(0.0, std::sqrt(2.0 * i));
    expo += (2.0 * std::pow(t, 0.5 * i) * z - std::pow(t, i)) / (4.0 * i);
  }
  return std::exp(expo);
}

double w_second_moment_truncated(double t, int m_trunc) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw std::invalid_argument("w_second_moment_truncated requires 0 <= t < 1");
  }
  if (m_trunc < 3) throw std::invalid_argument("truncation index must be >= 3");
  double s = 0.0;
  for (int i = m_trunc; i >= 3; --i) s += std::pow(t, i) / (2.0 * i);
  return std::exp(s);
}

int default_truncation(double t, double tol) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw std::invalid_argument("default_truncation requires 0 <= t < 1");
  }
  int m = 3;
  while (std::pow(t, m) / (2.0 * m) >= tol && m < 100000) ++m;
  return m;
}

}  // namespace sbm
