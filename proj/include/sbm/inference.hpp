#ifndef SBM_INFERENCE_HPP_
#define SBM_INFERENCE_HPP_

#include <cstdint>
#include <vector>

#include "sbm/graph_model.hpp"
#include "sbm/signed_cycles.hpp"

namespace sbm {

enum class Verdict { contiguous, singular, critical };
enum class Regime { sparse, dense };
enum class Decision { er_like, sbm_like };

const char* to_string(Verdict v);
const char* to_string(Regime r);
const char* to_string(Decision d);

struct RegimeVerdict {
  double ratio = 0.0;  // c/2 in the sparse regime, c/(2(1-p_hat)) in the dense
  Verdict verdict = Verdict::contiguous;
  Regime regime = Regime::sparse;
};

// Contiguous below ratio 1, singular above, critical at 1 (within 1e-12).
// Models with p_hat <= sparse_threshold are classified with the sparse
// ratio c/2; the two ratios agree as p_hat -> 0.
RegimeVerdict classify_regime(const ModelParams& params,
                              double sparse_threshold = 0.01);

// One-sided test on an observed C_{n,k}: reject the matched Erdos-Renyi
// null when c_k > z_{1-alpha} sqrt(2k) (the planted shift is positive).
Decision detection_test(double c_k, int k, double alpha);
double detection_threshold(int k, double alpha);

struct AbEstimate {
  double a_hat = 0.0;
  double b_hat = 0.0;
  double f_hat = 0.0;
  double d_hat = 0.0;
  int k_used = 0;
};

// f_hat = (sqrt(2k) C_{n,k})^{1/k} when the statistic is positive, else 0;
// A_hat = d_hat + sqrt(d_hat) f_hat, B_hat = d_hat - sqrt(d_hat) f_hat.
// Centers by the empirical density d_hat/n (the model is assumed unknown).
AbEstimate estimate_ab(const Graph& g, int k);

// Sign pattern of a leading eigenvector of the centered adjacency matrix,
// by power iteration (tolerance 1e-8, 1000-iteration cap). Ties break to +1.
Labels spectral_labels(const Graph& g, double p_av);

// |lambda|_max of M = A - p_av(J - I), scaled by 1/sqrt(n p_av (1 - p_av)).
// Under the matched null this concentrates at the bulk edge 2; a planted
// signal with t > 1 produces an outlier at sqrt(t) + 1/sqrt(t) > 2, so the
// statistic separates the contiguous and singular regimes sharply.
double spectral_edge_statistic(const Graph& g, double p_av);

struct OverlapSummary {
  double mean_abs = 0.0;
  double sd = 0.0;
  double q10 = 0.0, q50 = 0.0, q90 = 0.0;
  std::vector<double> samples;  // per-trial |ov|, indexed by trial
};

// Repeatedly sample (labels, graph), reconstruct with spectral_labels
// (p_av = empirical density) and record |ov| against the planted labels.
OverlapSummary overlap_experiment(const ModelParams& params, int trials,
                                  std::uint64_t master_seed, int threads = 1);

}  // namespace sbm

#endif  // SBM_INFERENCE_HPP_
