#ifndef SBM_LIKELIHOOD_HPP_
#define SBM_LIKELIHOOD_HPP_

#include "sbm/graph_model.hpp"
#include "sbm/rng.hpp"

namespace sbm {

// One of the four per-pair likelihood weights: the pair {u,v} contributes
// p/p_hat, q/p_hat, (1-p)/(1-p_hat) or (1-q)/(1-p_hat) depending on label
// agreement and edge presence.
double wuv_weight(const ModelParams& params, bool same_label, bool edge_present);

// Label-agreement profile of a pair (sigma, tau): m = #{i : sigma_i = tau_i}.
struct AgreementProfile {
  int n = 0;
  int m = 0;

  double rho() const { return (2.0 * m - n) / n; }
  // #{pairs {u,v} : sigma_u sigma_v tau_u tau_v = -1} = m (n - m)
  double s_minus() const { return double(m) * (n - m); }
  // complement within the n(n-1)/2 pairs
  double s_plus() const { return 0.5 * double(n) * (n - 1) - s_minus(); }
};

// Exact likelihood ratio Y_n = dP_n/dP'_n(G) by enumeration over all 2^n
// label assignments (log-space per assignment). Oracle; n <= 20.
double likelihood_ratio_exact(const Graph& g, const ModelParams& params);

// Exact finite-n second moment E_{P'}[Y_n^2]
//   = 2^{-n} sum_m binom(n,m) (1+t/n)^{S+(m)} (1-t/n)^{S-(m)},
// evaluated in log-space. Requires 0 <= t < n.
double exact_second_moment(int n, double t);

// exp(-t/2 - t^2/4) / sqrt(1-t), the n -> infinity limit; requires t < 1.
double limit_second_moment(double t);

// One draw of the truncated limit variable
//   W^(m) = exp( sum_{i=3}^{m_trunc} (2 t^{i/2} Z_i - t^i) / (4i) ),
// Z_i independent N(0, 2i).
double w_truncated_sample(double t, int m_trunc, Rng& rng);

// Deterministic E[(W^(m))^2] = exp( sum_{i=3}^{m_trunc} t^i / (2i) ).
double w_second_moment_truncated(double t, int m_trunc);

// Smallest m >= 3 with t^m/(2m) below the tail tolerance.
int default_truncation(double t, double tol = 1e-12);

}  // namespace sbm

#endif  // SBM_LIKELIHOOD_HPP_
