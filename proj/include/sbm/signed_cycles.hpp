#ifndef SBM_SIGNED_CYCLES_HPP_
#define SBM_SIGNED_CYCLES_HPP_

#include <cstdint>

#include "sbm/graph_model.hpp"

namespace sbm {

enum class CycleMethod { bruteforce, trace };

struct CycleStat {
  int k = 0;
  double value = 0.0;
  CycleMethod method = CycleMethod::trace;
  double p_av = 0.0;
};

const char* to_string(CycleMethod m);

// x_{ij} - p_av; rejects i == j.
double centered_entry(const Graph& g, int i, int j, double p_av);

// Oracle: direct sum over all ordered tuples of k distinct vertices of the
// product of centered edge indicators around the cycle, scaled by
// (n p_av (1-p_av))^{-k/2}. Refuses when the tuple count exceeds the budget.
double signed_cycle_bruteforce(const Graph& g, double p_av, int k,
                               std::uint64_t budget = 1'000'000'000ULL);

// Same quantity through traces of the centered matrix M (zero diagonal,
// M_ij = x_ij - p_av) with closed-walk repeated-vertex corrections.
// Supported for k in {3, 4, 5}; O(n^2 m / w) bit-parallel work.
double signed_cycle_fast(const Graph& g, double p_av, int k);

// mu_k = (c / (2 (1 - p_hat)))^{k/2}; 0 when p = q.
double theoretical_mean(const ModelParams& params, int k);

// Exact finite-n variance under the matched Erdos-Renyi model:
// 2k * n(n-1)...(n-k+1) / n^k  ->  2k.
double exact_er_variance(int n, int k);

namespace detail {
// Test hook: additive fault injected into one trace-correction coefficient,
// used by the selftest mutation check. Zero in normal operation.
extern double fast_coefficient_fault;
}  // namespace detail

}  // namespace sbm

#endif  // SBM_SIGNED_CYCLES_HPP_
