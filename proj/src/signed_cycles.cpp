#include "sbm/signed_cycles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sbm/kernels.hpp"

namespace sbm {

namespace detail {
double fast_coefficient_fault = 0.0;
}

const char* to_string(CycleMethod m) {
  return m == CycleMethod::bruteforce ? "bruteforce" : "trace";
}

double centered_entry(const Graph& g, int i, int j, double p_av) {
  if (i == j) throw std::invalid_argument("centered_entry: diagonal is not defined");
  if (!(p_av > 0.0 && p_av < 1.0)) {
    throw std::invalid_argument("centered_entry: p_av must lie in (0, 1)");
  }
  return g.has_edge(i, j) ? 1.0 - p_av : -p_av;
}

namespace {

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

void check_k(int k, int n) {
  if (k < 3) throw std::invalid_argument("cycle length k must be at least 3");
  if (k > n) throw std::invalid_argument("cycle length k must not exceed n");
}

double norm_scale(int n, double p_av, int k) {
  if (!(p_av > 0.0 && p_av < 1.0)) {
    throw std::invalid_argument("p_av must lie in (0, 1)");
  }
  return std::pow(double(n) * p_av * (1.0 - p_av), -0.5 * k);
}

struct TupleEnumerator {
  const std::vector<double>& M;
  int n, k;
  std::uint64_t budget;
  std::uint64_t steps = 0;
  std::vector<char> used;
  std::vector<int> path;
  KahanSum acc;

  TupleEnumerator(const std::vector<double>& m, int n_, int k_, std::uint64_t b)
      : M(m), n(n_), k(k_), budget(b), used(n_, 0), path(k_, 0) {}

  void run() {
    for (int v = 0; v < n; ++v) {
      path[0] = v;
      used[v] = 1;
      extend(1, 1.0);
      used[v] = 0;
    }
  }

  void extend(int depth, double prod) {
    const int prev = path[depth - 1];
    if (depth == k - 1) {
      for (int v = 0; v < n; ++v) {
        if (used[v]) continue;
        step();
        acc.add(prod * M[std::size_t(prev) * n + v] * M[std::size_t(v) * n + path[0]]);
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      path[depth] = v;
      used[v] = 1;
      extend(depth + 1, prod * M[std::size_t(prev) * n + v]);
      used[v] = 0;
    }
  }

  void step() {
    if (++steps > budget) {
      throw std::runtime_error("signed_cycle_bruteforce: enumeration budget exceeded");
    }
  }
};

}  // namespace

double signed_cycle_bruteforce(const Graph& g, double p_av, int k,
                               std::uint64_t budget) {
  const int n = g.node_count();
  check_k(k, n);
  double scale = norm_scale(n, p_av, k);

  // Falling factorial pre-check; the exact tuple count.
  double tuples = 1.0;
  for (int i = 0; i < k; ++i) tuples *= double(n - i);
  if (tuples > double(budget)) {
    throw std::runtime_error("signed_cycle_bruteforce: enumeration budget exceeded");
  }

  std::vector<double> M(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) M[std::size_t(i) * n + j] = g.has_edge(i, j) ? 1.0 - p_av : -p_av;
    }
  }

  TupleEnumerator e(M, n, k, budget);
  e.run();
  return scale * e.acc.sum;
}

namespace {

// tr(M^3) from triangle and degree counts, expanding M = (A + pI) - p 11^T
// through the rank-one term.
double trace_m3(const Graph& g, double p) {
  const int n = g.node_count();
  const double m = double(g.edge_count());
  const std::size_t words = g.row_words();

  std::uint64_t codeg_over_edges = 0;
  double sum_d2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double di = g.degree(i);
    sum_d2 += di * di;
    for (int j : g.neighbors(i)) {
      if (j > i) codeg_over_edges += kernels::and_popcount(g.row(i), g.row(j), words);
    }
  }
  const double trA3 = 2.0 * double(codeg_over_edges);

  const double nn = double(n);
  const double trB3 = trA3 + 6.0 * p * m + p * p * p * nn;
  const double quad = sum_d2 + 4.0 * p * m + p * p * nn;  // 1^T B^2 1
  const double lin = 2.0 * m + p * nn;                    // 1^T B 1
  return trB3 - 3.0 * p * quad + 3.0 * p * p * nn * lin - p * p * p * nn * nn * nn;
}

struct CenteredSquare {
  int n;
  std::vector<double> W;        // M^2, dense symmetric, diag r_i
  std::vector<double> row_sum;  // sum_j W_ij including diagonal
  std::vector<double> edge_row_sum;  // sum_{j in N(i)} W_ij
  double sum_r2 = 0.0;
  double frob2 = 0.0;  // ||W||_F^2
};

CenteredSquare build_centered_square(const Graph& g, double p) {
  const int n = g.node_count();
  const std::size_t words = g.row_words();
  CenteredSquare cs;
  cs.n = n;
  cs.W.assign(std::size_t(n) * n, 0.0);
  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = g.degree(i);

  const double pp = p * p;
  const double qq = (1.0 - p) * (1.0 - p);
  const double pq = -p * (1.0 - p);
  for (int i = 0; i < n; ++i) {
    double r = deg[i] * qq + (n - 1 - deg[i]) * pp;
    cs.W[std::size_t(i) * n + i] = r;
    cs.sum_r2 += r * r;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto cd = double(kernels::and_popcount(g.row(i), g.row(j), words));
      double aij = g.has_edge(i, j) ? 1.0 : 0.0;
      double one = (deg[i] - aij - cd) + (deg[j] - aij - cd);
      double none = double(n - 2) - cd - one;
      double w = cd * qq + one * pq + none * pp;
      cs.W[std::size_t(i) * n + j] = w;
      cs.W[std::size_t(j) * n + i] = w;
    }
  }
  cs.row_sum.resize(n);
  cs.edge_row_sum.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double* row = cs.W.data() + std::size_t(i) * n;
    cs.row_sum[i] = kernels::sum(row, n);
    cs.frob2 += kernels::dot(row, row, n);
    double es = 0.0;
    for (int j : g.neighbors(i)) es += row[j];
    cs.edge_row_sum[i] = es;
  }
  return cs;
}

}  // namespace

double signed_cycle_fast(const Graph& g, double p_av, int k) {
  const int n = g.node_count();
  check_k(k, n);
  if (k > 5) {
    throw std::invalid_argument(
        "signed_cycle_fast: only k in {3,4,5} is supported; use "
        "signed_cycle_bruteforce for larger k");
  }
  const double scale = norm_scale(n, p_av, k);
  const double p = p_av;

  if (k == 3) {
    // A closed 3-walk on a zero-diagonal matrix has all vertices distinct.
    return scale * trace_m3(g, p);
  }

  CenteredSquare cs = build_centered_square(g, p);
  const double m = double(g.edge_count());
  const double nn = double(n);

  if (k == 4) {
    // Distinct tuples = tr(M^4) - 2 sum_i r_i^2 + sum_{i!=j} M_ij^4.
    const double c_single = 2.0 + detail::fast_coefficient_fault;
    double m4 = 2.0 * m * std::pow(1.0 - p, 4) + (nn * (nn - 1.0) - 2.0 * m) * std::pow(p, 4);
    double sum4 = cs.frob2 - c_single * cs.sum_r2 + m4;
    return scale * sum4;
  }

  // k == 5: tr(M^5) minus the five single-coincidence patterns plus the
  // five adjacent pattern pairs.
  double edge_w2 = 0.0;  // sum over ordered edges of (W^2)_ij
  double edge_w = 0.0;   // sum over ordered edges of W_ij
  for (int i = 0; i < n; ++i) {
    const double* wi = cs.W.data() + std::size_t(i) * n;
    for (int j : g.neighbors(i)) {
      edge_w2 += kernels::dot(wi, cs.W.data() + std::size_t(j) * n, n);
      edge_w += wi[j];
    }
  }
  double row_sum_sq = 0.0;
  for (int i = 0; i < n; ++i) row_sum_sq += cs.row_sum[i] * cs.row_sum[i];
  const double tr_m5 = edge_w2 - p * (row_sum_sq - cs.frob2);

  double corr_single = 0.0;  // sum_i r_i (M^3)_ii
  for (int i = 0; i < n; ++i) {
    double r = cs.W[std::size_t(i) * n + i];
    double diag3 = (1.0 - p) * cs.edge_row_sum[i] -
                   p * (cs.row_sum[i] - r - cs.edge_row_sum[i]);
    corr_single += r * diag3;
  }

  double off_w = 0.0;  // sum_{i != j} W_ij
  for (int i = 0; i < n; ++i) off_w += cs.row_sum[i] - cs.W[std::size_t(i) * n + i];
  const double p3 = p * p * p;
  const double pair_term =
      -p3 * off_w + (std::pow(1.0 - p, 3) + p3) * edge_w;

  const double c_single = 5.0 + detail::fast_coefficient_fault;
  double sum5 = tr_m5 - c_single * corr_single + 5.0 * pair_term;
  return scale * sum5;
}

double theoretical_mean(const ModelParams& params, int k) {
  if (k < 3) throw std::invalid_argument("cycle length k must be at least 3");
  double c = params.c();
  if (c == 0.0) return 0.0;
  return std::pow(params.t(), 0.5 * k);
}

double exact_er_variance(int n, int k) {
  check_k(k, n);
  double falling = 1.0;
  for (int i = 0; i < k; ++i) falling *= double(n - i) / double(n);
  return 2.0 * k * falling;
}

}  // namespace sbm
