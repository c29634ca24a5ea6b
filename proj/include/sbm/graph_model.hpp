#ifndef SBM_GRAPH_MODEL_HPP_
#define SBM_GRAPH_MODEL_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sbm/rng.hpp"

namespace sbm {

// Two-block model parameters. Stored canonically as (n, p, q); the dense
// quantities p_hat, d and the signal strength c and second-moment
// parameter t are derived on demand.
struct ModelParams {
  int n = 0;
  double p = 0.0;  // within-community edge probability, a/n
  double q = 0.0;  // between-community edge probability, b/n

  static ModelParams from_pq(int n, double p, double q);
  static ModelParams from_ab(int n, double a, double b);

  double p_hat() const { return 0.5 * (p + q); }
  double d() const { return 0.5 * (p - q); }
  double a() const { return n * p; }
  double b() const { return n * q; }
  // c = (a-b)^2 / (a+b) = n (p-q)^2 / (p+q)
  double c() const;
  // t = c / (2 (1 - p_hat))
  double t() const;
};

// Vector of +/-1 community assignments.
using Labels = std::vector<int>;

// Undirected simple graph with bit-packed adjacency rows (symmetric, zero
// diagonal). Immutable use after construction is thread-safe.
class Graph {
 public:
  explicit Graph(int n);

  int node_count() const { return n_; }
  std::size_t row_words() const { return words_; }
  const std::uint64_t* row(int i) const { return rows_.data() + std::size_t(i) * words_; }

  bool has_edge(int i, int j) const {
    return (row(i)[std::size_t(j) >> 6] >> (j & 63)) & 1ULL;
  }
  void add_edge(int i, int j);
  std::uint64_t edge_count() const { return m_; }
  int degree(int i) const;

  // Neighbors of i in increasing order.
  std::vector<int> neighbors(int i) const;

  Graph complement() const;

 private:
  int n_;
  std::size_t words_;
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> rows_;
};

Labels sample_labels(int n, Rng& rng);
// Exactly n/2 of each sign (n even); non-canonical, experiments only.
Labels sample_labels_balanced(int n, Rng& rng);

Graph sample_sbm(const ModelParams& params, const Labels& labels, Rng& rng);
Graph sample_er(int n, double p_hat, Rng& rng);

// (1/n) sum_{i != j} x_{ij} = 2|E|/n
double average_degree(const Graph& g);

// (1/n) (sum s_i t_i - (1/n)(sum s_i)(sum t_i)), in [-1, 1]
double overlap(const Labels& sigma, const Labels& tau);

// Serialization: edge-list text with a "n=<n>" header line, one "i j" pair
// per line, 0-indexed. Labels: "n=<n>" then one +1/-1 per line.
void save_graph(const Graph& g, std::ostream& out);
Graph load_graph(std::istream& in);
void save_labels(const Labels& labels, std::ostream& out);
Labels load_labels(std::istream& in);
void save_params(const ModelParams& params, std::ostream& out);
ModelParams load_params(std::istream& in);

}  // namespace sbm

#endif  // SBM_GRAPH_MODEL_HPP_
