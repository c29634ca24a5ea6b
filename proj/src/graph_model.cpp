#include "sbm/graph_model.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sbm {

namespace {

void check_prob(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

// Decode upper-triangle linear index t = j(j-1)/2 + i, i < j.
std::pair<std::uint64_t, std::uint64_t> decode_pair(std::uint64_t t) {
  auto j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * double(t))) / 2.0);
  while (j * (j - 1) / 2 > t) --j;
  while ((j + 1) * j / 2 <= t) ++j;
  return {t - j * (j - 1) / 2, j};
}

// Visit each index of [0, total) independently with probability p,
// by geometric skips.
template <typename F>
void sample_indices(std::uint64_t total, double p, Rng& rng, F&& visit) {
  if (p <= 0.0 || total == 0) return;
  std::uint64_t pos = 0;
  while (true) {
    std::uint64_t skip = rng.skip_geometric(p);
    if (skip >= total - pos) break;
    pos += skip;
    visit(pos);
    ++pos;
    if (pos >= total) break;
  }
}

}  // namespace

ModelParams ModelParams::from_pq(int n, double p, double q) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  check_prob(p, "p");
  check_prob(q, "q");
  if (p + q <= 0.0) throw std::invalid_argument("p + q must be positive");
  return ModelParams{n, p, q};
}

ModelParams ModelParams::from_ab(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return from_pq(n, a / n, b / n);
}

double ModelParams::c() const {
  double diff = p - q;
  return n * diff * diff / (p + q);
}

double ModelParams::t() const { return c() / (2.0 * (1.0 - p_hat())); }

Graph::Graph(int n) : n_(n), words_((std::size_t(n) + 63) / 64) {
  if (n < 1) throw std::invalid_argument("Graph: n must be positive");
  rows_.assign(std::size_t(n) * words_, 0);
}

void Graph::add_edge(int i, int j) {
  if (i == j) throw std::invalid_argument("self-loops are not allowed");
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("vertex id");
  if (has_edge(i, j)) return;
  rows_[std::size_t(i) * words_ + (std::size_t(j) >> 6)] |= 1ULL << (j & 63);
  rows_[std::size_t(j) * words_ + (std::size_t(i) >> 6)] |= 1ULL << (i & 63);
  ++m_;
}

int Graph::degree(int i) const {
  const std::uint64_t* r = row(i);
  int d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += __builtin_popcountll(r[w]);
  return d;
}

std::vector<int> Graph::neighbors(int i) const {
  std::vector<int> out;
  const std::uint64_t* r = row(i);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = r[w];
    while (bits) {
      int b = __builtin_ctzll(bits);
      out.push_back(int(w * 64) + b);
      bits &= bits - 1;
    }
  }
  return out;
}

Graph Graph::complement() const {
  Graph g(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (!has_edge(i, j)) g.add_edge(i, j);
    }
  }
  return g;
}

Labels sample_labels(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_labels: n must be positive");
  Labels sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = (rng.next_u64() & 1ULL) ? 1 : -1;
  return sigma;
}

Labels sample_labels_balanced(int n, Rng& rng) {
  if (n < 1 || n % 2 != 0) {
    throw std::invalid_argument("sample_labels_balanced: n must be positive and even");
  }
  Labels sigma(n, 1);
  // Fisher-Yates selection of the minus half.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < n / 2; ++i) {
    int j = i + int(rng.below(std::uint64_t(n - i)));
    std::swap(idx[i], idx[j]);
    sigma[idx[i]] = -1;
  }
  return sigma;
}

Graph sample_sbm(const ModelParams& params, const Labels& labels, Rng& rng) {
  if (int(labels.size()) != params.n) {
    throw std::invalid_argument("sample_sbm: labels length must equal params.n");
  }
  const int n = params.n;
  Graph g(n);
  std::vector<int> plus, minus;
  plus.reserve(n);
  for (int i = 0; i < n; ++i) (labels[i] > 0 ? plus : minus).push_back(i);

  auto within = [&](const std::vector<int>& grp) {
    std::uint64_t gsz = grp.size();
    std::uint64_t total = gsz * (gsz - 1) / 2;
    sample_indices(total, params.p, rng, [&](std::uint64_t t) {
      auto [i, j] = decode_pair(t);
      g.add_edge(grp[i], grp[j]);
    });
  };
  within(plus);
  within(minus);

  std::uint64_t cross = std::uint64_t(plus.size()) * minus.size();
  sample_indices(cross, params.q, rng, [&](std::uint64_t t) {
    g.add_edge(plus[t / minus.size()], minus[t % minus.size()]);
  });
  return g;
}

Graph sample_er(int n, double p_hat, Rng& rng) {
  check_prob(p_hat, "p_hat");
  Graph g(n);
  std::uint64_t total = std::uint64_t(n) * (n - 1) / 2;
  sample_indices(total, p_hat, rng, [&](std::uint64_t t) {
    auto [i, j] = decode_pair(t);
    g.add_edge(int(i), int(j));
  });
  return g;
}

double average_degree(const Graph& g) {
  return 2.0 * double(g.edge_count()) / g.node_count();
}

double overlap(const Labels& sigma, const Labels& tau) {
  if (sigma.size() != tau.size()) {
    throw std::invalid_argument("overlap: label vectors must have equal length");
  }
  const double n = double(sigma.size());
  double prod = 0.0, ssum = 0.0, tsum = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    prod += double(sigma[i]) * tau[i];
    ssum += sigma[i];
    tsum += tau[i];
  }
  return (prod - ssum * tsum / n) / n;
}

void save_graph(const Graph& g, std::ostream& out) {
  out << "n=" << g.node_count() << "\n";
  for (int i = 0; i < g.node_count(); ++i) {
    for (int j : g.neighbors(i)) {
      if (j > i) out << i << " " << j << "\n";
    }
  }
}

namespace {
int parse_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("n=", 0) != 0) {
    throw std::runtime_error("malformed file: expected 'n=<n>' header");
  }
  return std::stoi(line.substr(2));
}
}  // namespace

Graph load_graph(std::istream& in) {
  Graph g(parse_header(in));
  int i, j;
  while (in >> i >> j) g.add_edge(i, j);
  return g;
}

void save_labels(const Labels& labels, std::ostream& out) {
  out << "n=" << labels.size() << "\n";
  for (int s : labels) out << (s > 0 ? "+1" : "-1") << "\n";
}

Labels load_labels(std::istream& in) {
  int n = parse_header(in);
  Labels labels(n);
  for (int i = 0; i < n; ++i) {
    int v;
    if (!(in >> v) || (v != 1 && v != -1)) {
      throw std::runtime_error("malformed labels file");
    }
    labels[i] = v;
  }
  return labels;
}

void save_params(const ModelParams& params, std::ostream& out) {
  out.precision(17);
  out << "n=" << params.n << "\np=" << params.p << "\nq=" << params.q << "\n";
}

ModelParams load_params(std::istream& in) {
  int n = -1;
  double p = -1.0, q = -1.0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed params file");
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    if (key == "n") n = std::stoi(val);
    else if (key == "p") p = std::stod(val);
    else if (key == "q") q = std::stod(val);
    else throw std::runtime_error("unknown params key: " + key);
  }
  return ModelParams::from_pq(n, p, q);
}

}  // namespace sbm
