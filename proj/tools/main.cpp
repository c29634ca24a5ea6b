#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbm/graph_model.hpp"
#include "sbm/inference.hpp"
#include "sbm/kernels.hpp"
#include "sbm/likelihood.hpp"
#include "sbm/montecarlo.hpp"
#include "sbm/signed_cycles.hpp"
#include "sbm/stats.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ModelFlags {
  int n = 0;
  double a = -1.0, b = -1.0;
  double p = -1.0, q = -1.0;

  void add_to(CLI::App* cmd, bool required_n = true) {
    auto* n_opt = cmd->add_option("--n", n, "number of nodes");
    if (required_n) n_opt->required();
    auto* a_opt = cmd->add_option("--a", a, "within-community mean degree a = n p");
    auto* b_opt = cmd->add_option("--b", b, "between-community mean degree b = n q");
    auto* p_opt = cmd->add_option("--p", p, "within-community edge probability");
    auto* q_opt = cmd->add_option("--q", q, "between-community edge probability");
    a_opt->excludes(p_opt);
    p_opt->excludes(a_opt);
    b_opt->excludes(q_opt);
    q_opt->excludes(b_opt);
  }

  sbm::ModelParams resolve() const {
    if (a >= 0.0 || b >= 0.0) {
      if (a < 0.0 || b < 0.0) {
        throw CLI::ValidationError("--a and --b must be given together");
      }
      return sbm::ModelParams::from_ab(n, a, b);
    }
    if (p < 0.0 || q < 0.0) {
      throw CLI::ValidationError("specify the model as --a/--b or --p/--q");
    }
    return sbm::ModelParams::from_pq(n, p, q);
  }
};

json params_json(const sbm::ModelParams& mp) {
  return json{{"n", mp.n},       {"p", mp.p},          {"q", mp.q},
              {"a", mp.a()},     {"b", mp.b()},        {"p_hat", mp.p_hat()},
              {"c", mp.c()},     {"t", mp.t()}};
}

void echo_config(std::ostream& out, const std::string& command, const json& resolved) {
  json line{{"record", "config"},
            {"command", command},
            {"version", kVersion},
            {"kernel_backend", sbm::kernels::backend_name()}};
  line.update(resolved);
  out << line.dump() << "\n";
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw CLI::ValidationError("cannot open output file: " + path);
    stream = &file;
  }
  std::ostream& out() { return *stream; }
};

// ---------------------------------------------------------------------------
// sample

int cmd_sample(const ModelFlags& mf, std::uint64_t seed, const std::string& out_prefix,
               bool balanced) {
  sbm::ModelParams mp = mf.resolve();
  sbm::Rng rng(seed);
  sbm::Labels sigma = balanced ? sbm::sample_labels_balanced(mp.n, rng)
                               : sbm::sample_labels(mp.n, rng);
  sbm::Graph g = sbm::sample_sbm(mp, sigma, rng);

  std::ofstream ef(out_prefix + ".edges");
  std::ofstream lf(out_prefix + ".labels");
  std::ofstream pf(out_prefix + ".params");
  if (!ef || !lf || !pf) {
    std::cerr << "cannot write output files with prefix " << out_prefix << "\n";
    return 1;
  }
  sbm::save_graph(g, ef);
  sbm::save_labels(sigma, lf);
  sbm::save_params(mp, pf);

  echo_config(std::cout, "sample",
              json{{"model", params_json(mp)},
                   {"seed", seed},
                   {"balanced", balanced},
                   {"out_prefix", out_prefix},
                   {"edges", g.edge_count()}});
  return 0;
}

// ---------------------------------------------------------------------------
// stat

int cmd_stat(const std::string& graph_path, const ModelFlags& mf, bool er,
             std::uint64_t seed, std::vector<int> ks, const std::string& method,
             double p_av_flag, std::uint64_t budget, const std::string& out_path) {
  OutputTarget out;
  out.open(out_path);

  std::unique_ptr<sbm::Graph> g;
  double p_av = p_av_flag;
  int n = 0;
  if (!graph_path.empty()) {
    std::ifstream in(graph_path);
    if (!in) throw CLI::ValidationError("cannot open graph file: " + graph_path);
    g = std::make_unique<sbm::Graph>(sbm::load_graph(in));
    n = g->node_count();
    if (p_av < 0.0) {
      p_av = 2.0 * double(g->edge_count()) / (double(n) * (n - 1));
    }
  } else {
    sbm::ModelParams mp = mf.resolve();
    sbm::Rng rng(seed);
    if (er) {
      g = std::make_unique<sbm::Graph>(sbm::sample_er(mp.n, mp.p_hat(), rng));
    } else {
      sbm::Labels sigma = sbm::sample_labels(mp.n, rng);
      g = std::make_unique<sbm::Graph>(sbm::sample_sbm(mp, sigma, rng));
    }
    n = mp.n;
    if (p_av < 0.0) p_av = mp.p_hat();
  }

  echo_config(out.out(), "stat",
              json{{"n", n}, {"p_av", p_av}, {"method", method}, {"seed", seed},
                   {"ks", ks}, {"graph", graph_path}});
  for (int k : ks) {
    double value = method == "bruteforce"
                       ? sbm::signed_cycle_bruteforce(*g, p_av, k, budget)
                       : sbm::signed_cycle_fast(*g, p_av, k);
    out.out() << json{{"n", n},       {"k", k},           {"p_av", p_av},
                      {"method", method}, {"value", value}, {"seed", seed}}
                     .dump()
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// moment

int cmd_moment(int n, const std::vector<double>& ts, const std::string& out_path) {
  OutputTarget out;
  out.open(out_path);
  echo_config(out.out(), "moment", json{{"n", n}, {"ts", ts}});
  for (double t : ts) {
    double exact = sbm::exact_second_moment(n, t);
    double limit = t < 1.0 ? sbm::limit_second_moment(t)
                           : std::numeric_limits<double>::quiet_NaN();
    out.out() << json{{"n", n},
                      {"t", t},
                      {"exact", exact},
                      {"limit", limit},
                      {"abs_err", std::abs(exact - limit)}}
                     .dump()
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// detect

int cmd_detect(const ModelFlags& mf, bool er, std::uint64_t seed, int k,
               double alpha, int trials, const std::string& out_path) {
  OutputTarget out;
  out.open(out_path);
  sbm::ModelParams mp = mf.resolve();
  echo_config(out.out(), "detect",
              json{{"model", params_json(mp)}, {"er_null", er}, {"seed", seed},
                   {"k", k}, {"alpha", alpha}, {"trials", trials},
                   {"threshold", sbm::detection_threshold(k, alpha)}});
  sbm::ExperimentConfig cfg;
  cfg.model = mp;
  cfg.er_null = er;
  cfg.trials = trials;
  cfg.ks = {k};
  cfg.master_seed = seed;
  for (const auto& rec : sbm::run_trials(cfg)) {
    double stat = rec.stats.front().value;
    out.out() << json{{"seed", rec.seed},
                      {"n", mp.n},
                      {"a", mp.a()},
                      {"b", mp.b()},
                      {"k", k},
                      {"stat", stat},
                      {"decision", to_string(sbm::detection_test(stat, k, alpha))}}
                     .dump()
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// estimate

int cmd_estimate(const ModelFlags& mf, std::uint64_t seed, int k, int trials,
                 const std::string& out_path) {
  OutputTarget out;
  out.open(out_path);
  sbm::ModelParams mp = mf.resolve();
  echo_config(out.out(), "estimate",
              json{{"model", params_json(mp)}, {"seed", seed}, {"k", k},
                   {"trials", trials}});
  sbm::ExperimentConfig cfg;
  cfg.model = mp;
  cfg.trials = trials;
  cfg.ks = {};
  cfg.master_seed = seed;
  cfg.with_estimate = true;
  cfg.estimate_k = k;
  for (const auto& rec : sbm::run_trials(cfg)) {
    const auto& est = *rec.estimate;
    out.out() << json{{"seed", rec.seed}, {"n", mp.n},         {"k", k},
                      {"a_hat", est.a_hat}, {"b_hat", est.b_hat},
                      {"f_hat", est.f_hat}, {"d_hat", est.d_hat}}
                     .dump()
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// recon

int cmd_recon(const ModelFlags& mf, std::uint64_t seed, int trials, int threads,
              const std::string& out_path) {
  OutputTarget out;
  out.open(out_path);
  sbm::ModelParams mp = mf.resolve();
  echo_config(out.out(), "recon",
              json{{"model", params_json(mp)}, {"seed", seed}, {"trials", trials},
                   {"threads", threads}});
  sbm::OverlapSummary s = sbm::overlap_experiment(mp, trials, seed, threads);
  for (int i = 0; i < trials; ++i) {
    out.out() << json{{"seed", sbm::derive_seed(seed, i)},
                      {"n", mp.n},
                      {"a", mp.a()},
                      {"b", mp.b()},
                      {"ov_abs", s.samples[i]}}
                     .dump()
              << "\n";
  }
  out.out() << json{{"record", "summary"}, {"mean_abs_ov", s.mean_abs},
                    {"sd", s.sd},          {"q10", s.q10},
                    {"q50", s.q50},        {"q90", s.q90}}
                   .dump()
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// experiment presets

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  if (path.empty()) return;
  std::ofstream f(path);
  f.precision(17);
  for (std::size_t i = 0; i < header.size(); ++i) {
    f << header[i] << (i + 1 < header.size() ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      f << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
  }
}

sbm::ModelParams model_from_c(int n, double c, double p_hat) {
  // c = 2 n d^2 / p_hat  =>  d = sqrt(c p_hat / (2n))
  double d = std::sqrt(c * p_hat / (2.0 * n));
  return sbm::ModelParams::from_pq(n, p_hat + d, p_hat - d);
}

int preset_clt_null(int n, double p_hat, int k, int trials, std::uint64_t seed,
                    int threads, OutputTarget& out, const std::string& csv) {
  sbm::ExperimentConfig cfg;
  cfg.model = sbm::ModelParams::from_pq(n, p_hat, p_hat);
  cfg.er_null = true;
  cfg.trials = trials;
  cfg.ks = {k};
  cfg.master_seed = seed;
  cfg.threads = threads;
  auto records = sbm::run_trials(cfg);
  std::vector<std::vector<double>> rows;
  for (const auto& rec : records) {
    double v = rec.stats.front().value;
    out.out() << json{{"trial", rec.index}, {"seed", rec.seed}, {"k", k}, {"stat", v}}
                     .dump()
              << "\n";
    rows.push_back({double(rec.index), v});
  }
  auto series = sbm::stat_series(records, k);
  auto rep = sbm::normality_check(series, 0.0, 2.0 * k);
  out.out() << json{{"record", "summary"},
                    {"target_mean", 0.0},
                    {"target_variance", 2.0 * k},
                    {"mean", rep.mean},
                    {"variance", rep.variance},
                    {"ks_stat", rep.ks_stat},
                    {"skewness", rep.skewness},
                    {"excess_kurtosis", rep.excess_kurtosis}}
                   .dump()
            << "\n";
  write_csv(csv, {"trial", "stat"}, rows);
  return 0;
}

int preset_clt_shift(int n, double p_hat, double c, int k, int trials,
                     std::uint64_t seed, int threads, OutputTarget& out,
                     const std::string& csv) {
  sbm::ExperimentConfig cfg;
  cfg.model = model_from_c(n, c, p_hat);
  cfg.trials = trials;
  cfg.ks = {k};
  cfg.master_seed = seed;
  cfg.threads = threads;
  auto records = sbm::run_trials(cfg);
  std::vector<std::vector<double>> rows;
  for (const auto& rec : records) {
    double v = rec.stats.front().value;
    out.out() << json{{"trial", rec.index}, {"seed", rec.seed}, {"k", k}, {"stat", v}}
                     .dump()
              << "\n";
    rows.push_back({double(rec.index), v});
  }
  double mu = sbm::theoretical_mean(cfg.model, k);
  auto series = sbm::stat_series(records, k);
  auto rep = sbm::normality_check(series, mu, 2.0 * k);
  out.out() << json{{"record", "summary"},
                    {"target_mean", mu},
                    {"target_variance", 2.0 * k},
                    {"mean", rep.mean},
                    {"variance", rep.variance},
                    {"ks_stat", rep.ks_stat}}
                   .dump()
            << "\n";
  write_csv(csv, {"trial", "stat"}, rows);
  return 0;
}

int preset_second_moment(int n, double t, OutputTarget& out, const std::string& csv) {
  double exact = sbm::exact_second_moment(n, t);
  double limit = sbm::limit_second_moment(t);
  out.out() << json{{"n", n},
                    {"t", t},
                    {"exact", exact},
                    {"limit", limit},
                    {"abs_err", std::abs(exact - limit)}}
                   .dump()
            << "\n";
  write_csv(csv, {"n", "t", "exact", "limit"}, {{double(n), t, exact, limit}});
  return 0;
}

int preset_threshold_sweep(int n, double p_hat, int trials, double alpha,
                           std::vector<double> c_grid, std::uint64_t seed,
                           int threads, OutputTarget& out, const std::string& csv) {
  if (c_grid.empty()) c_grid = {0.5, 1.0, 1.5, 2.5, 4.0, 8.0};
  auto sweep = sbm::threshold_sweep(n, p_hat, c_grid, trials, alpha, seed, threads);
  std::vector<std::vector<double>> rows;
  for (const auto& pt : sweep.points) {
    out.out() << json{{"c", pt.c},
                      {"t", pt.t},
                      {"rejection_rate", pt.rate},
                      {"trials", trials},
                      {"threshold", sweep.threshold}}
                     .dump()
              << "\n";
    rows.push_back({pt.c, pt.t, pt.rate});
  }
  out.out() << json{{"record", "summary"},
                    {"threshold", sweep.threshold},
                    {"null_trials", sweep.null_trials},
                    {"crossing", 2.0 * (1.0 - p_hat)}}
                   .dump()
            << "\n";
  write_csv(csv, {"c", "t", "rejection_rate"}, rows);
  return 0;
}

int preset_estimator(int n, double a, double b, int k, int trials,
                     std::uint64_t seed, int threads, OutputTarget& out,
                     const std::string& csv) {
  sbm::ExperimentConfig cfg;
  cfg.model = sbm::ModelParams::from_ab(n, a, b);
  cfg.trials = trials;
  cfg.ks = {};
  cfg.master_seed = seed;
  cfg.with_estimate = true;
  cfg.estimate_k = k;
  cfg.threads = threads;
  auto records = sbm::run_trials(cfg);
  std::vector<std::vector<double>> rows;
  std::vector<double> err_a, err_b;
  for (const auto& rec : records) {
    const auto& est = *rec.estimate;
    out.out() << json{{"trial", rec.index}, {"seed", rec.seed},
                      {"a_hat", est.a_hat},  {"b_hat", est.b_hat},
                      {"f_hat", est.f_hat},  {"d_hat", est.d_hat}}
                     .dump()
              << "\n";
    rows.push_back({double(rec.index), est.a_hat, est.b_hat});
    err_a.push_back(std::abs(est.a_hat - a) / (a - b));
    err_b.push_back(std::abs(est.b_hat - b) / (a - b));
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  out.out() << json{{"record", "summary"},
                    {"median_rel_err_a", median(err_a)},
                    {"median_rel_err_b", median(err_b)}}
                   .dump()
            << "\n";
  write_csv(csv, {"trial", "a_hat", "b_hat"}, rows);
  return 0;
}

int preset_overlap(int n, double a, double b, int trials, std::uint64_t seed,
                   int threads, OutputTarget& out, const std::string& csv) {
  sbm::ModelParams mp = sbm::ModelParams::from_ab(n, a, b);
  auto s = sbm::overlap_experiment(mp, trials, seed, threads);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < trials; ++i) {
    out.out() << json{{"trial", i}, {"ov_abs", s.samples[i]}}.dump() << "\n";
    rows.push_back({double(i), s.samples[i]});
  }
  out.out() << json{{"record", "summary"}, {"mean_abs_ov", s.mean_abs},
                    {"sd", s.sd},          {"q50", s.q50}}
                   .dump()
            << "\n";
  write_csv(csv, {"trial", "ov_abs"}, rows);
  return 0;
}

// ---------------------------------------------------------------------------
// selftest

struct SelfTest {
  bool all_ok = true;
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) all_ok = false;
  }
};

int cmd_selftest(bool inject_fault) {
  if (inject_fault) sbm::detail::fast_coefficient_fault = 0.25;
  SelfTest st;

  {  // fast vs bruteforce on random graphs
    bool ok = true;
    std::string detail;
    for (std::uint64_t s = 0; s < 10 && ok; ++s) {
      sbm::Rng rng(1000 + s);
      sbm::Graph g = sbm::sample_er(12, 0.4, rng);
      for (int k = 3; k <= 5; ++k) {
        double fast = sbm::signed_cycle_fast(g, 0.4, k);
        double brute = sbm::signed_cycle_bruteforce(g, 0.4, k);
        double rel = std::abs(fast - brute) / std::max(1.0, std::abs(brute));
        if (rel > 1e-9) {
          ok = false;
          detail = "k=" + std::to_string(k) + " rel=" + std::to_string(rel);
          break;
        }
      }
    }
    st.check("oracle-equivalence", ok, detail);
  }

  {  // exhaustive null mean/variance on n=4, k=3, ER(0.3)
    const int n = 4;
    const double p = 0.3;
    double mean = 0.0, second = 0.0;
    for (unsigned mask = 0; mask < 64; ++mask) {
      sbm::Graph g(n);
      int bit = 0, edges = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++bit) {
          if (mask >> bit & 1) {
            g.add_edge(i, j);
            ++edges;
          }
        }
      }
      double w = std::pow(p, edges) * std::pow(1.0 - p, 6 - edges);
      double v = sbm::signed_cycle_bruteforce(g, p, 3);
      mean += w * v;
      second += w * v * v;
    }
    bool mean_ok = std::abs(mean) < 1e-12;
    bool var_ok = std::abs(second - sbm::exact_er_variance(4, 3)) < 1e-12;
    st.check("exhaustive-null-mean", mean_ok);
    st.check("exhaustive-null-variance", var_ok);
  }

  {  // S+ + S- identity and rho closed forms
    bool ok = true;
    for (int n = 1; n <= 60 && ok; ++n) {
      for (int m = 0; m <= n; ++m) {
        sbm::AgreementProfile prof{n, m};
        double rho = prof.rho();
        double splus_rho = (1.0 + rho * rho) * n * n / 4.0 - n / 2.0;
        double sminus_rho = (1.0 - rho * rho) * n * n / 4.0;
        if (std::abs(prof.s_plus() + prof.s_minus() - 0.5 * n * (n - 1)) > 1e-9 ||
            std::abs(prof.s_plus() - splus_rho) > 1e-7 ||
            std::abs(prof.s_minus() - sminus_rho) > 1e-7) {
          ok = false;
          break;
        }
      }
    }
    st.check("agreement-profile-identities", ok);
  }

  {  // E_{P'}[Y_4] = 1 by exhaustive enumeration
    auto mp = sbm::ModelParams::from_pq(4, 0.5, 0.2);
    const double ph = mp.p_hat();
    double mean = 0.0;
    for (unsigned mask = 0; mask < 64; ++mask) {
      sbm::Graph g(4);
      int bit = 0, edges = 0;
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j, ++bit) {
          if (mask >> bit & 1) {
            g.add_edge(i, j);
            ++edges;
          }
        }
      }
      mean += std::pow(ph, edges) * std::pow(1.0 - ph, 6 - edges) *
              sbm::likelihood_ratio_exact(g, mp);
    }
    st.check("exhaustive-likelihood-mean", std::abs(mean - 1.0) < 1e-12);
  }

  {  // second-moment sum vs direct double sum over (sigma, tau) at n=6
    const int n = 6;
    const double t = 0.5;
    double direct = 0.0;
    for (unsigned s = 0; s < (1u << n); ++s) {
      for (unsigned u = 0; u < (1u << n); ++u) {
        int agree = n - __builtin_popcount(s ^ u);
        sbm::AgreementProfile prof{n, agree};
        direct += std::pow(1.0 + t / n, prof.s_plus()) *
                  std::pow(1.0 - t / n, prof.s_minus());
      }
    }
    direct /= std::pow(2.0, 2 * n);
    st.check("second-moment-double-sum",
             std::abs(direct - sbm::exact_second_moment(n, t)) < 1e-12);
  }

  return st.all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed-cycle statistics for two-block random graph models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::uint64_t seed = 0;
  int trials = 1, k = 3, threads = 1, n = 0;
  double alpha = 0.05, t_param = 0.5, p_hat = 0.1, c_param = 1.0;
  double a = 24.0, b = 8.0;
  std::string out_path, csv_path, out_prefix, graph_path, method = "trace", preset;
  std::vector<int> ks{3};
  std::vector<double> ts, c_grid;
  std::uint64_t budget = 1'000'000'000ULL;
  double p_av = -1.0;
  bool er = false, balanced = false, inject_fault = false;

  ModelFlags sample_mf, stat_mf, detect_mf, estimate_mf, recon_mf;

  auto* sample = app.add_subcommand("sample", "sample a labeled graph and write it");
  sample_mf.add_to(sample);
  sample->add_option("--seed", seed)->envname("SBM_SEED");
  sample->add_option("--out", out_prefix, "output file prefix")->required();
  sample->add_flag("--balanced", balanced, "exactly balanced labels (non-canonical)");

  auto* stat = app.add_subcommand("stat", "signed-cycle statistics of a graph");
  stat_mf.add_to(stat, false);
  stat->add_option("--graph", graph_path, "edge-list file (otherwise sample a graph)");
  stat->add_flag("--er", er, "sample the matched Erdos-Renyi null");
  stat->add_option("--seed", seed)->envname("SBM_SEED");
  stat->add_option("--k", ks, "cycle lengths");
  stat->add_option("--method", method)->check(CLI::IsMember({"trace", "bruteforce"}));
  stat->add_option("--p-av", p_av, "centering probability (default: model p_hat)");
  stat->add_option("--budget", budget, "bruteforce tuple budget");
  stat->add_option("--out", out_path, "JSON-lines output file (default stdout)");

  auto* moment = app.add_subcommand("moment", "exact vs limiting second moment");
  moment->add_option("--n", n)->required();
  moment->add_option("--t", ts, "t values")->required();
  moment->add_option("--out", out_path);

  auto* detect = app.add_subcommand("detect", "signed-cycle detection test");
  detect_mf.add_to(detect);
  detect->add_flag("--er", er, "sample under the null");
  detect->add_option("--seed", seed)->envname("SBM_SEED");
  detect->add_option("--k", k);
  detect->add_option("--alpha", alpha);
  detect->add_option("--trials", trials);
  detect->add_option("--out", out_path);

  auto* estimate = app.add_subcommand("estimate", "estimate (a, b) from samples");
  estimate_mf.add_to(estimate);
  estimate->add_option("--seed", seed)->envname("SBM_SEED");
  estimate->add_option("--k", k);
  estimate->add_option("--trials", trials);
  estimate->add_option("--out", out_path);

  auto* recon = app.add_subcommand("recon", "spectral reconstruction overlap");
  recon_mf.add_to(recon);
  recon->add_option("--seed", seed)->envname("SBM_SEED");
  recon->add_option("--trials", trials);
  recon->add_option("--threads", threads);
  recon->add_option("--out", out_path);

  auto* experiment = app.add_subcommand("experiment", "preset experiment suites");
  experiment->add_option("--preset", preset)->required();
  experiment->add_option("--n", n);
  experiment->add_option("--t", t_param);
  experiment->add_option("--phat", p_hat);
  experiment->add_option("--c", c_param);
  experiment->add_option("--c-grid", c_grid);
  experiment->add_option("--a", a);
  experiment->add_option("--b", b);
  experiment->add_option("--k", k);
  experiment->add_option("--trials", trials);
  experiment->add_option("--alpha", alpha);
  experiment->add_option("--seed", seed)->envname("SBM_SEED");
  experiment->add_option("--threads", threads);
  experiment->add_option("--out", out_path);
  experiment->add_option("--csv", csv_path);

  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
  selftest->add_flag("--inject-fault", inject_fault,
                     "perturb a fast-cycle coefficient (diagnostic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sample->parsed()) return cmd_sample(sample_mf, seed, out_prefix, balanced);
    if (stat->parsed())
      return cmd_stat(graph_path, stat_mf, er, seed, ks, method, p_av, budget, out_path);
    if (moment->parsed()) return cmd_moment(n, ts, out_path);
    if (detect->parsed())
      return cmd_detect(detect_mf, er, seed, k, alpha, trials, out_path);
    if (estimate->parsed())
      return cmd_estimate(estimate_mf, seed, k, trials, out_path);
    if (recon->parsed()) return cmd_recon(recon_mf, seed, trials, threads, out_path);
    if (selftest->parsed()) return cmd_selftest(inject_fault);
    if (experiment->parsed()) {
      OutputTarget out;
      out.open(out_path);
      json resolved{{"preset", preset}, {"seed", seed}, {"trials", trials},
                    {"threads", threads}};
      echo_config(out.out(), "experiment", resolved);
      if (preset == "clt-null") {
        if (n == 0) n = 500;
        return preset_clt_null(n, p_hat, k, trials, seed, threads, out, csv_path);
      }
      if (preset == "clt-shift") {
        if (n == 0) n = 500;
        return preset_clt_shift(n, p_hat, c_param, k, trials, seed, threads, out,
                                csv_path);
      }
      if (preset == "second-moment") {
        if (n == 0) n = 2000;
        return preset_second_moment(n, t_param, out, csv_path);
      }
      if (preset == "threshold-sweep") {
        if (n == 0) n = 2000;
        return preset_threshold_sweep(n, p_hat, trials, alpha, c_grid, seed,
                                      threads, out, csv_path);
      }
      if (preset == "estimator") {
        if (n == 0) n = 3000;
        return preset_estimator(n, a, b, k, trials, seed, threads, out, csv_path);
      }
      if (preset == "overlap") {
        if (n == 0) n = 2000;
        return preset_overlap(n, a, b, trials, seed, threads, out, csv_path);
      }
      std::cerr << "unknown preset '" << preset
                << "'; valid presets: clt-null, clt-shift, second-moment, "
                   "threshold-sweep, estimator, overlap\n";
      return 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
