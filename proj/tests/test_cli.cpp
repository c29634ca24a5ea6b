#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) {
    res.output.append(buf.data(), got);
  }
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/sbmcli_test_") + name;
}

}  // namespace

TEST_CASE("sample writes a reproducible graph triple") {
  std::string prefix = temp_path("g1");
  auto r1 = run_cli("sample --n 60 --a 12 --b 4 --seed 7 --out " + prefix);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("\"record\":\"config\"") != std::string::npos);

  std::ifstream edges(prefix + ".edges"), labels(prefix + ".labels"),
      params(prefix + ".params");
  CHECK(edges.good());
  CHECK(labels.good());
  CHECK(params.good());
  std::stringstream first;
  first << edges.rdbuf();

  std::string prefix2 = temp_path("g2");
  auto r2 = run_cli("sample --n 60 --a 12 --b 4 --seed 7 --out " + prefix2);
  CHECK(r2.exit_code == 0);
  std::ifstream edges2(prefix2 + ".edges");
  std::stringstream second;
  second << edges2.rdbuf();
  CHECK(first.str() == second.str());

  // A different seed produces a different edge set.
  std::string prefix3 = temp_path("g3");
  auto r3 = run_cli("sample --n 60 --a 12 --b 4 --seed 8 --out " + prefix3);
  CHECK(r3.exit_code == 0);
  std::ifstream edges3(prefix3 + ".edges");
  std::stringstream third;
  third << edges3.rdbuf();
  CHECK(first.str() != third.str());
}

TEST_CASE("stat on a known triangle") {
  std::string path = temp_path("tri.edges");
  std::ofstream(path) << "n=3\n0 1\n0 2\n1 2\n";
  auto r = run_cli("stat --graph " + path + " --p-av 0.5 --k 3 --method trace");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("1.1547005") != std::string::npos);
  auto rb = run_cli("stat --graph " + path + " --p-av 0.5 --k 3 --method bruteforce");
  CHECK(rb.exit_code == 0);
  CHECK(rb.output.find("1.1547005") != std::string::npos);
}

TEST_CASE("conflicting model flags are a usage error") {
  auto r = run_cli("sample --n 10 --a 5 --p 0.5 --b 2 --seed 1 --out " +
                   temp_path("x"));
  CHECK(r.exit_code == 1);
  auto r2 = run_cli("detect --n 10");  // model under-specified
  CHECK(r2.exit_code == 1);
  auto r3 = run_cli("stat --method nonsense --n 10 --p 0.5 --q 0.1");
  CHECK(r3.exit_code == 1);
}

TEST_CASE("unknown preset lists the valid ones") {
  auto r = run_cli("experiment --preset nonsense");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("threshold-sweep") != std::string::npos);
  CHECK(r.output.find("clt-null") != std::string::npos);
}

TEST_CASE("moment rows carry exact and limit values") {
  auto r = run_cli("experiment --preset second-moment --t 0.5 --n 2000");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"exact\":1.03") != std::string::npos);
  auto r2 = run_cli("moment --n 500 --t 0.25 --t 0.5");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("\"t\":0.25") != std::string::npos);
  CHECK(r2.output.find("\"t\":0.5") != std::string::npos);
}

TEST_CASE("experiment reruns are byte-identical") {
  std::string args = "experiment --preset clt-null --n 120 --phat 0.2 --trials 5 --seed 42";
  auto r1 = run_cli(args);
  auto r2 = run_cli(args);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);
}

TEST_CASE("seed env var override") {
  std::string prefix1 = temp_path("e1"), prefix2 = temp_path("e2");
  std::string base = "sample --n 40 --a 10 --b 2 --out ";
  g_cli = "SBM_SEED=123 " + g_cli;
  auto r1 = run_cli(base + prefix1);
  // Undo the wrapper for the remaining calls.
  g_cli = g_cli.substr(std::string("SBM_SEED=123 ").size());
  auto r2 = run_cli(base + prefix2 + " --seed 123");
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  std::ifstream f1(prefix1 + ".edges"), f2(prefix2 + ".edges");
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
}

TEST_CASE("detect emits a decision") {
  auto r = run_cli("detect --n 300 --a 30 --b 10 --seed 3 --k 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"decision\":\"sbm_like\"") != std::string::npos);
  auto r2 = run_cli("detect --n 300 --p 0.1 --q 0.1 --er --seed 3 --k 3");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("\"decision\":") != std::string::npos);
}

TEST_CASE("selftest passes clean and fails under fault injection") {
  auto ok = run_cli("selftest");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("PASS oracle-equivalence") != std::string::npos);
  CHECK(ok.output.find("FAIL") == std::string::npos);
  auto bad = run_cli("selftest --inject-fault");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("FAIL oracle-equivalence") != std::string::npos);
}

int main(int argc, char** argv) {
  doctest::Context ctx;
  // Last argument: path to the CLI binary under test.
  if (argc > 1 && argv[argc - 1][0] != '-') {
    g_cli = argv[argc - 1];
    --argc;
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli [doctest options] <path-to-sbmcli>\n");
    return 1;
  }
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
