#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "wmvipd/dataio.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string out_file = "/tmp/wmvipd_cli_test_out.txt";
  const std::string cmd = std::string(WMVIPD_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream f(out_file);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

std::string data_arg() { return "--data " + oracles::dataset_path(); }

}  // namespace

TEST_CASE("cli: missing data file exits 1") {
  auto r = run_cli("run --experiment logistic --algo ncpdhg --data /nonexistent/file");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("cli: params prints the selection without solving") {
  auto r = run_cli("params --experiment logistic --algo ncpdhg " + data_arg() + " --expect-pyrim");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("gamma_x=0.024") != std::string::npos);
  CHECK(r.out.find("gamma_y=0.014") != std::string::npos);
  CHECK(r.out.find("op_norm=37.6") != std::string::npos);

  auto r2 = run_cli("params --experiment least-squares --algo ncspdhg --rho 0 " + data_arg());
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("gamma_x=0.26") != std::string::npos);
  CHECK(r2.out.find("theta=101") != std::string::npos);
}

TEST_CASE("cli: infeasible rho exits 1 with the inequality") {
  auto r = run_cli("params --experiment perceptron --algo ncpdhg --rho -1.0 " + data_arg());
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("infeasible rho") != std::string::npos);
}

TEST_CASE("cli: run reports MaxIterReached as exit 3") {
  auto r = run_cli("run --experiment logistic --algo ncpdhg --max-iter 10 " + data_arg());
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("status=MaxIterReached") != std::string::npos);
}

TEST_CASE("cli: converged least-squares run exits 0 and writes a readable trace") {
  const std::string trace_path = "/tmp/wmvipd_cli_trace.csv";
  auto r = run_cli("run --experiment least-squares --algo ncspdhg --rho 0 --kkt-every 100 --max-iter 2000000 --out " + trace_path + " " + data_arg());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("status=Converged") != std::string::npos);

  std::ifstream f(trace_path);
  REQUIRE(f.good());
  wmvipd::Trace t = wmvipd::read_trace_csv(f);
  CHECK(t.status == wmvipd::RunStatus::Converged);
  CHECK(t.records.back().kkt <= 1e-7);
  bool has_gamma = false;
  for (auto& [k, v] : t.metadata)
    if (k == "gamma_x") has_gamma = true;
  CHECK(has_gamma);
}

TEST_CASE("cli: saga is rejected outside least-squares") {
  auto r = run_cli("run --experiment logistic --algo saga " + data_arg());
  CHECK(r.exit_code == 1);
}

TEST_CASE("cli: budget-limited cegplus run does not converge") {
  auto r = run_cli("run --experiment logistic --algo cegplus --rho 0 --budget 200000 --max-iter 100000 " + data_arg());
  CHECK(r.exit_code != 0);
  CHECK(r.out.find("status=Converged") == std::string::npos);
}

TEST_CASE("cli: compare emits checkpoint and trace files") {
  const std::string prefix = "/tmp/wmvipd_cli_compare";
  auto r = run_cli("compare --experiment least-squares --rho 0 --algos ncspdhg --seeds 2 --kkt-every 100 --max-iter 2000000 --out " + prefix + " " + data_arg());
  CHECK(r.exit_code == 0);

  std::ifstream ck(prefix + "_checkpoints.csv");
  REQUIRE(ck.good());
  std::string line;
  std::getline(ck, line);
  CHECK(line == "algo,seed,tolerance,prox_evals,iterations");
  // checkpoint prox counts are nondecreasing as the tolerance tightens
  std::uint64_t prev = 0;
  std::string prev_key;
  int rows = 0;
  while (std::getline(ck, line)) {
    std::istringstream ls(line);
    std::string algo, seed, tol, prox, it;
    std::getline(ls, algo, ',');
    std::getline(ls, seed, ',');
    std::getline(ls, tol, ',');
    std::getline(ls, prox, ',');
    std::getline(ls, it, ',');
    const std::string key = algo + "/" + seed;
    const std::uint64_t p = std::stoull(prox);
    if (key == prev_key) CHECK(p >= prev);
    prev = p;
    prev_key = key;
    ++rows;
  }
  CHECK(rows == 14);  // 2 seeds x 7 tolerances

  std::ifstream tr(prefix + "_ncspdhg_seed0.csv");
  CHECK(tr.good());
}

TEST_CASE("cli: sweep-rho with an explicit short list") {
  const std::string out = "/tmp/wmvipd_cli_sweep.csv";
  auto r = run_cli("sweep-rho --experiment logistic --rhos -2e-3 --seeds 2 --budget 300000 --kkt-every 100 --out " + out + " " + data_arg());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ncpdhg") != std::string::npos);
  CHECK(r.out.find("alm") != std::string::npos);
  std::ifstream f(out);
  REQUIRE(f.good());
  std::string all((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(all.find("algo,rho,converged") != std::string::npos);
}
