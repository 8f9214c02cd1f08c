// Exercises the installed CLI end to end: exit codes, report output, CSV
// files, and the golden run format. argv[1] = CLI path, argv[2] = tests dir.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli;
std::string g_tests_dir;

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CommandResult run_command(const std::string& args) {
  std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult res;
  char buf[4096];
  while (size_t got = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Strips the volatile wall_ms column (last CSV field) from data rows.
std::string without_wall_ms(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#' && line.find(',') != std::string::npos) {
      auto cut = line.rfind(',');
      line.erase(cut);
    }
    out << line << "\n";
  }
  return out.str();
}

struct TempPath {
  std::string path;
  explicit TempPath(const std::string& name)
      : path((std::filesystem::temp_directory_path() / name).string()) {
    std::remove(path.c_str());
  }
  ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("check reports gates and machine-readable keys") {
  CommandResult res = run_command("check \"hard_core a=1.0\"");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("q_hat=0.5") != std::string::npos);
  CHECK(res.output.find("passes_qhat=true") != std::string::npos);
  CHECK(res.output.find("certified=true") != std::string::npos);

  CommandResult fail = run_command("check \"hard_core a=1.3\"");
  CHECK(fail.exit_code == 0);  // check only reports
  CHECK(fail.output.find("passes_qhat=false") != std::string::npos);

  CommandResult ising = run_command("check \"ising beta=0.02 h=0\"");
  CHECK(ising.exit_code == 0);
  CHECK(ising.output.find("passes_ising_sufficient=true") != std::string::npos);
}

TEST_CASE("run writes a gate-stamped CSV and honors exit codes") {
  TempPath csv("strippress_cli_run.csv");
  CommandResult res =
      run_command("run \"hard_core a=1.0\" --n-min 1 --n-max 4 --out " + csv.path);
  CHECK(res.exit_code == 0);
  std::string contents = slurp(csv.path);
  CHECK(contents.find("# gate q_hat=") != std::string::npos);
  CHECK(contents.find("n,columns,log_lambda,lambda_lo,lambda_hi,diff,identity_residual,"
                      "wall_ms") != std::string::npos);

  CommandResult gate = run_command("run \"hard_core a=1.3\" --n-min 1 --n-max 3");
  CHECK(gate.exit_code == 2);
  CHECK(gate.output.find("certified=false") != std::string::npos);

  CommandResult forced =
      run_command("run \"hard_core a=1.3\" --n-min 1 --n-max 3 --force");
  CHECK(forced.exit_code == 0);
  CHECK(forced.output.find("not certified") != std::string::npos);

  CommandResult numerical =
      run_command("run \"checkerboard k=2\" --n-min 1 --n-max 2 --force");
  CHECK(numerical.exit_code == 3);

  CommandResult parse = run_command("run \"unicorn z=1\" --n-min 1 --n-max 2");
  CHECK(parse.exit_code == 4);
}

TEST_CASE("entropy labels its estimate") {
  CommandResult res = run_command("entropy zero --n-min 1 --n-max 4");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("topological entropy") != std::string::npos);
  CHECK(res.output.find("0.40741535586") != std::string::npos);  // diff at n = 3
}

TEST_CASE("eigen-report prints the enclosure") {
  CommandResult res = run_command("eigen-report \"hard_core a=2.0\" --n 1");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("columns      = 2") != std::string::npos);
  CHECK(res.output.find("log_lambda") != std::string::npos);
  CHECK(res.output.find("identity_res") != std::string::npos);

  TempPath dump("strippress_cli_dump.txt");
  CommandResult dumped =
      run_command("eigen-report \"hard_core a=2.0\" --n 1 --dump " + dump.path);
  CHECK(dumped.exit_code == 0);
  CHECK(slurp(dump.path).find("transfer columns=2") != std::string::npos);
}

TEST_CASE("model files round through the CLI with boundary overrides") {
  TempPath model("strippress_cli_model.txt");
  {
    std::ofstream os(model.path);
    os << "[alphabet]\n0 1\n[e1]\n0 0\n0 1\n1 0\n[e2]\n0 0\n0 1\n1 0\n"
          "[interaction]\nvertex 1 = -log(1.2)\n[boundary]\nt = 0\nb = 0\n";
  }
  CommandResult res = run_command("run " + model.path + " --n-min 1 --n-max 3");
  CHECK(res.exit_code == 0);

  CommandResult bad = run_command("run " + model.path + " --n-min 1 --n-max 3 --top 7");
  CHECK(bad.exit_code == 4);

  TempPath broken("strippress_cli_broken.txt");
  {
    std::ofstream os(broken.path);
    os << "[alphabet]\nonly\n";
  }
  CommandResult parse = run_command("check " + broken.path);
  CHECK(parse.exit_code == 4);
}

TEST_CASE("full 2-shift run matches the golden CSV") {
  TempPath csv("strippress_cli_golden.csv");
  CommandResult res =
      run_command("run \"ising beta=0 h=0\" --n-min 1 --n-max 3 --out " + csv.path);
  REQUIRE(res.exit_code == 0);
  std::string golden = slurp(g_tests_dir + "/golden/full_shift_run.csv");
  CHECK(without_wall_ms(slurp(csv.path)) == without_wall_ms(golden));
}

TEST_CASE("checkpointed runs resume across invocations") {
  TempPath ckpt("strippress_cli_ckpt.json");
  CommandResult first = run_command("run \"hard_core a=1.0\" --n-min 1 --n-max 3 --checkpoint " +
                                    ckpt.path);
  CHECK(first.exit_code == 0);
  CommandResult second = run_command(
      "run \"hard_core a=1.0\" --n-min 1 --n-max 5 --checkpoint " + ckpt.path);
  CHECK(second.exit_code == 0);
  CHECK(second.output.find("resumed 3 heights from checkpoint") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: test_cli <cli-path> <tests-dir>\n");
    return 1;
  }
  g_cli = argv[1];
  g_tests_dir = argv[2];
  doctest::Context ctx;
  return ctx.run();
}
