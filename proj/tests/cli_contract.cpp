// Contract test for the command line tool. Spawns the real binary, so this
// runs outside the unit suite. argv[1] is the tool path, argv[2] the fixture
// directory.

#include <array>
#include <cstdio>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string g_cli;
std::string g_fixtures;
int g_failures = 0;

RunResult run(const std::string& args) {
  std::string cmd = "'" + g_cli + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult res;
  if (!pipe) {
    res.out = "(popen failed)";
    return res;
  }
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
  int status = pclose(pipe);
  if (WIFEXITED(status)) res.code = WEXITSTATUS(status);
  return res;
}

void check(bool ok, const std::string& label, const std::string& detail = "") {
  std::cout << (ok ? "  ok   " : "  FAIL ") << label << "\n";
  if (!ok) {
    ++g_failures;
    if (!detail.empty()) std::cout << "       " << detail << "\n";
  }
}

void expect_code(const std::string& args, int want, const std::string& label) {
  RunResult res = run(args);
  check(res.code == want, label,
        "exit " + std::to_string(res.code) + ", wanted " + std::to_string(want) + "\n" + res.out);
}

void expect_contains(const std::string& args, int want_code, const std::string& needle,
                     const std::string& label) {
  RunResult res = run(args);
  bool ok = res.code == want_code && res.out.find(needle) != std::string::npos;
  check(ok, label, "exit " + std::to_string(res.code) + ", output:\n" + res.out);
}

void expect_deterministic(const std::string& args, const std::string& label) {
  RunResult first = run(args);
  RunResult second = run(args);
  bool ok = first.code == second.code && first.out == second.out && first.code == 0;
  check(ok, label, "runs differ or failed (exit " + std::to_string(first.code) + ")");
}

void expect_json(const std::string& args, const std::string& label) {
  RunResult res = run(args);
  auto parsed = nlohmann::json::parse(res.out, nullptr, false);
  check(res.code == 0 && !parsed.is_discarded(), label,
        "exit " + std::to_string(res.code) + ", output:\n" + res.out);
}

std::string fx(const std::string& name) { return "'" + g_fixtures + "/" + name + "'"; }

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_contract <tool> <fixture dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_fixtures = argv[2];

  const std::string gkz_example = "gkz --matrix '1,1,1;0,1,2' --beta '0,0'";

  std::cout << "exit codes\n";
  expect_contains("mono validate " + fx("czmodel.json"), 0, "check validate: pass",
                  "validate accepts the twisted model");
  expect_code("mono validate " + fx("deltamodel.json"), 0, "validate accepts the point model");
  expect_contains("mono validate " + fx("broken.json"), 1, "does not preserve",
                  "validate rejects a broken hodge jump with a witness");
  expect_code("mono validate " + fx("nosuch.json"), 2, "missing file reports bad input");
  expect_code("mono validate '" + g_cli + "'", 2, "non json input reports bad input");
  expect_code("mono rmf " + fx("rmf_exists.json"), 0, "rmf existence case exits clean");
  expect_code("mono rmf " + fx("rmf_none.json"), 0, "rmf obstruction case exits clean");
  expect_code(gkz_example + " --strict", 0, "strict gkz run passes on the running example");
  expect_code("gkz --matrix '1,2;3' --beta '0'", 2, "ragged matrix reports parse error");
  expect_code("gkz --matrix '1/2,1;0,1' --beta '0'", 2, "fractional matrix entry is rejected");
  expect_code("gkz --matrix '1,1,1;0,1,2' --beta '0'", 2, "short beta reports bad input");
  expect_code("", 2, "missing subcommand is a usage error");
  expect_code("frobnicate", 2, "unknown subcommand is a usage error");
  expect_code("mono twist " + fx("czmodel.json"), 2, "twist without --l is a usage error");
  expect_code("--help", 0, "help text exits clean");

  std::cout << "report content\n";
  expect_contains("mono rmf " + fx("rmf_exists.json"), 0, "W -1:1, 1:2",
                  "rmf prints the weight jumps");
  expect_contains("mono rmf " + fx("rmf_none.json"), 0,
                  "no section of gr^L_0 is compatible with the inner weights",
                  "rmf prints the obstruction reason");
  expect_contains("mono fl " + fx("czmodel.json"), 0, "window [-2, 0]",
                  "fl lands in the reflected window");
  expect_contains("mono inversion " + fx("czmodel.json"), 0, "check inversion: pass",
                  "inversion check passes on the twisted model");
  expect_contains("mono flrestrict " + fx("deltamodel.json"), 0, "pass",
                  "restriction exchange check passes on the point model");
  expect_contains("mono restrict " + fx("czmodel.json"), 0, "star complex",
                  "restrict prints both complexes");
  expect_contains(gkz_example, 0, "box_1 = d1*d3 - d2^2", "gkz prints the normalized box");
  expect_contains(gkz_example, 0, "flags: homogeneous=yes pointed=yes columns_span=yes",
                  "gkz prints all three structure flags");
  expect_contains(gkz_example, 0, "fourier box_1 -> m1*m3 - m2^2",
                  "gkz prints the transformed box");
  expect_contains("micro phi --elem 'delta_g'", 0, "image: delta_f",
                  "phi sends the graph generator to the source generator");
  expect_contains("micro phi --elem 'y1^2*dxi^-1*delta_g'", 0, "image: (-1)*dt1^2*delta_f",
                  "phi applies the sign rule");
  expect_code("micro phi --elem 'y3*delta_g'", 2, "out of range variable is rejected");
  expect_code("micro identities --n 1 --r 1", 2, "non default context requires --f");
  expect_contains("micro shifts --bound 4", 0, "check filtration-shift: pass",
                  "shift check passes at a small bound");

  std::cout << "determinism, every verification command twice\n";
  expect_deterministic(gkz_example + " --format json", "gkz json output is byte stable");
  expect_deterministic("mono validate " + fx("czmodel.json") + " --format json",
                       "validate json output is byte stable");
  expect_deterministic("mono inversion " + fx("czmodel.json"), "inversion output is byte stable");
  expect_deterministic("mono flrestrict " + fx("czmodel.json"),
                       "restriction exchange output is byte stable");
  expect_deterministic("micro identities --samples 40 --seed 11 --format json",
                       "identity check output is byte stable");
  expect_deterministic("micro shifts --bound 4", "shift check output is byte stable");
  expect_deterministic("mono rmf " + fx("rmf_exists.json") + " --format json",
                       "rmf json output is byte stable");

  std::cout << "json twins parse\n";
  expect_json(gkz_example + " --format json", "gkz json");
  expect_json("mono validate " + fx("czmodel.json") + " --format json", "validate json");
  expect_json("mono fl " + fx("czmodel.json") + " --format json", "fl json");
  expect_json("mono twist " + fx("czmodel.json") + " --l 2 --format json", "twist json");
  expect_json("mono restrict " + fx("deltamodel.json") + " --format json", "restrict json");
  expect_json("mono rmf " + fx("rmf_none.json") + " --format json", "rmf json");
  expect_json("micro phi --elem 'dxi^2*delta_g' --format json", "phi json");
  expect_json("micro identities --samples 20 --seed 5 --format json", "identities json");

  if (g_failures) {
    std::cout << g_failures << " contract check(s) failed\n";
    return 1;
  }
  std::cout << "all contract checks passed\n";
  return 0;
}
