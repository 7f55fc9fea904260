#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("sosign-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

/// Runs the CLI with args, feeding stdin.
Run cli(const std::string& args, const std::string& input = "") {
  const fs::path in = scratch() / "stdin.txt";
  const fs::path err = scratch() / "stderr.txt";
  write(in, input);
  const std::string cmd = std::string(SOSIGN_CLI) + " " + args + " < " + in.string() + " 2> " + err.string();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out, slurp(err)};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("sign of expressions") {
  auto r = cli("sign", "2 -3\n1 | -1\n");
  CHECK(r.status == 0);
  CHECK(r.out == "-1 quick\n0 robust\n");
  r = cli("sign --mode quick", "2 -3\n1 | -1\n");
  CHECK(r.out == "-1 quick\n? quick\n");
  r = cli("sign --mode robust -", "2 -3\n1 | -1\n");
  CHECK(r.out == "-1 robust\n0 robust\n");
  r = cli("sign --format binary32", "0x1.000002p+0 0x1.fffffcp-1 | -1\n");
  CHECK(r.out == "-1 robust\n");
  r = cli("sign", "0x1.0000000000001p+0 0x1.ffffffffffffep-1 | -1\n");
  CHECK(r.out == "-1 robust\n");
}

TEST_CASE("statistics line") {
  const auto r = cli("sign --stats --mode quick", "2 3\n1 | -1\n# comment\n-1\n");
  CHECK(r.out == "1 quick\n? quick\n-1 quick\n"
                 "# stats: total=3 quick=2 robust=0 inconclusive=1 errors=0 negative=1 zero=0 positive=1\n");
}

TEST_CASE("self-check against expected tags") {
  auto r = cli("sign --check", "# expected: 1\n1 | -2\n# expected: -1\n1 | -2\n");
  CHECK(r.status == 1);
  CHECK(contains(r.err, "line 2: expected 1, got -1"));
  r = cli("sign --check", "# expected: -1\n1 | -2\n");
  CHECK(r.status == 0);
}

TEST_CASE("error exit codes") {
  auto r = cli("sign", "1 2\n1 | x\n");
  CHECK(r.status == 2);
  CHECK(contains(r.err, "line 2, column 5"));
  CHECK(r.out.empty());

  r = cli("sign", "0.1\n");
  CHECK(r.status == 2);
  r = cli("sign --allow-decimal", "0.1 | -0.1\n");
  CHECK(r.status == 0);
  CHECK(r.out == "0 robust\n");
  CHECK(contains(r.err, "rounded"));

  std::string wide;
  for (int i = 0; i < 26; ++i) wide += "1 ";
  r = cli("sign --format binary32", "1\n" + wide + "\n");
  CHECK(r.status == 3);
  CHECK(r.out == "1 quick\nerror\n");
  CHECK(contains(r.err, "line 2"));
  CHECK(contains(r.err, "16777216"));

  r = cli("sign", "0x1p+1000 0x1p+1000\n");
  CHECK(r.status == 3);
  CHECK(contains(r.err, "line 1"));

  r = cli("sign missing-file.txt");
  CHECK(r.status == 2);
}

TEST_CASE("predicates") {
  auto r = cli("predicate orient2d", "0 0 4 0 2 0\n0 0 1 0 0.5 1\n4 0 8 0 6 0x1p-1060\n");
  CHECK(r.status == 0);
  CHECK(r.out == "0\n1\n1\n");
  r = cli("predicate incircle", "0 0 1 0 1 1 0 1\n0 0 1 0 0 1 2 2\n");
  CHECK(r.out == "0\n-1\n");
  r = cli("predicate orient3d", "0 0 0 1 0 0 0 1 0 0 0 -1\n");
  CHECK(r.out == "1\n");
  r = cli("predicate orient2d", "0 0 1\n");
  CHECK(r.status == 2);
  CHECK(contains(r.err, "needs 6 coordinates"));
}

TEST_CASE("constants") {
  auto r = cli("constants");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "0x1p-969"));
  CHECK(contains(r.out, "2.0e-292"));
  r = cli("constants --format binary32");
  CHECK(contains(r.out, "0x1p-102"));
  CHECK(contains(r.out, "2.0e-31"));
  CHECK(contains(r.out, "8388608"));
  CHECK(cli("--constants --format float").out == r.out);
}

TEST_CASE("generated corpora check clean and reproduce byte for byte") {
  for (std::string family : {"collinear", "near-collinear", "underflow", "cancellation", "random"}) {
    for (std::string format : {"binary64", "binary32"}) {
      const fs::path a = scratch() / (family + format + "a.txt");
      const fs::path b = scratch() / (family + format + "b.txt");
      REQUIRE(cli("generate " + family + " -n 300 --seed 9 --format " + format + " -o " + a.string()).status == 0);
      REQUIRE(cli("generate " + family + " -n 300 --seed 9 --format " + format + " -o " + b.string()).status == 0);
      CHECK(slurp(a) == slurp(b));
      const auto one = cli("sign --check --stats --format " + format + " " + a.string());
      CHECK(one.status == 0);
      const auto many = cli("sign --check --stats --jobs 3 --format " + format + " " + a.string());
      CHECK(many.out == one.out);
      const auto hw = cli("sign --check --backend hardware --format " + format + " " + a.string());
      CHECK(hw.status == 0);
    }
  }
  const auto out = cli("generate collinear -n 3 --seed 1").out;
  CHECK(contains(out, "# family: collinear format: binary64 seed: 1 count: 3\n"));
}
