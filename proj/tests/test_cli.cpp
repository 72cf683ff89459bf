#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(LGW_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = std::string("/tmp/lgw_test_") + name;
  std::ofstream f(path);
  f << body;
  return path;
}

}  // namespace

TEST_CASE("gtable lists the closed forms") {
  RunResult r = run("gtable --max-k 4");
  CHECK(r.status == 0);
  CHECK(r.out.find("35/27") != std::string::npos);
  CHECK(r.out.find("clique") != std::string::npos);
  CHECK(r.out.find("star") != std::string::npos);
}

TEST_CASE("exponent of an explicit pattern file") {
  std::string pattern = write_temp("triangle.edges", "0 1\n0 2\n1 2\n");
  RunResult r = run("exponent --pattern " + pattern);
  CHECK(r.status == 0);
  CHECK(r.out.find("35/27") != std::string::npos);
  CHECK(r.out.find("1/27") != std::string::npos);
}

TEST_CASE("optimize prints exact optima") {
  RunResult r = run("optimize --family kdist -k 2");
  CHECK(r.status == 0);
  CHECK(r.out.find("2/3") != std::string::npos);

  RunResult c = run("optimize --family clique -k 4");
  CHECK(c.status == 0);
  CHECK(c.out.find("3/2") != std::string::npos);
}

TEST_CASE("build output verifies cleanly") {
  std::string path = "/tmp/lgw_test_build.json";
  RunResult b = run("build --family kdist -n 5 -k 2 -r 4 --emit json > " + path);
  CHECK(b.status == 0);
  RunResult v = run("verify " + path);
  CHECK(v.status == 0);
  CHECK(v.out.find("ok") != std::string::npos);
}

TEST_CASE("dot emission counts for the worked example") {
  RunResult r = run("build --family kdist -n 5 -k 2 -r 4 --emit dot");
  CHECK(r.status == 0);
  size_t arcs = 0;
  for (size_t p = r.out.find(" -> "); p != std::string::npos;
       p = r.out.find(" -> ", p + 1))
    ++arcs;
  CHECK(arcs == 60);
}

TEST_CASE("dot is rejected for non-graph emitters") {
  RunResult r = run("optimize --family kdist -k 2 --emit dot");
  CHECK(r.status == 2);
}

TEST_CASE("unknown flags exit 2") {
  RunResult r = run("build --no-such-flag");
  CHECK(r.status == 2);
}

TEST_CASE("analyze reports the worked totals") {
  RunResult r = run("analyze --family kdist -n 5 -k 2 -r 4");
  CHECK(r.status == 0);
  CHECK(r.out.find("10/3") != std::string::npos);
  CHECK(r.out.find("9.39575027434") != std::string::npos);
}

TEST_CASE("runs are reproducible byte for byte") {
  std::string args = "build --family clique -n 6 -k 3 -r 4 --emit json";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);

  std::string sampled = "build --family kdist -n 5 -k 2 -r 4 --seed 7 --emit json";
  CHECK(run(sampled).out == run(sampled).out);
}

TEST_CASE("config files supply defaults") {
  std::string cfg = write_temp("opt.ini", "[optimize]\nfamily=kdist\nk=3\n");
  RunResult r = run("--config " + cfg + " optimize");
  CHECK(r.status == 0);
  CHECK(r.out.find("3/4") != std::string::npos);
}
