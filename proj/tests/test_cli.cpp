#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "minent/io.hpp"
#include "minent/sampling.hpp"

using json = nlohmann::json;

namespace {

const std::string cli = MINENT_CLI_PATH;

int run(const std::string& args) {
  std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string strip_timing(std::string s) {
  auto pos = s.find("\"timing_ms\"");
  if (pos == std::string::npos) return s;
  auto end = s.find('\n', pos);
  s.erase(pos, end - pos);
  return s;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("entropy -p 0.75,0.25 -q 0.6,0.4") == 0);
  CHECK(run("entropy -p 0.7,0.2 -q 0.6,0.4") == 2);  // mass 0.9
  CHECK(run("entropy -p 0.7,0.2 -q 0.6,0.4 --renormalize") == 0);
  CHECK(run("entropy -p 0.5,0.5 -q 0.5,0.3,0.2") == 2);  // length mismatch
  CHECK(run("nonsense") == 2);
  CHECK(run("oracle -p " + std::string("0.14,0.14,0.14,0.14,0.14,0.15,0.15") +
            " -q 0.14,0.14,0.14,0.14,0.14,0.15,0.15") == 3);
  CHECK(run("verify --n 3 --count 5 --seed 42") == 0);
}

TEST_CASE("bounds output matches the oracle numbers") {
  CHECK(run("bounds -p 0.75,0.25 -q 0.6,0.4 --json /tmp/minent_bounds.json") == 0);
  json j = json::parse(slurp("/tmp/minent_bounds.json"));
  CHECK(j["outputs"]["lower"].get<double>() == doctest::Approx(0.9710).epsilon(1e-4));
  CHECK(j["outputs"]["min"].get<double>() == doctest::Approx(1.3527).epsilon(1e-4));
  CHECK(j["outputs"]["upper"].get<double>() == doctest::Approx(1.9710).epsilon(1e-4));
  CHECK(j["outputs"]["min_is_exact"].get<bool>());
}

TEST_CASE("minimize from independent on uniform 2x2") {
  CHECK(run("minimize --from independent -p 0.5,0.5 -q 0.5,0.5 "
            "--json /tmp/minent_min.json --trace /tmp/minent_trace.json") == 0);
  json j = json::parse(slurp("/tmp/minent_min.json"));
  CHECK(j["outputs"]["final_entropy"].get<double>() == doctest::Approx(1.0));
  CHECK(j["outputs"]["final"][0][0].get<double>() == doctest::Approx(0.5));
  CHECK(j["outputs"]["final"][1][0].get<double>() == doctest::Approx(0.0));
  json t = json::parse(slurp("/tmp/minent_trace.json"));
  std::size_t shifts = 0;
  for (const auto& s : t["steps"])
    if (s["b"].get<double>() > 0) ++shifts;
  CHECK(shifts == 1);
}

TEST_CASE("instance file round trip via gen") {
  CHECK(run("gen --n 4 --count 2 --seed 7 --out /tmp/minent_gen") == 0);
  json j = json::parse(slurp("/tmp/minent_gen_0.json"));
  REQUIRE(j["p"].size() == 4);
  CHECK(j["generator"] == "mt19937_64");
  CHECK(run("entropy --file /tmp/minent_gen_0.json") == 0);
  CHECK(run("oracle --file /tmp/minent_gen_1.json") == 0);
}

TEST_CASE("JSON reports are deterministic modulo timing") {
  std::string a = "/tmp/minent_det_a.json", b = "/tmp/minent_det_b.json";
  CHECK(run("verify --n 3 --count 10 --seed 99 --json " + a) == 0);
  CHECK(run("verify --n 3 --count 10 --seed 99 --json " + b) == 0);
  CHECK(strip_timing(slurp(a)) == strip_timing(slurp(b)));
  CHECK(strip_timing(slurp(a)) != "");
}

TEST_CASE("coupling CSV round trip at full precision") {
  minent::Rng rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 5;
    auto P = minent::random_vertex(minent::sample_simplex(n, rng),
                                   minent::sample_simplex(n, rng), rng);
    minent::write_coupling_csv(P, "/tmp/minent_rt.csv");
    auto Q = minent::read_coupling_csv("/tmp/minent_rt.csv");
    REQUIRE(Q.size() == n);
    for (std::size_t e = 0; e < P.data().size(); ++e)
      CHECK(std::abs(P.data()[e] - Q.data()[e]) <= 1e-15);
  }
}

TEST_CASE("minimize can start from a coupling file") {
  minent::Rng rng(55);
  auto P = minent::random_vertex(minent::sample_simplex(3, rng),
                                 minent::sample_simplex(3, rng), rng);
  minent::write_coupling_csv(P, "/tmp/minent_start.csv");
  auto [r, c] = minent::marginals(P);
  std::ofstream inst("/tmp/minent_start_inst.json");
  json j = {{"p", r.values()}, {"q", c.values()}};
  inst << j.dump() << "\n";
  inst.close();
  CHECK(run("minimize --from file:/tmp/minent_start.csv "
            "--file /tmp/minent_start_inst.json --json /tmp/minent_ff.json") == 0);
  json out = json::parse(slurp("/tmp/minent_ff.json"));
  CHECK(out["outputs"]["final_entropy"].get<double>() <=
        out["outputs"]["start_entropy"].get<double>() + 1e-12);
}
