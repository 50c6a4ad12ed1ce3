#include <doctest.h>

#include <cmath>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "commands.hpp"

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "heckelab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = heckelab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t data_rows(const std::string& csv) {
  std::size_t n = 0;
  for (const auto& l : lines(csv)) n += !l.empty() && l[0] != '#';
  return n - 1;  // header
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("orbit") {
    const Result r = run({"orbit", "2i", "2"});
    CHECK(r.status == 0);
    CHECK(data_rows(r.out) == 3);
    CHECK(lines(r.out)[0] == "# heckelab orbit seed=0 precision_bits=128");
    CHECK(lines(r.out)[1] == "alpha,beta,delta,tau_re,tau_im,j_re,j_im");
    CHECK(data_rows(run({"orbit", "0.3+1.7i", "1"}).out) == 1);
    CHECK(run({"orbit", "--", "-1i", "2"}).status != 0);
    CHECK(run({"orbit", "0.5", "2"}).status != 0);
    CHECK(run({"--precision-bits", "40", "orbit", "2i", "2"}).status != 0);
  }

  TEST_CASE("height") {
    const Result r = run({"height", "1", "100..110", "--primes"});
    CHECK(r.status == 0);
    CHECK(data_rows(r.out) == 4);
    const Result empty = run({"height", "1", "10..5"});
    CHECK(empty.status == 0);
    CHECK(data_rows(empty.out) == 0);
    CHECK(run({"height", "1.5", "2..3"}).status == 2);
    CHECK(run({"height", "abc", "2..3"}).status == 2);
    CHECK(run({"height", "1", "2-3"}).status == 2);
  }

  TEST_CASE("scan") {
    const Result r = run({"scan", "-1/1,0/1", "0/1,-1/1", "5", "100"});
    CHECK(r.status == 0);
    for (const char* p : {"\n11,1,", "\n23,1,", "\n47,1,", "\n59,1,", "\n71,1,", "\n83,1,"})
      CHECK(r.out.find(p) != std::string::npos);
    CHECK(r.out.find("# summary hits=") != std::string::npos);
    CHECK(run({"scan", "-1/1,0/1", "0/1,-1/1", "100", "5"}).status == 2);
    CHECK(run({"scan", "-3,2", "0,-1", "5", "100"}).status == 2);
    const Result all = run({"scan", "--all-primes", "-1,0", "0,-1", "5", "100"});
    CHECK(data_rows(all.out) == 23);
  }

  TEST_CASE("tate, latcount, cm, equi, density run") {
    CHECK(data_rows(run({"tate", "-1", "2"}).out) == 3);
    CHECK(run({"tate", "1", "2"}).status == 1);
    const Result lat = run({"latcount", "10", "--gram", "1,0,0,1"});
    CHECK(lat.status == 0);
    CHECK(data_rows(lat.out) == 11);
    CHECK(lat.out.find("# summary represented=7") != std::string::npos);
    CHECK(run({"latcount", "100", "--order", "-20,1"}).status == 0);
    CHECK(run({"latcount", "10", "--gram", "1,0,0"}).status == 2);
    const Result cm = run({"cm", "2"});
    CHECK(cm.status == 0);
    CHECK(cm.out.find("c_obs=") != std::string::npos);
    CHECK(data_rows(run({"equi", "2i", "5..7", "--primes"}).out) == 2);
    const Result d = run({"density", "0.3+1.7i", "0", "4", "5"});
    CHECK(data_rows(d.out) == 5);
    CHECK(d.out.find("# summary density=0") != std::string::npos);
  }

  TEST_CASE("jsonl mirrors csv") {
    const Result r = run({"--format", "jsonl", "--seed", "9", "tate", "-1", "4", "--x", "-1"});
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 8);
    const auto meta = nlohmann::json::parse(ls[0]);
    CHECK(meta["meta"]["seed"] == 9);
    CHECK(meta["meta"]["command"] == "tate");
    CHECK(nlohmann::json::parse(ls[1])["valuation"] == "-4");
    CHECK(nlohmann::json::parse(ls[7])["summary"]["no_collision"] == false);
  }

  TEST_CASE("output file and byte-identical reruns") {
    const std::string path = "heckelab_cli_test_output.csv";
    REQUIRE(run({"--out", path, "orbit", "0.3+1.7i", "12"}).status == 0);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::remove(path.c_str());
    CHECK(buf.str() == run({"orbit", "0.3+1.7i", "12"}).out);
    CHECK(run({"cm", "8"}).out == run({"cm", "8"}).out);
  }

  TEST_CASE("every command has a passing self-test") {
    for (const char* cmd : {"orbit", "height", "scan", "tate", "latcount", "cm", "equi", "density"}) {
      const Result r = run({cmd, "--self-test"});
      CHECK_MESSAGE(r.status == 0, cmd << ":\n" << r.out);
      CHECK(r.out.find("self-test passed") != std::string::npos);
    }
  }
}
