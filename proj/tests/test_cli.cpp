#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "quadcomp/automaton.hpp"
#include "quadcomp/cli.hpp"

using quadcomp::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kEx1 = "a=0 b=2; a=1 b=3";

}  // namespace

TEST_CASE("build: reference automata and errors") {
  auto r = call({"build", "--q", "5", "--alphabet", kEx1, "--emit", "M", "--format", "dot"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("digraph", 0) == 0);
  std::size_t edges = 0, pos = 0;
  while ((pos = r.out.find("->", pos)) != std::string::npos) ++edges, ++pos;
  CHECK(edges == 4);

  r = call({"build", "--q", "3", "--alphabet", "b=0; b=1; b=2", "--format", "json"});
  CHECK(r.code == 0);
  const auto M = quadcomp::partial_dfa_from_json(r.out);
  CHECK(M.num_states() == 4);
  CHECK(M.num_transitions() == 7);

  r = call({"build", "--q", "4", "--alphabet", "maximal"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("characteristic 2 unsupported") != std::string::npos);

  r = call({"build", "--p", "3", "--k", "2", "--emit", "both", "--format", "json", "--trim"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("interim").at("kind") == "interim");
  CHECK(j.at("partial_dfa").at("kind") == "partial");

  r = call({"build", "--q", "5", "--alphabet", kEx1, "--emit", "N", "--merge", "--trim"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(0)") == std::string::npos);
  CHECK(call({"build", "--q", "3", "--merge", "--emit", "N"}).code == 2);
  CHECK(call({"build", "--q", "5", "--emit", "X"}).code == 2);
  CHECK(call({"build", "--q", "5", "--format", "svg"}).code == 2);
  CHECK(call({"build", "--q", "6"}).code == 2);
  CHECK(call({"build", "--q", "9", "--p", "5"}).code == 2);
  CHECK(call({"build"}).code == 2);
  CHECK(call({"build", "--q", "5", "--alphabet", "a=0 b=2; b=2"}).code == 2);
  CHECK(call({"build", "--q", "3", "--budget", "2"}).code == 4);
  CHECK(call({"build", "--q", "3", "--budget", "0"}).code == 2);
}

TEST_CASE("test command") {
  auto r = call({"test", "--q", "5", "--alphabet", kEx1, "--word", "ggf"});
  CHECK(r.code == 0);
  CHECK(r.out == "Irreducible\n");
  r = call({"test", "--q", "5", "--alphabet", kEx1, "--word", "gf"});
  CHECK(r.code == 1);
  CHECK(r.out == "Reducible(2)\n");
  r = call({"test", "--q", "3", "--poly", "2,0,1,0,1"});
  CHECK(r.code == 0);
  CHECK(r.out == "Irreducible\n");
  r = call({"test", "--q", "5", "--poly", "1,1,0,0,1"});
  CHECK(r.code == 3);
  CHECK(r.out == "NotDecomposable\n");
  r = call({"test", "--q", "3", "--poly", "2,0,1,0,1", "--format", "json"});
  CHECK(r.out == "{\"verdict\":\"Irreducible\"}\n");
  r = call({"test", "--q", "3", "--word", "gg", "--format", "json"});
  CHECK(r.code == 1);
  CHECK(r.out == "{\"verdict\":\"Reducible\",\"witness\":1}\n");
  r = call({"test", "--q", "3", "--poly", "1,2,1,2"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(call({"test", "--q", "3", "--poly", "1,x"}).code == 2);
  CHECK(call({"test", "--q", "3", "--word", "hq"}).code == 2);
  CHECK(call({"test", "--q", "3"}).code == 2);
  CHECK(call({"test", "--q", "3", "--word", "h", "--poly", "2,0,1"}).code == 2);
  CHECK(call({"test", "--q", "3", "--word", "-"}).out == "Irreducible\n");

  const auto a = call({"test", "--q", "7", "--random", "6", "--seed", "9"});
  const auto b = call({"test", "--q", "7", "--random", "6", "--seed", "9"});
  CHECK(a.out == b.out);
  CHECK(a.code == b.code);
  CHECK(a.out.size() > 7);
}

TEST_CASE("enumerate and count") {
  auto r = call({"count", "--q", "5", "--alphabet", kEx1, "--words", "-n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "4\n");
  r = call({"enumerate", "--q", "3", "-n", "2"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
  CHECK(r.out.find("2,0,1,0,1\n") != std::string::npos);
  r = call({"count", "--q", "3", "-n", "0"});
  CHECK(r.out == "1\n");
  r = call({"count", "--q", "3", "-n", "5"});
  CHECK(r.out == "28\n84\n");
  r = call({"count", "--q", "3", "-n", "60", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("words") == "4710128697246244834921603690");
  CHECK(nlohmann::json::parse(r.out).at("polynomials") == "14130386091738734504764811070");
  r = call({"enumerate", "--q", "5", "--alphabet", kEx1, "--words", "-n", "3"});
  CHECK(r.out == "fff\nffg\nfgg\nggf\n");
  r = call({"enumerate", "--q", "5", "--alphabet", kEx1, "--words", "-n", "3",
            "--innermost-first"});
  CHECK(r.out == "fff\ngff\nggf\nfgg\n");
  r = call({"enumerate", "--q", "3", "-n", "2", "--annotate", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.size() == 6);
  CHECK(j[0].at("word") == "hg");
  r = call({"enumerate", "--q", "3", "-n", "9", "--budget", "100"});
  CHECK(r.code == 4);
  CHECK(r.out.empty());
  CHECK(call({"enumerate", "--q", "5", "--alphabet", kEx1, "-n", "2"}).code == 2);
  CHECK(call({"enumerate", "--q", "3", "-n", "0"}).code == 2);
  CHECK(call({"enumerate", "--q", "3"}).code == 2);
}

TEST_CASE("freedom and local") {
  auto r = call({"freedom", "--q", "5", "--alphabet", kEx1});
  CHECK(r.out == "Free: |D_S| = |S|\n");
  r = call({"freedom", "--q", "5", "--alphabet", "b=0; a=4 b=0; b=1", "--search", "3"});
  CHECK(r.out == "Unknown\ncollision: ff = gh\n");
  r = call({"freedom", "--q", "5", "--alphabet", kEx1, "--search", "4", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out).at("collision").is_null());
  CHECK(call({"freedom", "--q", "7", "--search", "9", "--budget", "1000"}).code == 4);

  r = call({"local", "--p", "5", "--chain", "a=0 b=7; a=1 b=3"});
  CHECK(r.code == 0);
  CHECK(r.out == "Irreducible\n");
  r = call({"local", "--p", "5", "--chain", "a=0 b=5"});
  CHECK(r.code == 3);
  CHECK(r.out == "PreconditionFailed\n");
  r = call({"local", "--p", "5", "--chain", "a=0 b=1", "--N", "4"});
  CHECK(r.code == 1);
  CHECK(r.out == "Reducible\n");
  CHECK(call({"local", "--p", "5"}).code == 2);
  CHECK(call({"local", "--p", "9", "--chain", "b=1"}).code == 2);
  CHECK(call({"local", "--p", "5", "--chain", "p=7 b=1"}).code == 2);
  CHECK(call({"local", "--p", "5", "--N", "0", "--chain", "b=2"}).code == 2);
}

TEST_CASE("canonicalize and decompose") {
  auto r = call({"canonicalize", "--q", "3", "--poly", "2,0,1,0,1"});
  CHECK(r.code == 0);
  CHECK(r.out == "(0, hg)\n");
  // pi(hg)(x + 1) over F_3
  r = call({"canonicalize", "--q", "3", "--poly", "1,0,1,1,1"});
  CHECK(r.out == "(1, hg)\n");
  r = call({"canonicalize", "--q", "3", "--poly", "1,0,2,0,1"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(call({"canonicalize", "--q", "5", "--poly", "1,1,0,0,1"}).code == 3);
  r = call({"decompose", "--q", "3", "--poly", "2,0,1,0,1"});
  CHECK(r.out == "([2, 1], b = 0)\n");
  r = call({"decompose", "--q", "5", "--poly", "3,3,1", "--format", "json"});
  CHECK(r.out == "{\"outer\":[\"3\"],\"b\":\"1\"}\n");
  CHECK(call({"decompose", "--q", "5", "--poly", "1,1,0,0,1"}).code == 3);
}

TEST_CASE("alphabet file, help, determinism") {
  const std::string path = "cli_test_alphabet.txt";
  {
    std::ofstream f(path);
    f << "# example 1\na=0 b=2\na=1 b=3\n";
  }
  auto r = call({"count", "--q", "5", "--alphabet-file", path, "--words", "-n", "7"});
  CHECK(r.out == "4\n");
  std::remove(path.c_str());
  CHECK(call({"count", "--q", "5", "--alphabet-file", "/nonexistent", "-n", "1"}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"build", "--q", "9", "--emit", "both"},
        {"build", "--q", "7", "--format", "json", "--minimize"},
        {"enumerate", "--p", "3", "--k", "2", "-n", "2", "--annotate"}}) {
    const auto a = call(args), b = call(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
