#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "marginvote/canonical.hpp"
#include "marginvote/cli.hpp"
#include "marginvote/serialize.hpp"
#include "support/fixtures.hpp"

using namespace marginvote;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("marginvote-cli-" + std::to_string(std::rand()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("rules run") {
  const auto tied_cycle = fixtures::path("tied_cycle.toi");
  CHECK(run({"rules", "run", "--rule", "minimax-margins", tied_cycle}).out == "winners: c\n");
  CHECK(run({"rules", "run", "--rule", "minimax-wv", tied_cycle}).out == "winners: a\n");
  CHECK(run({"rules", "run", "--rule", "irv", fixtures::path("spoiler.soi")}).out == "winners: R\n");

  const auto json = run({"--format", "json", "rules", "run", "--rule", "copeland", tied_cycle});
  CHECK(json.code == kExitOk);
  const auto j = Json::parse(json.out);
  CHECK(j["rule"] == "copeland");

  const auto outside = run({"rules", "run", "--rule", "borda", tied_cycle});
  CHECK(outside.code == kExitError);
  CHECK(outside.err.find("error:") == 0);

  CHECK(run({"rules", "run", "--rule", "nope", tied_cycle}).code == kExitError);
  CHECK(run({"rules", "run", "--rule", "irv", fixtures::path("missing.soi")}).code == kExitError);
}

TEST_CASE("rules list names every rule") {
  const auto r = run({"rules", "list"});
  CHECK(r.code == kExitOk);
  for (const auto* name : {"minimax-margins", "irv", "threshold", "rel-strict-borda"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("margins, graph and smith") {
  const auto tied_cycle = fixtures::path("tied_cycle.toi");
  CHECK(run({"margins", tied_cycle}).code == kExitOk);
  const auto dot = run({"graph", "--kind", "wv", "--dot", tied_cycle});
  CHECK(dot.out.find("digraph winning_votes") != std::string::npos);
  CHECK(dot.out.find("\"a\" -> \"b\" [label=\"6\"];") != std::string::npos);
  const auto margin = run({"--format", "dot", "graph", tied_cycle});
  CHECK(margin.out.find("\"a\" -> \"b\" [label=\"3\"];") != std::string::npos);
  CHECK(run({"graph", "--kind", "bogus", tied_cycle}).code == kExitError);
  const auto smith = run({"smith", fixtures::path("condorcet.soi")});
  CHECK(smith.out == "smith: a\ncondorcet winner: a\n");
  CHECK(run({"--format", "dot", "smith", tied_cycle}).code == kExitError);
}

TEST_CASE("axiom check exit codes") {
  const auto witness = run({"axiom", "check", "--rule", "irv", "--axiom", "preferential-equality",
                            fixtures::path("spoiler.soi"), "--budget", "50"});
  CHECK(witness.code == kExitWitness);
  CHECK(witness.out.find("witnesses: ") != std::string::npos);

  const auto clean = run({"axiom", "check", "--rule", "minimax-margins", "--axiom", "preferential-equality",
                          fixtures::path("spoiler.soi"), "--budget", "50"});
  CHECK(clean.code == kExitOk);

  const auto mismatch = run({"axiom", "check", "--rule", "borda", "--axiom", "tiebreak-compensation",
                             fixtures::path("spoiler.soi")});
  CHECK(mismatch.code == kExitError);

  const auto rel = run({"axiom", "check", "--rule", "rel-strict-borda", "--axiom", "comparable-compensation",
                        fixtures::path("truncated.csv")});
  CHECK((rel.code == kExitOk || rel.code == kExitWitness));
}

TEST_CASE("axiom check output is identical across job counts") {
  std::vector<std::string> base = {"--format", "json", "axiom", "check", "--rule", "irv", "--axiom",
                                   "preferential-equality", fixtures::path("spoiler.soi"), "--budget", "80"};
  auto one = base;
  one.insert(one.end(), {"--jobs", "1"});
  auto four = base;
  four.insert(four.end(), {"--jobs", "4"});
  CHECK(run(one).out == run(four).out);
}

TEST_CASE("classify") {
  const auto r = run({"classify", fixtures::path("tied_cycle.toi"), fixtures::path("spoiler.soi")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("tied_cycle.toi: lobi") != std::string::npos);
  CHECK(r.out.find("spoiler.soi: linear") != std::string::npos);
  const auto inv = run({"classify", "--rule", "minimax-margins", fixtures::path("tied_cycle.toi")});
  CHECK(inv.code == kExitOk);
  CHECK(inv.out.find("rule: minimax-margins") != std::string::npos);
}

TEST_CASE("canonicalize writes the form and the trace") {
  TempDir dir;
  const auto out = dir.path / "canon.json";
  const auto trace = dir.path / "canon.trace.jsonl";
  const auto r = run({"canonicalize", fixtures::path("six_voter_p.soi"), "--out", out.string(), "--emit-trace",
                      trace.string()});
  REQUIRE(r.code == kExitOk);
  const auto canon = profile_from_json(Json::parse(slurp(out)));
  const auto p = fixtures::profile("six_voter_p.soi");
  CHECK(margins(canon) == margins(p));
  CHECK(is_debord_form(canon));
  std::size_t lines = 0;
  std::istringstream in(slurp(trace));
  for (std::string line; std::getline(in, line);) {
    CHECK(Json::accept(line));
    ++lines;
  }
  CHECK(lines > 0);

  const auto q = run({"canonicalize", fixtures::path("six_voter_q.soi")});
  CHECK(q.out == run({"canonicalize", fixtures::path("six_voter_p.soi")}).out);

  CHECK(run({"canonicalize", fixtures::path("tied_cycle.toi")}).code == kExitError);
  CHECK(run({"canonicalize", fixtures::path("tied_cycle.toi"), "--linearize"}).code == kExitOk);
}

TEST_CASE("canonicalize writes the default trace next to the working directory") {
  TempDir dir;
  const auto old = fs::current_path();
  fs::current_path(dir.path);
  const auto r = run({"canonicalize", fixtures::path("six_voter_q.soi"), "--emit-trace"});
  const bool exists = fs::exists(dir.path / "six_voter_q.trace.jsonl");
  fs::current_path(old);
  CHECK(r.code == kExitOk);
  CHECK(exists);
}

TEST_CASE("scan") {
  const auto r = run({"scan", "minimax", std::string(MARGINVOTE_FIXTURES), "--dataset", "fixtures"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("tied_cycle") != std::string::npos);
  const auto j1 = run({"--format", "json", "scan", "irv", std::string(MARGINVOTE_FIXTURES), "--jobs", "1"});
  const auto j3 = run({"--format", "json", "scan", "irv", std::string(MARGINVOTE_FIXTURES), "--jobs", "3"});
  CHECK(j1.out == j3.out);
  CHECK(Json::parse(j1.out)["relevant"] == 6);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitError);
  CHECK(run({"frobnicate"}).code == kExitError);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"--format", "xml", "margins", fixtures::path("tied_cycle.toi")}).code == kExitError);
}
