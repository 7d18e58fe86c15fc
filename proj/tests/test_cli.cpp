#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tap/cli.hpp"
#include "tap/instance.hpp"

using namespace tap;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli_run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  std::filesystem::path p = std::filesystem::temp_directory_path() / name;
  std::ofstream f(p, std::ios::binary);
  f << text;
  return p.string();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("solve prints the sorted one-based cover") {
  RunResult r = run({"solve", tap_test::fixture_path("P3.tap")});
  CHECK(r.code == 0);
  CHECK(r.out == "s tap 1\nl 1 3\n");
  CHECK(r.err.empty());

  RunResult star = run({"solve", tap_test::fixture_path("STAR4.tap")});
  CHECK(star.code == 0);
  CHECK(star.out == "s tap 2\nl 2 3\nl 4 5\n");
}

TEST_CASE("audit and trace lines precede the solution") {
  RunResult r = run({"solve", tap_test::fixture_path("LOCK.tap"), "--audit", "--root", "1"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "k 3 2 6\n"
        "a ok 7 6\n"
        "k 1 1 4\n"
        "a ok 4 4\n"
        "s tap 3\n"
        "l 1 7\n"
        "l 3 5\n"
        "l 6 7\n");

  RunResult t = run({"solve", tap_test::fixture_path("LOCK.tap"), "--trace", "--root", "1"});
  CHECK(t.code == 0);
  CHECK(t.out == "k 3 2 6\nk 1 1 4\ns tap 3\nl 1 7\nl 3 5\nl 6 7\n");

  RunResult d4 = run({"solve", tap_test::fixture_path("DTREE4.tap"), "--audit", "--root", "1"});
  CHECK(d4.code == 0);
  CHECK(d4.out == "k 4 3 9\na ok 9 8\ns tap 3\nl 1 5\nl 5 6\nl 7 8\n");
}

TEST_CASE("exact witness output") {
  RunResult r = run({"exact", tap_test::fixture_path("DTREE.tap")});
  CHECK(r.code == 0);
  CHECK(r.out == "s opt 2\nl 1 4\nl 5 6\n");

  RunResult lock = run({"exact", tap_test::fixture_path("LOCK.tap")});
  CHECK(lock.code == 0);
  CHECK(lock.out == "s opt 3\nl 1 7\nl 5 6\nl 6 7\n");
}

TEST_CASE("verify judges solution files") {
  std::string lock = tap_test::fixture_path("LOCK.tap");
  std::string good = temp_file("tap_cli_good.sol", "s tap 3\nl 1 7\nl 3 5\nl 6 7\n");
  std::string partial = temp_file("tap_cli_partial.sol", "l 1 7\n");
  std::string unknown = temp_file("tap_cli_unknown.sol", "c comment\nl 2 3\n");
  CHECK(run({"verify", lock, good}).out == "valid\n");
  CHECK(run({"verify", lock, partial}).out == "invalid\n");
  CHECK(run({"verify", lock, unknown}).out == "invalid\n");

  std::string bad_tag = temp_file("tap_cli_badtag.sol", "l 1 7\nx 3 5\n");
  RunResult r = run({"verify", lock, bad_tag});
  CHECK(r.code == 3);
  CHECK(contains(r.err, "parse error at line 2"));

  std::string trailing = temp_file("tap_cli_trailing.sol", "l 1 7 9\n");
  RunResult t = run({"verify", lock, trailing});
  CHECK(t.code == 3);
  CHECK(contains(t.err, "trailing tokens"));

  std::string range = temp_file("tap_cli_range.sol", "l 1 99\n");
  CHECK(run({"verify", lock, range}).code == 3);
}

TEST_CASE("graph inputs reduce to their bridge tree") {
  std::string graph = tap_test::fixture_path("BRIDGE.graph");
  RunResult solve = run({"solve", graph});
  CHECK(solve.code == 0);
  CHECK(solve.out == "s tap 1\nl 1 5\n");

  RunResult exact = run({"exact", graph});
  CHECK(exact.out == "s opt 1\nl 1 5\n");

  std::string good = temp_file("tap_cli_g1.sol", "l 1 5\n");
  std::string inner = temp_file("tap_cli_g2.sol", "l 1 2\nl 1 5\n");
  std::string weak = temp_file("tap_cli_g3.sol", "l 2 4\n");
  std::string alien = temp_file("tap_cli_g4.sol", "l 2 5\n");
  CHECK(run({"verify", graph, good}).out == "valid\n");
  CHECK(run({"verify", graph, inner}).out == "valid\n");  // in-component links are moot
  CHECK(run({"verify", graph, weak}).out == "invalid\n");
  CHECK(run({"verify", graph, alien}).out == "invalid\n");
}

TEST_CASE("analyze dumps the structure report") {
  RunResult r = run({"analyze", tap_test::fixture_path("LOCK.tap")});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "analyze 7 4 14\n"
        "root 2\n"
        "twin 5 6\n"
        "stem 4 5 6\n"
        "locked 5 3\n"
        "candidate 5 6 7 3\n");
}

TEST_CASE("generation is deterministic and self-consistent") {
  std::vector<std::string> args{"gen", "--nodes", "9", "--extra-links", "5", "--seed", "11"};
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  ParsedInput parsed = parse_instance(a.out);
  CHECK(!parsed.is_graph());
  CHECK(parsed.instance().node_count == 9);

  std::filesystem::path p = std::filesystem::temp_directory_path() / "tap_cli_gen.tap";
  RunResult c = run({"gen", "--nodes", "9", "--extra-links", "5", "--seed", "11", "--out",
                     p.string()});
  CHECK(c.code == 0);
  CHECK(c.out.empty());
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == a.out);

  RunResult star = run({"gen", "--nodes", "6", "--model", "star", "--seed", "2"});
  CHECK(star.code == 0);
  CHECK(contains(star.out, "p tap 6"));
}

TEST_CASE("bench reports the worst observed ratio") {
  RunResult r = run({"bench", "--trials", "100", "--max-nodes", "10", "--seed", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "bench 100 1/1 0\n");

  RunResult twice = run({"bench", "--trials", "100", "--max-nodes", "10", "--seed", "5"});
  CHECK(twice.out == r.out);

  RunResult audited = run({"bench", "--trials", "24", "--max-nodes", "9", "--seed", "7",
                           "--audit"});
  CHECK(audited.code == 0);
  CHECK(contains(audited.out, "bench 24 "));
  CHECK(audited.out.substr(audited.out.size() - 3) == " 0\n");

  RunResult bad = run({"bench", "--max-nodes", "3"});
  CHECK(bad.code == 3);
  CHECK(contains(bad.err, "max-nodes"));
}

TEST_CASE("failure exit codes") {
  std::string infeasible = temp_file("tap_cli_inf.tap", "p tap 3 1\ne 1 2\ne 2 3\nl 1 2\n");
  RunResult inf = run({"solve", infeasible});
  CHECK(inf.code == 2);
  CHECK(contains(inf.err, "infeasible: no link covers tree edge 2-3"));

  std::string garbage = temp_file("tap_cli_garbage.tap", "nonsense\n");
  RunResult parse = run({"solve", garbage});
  CHECK(parse.code == 3);
  CHECK(contains(parse.err, "parse error at line 1"));

  RunResult limit = run({"exact", tap_test::fixture_path("LOCK.tap"), "--limit", "3"});
  CHECK(limit.code == 3);
  CHECK(contains(limit.err, "limit exceeded: instance has 4 links, oracle limit is 3"));

  RunResult root = run({"solve", tap_test::fixture_path("P3.tap"), "--root", "9"});
  CHECK(root.code == 3);
  CHECK(contains(root.err, "root node out of range"));

  CHECK(run({"solve", "/no/such/file.tap"}).code == 3);
  CHECK(run({}).code == 3);
  CHECK(run({"nonsense"}).code == 3);
  CHECK(run({"solve"}).code == 3);
}

TEST_CASE("help text exits cleanly") {
  RunResult top = run({"--help"});
  CHECK(top.code == 0);
  CHECK(contains(top.out, "solve"));
  CHECK(contains(top.out, "bench"));

  RunResult sub = run({"solve", "--help"});
  CHECK(sub.code == 0);
  CHECK(contains(sub.out, "--audit"));
}
