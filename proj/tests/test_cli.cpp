#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "finram/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int         code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, std::string const& input = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  int const          code = finram::cli::run(std::move(args), in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("span example and streaming") {
  auto r = run({"span", "--mode", "unsigned", "--k", "1", "--blocks", R"([{"entries":[[0,1]]},{"entries":[[1,1]]}])"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["count"] == 3);
  CHECK(j["elements"].size() == 3);
  CHECK(r.out.back() == '\n');

  auto l = run({"span", "--k", "1", "--format", "jsonl", "--limit", "2", "--blocks",
                R"([{"entries":[[0,1]]},{"entries":[[1,1]]}])"});
  REQUIRE(l.code == 0);
  std::istringstream lines(l.out);
  std::string        line;
  std::vector<json>  docs;
  while (std::getline(lines, line)) docs.push_back(json::parse(line));
  REQUIRE(docs.size() == 3);
  CHECK(docs[0]["count"] == 3);
  CHECK(docs[0]["truncated"] == true);
  CHECK(docs[1]["entries"] == json::parse("[[0,1]]"));
}

TEST_CASE("inputs from stdin and files") {
  std::string const blocks = R"([{"entries":[[0,2]]},{"entries":[[1,2]]}])";
  auto              a      = run({"span", "--k", "2", "--blocks", "-"}, blocks);
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out)["count"] == 5);

  std::string const path = "cli_test_blocks.json";
  std::ofstream(path) << blocks;
  auto b = run({"span", "--k", "2", "--blocks", "@" + path});
  CHECK(b.out == a.out);
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"span", "--bogus"}).code == 2);
  CHECK(run({"span", "--k", "1", "--blocks", "[{"}).code == 2);
  CHECK(run({"span", "--k", "1"}).code == 2);                                   // missing input
  CHECK(run({"tetris", "--k", "1", "--blocks", R"({"entries":[[0,1]]})"}).code == 1);
  CHECK(run({"span", "--k", "1", "--blocks", R"([{"entries":[[1,1]]},{"entries":[[0,1]]}])"}).code == 1);
  CHECK(run({"search", "--k", "1", "--N", "2", "--m", "2", "--family", "nope"}).code == 1);

  auto ex = run({"search", "--mode", "unsigned", "--k", "1", "--N", "2", "--m", "2", "--colours", "2", "--family",
                 "min-position-mod"});
  CHECK(ex.code == 3);
  auto j = json::parse(ex.out);
  CHECK(j["result"] == "exhausted");
  CHECK(j["stats"]["nodes"].get<int>() > 0);
  CHECK(run({"selftest"}).code == 0);
}

TEST_CASE("search output feeds verify") {
  auto s = run({"search", "--mode", "signed", "--k", "2", "--N", "6", "--m", "2", "--colours", "2", "--radius", "1",
                "--family", "value-at-min-support"});
  REQUIRE(s.code == 0);
  auto v = run({"verify", "--witness", "-"}, s.out);
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["ok"] == true);

  auto doc = json::parse(s.out);
  doc["witness"]["blocks"][0]["entries"] = json::parse("[[0,1],[1,2]]");
  auto bad = run({"verify", "--witness", "-"}, doc.dump());
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)["ok"] == false);

  auto p = run({"pipeline", "--k", "1", "--lengths", "[1,2,4,8]", "--family", "matrix-bit", "--row", "1"});
  REQUIRE(p.code == 0);
  CHECK(run({"verify", "--witness", "-"}, p.out).code == 0);

  auto w = run({"search", "--space", "words", "--k", "1", "--lengths", "[2,4]", "--alphabet", R"({"bitstrings":1})",
                "--family", "length-mod"});
  REQUIRE(w.code == 0);
  CHECK(run({"verify", "--witness", "-"}, w.out).code == 0);
}

TEST_CASE("parallel flag does not change output") {
  std::vector<std::string> args{"search", "--mode", "signed", "--k", "2", "--N", "5", "--m", "2",
                                "--radius", "1", "--family", "random", "--seed", "3"};
  auto serial = run(args);
  args.push_back("--parallel");
  CHECK(run(args).out == serial.out);
}

TEST_CASE("encodings through the command line") {
  std::string const y = R"([{"symbols":[{"var":1}]},{"symbols":[{"letter":[1]},{"var":1}]},)"
                        R"({"symbols":[{"var":1},{"letter":[]},{"var":1},{"letter":[]}]},)"
                        R"({"symbols":[{"var":1},{"letter":[]},{"letter":[]},{"letter":[]},{"letter":[]},{"letter":[]},{"letter":[]},{"var":1}]}])";
  auto b = run({"derive-b", "--k", "1", "--words", y});
  REQUIRE(b.code == 0);
  auto B = json::parse(b.out)["B"];
  CHECK(B.size() == 2);

  auto d = run({"decode", "--k", "1", "--words", y, "--blocks", json::array({B[1]}).dump(), "--sigmas", "[[1],[0,1]]",
                "--cols", "3"});
  REQUIRE(d.code == 0);
  auto dj = json::parse(d.out);
  CHECK(dj["phi"] == json::array({B[1]}));

  auto e = run({"encode", "--k", "1", "--cols", "3", "--words", dj["z"].dump()});
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["psi"] == dj["psi"]);

  auto ps = run({"perfect-sets", "--k", "1", "--cols", "2", "--words", y, "--enumerate"});
  REQUIRE(ps.code == 0);
  auto pj = json::parse(ps.out)["perfect_sets"];
  CHECK(pj[0]["count"] == 4);
  CHECK(pj[1]["count"] == 2);
  CHECK(pj[0]["members"].size() == 4);

  auto dist = run({"dist", "--space", "words", "--mode", "signed", "--a", R"({"k":1,"symbols":[{"var":1},{"letter":[1]}]})",
                   "--b", R"({"k":1,"symbols":[{"var":-1},{"letter":[1]}]})"});
  REQUIRE(dist.code == 0);
  CHECK(json::parse(dist.out)["distance"] == 2);
  auto inf = run({"dist", "--space", "words", "--mode", "signed", "--a", R"({"k":1,"symbols":[{"var":1},{"letter":[1]}]})",
                  "--b", R"({"k":1,"symbols":[{"var":1},{"letter":[0,1]}]})"});
  CHECK(json::parse(inf.out)["distance"] == "inf");
}
