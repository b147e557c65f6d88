#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tame3/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = tame3::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json js(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("val") {
  auto r = cli({"val", "--weight", "[3,2,1]", "--poly", "x1 + x2*x3"});
  CHECK(r.code == 0);
  CHECK(r.out == "-3\n");
  auto j = js(cli({"val", "--weight", "[3,2,1]", "--poly", "x1", "--chamber", "(x1 + x2^3, x2, x3)", "--json"}));
  CHECK(j["schema"] == "tame3/1");
  CHECK(j["value"] == "-6");
}

TEST_CASE("classify") {
  auto r = cli({"classify", "--group", "C", "--word", "(x2, x1+x2*x3, x3)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("kind=parabolic, length=0") != std::string::npos);
  auto j = js(cli({"--json", "classify", "--group", "C", "--word", "(x2, x1+x2^2, x3)", "--oracle", "4"}));
  CHECK(j["kind"] == "loxodromic-not-rank-1");
  CHECK(j["length"].get<double>() == doctest::Approx(j["oracle_length"].get<double>()).epsilon(0.01));
}

TEST_CASE("certify spade") {
  auto j = js(cli({"certify", "spade", "--alphamax", "100", "--json"}));
  CHECK(j["value"] == "3/4");
  CHECK(j["argmax"] == 4);
  auto p = cli({"certify", "plain", "--dmax", "5", "--random-forms", "2", "--seed", "3"});
  CHECK(p.code == 0);
}

TEST_CASE("geometry commands") {
  auto fr = js(cli({"fixed-region", "--map", "(x1 + x2*x3, x2, x3)", "--json"}));
  CHECK(fr["rows"] == nlohmann::json::array({"a1>=a2+a3"}));
  auto ls = js(cli({"lines", "--weight", "[5,1,1]", "--json"}));
  CHECK(ls["count"] == 7);
  auto st = js(cli({"stab", "--map", "(2*x1, 3*x2, 5*x3)", "--weight", "[3,2,1]", "--json"}));
  CHECK(st["fixed"] == true);
  CHECK(st["case"] == 2);
  auto ar = js(cli({"arrange", "--window", "a1/a2 in [1,3]; a2/a3 in [1,3]", "--json"}));
  CHECK(ar["faces"].get<int>() - ar["edges"].get<int>() + ar["vertices"].get<int>() == 1);
  auto lc = js(cli({"link-cycle", "--weight", "[2,1,1]", "--chambers", "(x1,x2,x3); (x1,x3,x2)", "--junctions",
                    "q; s", "--json"}));
  CHECK(lc["class"] == "single-apartment");
  CHECK(lc["total_over_pi"].get<double>() == doctest::Approx(2.0));
  auto rc = js(cli({"link-cycle", "--weight", "[4,4,1]", "--random", "3", "--json"}));
  CHECK(rc["cycles"].size() == 3);
  auto nf = js(cli({"normal-form", "--group", "C", "--word", "(x2,x1,x3); (x1+x2^2*x3,x2,x3)", "--json"}));
  CHECK(nf["letters"].size() == 2);
}

TEST_CASE("diagram commands and plots") {
  std::string path = "cli_test_diagram.json";
  {
    std::ofstream f(path);
    f << R"({"schema":"tame3/1","window":"a1/a2 in [1,3]; a2/a3 in [1,3]",)"
      << R"("faces":[{"arr_face_id":0},{"arr_face_id":1},{"arr_face_id":2}]})";
  }
  auto gb = cli({"gb-check", "--window", "a1/a2 in [1,4]; a2/a3 in [1,4]", "--count", "5"});
  CHECK(gb.code == 0);
  auto fold = cli({"fold", "--diagram", path, "--json"});
  if (fold.code == 0) CHECK(js(fold)["folds"].empty());
  auto svg = cli({"plot", "arrangement", "--window", "a1/a2 in [1,3]; a2/a3 in [1,3]", "--out", "cli_test.svg"});
  CHECK(svg.code == 0);
  std::ifstream in("cli_test.svg");
  std::string head;
  std::getline(in, head);
  CHECK(head.find("<svg") != std::string::npos);
  std::remove(path.c_str());
  std::remove("cli_test.svg");
}

TEST_CASE("errors and usage") {
  auto bad = cli({"val", "--weight", "[3,2", "--poly", "x1"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("SyntaxError") != std::string::npos);
  auto j = cli({"--json", "val", "--weight", "[3,2", "--poly", "x1"});
  CHECK(js(j)["error"] == "SyntaxError");
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"val", "--weight", "[3,2,1]"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"stab", "--map", "(x1,x2,x3)", "--weight", "[1,2,3]"}).code == 1);
}
