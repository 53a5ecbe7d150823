#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "jh/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = jh::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  const Result r = run(args);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  // canonical output: re-rendering the parsed document gives the same bytes
  CHECK(j.dump(2) + "\n" == r.out);
  return j;
}

}  // namespace

TEST_CASE("pseries") {
  const Result r = run({"pseries", "--prime", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n1   p\n") != std::string::npos);
  const auto j = run_json({"pseries", "--prime", "3"});
  CHECK(j["rows"][0]["m"] == 1);
  CHECK(j["rows"][0]["text"] == "p");
  for (const auto& row : j["rows"]) CHECK(row["m"].get<int>() % 2 == 1);
  CHECK(j["rows"][1]["text"] == "v1");
}

TEST_CASE("odd primes only") {
  CHECK(run({"pseries", "--prime", "2"}).code == 1);
  CHECK(run({"selfcheck", "--prime", "2"}).code == 1);
  CHECK(run({"qpoly", "--prime", "9"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate", "--prime", "3"}).code == 1);
  CHECK(run({"qpoly"}).code == 1);
  CHECK(run({"hopf", "--prime", "3", "--i", "0"}).code == 1);
  CHECK(run({"hopf", "--prime", "3", "--i", "0", "--j", "2", "--v2", "1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("qpoly") {
  const auto j = run_json({"qpoly", "--prime", "3"});
  REQUIRE(j["c"].size() == 4);
  REQUIRE(j["valuations"].size() == 4);
  CHECK(j["c"][3] == "p*v2^-1");
  CHECK(j["c"][2] == "v1*v2^-1");
  CHECK(j["valuations"][3]["p"] == 1);
  CHECK(j["valuations"][3]["u1"] == 0);
  CHECK(j["valuations"][2]["p"] == 0);
  CHECK(j["valuations"][2]["u1"] == 1);
  for (int i = 0; i < 2; ++i) {
    CHECK(j["valuations"][i]["p"].get<int>() >= 1);
    CHECK(j["valuations"][i]["u1"].get<int>() >= 1);
  }
  const Result text = run({"qpoly", "--prime", "5"});
  CHECK(text.code == 0);
  CHECK(text.out.find("i  c_i") != std::string::npos);
}

TEST_CASE("qpoly fault injection") {
  const Result r = run({"qpoly", "--prime", "3", "--inject-fault"});
  CHECK(r.code == 2);
  CHECK(r.err.find("PatternViolation") != std::string::npos);
}

TEST_CASE("hopf beta_1 at p = 5") {
  const auto j = run_json({"hopf", "--prime", "5", "--i", "0", "--j", "1", "--v2", "1"});
  CHECK(j["prime"] == 5);
  CHECK(j["command"] == "hopf");
  CHECK(j["input"] == nlohmann::json{{"v2", 1}, {"p_exp", 1}, {"v1", 1}});
  CHECK(j["filtration"] == 6);
  CHECK(j["detector"] == nlohmann::json{{"v2", 0}, {"v1", 1}});
  CHECK(j["value"] == nlohmann::json::parse(R"([{"p_den":1,"v1_den":1,"coeff":"4"}])"));
  CHECK(j["precision"] == nlohmann::json{{"p", 4}, {"u1", 4}});
  CHECK(j["zero_above"] == true);
}

TEST_CASE("hopf at p = 3") {
  const auto a = run_json({"hopf", "--prime", "3", "--i", "1", "--j", "3", "--v2", "3"});
  CHECK(a["filtration"] == 11);
  CHECK(a["exploratory"] == false);
  const auto b = run_json({"hopf", "--prime", "3", "--i", "2", "--j", "3", "--v2", "3"});
  CHECK(b["exploratory"] == true);
  const Result text = run({"hopf", "--prime", "3", "--i", "0", "--j", "2"});
  CHECK(text.code == 0);
  CHECK(text.out.find("filtration  7") != std::string::npos);
}

TEST_CASE("precision failures exit with 3") {
  CHECK(run({"hopf", "--prime", "3", "--i", "0", "--j", "1", "--p-prec", "1"}).code == 3);
  CHECK(run({"hopf", "--prime", "3", "--i", "1", "--j", "3", "--u-prec", "2"}).code == 3);
}

TEST_CASE("powersums, jh and gram") {
  const auto s = run_json({"powersums", "--prime", "3", "--k-max", "8"});
  REQUIRE(s["rows"].size() == 8);
  CHECK(s["rows"][3]["methods"].size() == 3);
  const auto jh = run_json({"jh", "--prime", "3", "--k-max", "5"});
  REQUIRE(jh["rows"].size() == 5);
  CHECK(jh["rows"][0]["u1_val"].get<int>() >= 1);
  CHECK(jh["rows"][3]["p_val"] == 0);
  const auto g = run_json({"gram", "--prime", "5"});
  CHECK(g["antidiagonal_units"] == true);
  CHECK(g["above_in_maximal_ideal"] == true);
  CHECK(g["entries"].size() == 6);
}

TEST_CASE("selfcheck") {
  const Result r = run({"selfcheck", "--prime", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const auto j = run_json({"selfcheck", "--prime", "5"});
  CHECK(j["passed"] == true);
  CHECK(j["suites"].size() == 5);
  for (const auto& s : j["suites"]) CHECK(s.contains("seconds"));
}
