#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "erdos/cli.hpp"
#include "erdos/report.hpp"
#include "json.hpp"

using erdos::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json invoke_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Result r = invoke(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("report: csv quoting") {
  using erdos::report::csv_field;
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(csv_field("") == "");

  erdos::report::Report rep;
  rep.columns = {"x", "note"};
  rep.add_row({std::uint64_t{1}, std::string("a,b")});
  rep.add_row({2.5, true});
  std::ostringstream out;
  erdos::report::write(rep, erdos::report::Format::csv, out);
  CHECK(out.str() == "x,note\r\n1,\"a,b\"\r\n2.5,true\r\n");
  CHECK_THROWS(rep.add_row({std::uint64_t{1}}));
}

TEST_CASE("binomial subcommands") {
  const json f = invoke_json({"binomial", "f", "--n", "10"});
  REQUIRE(f["rows"].size() == 1);
  CHECK(f["rows"][0]["n"] == "10");
  CHECK(f["rows"][0]["f"] == "7");
  CHECK(f["verdict"] == "computed");

  const json trace = invoke_json({"binomial", "f", "--n", "10", "--trace"});
  REQUIRE(trace["rows"].size() == 8);  // k = 0..7
  CHECK(trace["rows"][7]["k"] == 7);
  CHECK(trace["rows"][7]["exceeds"] == true);
  CHECK(trace["rows"][6]["exceeds"] == false);

  const json w = invoke_json({"binomial", "witness", "--K", "5"});
  CHECK(w["meta"]["M_K"] == "1800");
  CHECK(w["rows"].size() == 6);
  for (const auto& row : w["rows"]) CHECK(row["u"] == "1");
  CHECK(w["verdict"] == "verified");

  const json scan = invoke_json({"binomial", "f-scan", "--from", "10", "--to", "20", "--stride", "5"});
  REQUIRE(scan["rows"].size() == 3);
  CHECK(scan["rows"][0]["f"] == "7");

  const json cert = invoke_json({"binomial", "certificate", "--n", "10000", "--C", "6.21"});
  CHECK(cert["rows"][0]["Y"] == 526);
  CHECK(cert["rows"][0]["certifies"] == true);
  CHECK(cert["rows"][0]["confirmed"] == true);

  // big n goes through the arbitrary-precision path
  const json big = invoke_json({"binomial", "f", "--n", "100000000000000000000000000000"});
  CHECK(big["rows"][0]["n"] == "100000000000000000000000000000");

  CHECK(invoke({"binomial", "f", "--n", "0"}).code == 1);
  CHECK(invoke({"binomial", "f", "--n", "-3"}).code == 1);
  CHECK(invoke({"binomial", "f", "--n", "12x"}).code == 1);
  CHECK(invoke({"binomial", "f"}).code == 1);
  CHECK(invoke({"binomial", "certificate", "--n", "2"}).code == 1);
}

TEST_CASE("basis subcommands") {
  const json cover = invoke_json({"basis", "cover", "--k", "1"});
  CHECK(cover["rows"][0]["pass"] == true);
  CHECK(cover["rows"][0]["lo"] == 4);
  CHECK(cover["rows"][0]["hi"] == 30);

  const json reps = invoke_json({"basis", "reps", "--n", "9"});
  REQUIRE(reps["rows"].size() == 1);
  CHECK(reps["rows"][0]["a"] == 4);
  CHECK(reps["rows"][0]["b"] == 5);

  const json gaps = invoke_json({"basis", "gaps", "--rule", "all-c-to-1", "--k", "3"});
  CHECK(gaps["rows"][0]["lo"] == 225);
  CHECK(gaps["rows"][0]["hi"] == 249);
  CHECK(gaps["rows"][0]["gapped_color"] == 2);
  CHECK(gaps["rows"][0]["pass"] == true);

  const json rig = invoke_json({"basis", "rigidity", "--k", "3"});
  CHECK(rig["rows"][0]["pass"] == true);

  // --seed drives the plain "random" rule
  const json r7 = invoke_json({"basis", "gaps", "--rule", "random", "--k", "4", "--seed", "7"});
  const json r7b = invoke_json({"basis", "gaps", "--rule", "random:7", "--k", "4"});
  CHECK(r7 == r7b);

  CHECK(invoke({"basis", "gaps", "--rule", "nonsense", "--k", "3"}).code == 1);
  CHECK(invoke_json({"basis", "cover", "--k", "0"})["rows"][0]["hi"] == 6);
  CHECK(invoke({"basis", "cover", "--k", "40"}).code == 1);
  CHECK(invoke({"basis", "cover"}).code == 1);
}

TEST_CASE("equidist subcommands") {
  const json ap = invoke_json({"equidist", "approx", "--alpha", "3.14159265358979", "--Q", "10"});
  CHECK(ap["rows"][0]["a"] == "22");
  CHECK(ap["rows"][0]["q"] == 7);
  CHECK(ap["meta"]["alpha"] == "3.1415926535897900000000000000000000000000");

  const json s = invoke_json({"equidist", "string", "--q", "4", "--a", "1", "--m", "2", "--limit", "100"});
  CHECK(s["rows"][0]["primes"] == "13 17");

  const json c = invoke_json(
      {"equidist", "cluster", "--alpha", "1.4142135623730951", "--delta", "0.2", "--m", "2", "--limit", "1000000"});
  CHECK(c["verdict"] == "verified");
  CHECK(c["rows"][0]["window_discrepancy"].get<double>() >= 0.8);

  const json sc = invoke_json({"equidist", "scan", "--alpha", "0.5", "--k", "4", "--limit", "50"});
  CHECK(sc["rows"][0]["windows"] == 51);

  CHECK(invoke({"equidist", "string", "--q", "7", "--a", "1", "--m", "3", "--limit", "1000"}).code == 3);
  CHECK(invoke({"equidist", "cluster", "--alpha", "1.4142135623730951", "--delta", "0.2", "--m", "6", "--limit",
                "1000"})
            .code == 3);
  CHECK(invoke({"equidist", "approx", "--alpha", "pi", "--Q", "10"}).code == 1);
  CHECK(invoke({"equidist", "approx", "--alpha", "3.14", "--Q", "0"}).code == 1);
  CHECK(invoke({"equidist", "string", "--q", "4", "--a", "2", "--m", "2", "--limit", "100"}).code == 1);
  CHECK(invoke({"equidist", "cluster", "--alpha", "1.5", "--delta", "0.7", "--m", "2", "--limit", "100"}).code ==
        1);
}

TEST_CASE("global flags and formats") {
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"nope"}).code == 1);
  CHECK(invoke({"binomial", "f", "--n", "10", "--format", "xml"}).code == 1);
  CHECK(invoke({"binomial", "f", "--n", "10", "--threads", "0"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);

  const Result csv = invoke({"--format", "csv", "binomial", "f", "--n", "10"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("n,f,log_u,decided_exactly,exact_fallbacks,f_over_log2\r\n10,7,", 0) == 0);

  const json j = invoke_json({"binomial", "f", "--n", "10"});
  CHECK(j.contains("meta"));
  CHECK(j.contains("rows"));
  CHECK(j.contains("verdict"));
  CHECK(j.size() == 3);
  CHECK(!j["meta"].contains("seconds"));
  CHECK(invoke_json({"binomial", "f", "--n", "10", "--timing"})["meta"].contains("seconds"));

  const std::string path = "cli_output_test.json";
  const Result to_file = invoke({"binomial", "f", "--n", "10", "--format", "json", "--output", path});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(json::parse(buf.str()) == j);
  std::remove(path.c_str());
}

TEST_CASE("output does not depend on thread count") {
  const std::vector<std::vector<std::string>> commands = {
      {"binomial", "f-scan", "--from", "1", "--to", "400"},
      {"equidist", "scan", "--alpha", "1.6180339887498948", "--k", "30", "--limit", "3000", "--stride", "2"},
  };
  for (const auto& base : commands) {
    for (const char* format : {"table", "csv", "json"}) {
      std::vector<std::string> args = base;
      args.insert(args.end(), {"--format", format, "--threads", "1"});
      const Result one = invoke(args);
      REQUIRE(one.code == 0);
      for (const char* t : {"2", "3", "8"}) {
        args.back() = t;
        CHECK(invoke(args).out == one.out);
      }
    }
  }
}

TEST_CASE("resolve_threads") {
  CHECK(erdos::cli::resolve_threads(4) == 4);
  CHECK(erdos::cli::resolve_threads(0) == 1);
}
