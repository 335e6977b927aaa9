#include <doctest.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "multibanana/cli.hpp"

using namespace mb::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "gvbanana");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string capture(const std::string& command) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

}  // namespace

TEST_CASE("compute csv") {
  const auto r = invoke({"compute", "--shape", "1xW", "--w", "1", "--order", "4", "--format", "csv"});
  CHECK(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "r0,s,value");
  CHECK(first == "0,0,1");
  CHECK(r.out.find("\n1,1,8\n") != std::string::npos);
}

TEST_CASE("compute json") {
  const auto r = invoke({"compute", "--shape", "2x2", "--order", "3"});
  CHECK(r.code == kExitOk);
  const auto doc = nlohmann::ordered_json::parse(r.out);
  CHECK(doc["shape"] == "2x2");
  CHECK(doc["order"] == 3);
  CHECK(doc["variables"] == nlohmann::ordered_json::array({"r0", "r1", "s0", "s1"}));
  CHECK(doc["coefficients"][0]["value"] == "2");
  CHECK(doc.dump(2) + "\n" == r.out);
}

TEST_CASE("verify and crosscheck") {
  const auto v = invoke({"verify", "--order", "12"});
  CHECK(v.code == kExitOk);
  const auto vdoc = nlohmann::ordered_json::parse(v.out);
  CHECK(vdoc["passed"] == true);

  const auto c = invoke({"crosscheck", "--shape", "2x2", "--order", "8"});
  CHECK(c.code == kExitOk);
  CHECK(nlohmann::ordered_json::parse(c.out)["passed"] == true);

  const auto csv = invoke({"crosscheck", "--shape", "1xW", "--w", "2", "--order", "5", "--format", "csv"});
  CHECK(csv.code == kExitOk);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"compute", "--shape", "3x3"}).code == kExitUsage);
  CHECK(invoke({"compute", "--order", "-1"}).code == kExitUsage);
  CHECK(invoke({"compute", "--shape", "1xW", "--w", "0"}).code == kExitUsage);
  CHECK(invoke({"compute", "--format", "xml"}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK_FALSE(invoke({"compute", "--bogus"}).err.empty());
}

TEST_CASE("binary output is deterministic") {
  const std::string cmd = std::string(GVBANANA_PATH) + " compute --shape 1xW --w 2 --order 5";
  const std::string a = capture(cmd);
  const std::string b = capture(cmd);
  CHECK_FALSE(a.empty());
  CHECK(a == b);
  CHECK(nlohmann::ordered_json::parse(a).dump(2) + "\n" == a);
}
