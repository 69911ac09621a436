#include "doctest.h"
#include "json.hpp"
#include "spectec/report.hpp"

using namespace spectec;

TEST_CASE("the JSON report matches the documented schema") {
  RunReport report;
  FileReport f;
  f.file = "suite/x.minwast";
  f.passed = 3;
  f.failed = 1;
  f.trapped_as_expected = 1;
  f.failures.push_back(AssertionFailure{7, "(invoke \"f\")", "[i32.const 1]",
                                        "[i32.const 2]"});
  report.files.push_back(f);
  report.wall_seconds = 0.25;

  auto j = nlohmann::json::parse(report.to_json());
  CHECK(j["schema_version"] == 1);
  CHECK(j["total"]["assertions"] == 4);
  CHECK(j["total"]["passed"] == 3);
  CHECK(j["total"]["failed"] == 1);
  CHECK(j["wall_seconds"].is_number());
  REQUIRE(j["files"].is_array());
  REQUIRE(j["files"].size() == 1);
  auto jf = j["files"][0];
  CHECK(jf["file"] == "suite/x.minwast");
  CHECK(jf["assertions"] == 4);
  CHECK(jf["passed"] == 3);
  CHECK(jf["failed"] == 1);
  CHECK(jf["trapped_as_expected"] == 1);
  REQUIRE(jf["failures"].size() == 1);
  CHECK(jf["failures"][0]["command_index"] == 7);
  CHECK(jf["failures"][0]["expected"] == "[i32.const 1]");
  CHECK(jf["failures"][0]["actual"] == "[i32.const 2]");
}

TEST_CASE("passed plus failed equals the total") {
  RunReport report;
  FileReport a;
  a.passed = 5;
  a.failed = 2;
  FileReport b;
  b.passed = 1;
  report.files = {a, b};
  CHECK(report.total() == report.passed() + report.failed());
  CHECK(report.total() == 8);
  CHECK(!report.ok());
}

TEST_CASE("the summary line has the documented shape") {
  RunReport report;
  FileReport a;
  a.passed = 7;
  report.files = {a};
  report.wall_seconds = 1.5;
  CHECK(report.summary() == "7/7 assertions passed in 1.500s");
}

TEST_CASE("report serialization is stable given identical inputs") {
  RunReport report;
  FileReport a;
  a.file = "x";
  a.passed = 2;
  report.files = {a};
  report.wall_seconds = 0.125;  // exact in binary, stable through JSON
  CHECK(report.to_json() == report.to_json());
}
