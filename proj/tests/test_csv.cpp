#include <doctest.h>

#include <fstream>

#include "helpers.hpp"
#include "hirepath/csv.hpp"

using namespace hirepath;

TEST_CASE("csv parses quoted fields, doubled quotes, embedded newlines") {
  auto t = csv::parse("a,b,c\n1,\"x,y\",\"he said \"\"hi\"\"\"\n2,\"line\nbreak\",z\n");
  CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][1] == "x,y");
  CHECK(t.rows[0][2] == "he said \"hi\"");
  CHECK(t.rows[1][1] == "line\nbreak");
}

TEST_CASE("csv accepts CRLF and trailing newline-free input") {
  auto t = csv::parse("a,b\r\n1,2\r\n3,4");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][0] == "3");
  CHECK(t.column("b") == 1);
  CHECK(t.column("missing") == -1);
}

TEST_CASE("csv write/read round trip preserves awkward fields") {
  auto dir = testutil::temp_dir("csv");
  std::vector<std::vector<std::string>> rows = {{"plain", "with,comma"},
                                                {"with \"quote\"", "multi\nline"}};
  csv::write_file(dir + "/t.csv", {"x", "y"}, rows);
  auto t = csv::read_file(dir + "/t.csv");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows == rows);
}

TEST_CASE("csv escape quotes only when needed") {
  CHECK(csv::escape("plain") == "plain");
  CHECK(csv::escape("a,b") == "\"a,b\"");
  CHECK(csv::escape("a\"b") == "\"a\"\"b\"");
}
