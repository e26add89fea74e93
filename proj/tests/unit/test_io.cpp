#include "doctest.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "exact/io.hpp"

using namespace exact;

TEST_SUITE("io") {

TEST_CASE("17 significant digits round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 1.0243042473213593, 1e-300, -2.5e17, 0.0}) CHECK(std::stod(io::fmt(v)) == v);
    CHECK(io::fmt(0.1) == "0.10000000000000001");
}

TEST_CASE("RFC 4180 quoting") {
    CHECK(io::csv_field("plain") == "plain");
    CHECK(io::csv_field("a,b") == "\"a,b\"");
    CHECK(io::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(io::csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("writer and parser round-trip") {
    std::ostringstream out;
    io::CsvWriter w(out);
    w.row({"name", "value"});
    w.row({"x,y", io::fmt(1.5)});
    w.row({"q\"t", io::fmt(-2.0)});
    CHECK(out.str().find("\r\n") != std::string::npos);
    std::istringstream in(out.str());
    const auto t = io::parse_csv(in);
    CHECK(t.header == std::vector<std::string>{"name", "value"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == "x,y");
    CHECK(t.rows[1][0] == "q\"t");
    CHECK(t.numeric_column("value") == std::vector<double>{1.5, -2.0});
    CHECK(t.column("value") == 1);
    CHECK_THROWS_AS(t.column("missing"), std::out_of_range);
}

TEST_CASE("parser accepts LF line endings and quoted newlines") {
    std::istringstream in("a,b\n1,\"x\ny\"\n2,z\n");
    const auto t = io::parse_csv(in);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "x\ny");
    CHECK(t.numeric_column("a") == std::vector<double>{1.0, 2.0});
}

}
