#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "polyspec/emit.hpp"

using namespace polyspec;

TEST_CASE("shortest round-trip doubles") {
    for (double x : {0.1, 1.0 / 3.0, 6.02681203969194, 1e-300, -2.5e17}) CHECK(std::stod(format_double(x)) == x);
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("csv and json are deterministic") {
    Table t{{"s", "value", "method", "ok"}, {}};
    t.add({2.0, 0.1, std::string("chowla-selberg"), true});
    t.add({std::int64_t(3), 1.0 / 3.0, std::string("a,b"), false});
    const std::string csv = to_csv(t);
    CHECK(csv == to_csv(t));
    CHECK(csv.rfind("s,value,method,ok\n", 0) == 0);
    CHECK(csv.find("\"a,b\"") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);

    const Json j = to_json(t);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["value"].get<double>() == 0.1);
    CHECK(j[1]["s"].get<std::int64_t>() == 3);
    CHECK(Json::parse(dump(j)) == j);
    CHECK(render(t, OutputFormat::Json) == dump(j));
    CHECK_THROWS(parse_output_format("xml"));
}

TEST_CASE("emit to a file") {
    const std::string path = "polyspec_emit_test.csv";
    emit("a\n1\n", path);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == "a\n1\n");
    std::remove(path.c_str());
    CHECK_THROWS(emit("x", std::string("no/such/dir/out.csv")));
}
