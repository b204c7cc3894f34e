#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "statkit/csv.hpp"
#include "statkit/jsonio.hpp"

using namespace statkit;
using nlohmann::json;

TEST_CASE("csv ingestion: typed columns with a header row") {
    std::istringstream in("x,y\n1,2\n3.5,-4\n");
    CsvTable t = read_csv(in);
    REQUIRE(t.columns == std::vector<std::string>{"x", "y"});
    CHECK(t.rows() == 2);
    CHECK(t.column("x")[1] == 3.5);
    CHECK(t.column("y")[1] == -4.0);
    CHECK_THROWS_AS(t.column("z"), ingestion_error);
}

TEST_CASE("csv ingestion errors name the row and column") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_csv(empty), ingestion_error);

    std::istringstream ragged("a,b\n1\n");
    CHECK_THROWS_WITH(read_csv(ragged), Catch::Matchers::ContainsSubstring("row 2"));

    std::istringstream bad("a,b\n1,x\n");
    try {
        read_csv(bad);
        FAIL("expected ingestion error");
    } catch (const ingestion_error& e) {
        std::string what = e.what();
        CHECK(what.find("row 2") != std::string::npos);
        CHECK(what.find("column 2") != std::string::npos);
    }

    std::istringstream nan_cell("a\nnan\n");
    CHECK_THROWS_AS(read_csv(nan_cell), ingestion_error);
}

TEST_CASE("quoted fields parse per RFC 4180") {
    std::istringstream in("\"a,b\",c\n\"1\",2\n3,\"4\"\n");
    CsvTable t = read_csv(in);
    REQUIRE(t.columns.size() == 2);
    CHECK(t.columns[0] == "a,b");
    CHECK(t.column("c")[0] == 2.0);
    CHECK(t.data[0][1] == 3.0);
}

TEST_CASE("crlf line endings are accepted") {
    std::istringstream in("x\r\n1\r\n2\r\n");
    CsvTable t = read_csv(in);
    CHECK(t.rows() == 2);
    CHECK(t.column("x")[1] == 2.0);
}

TEST_CASE("csv writer round-trips through the reader") {
    std::ostringstream out;
    write_csv(out, {"u", "v"}, {{0.1, 0.25}, {1e-3, 3.0}});
    std::istringstream in(out.str());
    CsvTable t = read_csv(in);
    CHECK(t.column("u")[0] == 0.1);
    CHECK(t.column("v")[0] == 1e-3);
    CHECK(t.column("v")[1] == 3.0);
}

TEST_CASE("canonical json dump is byte-stable under reparse") {
    json j;
    j["beta"] = 0.1;
    j["alpha"] = std::vector<double>{1.0 / 3.0, 2.0, 1e-17};
    j["name"] = "report";
    j["count"] = 42;
    j["flag"] = true;
    std::string once = canonical_dump(j);
    std::string twice = canonical_dump(json::parse(once));
    CHECK(once == twice);
    // keys are emitted in sorted order; strings survive intact
    CHECK(once.find("\"alpha\"") < once.find("\"beta\""));
    CHECK(once.find("\"beta\"") < once.find("\"count\""));
    CHECK(once.find("\"name\":\"report\"") != std::string::npos);
}

TEST_CASE("floats carry 17 significant digits") {
    json j{{"v", 0.34}};
    std::string s = canonical_dump(j);
    CHECK(s.find("0.34000000000000002") != std::string::npos);
}

TEST_CASE("config hash is stable and content-sensitive") {
    json a{{"cmd", "ci"}, {"n", 400}};
    json b{{"cmd", "ci"}, {"n", 401}};
    CHECK(config_hash(a) == config_hash(a));
    CHECK(config_hash(a) != config_hash(b));
    CHECK(config_hash(a).size() == 16);
}
