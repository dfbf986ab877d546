#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "aniso/csv.hpp"
#include "aniso/errors.hpp"

using namespace aniso;

namespace {

bool same_bits(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

} // namespace

TEST_CASE("full-precision formatting round-trips every double bit for bit") {
    const double samples[] = {
        0.0,
        -0.0,
        1.0 / 3.0,
        -2.718281828459045,
        6.02214076e23,
        5e-324, // smallest subnormal
        std::numeric_limits<double>::max(),
        std::numeric_limits<double>::min(),
        9007199254740993.0, // needs the full 17 digits
        std::numeric_limits<double>::infinity(),
        -std::numeric_limits<double>::infinity(),
    };
    for (double x : samples) {
        const std::string s = format_g17(x);
        CHECK(same_bits(parse_g17(s), x));
    }
}

TEST_CASE("numeric parsing rejects malformed fields") {
    CHECK_THROWS_AS(parse_g17(""), ValidationError);
    CHECK_THROWS_AS(parse_g17("zebra"), ValidationError);
    CHECK_THROWS_AS(parse_g17("1.5x"), ValidationError);
    CHECK_THROWS_AS(parse_g17("1.2.3"), ValidationError);
}

TEST_CASE("csv writer and parser agree on comments, header, and rows") {
    std::ostringstream os;
    CsvWriter w(os);
    w.comment("anisoscope test table");
    w.header({"z", "k_num"});
    w.row({0.25, std::sin(0.25)});
    w.row({0.5, std::sin(0.5)});

    std::istringstream is(os.str());
    const CsvTable t = parse_csv(is);
    REQUIRE(t.comments.size() == 1);
    CHECK(t.comments[0] == "anisoscope test table");
    REQUIRE(t.header.size() == 2);
    CHECK(t.header[1] == "k_num");
    REQUIRE(t.rows.size() == 2);
    CHECK(same_bits(t.number(0, 1), std::sin(0.25)));
    CHECK(same_bits(t.number(1, 0), 0.5));
    CHECK_THROWS_AS(t.number(5, 0), ValidationError);
}
