#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aniso/csv.hpp"
#include "aniso/optimize.hpp"
#include "aniso/schemes.hpp"
#include "aniso/spectral.hpp"
#include "anisoscope/cli.hpp"

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = anisoscope::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

size_t count_data_rows(const std::string& text) {
    std::istringstream is(text);
    const auto t = aniso::parse_csv(is);
    return t.rows.size();
}

std::string find_comment(const std::string& text, const std::string& needle) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        if (line.rfind("#", 0) == 0 && line.find(needle) != std::string::npos)
            return line;
    return {};
}

} // namespace

TEST_CASE("scheme listing names every built-in discretization") {
    const auto r = cli({"list-schemes"});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    CHECK(count_data_rows(r.out) == 10); // eight catalog + two prefactored
    for (const char* label :
         {"E2", "E4", "E6", "DRP", "C4", "Haras", "Lui", "Lele", "PF4", "PF6"})
        CHECK(r.out.find(label) != std::string::npos);
    // reproduction manifest comes first
    CHECK(r.out.rfind("# anisoscope", 0) == 0);
    CHECK(r.out.find("list-schemes") != std::string::npos);
}

TEST_CASE("wavenumber table starts at the origin and honors the sample count") {
    const auto r = cli({"wavenumber", "--scheme", "E6", "--samples", "64"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    const auto t = aniso::parse_csv(is);
    REQUIRE(t.rows.size() == 64);
    REQUIRE(t.header.size() == 3);
    CHECK(t.number(0, 0) == 0.0);
    CHECK(t.number(0, 2) == 0.0); // k_num(0) = 0
    // last abscissa is exactly the default z_max = pi as printed
    const double zmax = t.number(63, 0);
    CHECK(zmax == doctest::Approx(3.14159265358979323846).epsilon(1e-15));
    // frozen interior sample: full 17-digit round trip through the CSV
    const auto& e6 = aniso::find_scheme("E6");
    const double z17 = t.number(17, 0);
    CHECK(t.number(17, 2) == aniso::modified_wavenumber(e6, z17));
}

TEST_CASE("polar table carries one row per angle plus spread summaries") {
    const auto r = cli({"polar", "--scheme", "E4", "--ppw", "4", "--angles", "72"});
    REQUIRE(r.code == 0);
    CHECK(count_data_rows(r.out) == 72);
    const std::string spread = find_comment(r.out, "spread_phase");
    REQUIRE(!spread.empty());

    // the printed summary must round-trip to the library's own number
    const auto& e4 = aniso::find_scheme("E4");
    const auto sp = aniso::scheme_provider(e4);
    const auto vp = aniso::anisotropy_polar(*sp, 4.0, 72);
    CHECK(spread.find(aniso::format_g17(vp.spread_phase)) != std::string::npos);
    CHECK(spread.find(aniso::format_g17(vp.spread_group)) != std::string::npos);
}

TEST_CASE("optimizer subcommands emit the library optima verbatim") {
    const auto r = cli({"optimize-icf", "--scheme", "E4", "--khmax",
                        "1.5707963267948966", "--mode", "phase"});
    REQUIRE(r.code == 0);
    const auto ref = aniso::icf_optimize(aniso::find_scheme("E4"),
                                         1.5707963267948966,
                                         aniso::IcfMode::Phase);
    CHECK(r.out.find(aniso::format_g17(ref.beta_star)) != std::string::npos);
    CHECK(r.out.find(aniso::format_g17(ref.objective_at_zero)) != std::string::npos);

    const auto g = cli({"optimize-gs", "--wmax", "0.1"});
    REQUIRE(g.code == 0);
    const auto gref = aniso::gs_optimize(0.1);
    CHECK(g.out.find(aniso::format_g17(gref.alpha_star)) != std::string::npos);
}

TEST_CASE("validation failures exit 1 with a categorized message") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"frobnicate"},
             {"wavenumber"},
             {"wavenumber", "--scheme", "E9"},
             {"wavenumber", "--scheme", "E4", "--samples", "1"},
             {"polar", "--scheme", "E4", "--ppw", "1.2"},
             {"optimize-icf", "--scheme", "C4", "--khmax", "0.7"},
             {"optimize-gs", "--wmax", "9.0"},
             {"simulate", "no_such_config_file.cfg"},
         }) {
        const auto r = cli(args);
        CHECK(r.code == 1);
        CHECK(r.err.rfind("ERROR:validation:", 0) == 0);
    }
}

TEST_CASE("numerical failures exit 2 with their own category") {
    std::ofstream("diverge.cfg") << "scheme = E2\n"
                                    "marcher = leapfrog\n"
                                    "n = 16\n"
                                    "k = 40.0\n"
                                    "steps = 2000\n"
                                    "initial = planewave\n"
                                    "ppw = 4\n"
                                    "out_prefix = diverge_run\n";
    const auto r = cli({"simulate", "diverge.cfg"});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("ERROR:divergence:", 0) == 0);
    std::remove("diverge.cfg");
    std::remove("diverge_run_norms.csv");
}

TEST_CASE("simulation driver writes a norms table with manifest and growth") {
    std::ofstream("smoke.cfg") << "# advection smoke case\n"
                                  "scheme = E4\n"
                                  "marcher = rk4\n"
                                  "n = 32\n"
                                  "k = 0.05\n"
                                  "steps = 40\n"
                                  "angle_deg = 30\n"
                                  "initial = planewave\n"
                                  "ppw = 8\n"
                                  "record_stride = 10\n"
                                  "out_prefix = smoke_run\n";
    const auto r = cli({"simulate", "smoke.cfg"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# growth_rate") != std::string::npos);

    std::ifstream csv("smoke_run_norms.csv");
    REQUIRE(csv.good());
    const auto t = aniso::parse_csv(csv);
    CHECK(t.rows.size() == 41); // max norm at every step boundary
    REQUIRE(!t.comments.empty());
    CHECK(t.comments[0].find("anisoscope") != std::string::npos);
    CHECK(t.comments[0].find("simulate") != std::string::npos);

    std::remove("smoke.cfg");
    std::remove("smoke_run_norms.csv");
}

TEST_CASE("config parsing rejects unknown keys, duplicates, and bad numbers") {
    const char* bad[] = {
        "scheme = E4\nwibble = 3\n",
        "scheme = E4\nscheme = E2\n",
        "scheme = E4\nn = twelve\n",
        "scheme = E4\nn\n",
    };
    for (const char* text : bad) {
        std::ofstream("bad.cfg") << text << "initial = planewave\nppw = 8\n";
        const auto r = cli({"simulate", "bad.cfg"});
        CHECK(r.code == 1);
        CHECK(r.err.rfind("ERROR:validation:", 0) == 0);
    }
    std::remove("bad.cfg");
}

TEST_CASE("stability subcommand reports closed and empirical limits together") {
    const auto r = cli({"stability", "--scheme", "E2", "--marcher", "leapfrog",
                        "--n", "16", "--steps", "300", "--span", "0.10",
                        "--step", "0.05"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    const auto t = aniso::parse_csv(is);
    REQUIRE(t.rows.size() == 1);
    const double closed = t.number(0, 4);
    const double emp = t.number(0, 5);
    CHECK(closed == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(emp == doctest::Approx(1.0).epsilon(0.06));
}

TEST_CASE("help requests succeed and name every subcommand") {
    const auto r = cli({"--help"});
    REQUIRE(r.code == 0);
    for (const char* sub : {"list-schemes", "wavenumber", "polar", "optimize-icf",
                            "optimize-gs", "stability", "simulate", "verify"})
        CHECK(r.out.find(sub) != std::string::npos);
}
