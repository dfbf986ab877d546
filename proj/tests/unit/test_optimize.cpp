#include <doctest.h>

#include <cmath>

#include "aniso/errors.hpp"
#include "aniso/optimize.hpp"
#include "aniso/schemes.hpp"

using namespace aniso;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("diagonal-blend optimizer reproduces frozen optima") {
    struct Fix {
        const char* label;
        double kh_max;
        double beta_star;
    };
    const Fix fixtures[] = {
        {"E2", kPi / 4.0, 0.51687755441728278},
        {"E2", kPi / 2.0, 0.57195800268141805},
        {"E4", kPi / 4.0, 0.26820558082501345},
        {"E4", kPi / 2.0, 0.33173034301243221},
        {"E6", kPi / 4.0, 0.13975723344750293},
        {"E6", kPi / 2.0, 0.19553686284089272},
    };
    for (const auto& f : fixtures) {
        const auto r = icf_optimize(find_scheme(f.label), f.kh_max, IcfMode::Phase);
        CHECK(r.beta_star == doctest::Approx(f.beta_star).epsilon(1e-6));
        CHECK(r.objective_at_star < r.objective_at_zero);
        CHECK(!r.degenerate_flat);
    }

    // group-velocity flavor selects a different optimum
    const auto g = icf_optimize(find_scheme("E4"), kPi / 2.0, IcfMode::Group);
    CHECK(g.beta_star == doctest::Approx(0.3796631231279437).epsilon(1e-6));
    CHECK(g.objective_at_star < g.objective_at_zero);
}

TEST_CASE("diagonal-blend objective evaluates the frozen baseline cost") {
    const IcfObjective obj(find_scheme("E4"), kPi / 2.0, IcfMode::Phase);
    CHECK(obj(0.0) == doctest::Approx(2.3017491344642432e-03).epsilon(1e-12));
    CHECK(obj(0.33173034301243221) ==
          doctest::Approx(4.8728051355327632e-06).epsilon(1e-9));
    CHECK(obj(0.33173034301243221) < obj(0.0));
    CHECK(obj(0.33173034301243221) < obj(0.6));

    CHECK_THROWS_AS(IcfObjective(find_scheme("E4"), 0.0, IcfMode::Phase),
                    ValidationError);
    CHECK_THROWS_AS(IcfObjective(find_scheme("E4"), 3.5, IcfMode::Phase),
                    ValidationError);
    CHECK_THROWS_AS(IcfObjective(find_scheme("C4"), kPi / 2.0, IcfMode::Phase),
                    ValidationError);
    CHECK_THROWS_AS(obj(-0.25), ValidationError);
}

TEST_CASE("golden section minimizer brackets smooth minima") {
    bool flat = false;
    const double x = golden_section_min(
        [](double t) { return (t - 0.7) * (t - 0.7) + 3.0; }, 0.0, 2.0, 1e-10,
        101, &flat);
    CHECK(x == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(!flat);

    // flat objective is flagged and resolved to the left endpoint
    const double xf =
        golden_section_min([](double) { return 4.0; }, 1.0, 3.0, 1e-10, 11, &flat);
    CHECK(flat);
    CHECK(xf == 1.0);

    CHECK_THROWS_AS(golden_section_min([](double t) { return t; }, 2.0, 1.0, 1e-8),
                    ValidationError);
    CHECK_THROWS_AS(golden_section_min([](double t) { return t; }, 0.0, 1.0, 0.0),
                    ValidationError);
    CHECK_THROWS_AS(golden_section_min([](double t) { return t; }, 0.0, 1.0, 1e-8, 2),
                    ValidationError);
}

TEST_CASE("tridiagonal family coefficients hit the classical members") {
    const auto c3 = gs_coefficients(1.0 / 3.0);
    CHECK(c3.a == doctest::Approx(14.0 / 9.0).epsilon(1e-15));
    CHECK(c3.b == doctest::Approx(1.0 / 9.0).epsilon(1e-15));

    const auto c4 = gs_coefficients(0.25);
    CHECK(c4.a == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(std::abs(c4.b) < 1e-16);

    const auto c0 = gs_coefficients(0.0);
    CHECK(c0.a == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(c0.b == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("family wavenumber response and isotropy optimum") {
    CHECK(gs_wd(1.0 / 3.0, 1.0) == doctest::Approx(0.99946320581460357).epsilon(1e-12));
    CHECK(gs_wd(1.0 / 3.0, 0.0) == 0.0);
    CHECK_THROWS_AS(gs_wd(0.5, kPi), NumericError); // 1 + 2 alpha cos(pi) = 0

    // narrow band: the sixth-order member is nearly optimal
    const auto r = gs_optimize(0.1);
    CHECK(r.alpha_star == doctest::Approx(0.33338713096333961).epsilon(1e-6));
    CHECK(std::abs(r.alpha_star - 1.0 / 3.0) < 0.01);
    CHECK(r.error_at_star < r.error_at_zero);

    // wider band drags the optimum away from the formal-order point
    const auto rw = gs_optimize(0.5);
    CHECK(rw.alpha_star == doctest::Approx(0.33469275959243211).epsilon(1e-6));
    CHECK(std::abs(rw.alpha_star - 1.0 / 3.0) >
          std::abs(r.alpha_star - 1.0 / 3.0));

    CHECK(gs_isotropy_error(1.0 / 3.0, kPi / 2.0) <
          gs_isotropy_error(0.0, kPi / 2.0));
    CHECK_THROWS_AS(gs_isotropy_error(0.3, 4.0), ValidationError);
}

TEST_CASE("azimuthally averaged calibration weight is resolution-dependent only") {
    const double m1 = koh_mean_alpha(0.6, 0.5, 64);
    CHECK(m1 == doctest::Approx(0.16931789828779906).epsilon(1e-10));
    // axis-referenced frequency makes the average Courant-independent
    CHECK(koh_mean_alpha(0.6, 0.2, 64) == doctest::Approx(m1).epsilon(1e-12));
    CHECK(koh_mean_alpha(0.6, 0.9, 64) == doctest::Approx(m1).epsilon(1e-12));

    CHECK_THROWS_AS(koh_mean_alpha(0.6, 0.5, 4), ValidationError);
    CHECK_THROWS_AS(koh_mean_alpha(0.0, 0.5, 64), ValidationError);
    CHECK_THROWS_AS(koh_mean_alpha(0.6, 1.5, 64), ValidationError);
}
