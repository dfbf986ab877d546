#include <doctest.h>

#include <cmath>

#include "aniso/errors.hpp"
#include "aniso/schemes.hpp"
#include "aniso/stability.hpp"

using namespace aniso;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("diagonal-blend stability gain follows its closed form") {
    CHECK(leapfrog_md_factor(0.0) == 1.0);
    CHECK(leapfrog_md_factor(2.0) == doctest::Approx(1.5).epsilon(1e-15));
    double prev = 0.0;
    for (double beta : {0.0, 0.25, 1.0, 4.0, 50.0, 1e6}) {
        const double f = leapfrog_md_factor(beta);
        CHECK(f >= 1.0);
        CHECK(f < 2.0);
        CHECK(f >= prev);
        CHECK(f == doctest::Approx((2.0 * beta + 2.0) / (beta + 2.0)).epsilon(1e-15));
        prev = f;
    }
    CHECK_THROWS_AS(leapfrog_md_factor(-0.5), ValidationError);
}

TEST_CASE("advection stability verdicts respect the region boundaries") {
    // conventional: load is the Courant sum
    StabilityQuery q{0.4, 0.3, 0.0, 1.0};
    auto v = advection_limit(q, false);
    CHECK(v.stable);
    CHECK(v.margin == doctest::Approx(0.3).epsilon(1e-15));

    q.sigma_x = 0.8;
    q.sigma_y = 0.3;
    v = advection_limit(q, false);
    CHECK(!v.stable);
    CHECK(v.margin == doctest::Approx(-0.1).epsilon(1e-12));

    // multidimensional region at beta = 0 coincides with the conventional one
    q = StabilityQuery{0.37, 0.18, 0.0, 0.72};
    const auto vc = advection_limit(q, false);
    const auto vm = advection_limit(q, true);
    CHECK(vm.stable == vc.stable);
    CHECK(vm.margin == doctest::Approx(vc.margin).epsilon(1e-14));

    // on the grid diagonal the blend relaxes the limit by the closed-form gain
    const double beta = 1.2, cfl = 0.7;
    const double gain = leapfrog_md_factor(beta);
    const double s_conv = cfl / 2.0; // conventional equal-Courant limit
    StabilityQuery qd{s_conv * gain, s_conv * gain, beta, cfl};
    v = advection_limit(qd, true);
    CHECK(std::abs(v.margin) < 1e-12); // lands exactly on the boundary
    qd.sigma_x = qd.sigma_y = s_conv * gain * 1.001;
    CHECK(!advection_limit(qd, true).stable);
    qd.sigma_x = qd.sigma_y = s_conv * gain * 0.999;
    CHECK(advection_limit(qd, true).stable);

    CHECK_THROWS_AS(advection_limit(StabilityQuery{-0.1, 0.0, 0.0, 1.0}, false),
                    ValidationError);
}

TEST_CASE("sweep-pair region is swap-invariant with a closed diagonal solution") {
    const double xi = kPi;
    StabilityQuery a{0.05, 0.02, 0.6, 1.0};
    StabilityQuery b{0.02, 0.05, 0.6, 1.0};
    const auto va = maccormack_limit(a, xi);
    const auto vb = maccormack_limit(b, xi);
    CHECK(va.stable == vb.stable);
    CHECK(va.margin == doctest::Approx(vb.margin).epsilon(1e-15));

    for (double beta : {0.0, 0.5, 1.0, 3.0}) {
        const double smax = maccormack_diagonal_sigma_max(beta, xi);
        StabilityQuery qd{smax, smax, beta, 1.0};
        CHECK(std::abs(maccormack_limit(qd, xi).margin) < 1e-12);
        qd.sigma_x = qd.sigma_y = smax * 1.001;
        CHECK(!maccormack_limit(qd, xi).stable);
    }

    // frozen endpoints of the diagonal solution
    CHECK(maccormack_diagonal_sigma_max(0.0, kPi) ==
          doctest::Approx(std::pow(2.0 * kPi, -1.5)).epsilon(1e-14));
    CHECK(maccormack_diagonal_sigma_max(0.0, kPi) ==
          doctest::Approx(0.063493635934240969).epsilon(1e-14));
    CHECK(maccormack_diagonal_sigma_max(1.0, kPi) ==
          doctest::Approx(0.086299754655146305).epsilon(1e-14));

    // monotone in beta, saturating at xi_max^(-3/2)
    const double lim = std::pow(kPi, -1.5);
    double prev = 0.0;
    for (double beta : {0.0, 1.0, 10.0, 100.0, 1e4}) {
        const double s = maccormack_diagonal_sigma_max(beta, kPi);
        CHECK(s > prev);
        CHECK(s < lim);
        prev = s;
    }
    CHECK(std::abs(maccormack_diagonal_sigma_max(1e4, kPi) - lim) / lim < 0.005);

    CHECK_THROWS_AS(maccormack_diagonal_sigma_max(0.0, 0.0), ValidationError);
    CHECK_THROWS_AS(maccormack_limit(StabilityQuery{0.1, 0.1, -1.5, 1.0}, kPi),
                    ValidationError);
}

TEST_CASE("peak modified wavenumbers and the derived CFL constants") {
    CHECK(max_abs_wavenumber(find_scheme("E2")) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_abs_wavenumber(find_scheme("E4")) ==
          doctest::Approx(1.3722219798032216).epsilon(1e-9));
    CHECK(max_abs_wavenumber(find_scheme("E6")) ==
          doctest::Approx(1.585978396265619).epsilon(1e-9));

    CHECK(cfl_constant(find_scheme("E2"), Marcher::Leapfrog) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cfl_constant(find_scheme("E4"), Marcher::Leapfrog) ==
          doctest::Approx(0.7287450680125392).epsilon(1e-9));
    CHECK(cfl_constant(find_scheme("E6"), Marcher::Leapfrog) ==
          doctest::Approx(0.630525612678346).epsilon(1e-9));
    CHECK(cfl_constant(find_scheme("E2"), Marcher::RK4) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(cfl_constant(find_scheme("E4"), Marcher::MacCormack),
                    ValidationError);
}
