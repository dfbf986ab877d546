#include "aniso/stability.hpp"

#include <algorithm>
#include <cmath>

#include "aniso/errors.hpp"
#include "aniso/spectral.hpp"

namespace aniso {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_query(const StabilityQuery& q) {
    if (q.sigma_x < 0 || q.sigma_y < 0)
        throw ValidationError("Courant numbers must be nonnegative");
    if (q.beta < 0)
        throw ValidationError("diagonal blend weight must be nonnegative");
    if (!(q.cfl > 0)) throw ValidationError("CFL constant must be positive");
}

} // namespace

double leapfrog_md_factor(double beta) {
    if (beta < 0)
        throw ValidationError("diagonal blend weight must be nonnegative");
    return (2.0 * beta + 2.0) / (beta + 2.0);
}

StabilityVerdict advection_limit(const StabilityQuery& q, bool multidim) {
    check_query(q);
    double load, bound;
    if (multidim) {
        load = (1.0 + q.beta) * q.sigma_x + q.sigma_y;
        bound = q.cfl * (1.0 + q.beta);
    } else {
        load = q.sigma_x + q.sigma_y;
        bound = q.cfl;
    }
    return {load <= bound, bound - load};
}

StabilityVerdict maccormack_limit(const StabilityQuery& q, double xi_max) {
    check_query(q);
    if (!(xi_max > 0)) throw ValidationError("wavenumber bound must be positive");
    const double sM = std::max(q.sigma_x, q.sigma_y);
    const double sm = std::min(q.sigma_x, q.sigma_y);
    const double load = std::pow(sM * (1.0 + q.beta), 2.0 / 3.0) +
                        std::pow(sm, 2.0 / 3.0);
    const double bound = std::pow(1.0 + q.beta, 2.0 / 3.0) / xi_max;
    return {load <= bound, bound - load};
}

double maccormack_diagonal_sigma_max(double beta, double xi_max) {
    if (beta < 0)
        throw ValidationError("diagonal blend weight must be nonnegative");
    if (!(xi_max > 0)) throw ValidationError("wavenumber bound must be positive");
    const double b23 = std::pow(1.0 + beta, 2.0 / 3.0);
    return (1.0 + beta) / (std::pow(xi_max, 1.5) * std::pow(1.0 + b23, 1.5));
}

double max_abs_wavenumber(const SchemeSpec& s) {
    const int n = 2048;
    double best = 0.0;
    int besti = 0;
    for (int i = 0; i <= n; ++i) {
        const double z = kPi * i / n;
        const double v = std::abs(modified_wavenumber(s, z));
        if (v > best) {
            best = v;
            besti = i;
        }
    }
    // refine around the scan winner
    double lo = kPi * std::max(0, besti - 1) / n;
    double hi = kPi * std::min(n, besti + 1) / n;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = -std::abs(modified_wavenumber(s, x1));
    double f2 = -std::abs(modified_wavenumber(s, x2));
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = -std::abs(modified_wavenumber(s, x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = -std::abs(modified_wavenumber(s, x2));
        }
    }
    return std::max(best, std::abs(modified_wavenumber(s, 0.5 * (lo + hi))));
}

double cfl_constant(const SchemeSpec& s, Marcher marcher) {
    // Semi-discrete advection puts eigenvalues on the imaginary axis at
    // +- i sigma K(z); the limit is the marcher's imaginary-axis stability
    // extent over the largest |K|.
    double extent;
    switch (marcher) {
    case Marcher::Leapfrog: extent = 1.0; break;
    case Marcher::RK4: extent = 2.0 * std::sqrt(2.0); break;
    default:
        throw ValidationError("predictor-corrector marching is governed by the "
                              "sweep-pair region, not an imaginary-axis extent");
    }
    return extent / max_abs_wavenumber(s);
}

} // namespace aniso
