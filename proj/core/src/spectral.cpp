#include "aniso/spectral.hpp"

#include <cmath>
#include <sstream>

#include "aniso/errors.hpp"

namespace aniso {
namespace {

constexpr double kPi = 3.14159265358979323846;

double compact_denominator(const SchemeSpec& s, double z) {
    double den = 1.0;
    for (size_t k = 0; k < s.alpha.size(); ++k)
        den += 2.0 * s.alpha[k] * std::cos((static_cast<double>(k) + 1) * z);
    return den;
}

void check_denominator(const SchemeSpec& s, double z, double den) {
    double scale = 1.0;
    for (double al : s.alpha) scale += 2.0 * std::abs(al);
    if (std::abs(den) < 1e-14 * scale) {
        std::ostringstream os;
        os << "compact denominator of '" << s.label << "' vanishes at z = " << z;
        throw NumericError("singularity", os.str());
    }
}

} // namespace

double modified_wavenumber(const SchemeSpec& s, double z) {
    double num = 0.0;
    for (size_t n = 0; n < s.a.size(); ++n)
        num += 2.0 * s.a[n] * std::sin((static_cast<double>(n) + 1) * z);
    const double den = compact_denominator(s, z);
    check_denominator(s, z, den);
    return num / den;
}

double modified_wavenumber_derivative(const SchemeSpec& s, double z) {
    double num = 0.0, dnum = 0.0, dden = 0.0;
    for (size_t i = 0; i < s.a.size(); ++i) {
        const double n = static_cast<double>(i) + 1;
        num += 2.0 * s.a[i] * std::sin(n * z);
        dnum += 2.0 * s.a[i] * n * std::cos(n * z);
    }
    const double den = compact_denominator(s, z);
    for (size_t i = 0; i < s.alpha.size(); ++i) {
        const double k = static_cast<double>(i) + 1;
        dden -= 2.0 * s.alpha[i] * k * std::sin(k * z);
    }
    check_denominator(s, z, den);
    return (dnum * den - num * dden) / (den * den);
}

std::vector<WavenumberSample> wavenumber_curve(const SchemeSpec& s, int n,
                                               double z_max) {
    if (n < 2) throw ValidationError("wavenumber curve needs at least 2 samples");
    if (!(z_max > 0)) throw ValidationError("z_max must be positive");
    std::vector<WavenumberSample> out(n);
    for (int i = 0; i < n; ++i) {
        const double z = z_max * i / (n - 1.0);
        out[i] = {z, modified_wavenumber(s, z)};
    }
    out[0].z = 0.0;
    return out;
}

std::complex<double> prefactored_symbol(const PrefactoredScheme& p, double z,
                                        bool forward) {
    // Forward sweep wavenumber (c allowed nonzero):
    //   K_F = [sin z - i g (cos z - 1)] / [(P + Q cos z) + i R sin z],
    //   P = 1-a-c, Q = a+c, R = a-c, g = 2b-1.
    // The backward sweep mirrors the grid, flipping both imaginary parts.
    const double P = 1.0 - p.a - p.c;
    const double Q = p.a + p.c;
    const double R = p.a - p.c;
    const double g = 2.0 * p.b - 1.0;
    const double sz = std::sin(z), cz = std::cos(z);
    const double sgn = forward ? 1.0 : -1.0;
    const std::complex<double> num(sz, -sgn * g * (cz - 1.0));
    const std::complex<double> den(P + Q * cz, sgn * R * sz);
    if (std::abs(den) < 1e-14) {
        std::ostringstream os;
        os << "sweep operator of '" << p.label << "' is singular at z = " << z;
        throw NumericError("singularity", os.str());
    }
    return num / den;
}

double prefactored_average(const PrefactoredScheme& p, double z) {
    return prefactored_symbol(p, z, true).real();
}

double multidim_symbol(const MultiDimScheme& md, double xi_h, double eta_h) {
    double acc = 0.0;
    for (size_t k = 0; k < md.base.a.size(); ++k) {
        const double n = static_cast<double>(k) + 1;
        acc += md.base.a[k] *
               (std::sin(n * xi_h) +
                0.5 * md.beta * (std::sin(n * (xi_h + eta_h)) +
                                 std::sin(n * (xi_h - eta_h))));
    }
    return 2.0 * acc / (1.0 + md.beta);
}

std::complex<double> stencil_symbol(const Stencil2D& st, double xi_h,
                                    double eta_h) {
    double re = 0.0, im = 0.0;
    for (const auto& e : st.entries) {
        const double ph = e.di * xi_h + e.dj * eta_h;
        re += e.w * std::cos(ph);
        im += e.w * std::sin(ph);
    }
    return {re, im};
}

namespace {

struct ExactProvider final : SymbolProvider2D {
    double kx(double xi_h, double) const override { return xi_h; }
    double ky(double, double eta_h) const override { return eta_h; }
    std::string name() const override { return "exact"; }
};

struct SchemeProvider final : SymbolProvider2D {
    SchemeSpec s;
    explicit SchemeProvider(SchemeSpec sp) : s(std::move(sp)) {}
    double kx(double xi_h, double) const override {
        return modified_wavenumber(s, xi_h);
    }
    double ky(double, double eta_h) const override {
        return modified_wavenumber(s, eta_h);
    }
    std::string name() const override { return s.label; }
};

struct MultiDimProvider final : SymbolProvider2D {
    MultiDimScheme md;
    explicit MultiDimProvider(MultiDimScheme m) : md(std::move(m)) {}
    double kx(double xi_h, double eta_h) const override {
        return multidim_symbol(md, xi_h, eta_h);
    }
    double ky(double xi_h, double eta_h) const override {
        // y-derivative operator is the x one with the roles of i and j swapped
        return multidim_symbol(md, eta_h, xi_h);
    }
    std::string name() const override { return md.base.label + "-md"; }
};

struct PrefactoredProvider final : SymbolProvider2D {
    PrefactoredScheme p;
    double beta;
    PrefactoredProvider(PrefactoredScheme ps, double b)
        : p(std::move(ps)), beta(b) {}
    double blend(double u, double v) const {
        const double f = prefactored_average(p, u);
        if (beta == 0.0) return f;
        const double fd = prefactored_average(p, u + v) +
                          prefactored_average(p, u - v);
        return (f + 0.5 * beta * fd) / (1.0 + beta);
    }
    double kx(double xi_h, double eta_h) const override {
        return blend(xi_h, eta_h);
    }
    double ky(double xi_h, double eta_h) const override {
        return blend(eta_h, xi_h);
    }
    std::string name() const override { return p.label; }
};

struct StencilProvider final : SymbolProvider2D {
    Stencil2D st, st_t;
    explicit StencilProvider(Stencil2D s)
        : st(std::move(s)), st_t(transpose(st)) {}
    double kx(double xi_h, double eta_h) const override {
        return stencil_symbol(st, xi_h, eta_h).imag();
    }
    double ky(double xi_h, double eta_h) const override {
        return stencil_symbol(st_t, xi_h, eta_h).imag();
    }
    std::string name() const override { return st.label; }
};

} // namespace

std::unique_ptr<SymbolProvider2D> exact_provider() {
    return std::make_unique<ExactProvider>();
}

std::unique_ptr<SymbolProvider2D> scheme_provider(const SchemeSpec& s) {
    return std::make_unique<SchemeProvider>(s);
}

std::unique_ptr<SymbolProvider2D> multidim_provider(const MultiDimScheme& md) {
    return std::make_unique<MultiDimProvider>(md);
}

std::unique_ptr<SymbolProvider2D> prefactored_provider(const PrefactoredScheme& p,
                                                       double beta) {
    if (beta < 0)
        throw ValidationError("diagonal blend weight must be nonnegative");
    return std::make_unique<PrefactoredProvider>(p, beta);
}

std::unique_ptr<SymbolProvider2D> stencil_provider(const Stencil2D& st) {
    if (st.kind != StencilKind::FirstDerivX)
        throw ValidationError("advection provider needs a first-derivative stencil");
    double wsum = 0.0;
    for (const auto& e : st.entries) wsum += std::abs(e.w);
    for (int i = 0; i <= 4; ++i) {
        for (int j = 0; j <= 4; ++j) {
            const double xi = kPi * i / 4.0, eta = kPi * j / 4.0;
            if (std::abs(stencil_symbol(st, xi, eta).real()) > 1e-12 * (wsum + 1)) {
                throw ValidationError("stencil '" + st.label +
                                      "' has a non-centered (real) symbol part");
            }
        }
    }
    return std::make_unique<StencilProvider>(st);
}

namespace {

double scaled_frequency(const SymbolProvider2D& sp, double kh, double angle) {
    const double ca = std::cos(angle), sa = std::sin(angle);
    const double xi = kh * ca, eta = kh * sa;
    return ca * sp.kx(xi, eta) + sa * sp.ky(xi, eta);
}

} // namespace

PhaseGroup advection_phase_group(const SymbolProvider2D& sp, double kh,
                                 double angle) {
    if (!(kh > 0) || kh > kPi * std::sqrt(2.0) * (1 + 1e-12))
        throw ValidationError("scaled wavenumber must lie in (0, pi*sqrt(2)]");
    PhaseGroup pg;
    pg.omega_h_over_c = scaled_frequency(sp, kh, angle);
    pg.c_n_over_c = pg.omega_h_over_c / kh;
    const double dk = 1e-6 * kh;
    pg.g_n_over_c = (scaled_frequency(sp, kh + dk, angle) -
                     scaled_frequency(sp, kh - dk, angle)) /
                    (2.0 * dk);
    return pg;
}

VelocityPolar anisotropy_polar(const SymbolProvider2D& sp, double ppw,
                               int n_angles) {
    if (n_angles < 4) throw ValidationError("polar diagram needs >= 4 angles");
    if (!(ppw > 0)) throw ValidationError("points-per-wavelength must be positive");
    const double kh = 2.0 * kPi / ppw;
    if (kh > kPi * std::sqrt(2.0) * (1 + 1e-12))
        throw ValidationError("points-per-wavelength below sqrt(2) is outside the resolvable band");

    VelocityPolar vp;
    vp.kh = kh;
    vp.angles.resize(n_angles);
    vp.values.resize(n_angles);
    double cmin = 0, cmax = 0, gmin = 0, gmax = 0;
    for (int i = 0; i < n_angles; ++i) {
        const double a = 2.0 * kPi * i / n_angles;
        vp.angles[i] = a;
        vp.values[i] = advection_phase_group(sp, kh, a);
        const double cv = vp.values[i].c_n_over_c;
        const double gv = vp.values[i].g_n_over_c;
        if (i == 0) {
            cmin = cmax = cv;
            gmin = gmax = gv;
        } else {
            cmin = std::min(cmin, cv);
            cmax = std::max(cmax, cv);
            gmin = std::min(gmin, gv);
            gmax = std::max(gmax, gv);
        }
        vp.max_abs_dev_phase = std::max(vp.max_abs_dev_phase, std::abs(cv - 1.0));
        vp.max_abs_dev_group = std::max(vp.max_abs_dev_group, std::abs(gv - 1.0));
    }
    vp.spread_phase = cmax - cmin;
    vp.spread_group = gmax - gmin;
    return vp;
}

double sun_trueman_dispersion(double w, double beta_h, SunTruemanBranch br) {
    const double s = w * std::sin(beta_h / 2.0) +
                     (1.0 - w) * std::sin(3.0 * beta_h / 2.0) / 3.0;
    return br == SunTruemanBranch::Axis ? s : std::sqrt(2.0) * s;
}

double sun_trueman_weight(double beta_a_h, double beta_d_h) {
    const double r2 = std::sqrt(2.0);
    const double ta = std::sin(3.0 * beta_a_h / 2.0) / 3.0;
    const double td = std::sin(3.0 * beta_d_h / 2.0) / 3.0;
    const double den =
        (std::sin(beta_a_h / 2.0) - ta) - r2 * (std::sin(beta_d_h / 2.0) - td);
    if (std::abs(den) < 1e-14)
        throw NumericError("degenerate-mesh",
                           "axis and diagonal relations coincide; the weight is "
                           "undetermined at this mesh density");
    return (r2 * td - ta) / den;
}

double koh_mm_residual(double alpha, double xi_h, double eta_h, double omega_k,
                       double courant) {
    if (!(courant > 0)) throw ValidationError("Courant number must be positive");
    const double sx = std::sin(xi_h / 2.0), sy = std::sin(eta_h / 2.0);
    const double cp = sx * sx + sy * sy;
    const double cx = sx * sx * sy * sy;
    const double st = std::sin(omega_k / 2.0);
    return cp * cx * alpha * alpha - 4.0 * cx * alpha + cp -
           st * st / (courant * courant);
}

double koh_alpha_of_mode(double xi_h, double eta_h, double omega_k,
                         double courant) {
    if (!(courant > 0)) throw ValidationError("Courant number must be positive");
    const double sx = std::sin(xi_h / 2.0), sy = std::sin(eta_h / 2.0);
    const double cp = sx * sx + sy * sy;
    const double cx = sx * sx * sy * sy;
    if (cx == 0.0)
        throw NumericError("singular-mode",
                           "axis-aligned mode: the anisotropy weight is "
                           "undetermined (quadratic degenerates)");
    const double st = std::sin(omega_k / 2.0);
    const double disc =
        1.0 - (cp / (4.0 * cx)) * (cp - st * st / (courant * courant));
    if (disc < 0.0) {
        std::ostringstream os;
        os << "no real anisotropy weight at mode (" << xi_h << ", " << eta_h
           << "): discriminant " << disc;
        throw NumericError("no-real-solution", os.str());
    }
    return (2.0 / cp) * (1.0 - std::sqrt(disc));
}

double kim3d_dispersion_residual(double alpha_w, double beta_w, double xi_h,
                                 double eta_h, double zeta_h, double omega_k,
                                 double courant) {
    if (!(courant > 0)) throw ValidationError("Courant number must be positive");
    const double s[3] = {std::sin(xi_h / 2.0), std::sin(eta_h / 2.0),
                         std::sin(zeta_h / 2.0)};
    double sum = 0.0;
    for (int p = 0; p < 3; ++p) {
        const double su = s[(p + 1) % 3], sv = s[(p + 2) % 3];
        const double pp = su * sv;
        const double qp = su * su + sv * sv;
        const double kp =
            s[p] * (alpha_w * (pp - qp) - 0.5 * beta_w * qp + 1.0);
        sum += kp * kp;
    }
    const double st = std::sin(omega_k / 2.0);
    return st * st / (courant * courant) - sum;
}

double kim3d_solve_omega(double alpha_w, double beta_w, double xi_h,
                         double eta_h, double zeta_h, double courant) {
    // residual(omega) is increasing on [0, pi]; bracket then bisect
    const double at0 = kim3d_dispersion_residual(alpha_w, beta_w, xi_h, eta_h,
                                                 zeta_h, 0.0, courant);
    if (at0 == 0.0) return 0.0;
    const double atpi = kim3d_dispersion_residual(alpha_w, beta_w, xi_h, eta_h,
                                                  zeta_h, kPi, courant);
    if (atpi < 0.0) {
        std::ostringstream os;
        os << "spatial term exceeds the temporal range reachable at Courant "
              "number " << courant << "; no real frequency solves the relation";
        throw NumericError("no-real-solution", os.str());
    }
    double lo = 0.0, hi = kPi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double r = kim3d_dispersion_residual(alpha_w, beta_w, xi_h, eta_h,
                                                   zeta_h, mid, courant);
        if (r < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace aniso
