#include "aniso/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "aniso/errors.hpp"

namespace aniso {
namespace {

// Truncated power series around z = 0 with a running magnitude majorant.
// v[j] is the coefficient of z^j; m[j] bounds the absolute values summed to
// produce it, so |rounding noise in v[j]| <= eps_of_inputs * m[j]. Division
// propagates the majorant through the same recurrence.
struct TrackedSeries {
    std::vector<double> v;
    std::vector<double> m;

    explicit TrackedSeries(int jmax) : v(jmax + 1, 0.0), m(jmax + 1, 0.0) {}
    int jmax() const { return static_cast<int>(v.size()) - 1; }
};

void add_const(TrackedSeries& s, double c) {
    s.v[0] += c;
    s.m[0] += std::abs(c);
}

// s += coef * sin(n z)
void add_sin(TrackedSeries& s, double coef, int n) {
    double term = coef * n; // coef * n^j / j! built incrementally
    double mag = std::abs(term);
    double sign = 1.0;
    for (int j = 1; j <= s.jmax(); j += 2) {
        s.v[j] += sign * term;
        s.m[j] += mag;
        sign = -sign;
        double grow = static_cast<double>(n) * n /
                      (static_cast<double>(j + 1) * (j + 2));
        term *= grow;
        mag *= grow;
    }
}

// s += coef * cos(n z)
void add_cos(TrackedSeries& s, double coef, int n) {
    double term = coef;
    double mag = std::abs(coef);
    double sign = 1.0;
    for (int j = 0; j <= s.jmax(); j += 2) {
        s.v[j] += sign * term;
        s.m[j] += mag;
        sign = -sign;
        double grow = static_cast<double>(n) * n /
                      (static_cast<double>(j + 1) * (j + 2));
        term *= grow;
        mag *= grow;
    }
}

TrackedSeries mul(const TrackedSeries& x, const TrackedSeries& y) {
    TrackedSeries r(x.jmax());
    for (int i = 0; i <= x.jmax(); ++i) {
        if (x.v[i] == 0 && x.m[i] == 0) continue;
        for (int j = 0; i + j <= x.jmax(); ++j) {
            r.v[i + j] += x.v[i] * y.v[j];
            r.m[i + j] += x.m[i] * y.m[j];
        }
    }
    return r;
}

TrackedSeries divide(const TrackedSeries& num, const TrackedSeries& den) {
    if (den.v[0] == 0.0)
        throw NumericError("singularity", "series denominator vanishes at z=0");
    TrackedSeries q(num.jmax());
    const double d0 = den.v[0];
    const double ad0 = std::abs(d0);
    for (int j = 0; j <= num.jmax(); ++j) {
        double acc = num.v[j];
        double macc = num.m[j];
        for (int i = 1; i <= j; ++i) {
            acc -= den.v[i] * q.v[j - i];
            macc += den.m[i] * (std::abs(q.v[j - i]) + q.m[j - i]);
        }
        q.v[j] = acc / d0;
        q.m[j] = macc / ad0;
    }
    return q;
}

// Series of the symbol K(z) = sum 2 a_n sin(nz) / (1 + sum 2 alpha_k cos(kz)).
TrackedSeries symbol_series(const SchemeSpec& s, int jmax) {
    TrackedSeries num(jmax), den(jmax);
    for (size_t n = 0; n < s.a.size(); ++n)
        add_sin(num, 2.0 * s.a[n], static_cast<int>(n) + 1);
    add_const(den, 1.0);
    for (size_t k = 0; k < s.alpha.size(); ++k)
        add_cos(den, 2.0 * s.alpha[k], static_cast<int>(k) + 1);
    return divide(num, den);
}

// Series of the averaged (real) sweep-pair wavenumber. With P = 1-a-c,
// Q = a+c, R = a-c and g = 2b-1 the forward symbol is
//   K_F = [sin z - i g (cos z - 1)] / [(P + Q cos z) + i R sin z],
// so the common real part is
//   sin z [ (P + g R) + (Q - g R) cos z ]
//   / [ (P + Q cos z)^2 + R^2 sin^2 z ].
TrackedSeries prefactored_series(const PrefactoredScheme& p, int jmax) {
    const double P = 1.0 - p.a - p.c;
    const double Q = p.a + p.c;
    const double R = p.a - p.c;
    const double g = 2.0 * p.b - 1.0;

    TrackedSeries sinz(jmax), cosf(jmax);
    add_sin(sinz, 1.0, 1);
    add_const(cosf, P + g * R);
    add_cos(cosf, Q - g * R, 1);
    TrackedSeries num = mul(sinz, cosf);

    TrackedSeries dlin(jmax), dsin(jmax);
    add_const(dlin, P);
    add_cos(dlin, Q, 1);
    add_sin(dsin, R, 1);
    TrackedSeries den = mul(dlin, dlin);
    TrackedSeries dss = mul(dsin, dsin);
    for (int j = 0; j <= jmax; ++j) {
        den.v[j] += dss.v[j];
        den.m[j] += dss.m[j];
    }
    return divide(num, den);
}

// First index j in [2, jmax] whose coefficient differs from the exact
// first-derivative symbol (z itself); the formal order is j - 1. Throws when
// the z^1 coefficient is wrong.
int order_from_series(const TrackedSeries& q, double tol, const std::string& who) {
    const double s1 = q.m[1] + 1.0;
    if (std::abs(q.v[1] - 1.0) > tol * s1) {
        std::ostringstream os;
        os << who << ": first series coefficient " << q.v[1]
           << " differs from 1 beyond tolerance " << tol * s1;
        throw NumericError("consistency", os.str());
    }
    for (int j = 2; j <= q.jmax(); ++j) {
        if (std::abs(q.v[j]) > tol * (q.m[j] + 1.0)) return j - 1;
    }
    return q.jmax();
}

Stencil2D stencil(std::string label, StencilKind kind,
                  std::vector<StencilEntry> e) {
    Stencil2D st;
    st.label = std::move(label);
    st.kind = kind;
    st.entries = std::move(e);
    return st;
}

} // namespace

int Stencil2D::max_offset() const {
    int m = 0;
    for (const auto& e : entries)
        m = std::max({m, std::abs(e.di), std::abs(e.dj)});
    return m;
}

const std::vector<SchemeSpec>& builtin_catalog() {
    static const std::vector<SchemeSpec> cat = {
        {"E2", {1.0 / 2.0}, {}, 2, "classical 3-point central difference"},
        {"E4", {2.0 / 3.0, -1.0 / 12.0}, {}, 4,
         "classical 5-point central difference"},
        {"E6", {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0}, {}, 6,
         "classical 7-point central difference"},
        {"DRP", {0.770882380, -0.166705904, 0.020843142}, {}, 4,
         "dispersion-relation-preserving 7-point stencil"},
        {"C4", {3.0 / 4.0}, {1.0 / 4.0}, 4,
         "classical tridiagonal compact"},
        {"Haras", {1.5669657 / 2.0, 0.13995831 / 4.0}, {0.3534620}, 2,
         "wavenumber-optimized tridiagonal compact"},
        {"Lui", {1.36757772 / 2.0, 0.823428170 / 4.0, 0.0185207834 / 6.0},
         {0.5381301, 0.0666331}, 6,
         "wavenumber-optimized pentadiagonal compact"},
        {"Lele", {1.3025166 / 2.0, 0.99355 / 4.0, 0.03750245 / 6.0},
         {0.5771439, 0.0896406}, 4,
         "spectral-like pentadiagonal compact"},
    };
    return cat;
}

const SchemeSpec& find_scheme(const std::string& label) {
    for (const auto& s : builtin_catalog())
        if (s.label == label) return s;
    std::ostringstream os;
    os << "unknown scheme label '" << label << "'; known labels:";
    for (const auto& s : builtin_catalog()) os << " " << s.label;
    throw ValidationError(os.str());
}

PrefactoredScheme derive_prefactored(int order) {
    // Moment conditions of the averaged sweep symbol
    //   sin z (A + B cos z) / (D0 + D1 cos z),
    //   A = 1 - 2a + 2ab, B = 2a(1-b), D0 = 1 - 2a + 2a^2, D1 = 2a(1-a),
    // for which A + B = D0 + D1 = 1 identically (consistency is built in).
    // Fourth order requires D1 - B = 1/3; sixth order additionally B = 1/15,
    // D1 = 2/5. The quadratic 2a(1-a) = D1 is solved by the root in (0, 1/2)
    // so both sweeps are contractive.
    PrefactoredScheme p;
    p.c = 0.0;
    if (order == 4) {
        // One-parameter family; closed by b = 1 (two-point explicit part),
        // which makes the averaged symbol exactly 3 sin z / (2 + cos z).
        p.label = "PF4";
        p.formal_order = 4;
        p.b = 1.0;
        p.a = 0.5 - 0.5 / std::sqrt(3.0); // 2a(1-a) = 1/3
    } else if (order == 6) {
        p.label = "PF6";
        p.formal_order = 6;
        p.a = 0.5 - 0.5 / std::sqrt(5.0); // 2a(1-a) = 2/5
        p.b = 1.0 - 1.0 / (30.0 * p.a);  // 2a(1-b) = 1/15
    } else {
        std::ostringstream os;
        os << "no prefactored sweep pair of formal order " << order
           << " on a 3-point stencil; supported orders are 4 and 6";
        throw NumericError("infeasible", os.str());
    }
    p.e = 2.0 * p.b - 1.0;
    p.f = 1.0 - p.b;
    return p;
}

const PrefactoredScheme& builtin_prefactored(int order) {
    static const PrefactoredScheme p4 = derive_prefactored(4);
    static const PrefactoredScheme p6 = derive_prefactored(6);
    if (order == 4) return p4;
    if (order == 6) return p6;
    std::ostringstream os;
    os << "no built-in prefactored scheme of order " << order
       << "; available orders are 4 and 6";
    throw ValidationError(os.str());
}

std::vector<double> wavenumber_series(const SchemeSpec& s, int jmax) {
    TrackedSeries q = symbol_series(s, jmax);
    return std::vector<double>(q.v.begin() + 1, q.v.end());
}

int verify_formal_order(const SchemeSpec& s, double tol) {
    TrackedSeries q = symbol_series(s, kFormalOrderMax + 1);
    return order_from_series(q, tol, "scheme '" + s.label + "'");
}

int verify_formal_order(const PrefactoredScheme& p, double tol) {
    TrackedSeries q = prefactored_series(p, kFormalOrderMax + 1);
    return order_from_series(q, tol, "prefactored '" + p.label + "'");
}

int verify_formal_order(const Stencil2D& st, double tol) {
    // Directional expansion: along (cos t, sin t) the symbol is
    // sum_e w_e exp(i s p_e) with p_e = di cos t + dj sin t, so the z^m
    // coefficient is i^m c_m / m! with c_m = sum_e w_e p_e^m. The target
    // operator fixes c_m for m <= h_power (consistency) and demands zero
    // beyond; the formal order is the first violated m minus h_power,
    // minimized over a fan of directions.
    const int hp = st.h_power();
    const int mmax = kFormalOrderMax + hp + 1;
    const int n_dirs = 17; // [0, pi/2] inclusive
    int order = kFormalOrderMax;

    for (int d = 0; d < n_dirs; ++d) {
        const double t = (M_PI / 2.0) * d / (n_dirs - 1.0);
        const double ct = std::cos(t), stn = std::sin(t);

        std::vector<double> c(mmax + 1, 0.0), scale(mmax + 1, 0.0);
        for (const auto& e : st.entries) {
            const double p = e.di * ct + e.dj * stn;
            double pw = 1.0;
            for (int m = 0; m <= mmax; ++m) {
                c[m] += e.w * pw;
                scale[m] += std::abs(e.w) * std::pow(std::abs(p), m);
                pw *= p;
            }
        }

        double target1 = 0.0, target2 = 0.0;
        switch (st.kind) {
        case StencilKind::FirstDerivX: target1 = ct; break;
        case StencilKind::SecondDerivXX: target2 = 2.0 * ct * ct; break;
        case StencilKind::Laplacian: target2 = 2.0; break;
        case StencilKind::CrossXY: target2 = 2.0 * ct * stn; break;
        }

        auto fail = [&](int m, double got, double want) {
            std::ostringstream os;
            os << "stencil '" << st.label << "' direction " << t
               << ": moment " << m << " is " << got << ", expected " << want;
            throw NumericError("consistency", os.str());
        };
        if (std::abs(c[0]) > tol * (scale[0] + 1.0)) fail(0, c[0], 0.0);
        if (std::abs(c[1] - target1) > tol * (scale[1] + 1.0))
            fail(1, c[1], target1);
        if (hp == 2 && std::abs(c[2] - target2) > tol * (scale[2] + 1.0))
            fail(2, c[2], target2);

        for (int m = hp + 1; m <= mmax; ++m) {
            if (std::abs(c[m]) > tol * (scale[m] + 1.0)) {
                order = std::min(order, m - hp);
                break;
            }
        }
    }
    return order;
}

Stencil2D kumar_dx() {
    std::vector<StencilEntry> e;
    const double wrow[3] = {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0};
    for (int dj = -1; dj <= 1; ++dj) {
        e.push_back({+1, dj, wrow[dj + 1] / 2.0});
        e.push_back({-1, dj, -wrow[dj + 1] / 2.0});
    }
    return stencil("kumar-dx", StencilKind::FirstDerivX, std::move(e));
}

Stencil2D kumar_dxx() {
    std::vector<StencilEntry> e;
    const double wrow[3] = {1.0 / 12.0, 10.0 / 12.0, 1.0 / 12.0};
    const double wx[3] = {1.0, -2.0, 1.0};
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di)
            e.push_back({di, dj, wx[di + 1] * wrow[dj + 1]});
    return stencil("kumar-dxx", StencilKind::SecondDerivXX, std::move(e));
}

Stencil2D central_dx() {
    return stencil("central-dx", StencilKind::FirstDerivX,
                   {{+1, 0, 0.5}, {-1, 0, -0.5}});
}

Stencil2D five_point_laplacian() {
    return stencil("five-point", StencilKind::Laplacian,
                   {{+1, 0, 1.0},
                    {-1, 0, 1.0},
                    {0, +1, 1.0},
                    {0, -1, 1.0},
                    {0, 0, -4.0}});
}

Stencil2D diagonal_laplacian() {
    return stencil("diagonal", StencilKind::Laplacian,
                   {{+1, +1, 0.5},
                    {+1, -1, 0.5},
                    {-1, +1, 0.5},
                    {-1, -1, 0.5},
                    {0, 0, -2.0}});
}

Stencil2D central_cross_xy() {
    return stencil("central-dxy", StencilKind::CrossXY,
                   {{+1, +1, 0.25},
                    {+1, -1, -0.25},
                    {-1, +1, -0.25},
                    {-1, -1, 0.25}});
}

Stencil2D trefethen_laplacian(double w_axis, double w_diag) {
    if (std::abs(w_axis + w_diag - 1.0) > 1e-12)
        throw ValidationError("laplacian blend weights must sum to 1");
    std::vector<StencilEntry> e;
    for (const auto& s : five_point_laplacian().entries)
        e.push_back({s.di, s.dj, w_axis * s.w});
    for (const auto& s : diagonal_laplacian().entries) {
        bool merged = false;
        for (auto& t : e) {
            if (t.di == s.di && t.dj == s.dj) {
                t.w += w_diag * s.w;
                merged = true;
                break;
            }
        }
        if (!merged) e.push_back({s.di, s.dj, w_diag * s.w});
    }
    return stencil("laplacian-blend", StencilKind::Laplacian, std::move(e));
}

Stencil2D transpose(const Stencil2D& st) {
    Stencil2D r = st;
    for (auto& e : r.entries) std::swap(e.di, e.dj);
    r.label = st.label + "-transposed";
    return r;
}

MultiDimScheme make_multidim(const SchemeSpec& base, double beta) {
    if (!base.is_explicit())
        throw ValidationError("multidimensional blend requires an explicit base scheme; '" +
                              base.label + "' is compact");
    if (beta < 0.0)
        throw ValidationError("multidimensional blend weight must be nonnegative");
    return MultiDimScheme{base, beta};
}

Stencil2D to_stencil(const MultiDimScheme& md) {
    std::vector<StencilEntry> e;
    const double norm = 1.0 / (1.0 + md.beta);
    for (size_t k = 0; k < md.base.a.size(); ++k) {
        const int n = static_cast<int>(k) + 1;
        const double w = md.base.a[k] * norm;
        e.push_back({+n, 0, w});
        e.push_back({-n, 0, -w});
        if (md.beta != 0.0) {
            const double wd = w * md.beta / 2.0;
            e.push_back({+n, +n, wd});
            e.push_back({-n, -n, -wd});
            e.push_back({+n, -n, wd});
            e.push_back({-n, +n, -wd});
        }
    }
    return stencil(md.base.label + "-md", StencilKind::FirstDerivX,
                   std::move(e));
}

} // namespace aniso
