#include "aniso/optimize.hpp"

#include <cmath>
#include <sstream>

#include "aniso/errors.hpp"
#include "aniso/spectral.hpp"

namespace aniso {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Composite Simpson weights on n+1 equispaced nodes (n even), dx/3 included.
std::vector<double> simpson_weights(int panels, double dx) {
    std::vector<double> w(panels + 1, 0.0);
    for (int i = 0; i <= panels; ++i) {
        double f = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        w[i] = f * dx / 3.0;
    }
    return w;
}

void require_even_panels(int panels, const char* who) {
    if (panels < 2 || panels % 2 != 0) {
        std::ostringstream os;
        os << who << ": Simpson panel count must be even and >= 2, got "
           << panels;
        throw ValidationError(os.str());
    }
}

} // namespace

IcfObjective::IcfObjective(const SchemeSpec& base, double kh_max, IcfMode mode,
                           int panels)
    : kh_max_(kh_max), mode_(mode) {
    if (!base.is_explicit())
        throw ValidationError("diagonal-blend optimization requires an explicit "
                              "base scheme; '" + base.label + "' is compact");
    if (!(kh_max > 0) || kh_max > kPi * (1 + 1e-12))
        throw ValidationError("integration range end must lie in (0, pi]");
    require_even_panels(panels, "anisotropy cost");

    // Wave-equation phase curves at the quadrature nodes. Axis direction:
    // the blend reduces to the 1D symbol, c1 = K(Kh)/Kh. Diagonal direction,
    // xi = Kh/sqrt(2): both effective wavenumbers equal
    // (2/(1+beta)) (P + (beta/2) Q), P = sum a_n sin(n xi),
    // Q = sum a_n sin(2 n xi), so c2 = |p + beta q| / (1+beta) with
    // p = 2 sqrt(2) P / Kh, q = sqrt(2) Q / Kh. Group mode differentiates the
    // same curves in Kh; the phase bracket supplies the sign of the symbol.
    dx_ = kh_max / panels;
    simpson_w_ = simpson_weights(panels, dx_);
    const int n = panels + 1;
    c1_.resize(n);
    p_.resize(n);
    q_.resize(n);
    if (mode == IcfMode::Group) {
        pd_.resize(n);
        qd_.resize(n);
    }

    for (int i = 0; i < n; ++i) {
        const double kh = i * dx_;
        if (i == 0) {
            // consistency limits: every curve tends to 1
            c1_[0] = 1.0;
            p_[0] = 1.0;
            q_[0] = 1.0;
            if (mode == IcfMode::Group) {
                pd_[0] = 1.0;
                qd_[0] = 1.0;
            }
            continue;
        }
        const double xi = kh / std::sqrt(2.0);
        double P = 0, Q = 0, Pd = 0, Qd = 0;
        for (size_t k = 0; k < base.a.size(); ++k) {
            const double m = static_cast<double>(k) + 1;
            P += base.a[k] * std::sin(m * xi);
            Q += base.a[k] * std::sin(2.0 * m * xi);
            if (mode == IcfMode::Group) {
                Pd += base.a[k] * m * std::cos(m * xi);
                Qd += base.a[k] * m * std::cos(2.0 * m * xi);
            }
        }
        p_[i] = 2.0 * std::sqrt(2.0) * P / kh;
        q_[i] = std::sqrt(2.0) * Q / kh;
        if (mode == IcfMode::Phase) {
            c1_[i] = std::abs(modified_wavenumber(base, kh)) / kh;
        } else {
            const double K = modified_wavenumber(base, kh);
            const double Kd = modified_wavenumber_derivative(base, kh);
            c1_[i] = (K < 0 ? -1.0 : 1.0) * Kd;
            pd_[i] = 2.0 * Pd;
            qd_[i] = 2.0 * Qd;
        }
    }
}

double IcfObjective::operator()(double beta) const {
    if (beta < 0)
        throw ValidationError("diagonal blend weight must be nonnegative");
    const double inv = 1.0 / (1.0 + beta);
    double acc = 0.0;
    const size_t n = c1_.size();
    for (size_t i = 0; i < n; ++i) {
        const double bracket = p_[i] + beta * q_[i];
        double c2;
        if (mode_ == IcfMode::Phase) {
            c2 = std::abs(bracket) * inv;
        } else {
            const double sgn = bracket < 0 ? -1.0 : 1.0;
            c2 = sgn * (pd_[i] + beta * qd_[i]) * inv;
        }
        const double d = c1_[i] - c2;
        acc += simpson_w_[i] * d * d;
    }
    return acc;
}

double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int seed_points, bool* flat) {
    if (!(lo < hi)) throw ValidationError("search interval is empty");
    if (!(tol > 0)) throw ValidationError("search tolerance must be positive");
    if (seed_points < 3) throw ValidationError("seed scan needs >= 3 points");
    if (flat) *flat = false;

    double best = lo, fbest = f(lo), fmin = fbest, fmax = fbest;
    int besti = 0;
    std::vector<double> xs(seed_points), fs(seed_points);
    for (int i = 0; i < seed_points; ++i) {
        xs[i] = lo + (hi - lo) * i / (seed_points - 1.0);
        fs[i] = i == 0 ? fbest : f(xs[i]);
        if (fs[i] < fbest) {
            fbest = fs[i];
            best = xs[i];
            besti = i;
        }
        fmin = std::min(fmin, fs[i]);
        fmax = std::max(fmax, fs[i]);
    }
    if (fmax - fmin < 1e-14) {
        if (flat) *flat = true;
        return lo;
    }

    double a = xs[besti == 0 ? 0 : besti - 1];
    double b = xs[besti == seed_points - 1 ? seed_points - 1 : besti + 1];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

IcfResult icf_optimize(const SchemeSpec& base, double kh_max, IcfMode mode,
                       double tol, int panels) {
    IcfObjective obj(base, kh_max, mode, panels);
    IcfResult r;
    bool flat = false;
    r.beta_star =
        golden_section_min([&](double b) { return obj(b); }, 0.0, 4.0, tol,
                           401, &flat);
    r.degenerate_flat = flat;
    if (flat) r.beta_star = 0.0;
    r.objective_at_star = obj(r.beta_star);
    r.objective_at_zero = obj(0.0);
    return r;
}

GsCoefficients gs_coefficients(double alpha_c) {
    return {2.0 * (2.0 + alpha_c) / 3.0, (-1.0 + 4.0 * alpha_c) / 3.0};
}

double gs_wd(double alpha_c, double w) {
    const double den = 1.0 + 2.0 * alpha_c * std::cos(w);
    if (std::abs(den) < 1e-14 * (1.0 + 2.0 * std::abs(alpha_c))) {
        std::ostringstream os;
        os << "compact denominator 1 + 2 alpha cos(w) vanishes at w = " << w
           << " for alpha = " << alpha_c;
        throw NumericError("singularity", os.str());
    }
    const GsCoefficients c = gs_coefficients(alpha_c);
    return (c.a * std::sin(w) + 0.5 * c.b * std::sin(2.0 * w)) / den;
}

namespace {

// Node caches for the 2D isotropy error of the one-parameter compact family.
// At each (w, theta) node both arguments u = w cos(theta), v = w sin(theta)
// contribute sin(u), sin(2u), cos(u) terms; alpha enters only through the
// rational map a(alpha), b(alpha) and the denominator, so one table serves
// every alpha.
struct GsQuadrature {
    std::vector<double> weight; // tensor Simpson weight per node
    std::vector<double> su, s2u, cu;
    std::vector<double> sv, s2v, cv;
    std::vector<double> ct, st; // cos/sin of theta per node
    std::vector<double> w;      // |k| h at the node
    std::vector<double> wnode;  // distinct w values (for error reporting)

    GsQuadrature(double w_max, int w_panels, int theta_panels) {
        require_even_panels(w_panels, "isotropy error");
        require_even_panels(theta_panels, "isotropy error");
        if (!(w_max > 0) || w_max > kPi * (1 + 1e-12))
            throw ValidationError("integration range end must lie in (0, pi]");
        const double dw = w_max / w_panels;
        const double dt = (kPi / 2.0) / theta_panels;
        const auto ww = simpson_weights(w_panels, dw);
        const auto wt = simpson_weights(theta_panels, dt);
        const size_t total =
            static_cast<size_t>(w_panels + 1) * (theta_panels + 1);
        weight.reserve(total);
        su.reserve(total);
        for (int i = 0; i <= w_panels; ++i) {
            const double wv = i * dw;
            wnode.push_back(wv);
            for (int j = 0; j <= theta_panels; ++j) {
                const double th = j * dt;
                const double u = wv * std::cos(th), v = wv * std::sin(th);
                weight.push_back(ww[i] * wt[j]);
                su.push_back(std::sin(u));
                s2u.push_back(std::sin(2.0 * u));
                cu.push_back(std::cos(u));
                sv.push_back(std::sin(v));
                s2v.push_back(std::sin(2.0 * v));
                cv.push_back(std::cos(v));
                ct.push_back(std::cos(th));
                st.push_back(std::sin(th));
                w.push_back(wv);
            }
        }
    }

    double error(double alpha_c) const {
        const GsCoefficients c = gs_coefficients(alpha_c);
        const double a2 = 2.0 * alpha_c;
        double acc = 0.0;
        for (size_t i = 0; i < weight.size(); ++i) {
            const double du = 1.0 + a2 * cu[i];
            const double dv = 1.0 + a2 * cv[i];
            if (std::abs(du) < 1e-14 || std::abs(dv) < 1e-14) {
                std::ostringstream os;
                os << "compact denominator vanishes inside the integration "
                      "range at w = " << w[i] << " for alpha = " << alpha_c;
                throw NumericError("singularity", os.str());
            }
            const double wdu = (c.a * su[i] + 0.5 * c.b * s2u[i]) / du;
            const double wdv = (c.a * sv[i] + 0.5 * c.b * s2v[i]) / dv;
            acc += weight[i] * std::abs(ct[i] * wdu + st[i] * wdv - w[i]);
        }
        return acc;
    }
};

} // namespace

double gs_isotropy_error(double alpha_c, double w_max, int w_panels,
                         int theta_panels) {
    return GsQuadrature(w_max, w_panels, theta_panels).error(alpha_c);
}

GsResult gs_optimize(double w_max, double tol, int w_panels, int theta_panels) {
    GsQuadrature quad(w_max, w_panels, theta_panels);
    GsResult r;
    bool flat = false;
    r.alpha_star = golden_section_min(
        [&](double a) { return quad.error(a); }, 0.0, 0.45, tol, 181, &flat);
    if (flat) r.alpha_star = 0.0;
    r.error_at_star = quad.error(r.alpha_star);
    r.error_at_zero = quad.error(0.0);
    return r;
}

double koh_mean_alpha(double resolution_kh, double courant, int n_angles) {
    if (!(resolution_kh > 0) || resolution_kh > kPi * (1 + 1e-12))
        throw ValidationError("mode magnitude must lie in (0, pi]");
    if (!(courant > 0) || courant > 1.0)
        throw ValidationError("Courant number must lie in (0, 1] so the "
                              "grid-axis reference mode has a real frequency");
    if (n_angles < 8) throw ValidationError("azimuth average needs >= 8 angles");

    // Temporal phase of the grid-axis mode of the same magnitude; with it,
    // sin^2(omega_k/2)/courant^2 collapses to sin^2(kh/2) and the averaged
    // weight is independent of the Courant number.
    const double omega_k =
        2.0 * std::asin(courant * std::sin(resolution_kh / 2.0));
    double acc = 0.0;
    for (int i = 0; i < n_angles; ++i) {
        const double th = (i + 0.5) * (kPi / 2.0) / n_angles;
        acc += koh_alpha_of_mode(resolution_kh * std::cos(th),
                                 resolution_kh * std::sin(th), omega_k, courant);
    }
    return acc / n_angles;
}

} // namespace aniso
