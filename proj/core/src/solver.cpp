#include "aniso/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "aniso/errors.hpp"
#include "aniso/operators.hpp"

namespace aniso {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

Field2D make_field(int n) {
    Field2D f;
    f.n = n;
    f.v.assign(static_cast<size_t>(n) * n, 0.0);
    return f;
}

double max_abs(const Field2D& f) {
    double m = 0;
    for (double x : f.v) {
        double a = std::abs(x);
        if (!(a <= m)) m = a; // NaN propagates into m
    }
    return m;
}

// ---------------------------------------------------------------------------
// Directional derivative application, one implementation per scheme variant.
// All field traversals are row-major with a fixed per-cell term order: the
// reproducibility guarantee depends on it.

class DirectionalDeriv {
public:
    virtual ~DirectionalDeriv() = default;
    virtual void dx(const Field2D& in, Field2D& out) const = 0;
    virtual void dy(const Field2D& in, Field2D& out) const = 0;
};

template <class Op>
void rows_apply(const Op& op, const Field2D& in, Field2D& out) {
    const int n = in.n;
    for (int j = 0; j < n; ++j) {
        const size_t off = static_cast<size_t>(j) * n;
        op.apply(in.v.data() + off, out.v.data() + off);
    }
}

template <class Op>
void cols_apply(const Op& op, const Field2D& in, Field2D& out,
                std::vector<double>& ci, std::vector<double>& co) {
    const int n = in.n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) ci[j] = in.v[static_cast<size_t>(j) * n + i];
        op.apply(ci.data(), co.data());
        for (int j = 0; j < n; ++j) out.v[static_cast<size_t>(j) * n + i] = co[j];
    }
}

class SchemeLineDeriv final : public DirectionalDeriv {
public:
    SchemeLineDeriv(const SchemeSpec& s, int n, double h)
        : op_(s, n, h), ci_(n), co_(n) {}
    void dx(const Field2D& in, Field2D& out) const override {
        rows_apply(op_, in, out);
    }
    void dy(const Field2D& in, Field2D& out) const override {
        cols_apply(op_, in, out, ci_, co_);
    }

private:
    PeriodicDerivative1D op_;
    mutable std::vector<double> ci_, co_;
};

class ExactLineDeriv final : public DirectionalDeriv {
public:
    ExactLineDeriv(int n, double h) : op_(n, h), ci_(n), co_(n) {}
    void dx(const Field2D& in, Field2D& out) const override {
        rows_apply(op_, in, out);
    }
    void dy(const Field2D& in, Field2D& out) const override {
        cols_apply(op_, in, out, ci_, co_);
    }

private:
    SpectralDerivative1D op_;
    mutable std::vector<double> ci_, co_;
};

// The sweep average (F + B)/2: the centered (real-symbol) reading of a
// prefactored pair, used by every marcher except MacCormack.
class PrefactoredAvgDeriv final : public DirectionalDeriv {
public:
    PrefactoredAvgDeriv(const PrefactoredScheme& p, int n, double h)
        : fwd_(p, n, h, true), bwd_(p, n, h, false),
          ci_(n), cf_(n), cb_(n), rf_(n), rb_(n) {}

    void dx(const Field2D& in, Field2D& out) const override {
        const int n = in.n;
        for (int j = 0; j < n; ++j) {
            const size_t off = static_cast<size_t>(j) * n;
            fwd_.apply(in.v.data() + off, rf_.data());
            bwd_.apply(in.v.data() + off, rb_.data());
            for (int i = 0; i < n; ++i)
                out.v[off + i] = 0.5 * (rf_[i] + rb_[i]);
        }
    }
    void dy(const Field2D& in, Field2D& out) const override {
        const int n = in.n;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                ci_[j] = in.v[static_cast<size_t>(j) * n + i];
            fwd_.apply(ci_.data(), cf_.data());
            bwd_.apply(ci_.data(), cb_.data());
            for (int j = 0; j < n; ++j)
                out.v[static_cast<size_t>(j) * n + i] = 0.5 * (cf_[j] + cb_[j]);
        }
    }

private:
    PrefactoredSweep1D fwd_, bwd_;
    mutable std::vector<double> ci_, cf_, cb_, rf_, rb_;
};

class StencilPairDeriv final : public DirectionalDeriv {
public:
    StencilPairDeriv(Stencil2D st, int n, double h)
        : sx_(std::move(st)), sy_(transpose(sx_)), wrap_(3 * n), n_(n) {
        scale_ = 1.0;
        for (int p = 0; p < sx_.h_power(); ++p) scale_ /= h;
        for (int t = 0; t < 3 * n; ++t) wrap_[t] = ((t - n) % n + n) % n;
    }
    void dx(const Field2D& in, Field2D& out) const override {
        conv(sx_, in, out);
    }
    void dy(const Field2D& in, Field2D& out) const override {
        conv(sy_, in, out);
    }

private:
    void conv(const Stencil2D& st, const Field2D& in, Field2D& out) const {
        const int n = n_;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                double acc = 0;
                for (const StencilEntry& e : st.entries)
                    acc += e.w * in.v[static_cast<size_t>(wrap_[j + e.dj + n]) * n +
                                      wrap_[i + e.di + n]];
                out.v[static_cast<size_t>(j) * n + i] = scale_ * acc;
            }
        }
    }

    Stencil2D sx_, sy_;
    std::vector<int> wrap_;
    int n_;
    double scale_;
};

std::unique_ptr<DirectionalDeriv> make_deriv(const SchemeVariant& v, int n,
                                             double h) {
    return std::visit(
        [&](const auto& s) -> std::unique_ptr<DirectionalDeriv> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SchemeSpec>) {
                return std::make_unique<SchemeLineDeriv>(s, n, h);
            } else if constexpr (std::is_same_v<T, MultiDimScheme>) {
                return std::make_unique<StencilPairDeriv>(to_stencil(s), n, h);
            } else if constexpr (std::is_same_v<T, Stencil2D>) {
                if (s.kind != StencilKind::FirstDerivX)
                    throw ValidationError(
                        "advection marching needs a d/dx stencil; '" + s.label +
                        "' is not FirstDerivX");
                if (2 * s.max_offset() >= n)
                    throw ValidationError("stencil '" + s.label +
                                          "' is too wide for a grid of " +
                                          std::to_string(n) + " points");
                return std::make_unique<StencilPairDeriv>(s, n, h);
            } else if constexpr (std::is_same_v<T, PrefactoredScheme>) {
                return std::make_unique<PrefactoredAvgDeriv>(s, n, h);
            } else {
                return std::make_unique<ExactLineDeriv>(n, h);
            }
        },
        v);
}

std::unique_ptr<SymbolProvider2D> make_provider(const SchemeVariant& v) {
    return std::visit(
        [](const auto& s) -> std::unique_ptr<SymbolProvider2D> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SchemeSpec>) {
                return scheme_provider(s);
            } else if constexpr (std::is_same_v<T, MultiDimScheme>) {
                return multidim_provider(s);
            } else if constexpr (std::is_same_v<T, Stencil2D>) {
                return stencil_provider(s);
            } else if constexpr (std::is_same_v<T, PrefactoredScheme>) {
                return prefactored_provider(s, 0.0);
            } else {
                return exact_provider();
            }
        },
        v);
}

// out = -(cx du/dx + cy du/dy)
void advection_rhs(const DirectionalDeriv& D, const Field2D& u, double cx,
                   double cy, Field2D& scratch, Field2D& out) {
    const size_t m = u.v.size();
    if (cx != 0.0) {
        D.dx(u, out);
        if (cy != 0.0) {
            D.dy(u, scratch);
            for (size_t t = 0; t < m; ++t)
                out.v[t] = -(cx * out.v[t] + cy * scratch.v[t]);
        } else {
            for (size_t t = 0; t < m; ++t) out.v[t] = -cx * out.v[t];
        }
    } else if (cy != 0.0) {
        D.dy(u, out);
        for (size_t t = 0; t < m; ++t) out.v[t] = -cy * out.v[t];
    } else {
        std::fill(out.v.begin(), out.v.end(), 0.0);
    }
}

struct SnapResult {
    SnappedMode mode;
    std::string note;
};

// Integer-mode snap of a requested plane wave. The snapped values are the
// single source of truth for everything downstream.
SnapResult snap_plane_wave(int n, double kh, double angle) {
    if (!(kh > 0))
        throw ValidationError("plane-wave kh must be positive");
    const long mx = std::lround(n * kh * std::cos(angle) / (2 * kPi));
    const long my = std::lround(n * kh * std::sin(angle) / (2 * kPi));
    if (mx == 0 && my == 0)
        throw ValidationError(
            "requested plane wave rounds to the zero mode; refine the grid or "
            "raise kh");
    if (std::labs(mx) > n / 2 - 1 || std::labs(my) > n / 2 - 1)
        throw ValidationError(
            "requested plane wave aliases beyond the resolvable band |m| <= "
            "n/2 - 1");
    SnapResult r;
    r.mode.mx = static_cast<int>(mx);
    r.mode.my = static_cast<int>(my);
    r.mode.kh = 2 * kPi * std::hypot(static_cast<double>(mx),
                                     static_cast<double>(my)) / n;
    r.mode.angle = std::atan2(static_cast<double>(my), static_cast<double>(mx));
    std::ostringstream os;
    os << "plane wave snapped to grid mode (" << mx << ", " << my
       << "): kh " << fmt(kh) << " -> " << fmt(r.mode.kh) << ", angle "
       << fmt(angle) << " -> " << fmt(r.mode.angle);
    r.note = os.str();
    return r;
}

Field2D build_initial(int n, double h, const InitialCondition& init,
                      FieldHistory& hist) {
    Field2D u = make_field(n);
    if (const auto* raw = std::get_if<RawInit>(&init)) {
        if (raw->field.n != n ||
            raw->field.v.size() != static_cast<size_t>(n) * n)
            throw ValidationError("raw initial field does not match the grid");
        return raw->field;
    }
    if (const auto* pw = std::get_if<PlaneWaveInit>(&init)) {
        SnapResult sr = snap_plane_wave(n, pw->kh, pw->angle);
        hist.has_snapped = true;
        hist.snapped = sr.mode;
        hist.notes.push_back(sr.note);
        const double fx = 2 * kPi * sr.mode.mx / n;
        const double fy = 2 * kPi * sr.mode.my / n;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                u.at(i, j) = std::cos(fx * i + fy * j);
    } else {
        const auto& g = std::get<GaussianInit>(init);
        if (!(g.width > 0))
            throw ValidationError("gaussian width must be positive");
        const double inv2w2 = 1.0 / (2 * g.width * g.width);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                // minimum-image distance from the box center
                int di = i - n / 2, dj = j - n / 2;
                if (di < -n / 2) di += n;
                if (di >= n / 2) di -= n;
                if (dj < -n / 2) dj += n;
                if (dj >= n / 2) dj -= n;
                const double r2 = (di * h) * (di * h) + (dj * h) * (dj * h);
                u.at(i, j) = std::exp(-r2 * inv2w2);
            }
        }
    }
    return u;
}

// Per-mode amplification audit on the actual n x n mode lattice; advisory
// only (the run proceeds regardless). Leap-frog and RK4 march a purely
// imaginary per-mode eigenvalue i w; MacCormack pairs the complex sweep
// symbols. Returns an empty string when every mode is neutral or decaying.
std::string cfl_advisory(const SimulationConfig& cfg,
                         const SymbolProvider2D& sp, bool exact_op) {
    const int n = cfg.n;
    const double cx = cfg.c * std::cos(cfg.angle);
    const double cy = cfg.c * std::sin(cfg.angle);
    const double r = cfg.k / cfg.h;
    double worst = 0;
    if (cfg.marcher == Marcher::MacCormack) {
        const auto* p = std::get_if<PrefactoredScheme>(&cfg.scheme);
        if (!p) return {};
        double gmax = 0;
        for (int my = 0; my <= n / 2; ++my) {
            const double eta = 2 * kPi * my / n;
            for (int mx = 0; mx <= n / 2; ++mx) {
                const double xi = 2 * kPi * mx / n;
                const std::complex<double> I(0, 1);
                const std::complex<double> lf =
                    -I * r * (cx * prefactored_symbol(*p, xi, true) +
                              cy * prefactored_symbol(*p, eta, true));
                const std::complex<double> lb =
                    -I * r * (cx * prefactored_symbol(*p, xi, false) +
                              cy * prefactored_symbol(*p, eta, false));
                const std::complex<double> g =
                    1.0 + 0.5 * (lf + lb) + 0.5 * lf * lb;
                gmax = std::max(gmax, std::abs(g));
            }
        }
        if (gmax > 1 + 1e-12) {
            return "time step exceeds the predictor-corrector neutral bound: "
                   "max per-step amplification " + fmt(gmax);
        }
        return {};
    }
    const double extent =
        cfg.marcher == Marcher::RK4 ? 2 * std::sqrt(2.0) : 1.0;
    for (int my = 0; my < n; ++my) {
        const int sy = my <= n / 2 ? my : my - n;
        const double eta = 2 * kPi * sy / n;
        for (int mx = 0; mx < n; ++mx) {
            const int sx = mx <= n / 2 ? mx : mx - n;
            const double xi = 2 * kPi * sx / n;
            double Kx = sp.kx(xi, eta), Ky = sp.ky(xi, eta);
            if (exact_op) {
                if (2 * mx == n) Kx = 0;
                if (2 * my == n) Ky = 0;
            }
            worst = std::max(worst, std::abs(r * (cx * Kx + cy * Ky)));
        }
    }
    if (worst > extent * (1 + 1e-12)) {
        return "time step exceeds the neutral-stability bound of this "
               "marcher: max |omega k| " + fmt(worst) + " vs " + fmt(extent);
    }
    return {};
}

// One-step advance in mode space used to start the leap-frog ladder: each
// mode is multiplied by the marching scheme's own physical characteristic
// root, so the start excites no computational mode and the two-level ladder
// stays neutral to rounding. Nyquist lines of the exact operator carry zero
// derivative, matching the circulant weights.
Field2D spectral_advance(const Field2D& u0, const SimulationConfig& cfg,
                         const SymbolProvider2D& sp, bool exact_op,
                         const Dft2& dft) {
    const int n = cfg.n;
    const double cx = cfg.c * std::cos(cfg.angle);
    const double cy = cfg.c * std::sin(cfg.angle);
    const double r = cfg.k / cfg.h;
    std::vector<std::complex<double>> coef = dft.forward(u0.v);
    for (int my = 0; my < n; ++my) {
        const int sy = my <= n / 2 ? my : my - n;
        const double eta = 2 * kPi * sy / n;
        for (int mx = 0; mx < n; ++mx) {
            const int sx = mx <= n / 2 ? mx : mx - n;
            const double xi = 2 * kPi * sx / n;
            double Kx = sp.kx(xi, eta), Ky = sp.ky(xi, eta);
            if (exact_op) {
                if (2 * mx == n) Kx = 0;
                if (2 * my == n) Ky = 0;
            }
            const double lam = r * (cx * Kx + cy * Ky);
            // root of g^2 + 2 i lam g - 1 = 0: the neutral branch inside
            // the stability interval, the growing branch beyond it (so a
            // past-the-limit run is seeded with its own instability)
            std::complex<double> g;
            if (std::abs(lam) <= 1.0) {
                g = {std::sqrt(1.0 - lam * lam), -lam};
            } else {
                const double s = lam > 0 ? 1.0 : -1.0;
                g = {0.0, -(lam + s * std::sqrt(lam * lam - 1.0))};
            }
            coef[static_cast<size_t>(my) * n + mx] *= g;
        }
    }
    Field2D u1;
    u1.n = n;
    u1.v = dft.inverse(coef);
    return u1;
}

void check_finite(const Field2D& u, int step, std::vector<double>& max_norms) {
    const double m = max_abs(u);
    if (!std::isfinite(m))
        throw NumericError("divergence",
                           "field left the finite range at step " +
                               std::to_string(step));
    max_norms.push_back(m);
}

} // namespace

FieldHistory run_advection2d(const SimulationConfig& cfg,
                             const InitialCondition& init) {
    if (cfg.n < 16 || cfg.n % 2 != 0)
        throw ValidationError("grid size must be even and at least 16");
    if (!(cfg.h > 0) || !(cfg.k > 0))
        throw ValidationError("grid spacing and time step must be positive");
    if (!(cfg.c >= 0)) throw ValidationError("velocity must be non-negative");
    if (cfg.steps < 1) throw ValidationError("steps must be at least 1");
    if (cfg.record_stride < 0)
        throw ValidationError("record stride must be non-negative");
    if (cfg.marcher == Marcher::MacCormack &&
        !std::holds_alternative<PrefactoredScheme>(cfg.scheme))
        throw ValidationError(
            "MacCormack marching pairs forward/backward sweeps and needs a "
            "prefactored scheme");

    const int n = cfg.n;
    const bool exact_op = std::holds_alternative<ExactOperator>(cfg.scheme);
    auto deriv = make_deriv(cfg.scheme, n, cfg.h);
    auto provider = make_provider(cfg.scheme);

    FieldHistory hist;
    hist.n = n;
    hist.h = cfg.h;
    hist.k = cfg.k;
    hist.c = cfg.c;
    hist.angle = cfg.angle;
    hist.steps = cfg.steps;
    const int stride = cfg.record_stride > 0
                           ? cfg.record_stride
                           : std::max(1, cfg.steps / 16);
    hist.record_stride = stride;

    Field2D u = build_initial(n, cfg.h, init, hist);

    if (std::string note = cfl_advisory(cfg, *provider, exact_op);
        !note.empty())
        hist.notes.push_back(std::move(note));

    hist.max_norms.push_back(max_abs(u));
    hist.times.push_back(0.0);
    hist.snapshots.push_back(u);

    const double cx = cfg.c * std::cos(cfg.angle);
    const double cy = cfg.c * std::sin(cfg.angle);

    auto record = [&](int step, const Field2D& f) {
        if (step % stride == 0 || step == cfg.steps) {
            hist.times.push_back(step * cfg.k);
            hist.snapshots.push_back(f);
        }
    };

    if (cfg.marcher == Marcher::RK4) {
        Field2D s1 = make_field(n), s2 = make_field(n), s3 = make_field(n),
                s4 = make_field(n), tmp = make_field(n), scr = make_field(n);
        const size_t m = u.v.size();
        for (int step = 1; step <= cfg.steps; ++step) {
            advection_rhs(*deriv, u, cx, cy, scr, s1);
            for (size_t t = 0; t < m; ++t)
                tmp.v[t] = u.v[t] + 0.5 * cfg.k * s1.v[t];
            advection_rhs(*deriv, tmp, cx, cy, scr, s2);
            for (size_t t = 0; t < m; ++t)
                tmp.v[t] = u.v[t] + 0.5 * cfg.k * s2.v[t];
            advection_rhs(*deriv, tmp, cx, cy, scr, s3);
            for (size_t t = 0; t < m; ++t)
                tmp.v[t] = u.v[t] + cfg.k * s3.v[t];
            advection_rhs(*deriv, tmp, cx, cy, scr, s4);
            for (size_t t = 0; t < m; ++t)
                u.v[t] += cfg.k / 6.0 *
                          (s1.v[t] + 2 * s2.v[t] + 2 * s3.v[t] + s4.v[t]);
            check_finite(u, step, hist.max_norms);
            record(step, u);
        }
    } else if (cfg.marcher == Marcher::Leapfrog) {
        Field2D uprev = u;
        Field2D ucur;
        if (cfg.c == 0) {
            ucur = u; // exact advance is the identity; keep it bitwise
        } else {
            Dft2 dft(n);
            ucur = spectral_advance(u, cfg, *provider, exact_op, dft);
        }
        check_finite(ucur, 1, hist.max_norms);
        record(1, ucur);
        Field2D rhs = make_field(n), scr = make_field(n), unew = make_field(n);
        const size_t m = u.v.size();
        for (int step = 2; step <= cfg.steps; ++step) {
            advection_rhs(*deriv, ucur, cx, cy, scr, rhs);
            for (size_t t = 0; t < m; ++t)
                unew.v[t] = uprev.v[t] + 2 * cfg.k * rhs.v[t];
            std::swap(uprev, ucur);
            std::swap(ucur, unew);
            check_finite(ucur, step, hist.max_norms);
            record(step, ucur);
        }
        u = ucur;
    } else { // MacCormack
        Field2D us = make_field(n), rhs = make_field(n), scr = make_field(n);
        const size_t m = u.v.size();
        const auto& p = std::get<PrefactoredScheme>(cfg.scheme);
        PrefactoredSweep1D fwd(p, n, cfg.h, true), bwd(p, n, cfg.h, false);
        std::vector<double> ci(n), co(n);
        auto sweep_rhs = [&](const PrefactoredSweep1D& op, const Field2D& w,
                             Field2D& out) {
            // out = -(cx Dx w + cy Dy w) with the given sweep in both axes
            if (cx != 0) {
                rows_apply(op, w, out);
                if (cy != 0) {
                    cols_apply(op, w, scr, ci, co);
                    for (size_t t = 0; t < m; ++t)
                        out.v[t] = -(cx * out.v[t] + cy * scr.v[t]);
                } else {
                    for (size_t t = 0; t < m; ++t) out.v[t] = -cx * out.v[t];
                }
            } else if (cy != 0) {
                cols_apply(op, w, out, ci, co);
                for (size_t t = 0; t < m; ++t) out.v[t] = -cy * out.v[t];
            } else {
                std::fill(out.v.begin(), out.v.end(), 0.0);
            }
        };
        for (int step = 1; step <= cfg.steps; ++step) {
            sweep_rhs(fwd, u, rhs); // predictor
            for (size_t t = 0; t < m; ++t)
                us.v[t] = u.v[t] + cfg.k * rhs.v[t];
            sweep_rhs(bwd, us, rhs); // corrector
            for (size_t t = 0; t < m; ++t)
                u.v[t] = 0.5 * (u.v[t] + us.v[t] + cfg.k * rhs.v[t]);
            check_finite(u, step, hist.max_norms);
            record(step, u);
        }
    }
    return hist;
}

double growth_rate(const FieldHistory& hist) {
    if (hist.max_norms.size() != static_cast<size_t>(hist.steps) + 1)
        throw ValidationError("history is missing per-step norms");
    const int w = std::min(100, hist.steps);
    const double a = hist.max_norms[hist.steps - w];
    const double b = hist.max_norms[hist.steps];
    if (!std::isfinite(b)) return std::numeric_limits<double>::infinity();
    if (a == 0) return b == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    if (b == a) return 1.0;
    return std::pow(b / a, 1.0 / w);
}

AnisotropyReport measure_anisotropy(const SimulationConfig& cfg_template,
                                    double ppw,
                                    const std::vector<double>& angles) {
    if (!(ppw >= 2.5 * (1 - 1e-12)))
        throw ValidationError(
            "anisotropy measurement needs at least 2.5 points per wavelength");
    if (angles.empty()) throw ValidationError("no angles requested");
    if (!(cfg_template.c > 0))
        throw ValidationError(
            "anisotropy measurement needs a positive advection speed");

    const int n = cfg_template.n;
    auto sp = make_provider(cfg_template.scheme);
    Dft2 dft(n);

    AnisotropyReport rep;
    rep.ppw = ppw;
    for (double theta : angles) {
        const double kh_req = 2 * kPi / ppw;
        SnapResult snap = snap_plane_wave(n, kh_req, theta);

        SimulationConfig cfg = cfg_template;
        cfg.angle = snap.mode.angle;
        cfg.steps = std::max(cfg_template.steps, 200);
        cfg.record_stride = 1;
        FieldHistory hist = run_advection2d(
            cfg, PlaneWaveInit{snap.mode.kh, snap.mode.angle});
        const SnappedMode& md = hist.snapped;

        std::complex<double> prev =
            dft.coefficient(hist.snapshots.front().v, md.mx, md.my);
        const double a0 = std::abs(prev);
        if (!(a0 > 0))
            throw NumericError("undefined-phase",
                               "initial field does not excite mode (" +
                                   std::to_string(md.mx) + ", " +
                                   std::to_string(md.my) + ")");
        std::vector<double> phase(hist.snapshots.size(), 0.0);
        for (size_t r = 1; r < hist.snapshots.size(); ++r) {
            const std::complex<double> cur =
                dft.coefficient(hist.snapshots[r].v, md.mx, md.my);
            if (std::abs(cur) < 1e-12 * a0)
                throw NumericError(
                    "undefined-phase",
                    "mode amplitude collapsed below 1e-12 of the start; phase "
                    "is unmeasurable at snapshot " + std::to_string(r));
            phase[r] = phase[r - 1] + std::arg(cur * std::conj(prev));
            prev = cur;
        }
        // least-squares slope of phase vs time
        double tbar = 0, pbar = 0;
        const size_t m = phase.size();
        for (size_t r = 0; r < m; ++r) {
            tbar += hist.times[r];
            pbar += phase[r];
        }
        tbar /= m;
        pbar /= m;
        double num = 0, den = 0;
        for (size_t r = 0; r < m; ++r) {
            const double dt = hist.times[r] - tbar;
            num += dt * (phase[r] - pbar);
            den += dt * dt;
        }
        const double omega_emp = -num / den;

        AnisotropyMeasurement row;
        row.angle_requested = theta;
        row.angle_actual = md.angle;
        row.kh_actual = md.kh;
        row.mx = md.mx;
        row.my = md.my;
        row.c_emp = omega_emp * cfg_template.h / (cfg_template.c * md.kh);
        row.c_pred = advection_phase_group(*sp, md.kh, md.angle).c_n_over_c;
        rep.rows.push_back(row);
    }
    auto minmax = [](const std::vector<AnisotropyMeasurement>& rows,
                     double AnisotropyMeasurement::*f) {
        double lo = rows.front().*f, hi = lo;
        for (const auto& r : rows) {
            lo = std::min(lo, r.*f);
            hi = std::max(hi, r.*f);
        }
        return hi - lo;
    };
    rep.spread_emp = minmax(rep.rows, &AnisotropyMeasurement::c_emp);
    rep.spread_pred = minmax(rep.rows, &AnisotropyMeasurement::c_pred);
    return rep;
}

double fit_anisotropy_order(const Stencil2D& lap,
                            const std::vector<double>& kh_values) {
    if (lap.kind != StencilKind::Laplacian)
        throw ValidationError(
            "anisotropy-order fitting expects a Laplacian-kind stencil");
    if (kh_values.size() < 2)
        throw ValidationError("need at least two sample wavenumbers");
    double lo = kh_values.front(), hi = kh_values.front();
    for (double kh : kh_values) {
        if (!(kh > 0) || !(kh < 1))
            throw ValidationError("sample wavenumbers must lie in (0, 1)");
        lo = std::min(lo, kh);
        hi = std::max(hi, kh);
    }
    if (hi < 10 * lo * (1 - 1e-9))
        throw ValidationError("sample wavenumbers must span at least a decade");

    std::vector<double> lx, ly;
    for (double kh : kh_values) {
        const double sa = std::real(stencil_symbol(lap, kh, 0.0));
        const double q = kh / std::sqrt(2.0);
        const double sd = std::real(stencil_symbol(lap, q, q));
        // anisotropy relative to the principal -Kh^2 symbol
        const double d = std::abs(sa - sd) / (kh * kh);
        if (d >= 1e-15) {
            lx.push_back(std::log(kh));
            ly.push_back(std::log(d));
        }
    }
    if (lx.size() < 2) return std::numeric_limits<double>::infinity();
    double xbar = 0, ybar = 0;
    for (size_t t = 0; t < lx.size(); ++t) {
        xbar += lx[t];
        ybar += ly[t];
    }
    xbar /= lx.size();
    ybar /= lx.size();
    double num = 0, den = 0;
    for (size_t t = 0; t < lx.size(); ++t) {
        num += (lx[t] - xbar) * (ly[t] - ybar);
        den += (lx[t] - xbar) * (lx[t] - xbar);
    }
    return num / den;
}

BoundaryScan empirical_stability_boundary(
    const SimulationConfig& cfg_template,
    const std::vector<double>& sigma_grid) {
    if (sigma_grid.empty()) throw ValidationError("empty sigma grid");
    for (size_t t = 0; t < sigma_grid.size(); ++t) {
        if (!(sigma_grid[t] > 0))
            throw ValidationError("sigma values must be positive");
        if (t > 0 && !(sigma_grid[t] > sigma_grid[t - 1]))
            throw ValidationError("sigma grid must be strictly ascending");
    }
    BoundaryScan scan;
    if (cfg_template.c == 0) { // no transport: every time step is neutral
        for (double s : sigma_grid) scan.samples.push_back({s, 1.0});
        scan.boundary_sigma = sigma_grid.back();
        return scan;
    }

    const size_t total = sigma_grid.size();
    std::vector<double> growth(total, 0.0);
    std::vector<std::exception_ptr> errs(total);

    auto run_one = [&](size_t idx) {
        SimulationConfig cfg = cfg_template;
        cfg.k = sigma_grid[idx] * cfg_template.h / cfg_template.c;
        cfg.steps = std::max(cfg_template.steps, 500);
        cfg.record_stride = cfg.steps;
        try {
            FieldHistory hist =
                run_advection2d(cfg, GaussianInit{1.5 * cfg_template.h});
            // Whole-run per-step factor. The pulse's mode phases start
            // aligned, so a neutral run never exceeds its initial peak and
            // this ratio stays at 1 + O(roundoff) regardless of the
            // dispersion dips and revivals a trailing window would catch.
            const double first = hist.max_norms.front();
            const double last = hist.max_norms.back();
            growth[idx] =
                std::pow(last / first, 1.0 / static_cast<double>(cfg.steps));
        } catch (const NumericError& e) {
            if (std::string(e.category()) == "divergence")
                growth[idx] = std::numeric_limits<double>::infinity();
            else
                errs[idx] = std::current_exception();
        } catch (...) {
            errs[idx] = std::current_exception();
        }
    };

    const int workers =
        std::min<int>(thread_budget(), static_cast<int>(total));
    if (workers <= 1) {
        for (size_t idx = 0; idx < total; ++idx) run_one(idx);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t idx = next.fetch_add(1); idx < total;
                     idx = next.fetch_add(1))
                    run_one(idx);
            });
        for (auto& th : pool) th.join();
    }
    for (size_t idx = 0; idx < total; ++idx)
        if (errs[idx]) std::rethrow_exception(errs[idx]);

    bool any_stable = false;
    for (size_t idx = 0; idx < total; ++idx) {
        scan.samples.push_back({sigma_grid[idx], growth[idx]});
        if (growth[idx] <= 1 + 1e-8) {
            scan.boundary_sigma = sigma_grid[idx];
            any_stable = true;
        }
    }
    if (!any_stable)
        throw NumericError("boundary-not-found",
                           "every Courant number in the grid grows faster "
                           "than 1 + 1e-8 per step");
    return scan;
}

int thread_budget() {
    const char* e = std::getenv("ANISOSCOPE_THREADS");
    const int fallback =
        std::max(1u, std::thread::hardware_concurrency());
    if (!e || !*e) return fallback;
    char* end = nullptr;
    const long v = std::strtol(e, &end, 10);
    if (end == e || *end != '\0' || v < 0)
        throw ValidationError(
            "ANISOSCOPE_THREADS must be a non-negative integer");
    if (v == 0) return fallback;
    return static_cast<int>(std::min<long>(v, 1024));
}

std::vector<std::string> dump_fields(const FieldHistory& hist,
                                     const std::string& path_prefix) {
    const std::string bin = path_prefix + ".bin";
    const std::string hdr = path_prefix + ".hdr";
    {
        std::ofstream os(bin, std::ios::binary);
        if (!os) throw ValidationError("cannot open '" + bin + "' for writing");
        for (const Field2D& f : hist.snapshots) {
            if constexpr (std::endian::native == std::endian::big) {
                for (double x : f.v) {
                    uint64_t u;
                    std::memcpy(&u, &x, 8);
                    u = __builtin_bswap64(u);
                    os.write(reinterpret_cast<const char*>(&u), 8);
                }
            } else {
                os.write(reinterpret_cast<const char*>(f.v.data()),
                         static_cast<std::streamsize>(f.v.size() * 8));
            }
        }
        if (!os.good())
            throw ValidationError("write to '" + bin + "' failed");
    }
    {
        std::ofstream os(hdr);
        if (!os) throw ValidationError("cannot open '" + hdr + "' for writing");
        char num[40];
        auto g17 = [&num](double x) {
            std::snprintf(num, sizeof num, "%.17g", x);
            return std::string(num);
        };
        os << "layout float64 little-endian row-major (x fastest)\n";
        os << "n " << hist.n << "\n";
        os << "snapshots " << hist.snapshots.size() << "\n";
        os << "h " << g17(hist.h) << "\n";
        os << "k " << g17(hist.k) << "\n";
        os << "c " << g17(hist.c) << "\n";
        os << "angle " << g17(hist.angle) << "\n";
        os << "steps " << hist.steps << "\n";
        os << "record_stride " << hist.record_stride << "\n";
        os << "times";
        for (double t : hist.times) os << ' ' << g17(t);
        os << "\n";
        if (!os.good())
            throw ValidationError("write to '" + hdr + "' failed");
    }
    return {bin, hdr};
}

} // namespace aniso
