#include "anisoscope/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "aniso/csv.hpp"
#include "aniso/errors.hpp"
#include "aniso/optimize.hpp"
#include "aniso/schemes.hpp"
#include "aniso/solver.hpp"
#include "aniso/spectral.hpp"
#include "aniso/stability.hpp"
#include "aniso/verify.hpp"

namespace anisoscope {

namespace {

constexpr double kPi = 3.14159265358979323846;

using aniso::format_g17;

std::string join_args(const std::vector<std::string>& args) {
    std::string s = "anisoscope";
    for (const auto& a : args) {
        s += ' ';
        s += a;
    }
    return s;
}

// First line of every CSV: tool version plus the exact invocation.
void manifest(std::ostream& os, const std::string& cmdline) {
    os << "# anisoscope " << kVersion << " | " << cmdline << "\n";
}

double deg2rad(double deg) { return deg * kPi / 180.0; }

int parse_int(const std::string& s, const std::string& what) {
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        throw aniso::ValidationError(what + " is not an integer: '" + s + "'");
    return static_cast<int>(v);
}

bool is_prefactored_label(const std::string& s) {
    return s == "PF4" || s == "PF6";
}

aniso::SchemeVariant make_variant(const std::string& scheme, double beta) {
    if (scheme == "exact") {
        if (beta != 0)
            throw aniso::ValidationError(
                "beta applies to catalog schemes, not the exact operator");
        return aniso::ExactOperator{};
    }
    if (is_prefactored_label(scheme)) {
        if (beta != 0)
            throw aniso::ValidationError(
                "sweep-pair marching supports beta = 0 only");
        return aniso::builtin_prefactored(scheme == "PF4" ? 4 : 6);
    }
    const aniso::SchemeSpec& s = aniso::find_scheme(scheme);
    if (beta != 0) return aniso::make_multidim(s, beta);
    return s;
}

std::unique_ptr<aniso::SymbolProvider2D> make_provider(
    const std::string& scheme, double beta) {
    if (scheme == "exact") return aniso::exact_provider();
    if (is_prefactored_label(scheme))
        return aniso::prefactored_provider(
            aniso::builtin_prefactored(scheme == "PF4" ? 4 : 6), beta);
    const aniso::SchemeSpec& s = aniso::find_scheme(scheme);
    if (beta != 0)
        return aniso::multidim_provider(aniso::make_multidim(s, beta));
    return aniso::scheme_provider(s);
}

aniso::Marcher parse_marcher(const std::string& s) {
    if (s == "leapfrog") return aniso::Marcher::Leapfrog;
    if (s == "rk4") return aniso::Marcher::RK4;
    if (s == "maccormack") return aniso::Marcher::MacCormack;
    throw aniso::ValidationError(
        "unknown marcher '" + s + "' (expected leapfrog, rk4 or maccormack)");
}

const char* marcher_name(aniso::Marcher m) {
    switch (m) {
    case aniso::Marcher::Leapfrog: return "leapfrog";
    case aniso::Marcher::RK4: return "rk4";
    default: return "maccormack";
    }
}

// ---------------------------------------------------------------------------
// subcommands

void cmd_list_schemes(std::ostream& out, const std::string& cmdline) {
    manifest(out, cmdline);
    out << "label,family,formal_order,description\n";
    for (const auto& s : aniso::builtin_catalog()) {
        out << s.label << ',' << (s.is_explicit() ? "explicit" : "compact")
            << ',' << s.formal_order << ',' << s.description << "\n";
    }
    for (int ord : {4, 6}) {
        const auto& p = aniso::builtin_prefactored(ord);
        out << p.label << ",prefactored," << p.formal_order
            << ",forward/backward sweep pair averaging to a centered symbol\n";
    }
}

struct WavenumberOpts {
    std::string scheme;
    int samples = 64;
    double zmax = kPi;
};

void cmd_wavenumber(const WavenumberOpts& o, std::ostream& out,
                    const std::string& cmdline) {
    if (o.samples < 2)
        throw aniso::ValidationError("samples must be at least 2");
    if (!(o.zmax > 0))
        throw aniso::ValidationError("zmax must be positive");
    std::function<double(double)> knum;
    if (o.scheme == "exact") {
        knum = [](double z) { return z; };
    } else if (is_prefactored_label(o.scheme)) {
        const auto& p = aniso::builtin_prefactored(o.scheme == "PF4" ? 4 : 6);
        knum = [&p](double z) { return aniso::prefactored_average(p, z); };
    } else {
        const auto& s = aniso::find_scheme(o.scheme);
        knum = [&s](double z) { return aniso::modified_wavenumber(s, z); };
    }
    manifest(out, cmdline);
    out << "# params scheme=" << o.scheme << " samples=" << o.samples
        << " zmax=" << format_g17(o.zmax) << "\n";
    out << "z,k_exact,k_num\n";
    for (int i = 0; i < o.samples; ++i) {
        const double z = o.zmax * i / (o.samples - 1);
        out << format_g17(z) << ',' << format_g17(z) << ','
            << format_g17(knum(z)) << "\n";
    }
}

struct PolarOpts {
    std::string scheme;
    double ppw = 4;
    int angles = 72;
    double beta = 0;
};

void cmd_polar(const PolarOpts& o, std::ostream& out,
               const std::string& cmdline) {
    auto sp = make_provider(o.scheme, o.beta);
    const aniso::VelocityPolar vp = aniso::anisotropy_polar(*sp, o.ppw,
                                                            o.angles);
    manifest(out, cmdline);
    out << "# params scheme=" << o.scheme << " ppw=" << format_g17(o.ppw)
        << " angles=" << o.angles << " beta=" << format_g17(o.beta)
        << " kh=" << format_g17(vp.kh) << "\n";
    out << "angle,c_n_over_c,g_n_over_c\n";
    for (size_t i = 0; i < vp.angles.size(); ++i) {
        out << format_g17(vp.angles[i]) << ','
            << format_g17(vp.values[i].c_n_over_c) << ','
            << format_g17(vp.values[i].g_n_over_c) << "\n";
    }
    out << "# spread_phase " << format_g17(vp.spread_phase)
        << " max_abs_dev_phase " << format_g17(vp.max_abs_dev_phase)
        << " spread_group " << format_g17(vp.spread_group)
        << " max_abs_dev_group " << format_g17(vp.max_abs_dev_group) << "\n";
}

struct IcfOpts {
    std::string scheme;
    double khmax = kPi / 2;
    std::string mode = "phase";
    double tol = 1e-8;
    int panels = 512;
};

void cmd_optimize_icf(const IcfOpts& o, std::ostream& out,
                      const std::string& cmdline) {
    const aniso::SchemeSpec& s = aniso::find_scheme(o.scheme);
    aniso::IcfMode mode;
    if (o.mode == "phase")
        mode = aniso::IcfMode::Phase;
    else if (o.mode == "group")
        mode = aniso::IcfMode::Group;
    else
        throw aniso::ValidationError("mode must be 'phase' or 'group'");
    const aniso::IcfResult r =
        aniso::icf_optimize(s, o.khmax, mode, o.tol, o.panels);
    manifest(out, cmdline);
    out << "# params scheme=" << o.scheme << " khmax=" << format_g17(o.khmax)
        << " mode=" << o.mode << " tol=" << format_g17(o.tol)
        << " panels=" << o.panels << "\n";
    out << "scheme,mode,kh_max,beta_star,objective_at_star,objective_at_zero,"
           "degenerate_flat\n";
    out << o.scheme << ',' << o.mode << ',' << format_g17(o.khmax) << ','
        << format_g17(r.beta_star) << ',' << format_g17(r.objective_at_star)
        << ',' << format_g17(r.objective_at_zero) << ','
        << (r.degenerate_flat ? 1 : 0) << "\n";
}

struct GsOpts {
    double wmax = 0;
    double tol = 1e-8;
    int wpanels = 256;
    int thetapanels = 128;
};

void cmd_optimize_gs(const GsOpts& o, std::ostream& out,
                     const std::string& cmdline) {
    const aniso::GsResult r =
        aniso::gs_optimize(o.wmax, o.tol, o.wpanels, o.thetapanels);
    const aniso::GsCoefficients c = aniso::gs_coefficients(r.alpha_star);
    manifest(out, cmdline);
    out << "# params wmax=" << format_g17(o.wmax) << " tol=" << format_g17(o.tol)
        << " wpanels=" << o.wpanels << " thetapanels=" << o.thetapanels << "\n";
    out << "w_max,alpha_star,a,b,error_at_star,error_at_zero\n";
    out << format_g17(o.wmax) << ',' << format_g17(r.alpha_star) << ','
        << format_g17(c.a) << ',' << format_g17(c.b) << ','
        << format_g17(r.error_at_star) << ',' << format_g17(r.error_at_zero)
        << "\n";
}

struct StabilityOpts {
    std::string scheme;
    std::string marcher = "leapfrog";
    double beta = 0;
    double direction_deg = 0;
    int n = 32;
    int steps = 500;
    double span = 0.15;
    double step = 0.01;
};

double closed_sigma(const StabilityOpts& o, aniso::Marcher m) {
    double ca = std::abs(std::cos(deg2rad(o.direction_deg)));
    double sa = std::abs(std::sin(deg2rad(o.direction_deg)));
    if (sa > ca) std::swap(ca, sa);
    if (m == aniso::Marcher::MacCormack) {
        // largest sigma keeping the sweep-pair region satisfied
        double lo = 0, hi = 1;
        auto stable = [&](double sig) {
            aniso::StabilityQuery q;
            q.sigma_x = sig * ca;
            q.sigma_y = sig * sa;
            q.beta = o.beta;
            return aniso::maccormack_limit(q, kPi).stable;
        };
        while (stable(hi)) hi *= 2;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (stable(mid) ? lo : hi) = mid;
        }
        return lo;
    }
    const double cfl =
        aniso::cfl_constant(aniso::find_scheme(o.scheme), m);
    return cfl * (1 + o.beta) / ((1 + o.beta) * ca + sa);
}

void cmd_stability(const StabilityOpts& o, std::ostream& out,
                   const std::string& cmdline) {
    const aniso::Marcher m = parse_marcher(o.marcher);
    if (m == aniso::Marcher::MacCormack) {
        if (!is_prefactored_label(o.scheme))
            throw aniso::ValidationError(
                "maccormack marching requires a prefactored scheme (PF4/PF6)");
        if (o.beta != 0)
            throw aniso::ValidationError(
                "sweep-pair marching supports beta = 0 only");
    } else if (o.scheme == "exact" || is_prefactored_label(o.scheme)) {
        throw aniso::ValidationError(
            "closed-form limits cover the catalog schemes; pick one of them");
    }
    if (!(o.span > 0 && o.span < 1) || !(o.step > 0))
        throw aniso::ValidationError("span must be in (0,1) and step > 0");

    const double closed = closed_sigma(o, m);

    aniso::SimulationConfig cfg;
    cfg.scheme = make_variant(o.scheme, o.beta);
    cfg.marcher = m;
    cfg.n = o.n;
    cfg.h = 1.0;
    cfg.c = 1.0;
    cfg.angle = deg2rad(o.direction_deg);
    cfg.steps = o.steps;
    cfg.record_stride = o.steps;
    std::vector<double> grid;
    for (double s = closed * (1 - o.span); s <= closed * (1 + o.span) + 1e-12;
         s += closed * o.step)
        grid.push_back(s);
    const aniso::BoundaryScan scan =
        aniso::empirical_stability_boundary(cfg, grid);

    manifest(out, cmdline);
    out << "# params scheme=" << o.scheme << " marcher=" << o.marcher
        << " beta=" << format_g17(o.beta)
        << " direction_deg=" << format_g17(o.direction_deg) << " n=" << o.n
        << " steps=" << o.steps << "\n";
    out << "scheme,marcher,beta,direction_deg,sigma_closed,sigma_empirical,"
           "margin\n";
    out << o.scheme << ',' << o.marcher << ',' << format_g17(o.beta) << ','
        << format_g17(o.direction_deg) << ',' << format_g17(closed) << ','
        << format_g17(scan.boundary_sigma) << ','
        << format_g17(scan.boundary_sigma - closed) << "\n";
    out << "# samples sigma:growth";
    for (const auto& s : scan.samples)
        out << ' ' << format_g17(s.sigma) << ':' << format_g17(s.growth);
    out << "\n";
}

// flat key=value configuration for `simulate`
std::map<std::string, std::string> parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw aniso::ValidationError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notspace = line.find_first_not_of(" \t\r");
        if (notspace == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw aniso::ValidationError("config line " +
                                         std::to_string(lineno) +
                                         " is not key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw aniso::ValidationError("config line " +
                                         std::to_string(lineno) +
                                         " has an empty key or value");
        if (!kv.emplace(key, val).second)
            throw aniso::ValidationError("duplicate config key '" + key + "'");
    }
    return kv;
}

struct SimulateOpts {
    std::string config_path;
};

void cmd_simulate(const SimulateOpts& o, std::ostream& out,
                  const std::string& cmdline) {
    static const char* known[] = {
        "scheme", "beta",       "marcher",       "n",          "h",
        "k",      "c",          "angle_deg",     "steps",      "initial",
        "ppw",    "width",      "record_stride", "out_prefix", "dump_fields",
        "angles_deg"};
    auto kv = parse_config(o.config_path);
    for (const auto& [key, val] : kv) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok)
            throw aniso::ValidationError("unknown config key '" + key + "'");
    }
    auto get = [&](const char* key, const std::string& dflt) {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : it->second;
    };
    const std::string scheme = get("scheme", "");
    if (scheme.empty())
        throw aniso::ValidationError("config key 'scheme' is required");
    const double beta = aniso::parse_g17(get("beta", "0"));

    aniso::SimulationConfig cfg;
    cfg.scheme = make_variant(scheme, beta);
    cfg.marcher = parse_marcher(get("marcher", "rk4"));
    cfg.n = parse_int(get("n", "64"), "n");
    cfg.h = aniso::parse_g17(get("h", "1"));
    cfg.k = aniso::parse_g17(get("k", "0.1"));
    cfg.c = aniso::parse_g17(get("c", "1"));
    cfg.angle = deg2rad(aniso::parse_g17(get("angle_deg", "0")));
    cfg.steps = parse_int(get("steps", "100"), "steps");
    cfg.record_stride = parse_int(get("record_stride", "0"), "record_stride");

    const double ppw = aniso::parse_g17(get("ppw", "8"));
    aniso::InitialCondition init;
    const std::string kind = get("initial", "planewave");
    if (kind == "planewave") {
        if (!(ppw > 0)) throw aniso::ValidationError("ppw must be positive");
        init = aniso::PlaneWaveInit{2 * kPi / ppw, cfg.angle};
    } else if (kind == "gaussian") {
        init = aniso::GaussianInit{aniso::parse_g17(get("width", "1.5")) *
                                   cfg.h};
    } else {
        throw aniso::ValidationError(
            "initial must be 'planewave' or 'gaussian'");
    }

    const aniso::FieldHistory hist = aniso::run_advection2d(cfg, init);
    const std::string prefix = get("out_prefix", "simulate");

    std::string resolved = "scheme=" + scheme;
    for (const auto& [key, val] : kv)
        if (key != "scheme") resolved += ' ' + key + '=' + val;

    std::vector<std::string> written;
    {
        const std::string path = prefix + "_norms.csv";
        std::ofstream f(path);
        if (!f)
            throw aniso::ValidationError("cannot write '" + path + "'");
        manifest(f, cmdline);
        f << "# params " << resolved << "\n";
        if (hist.has_snapped)
            f << "# snapped mx " << hist.snapped.mx << " my "
              << hist.snapped.my << " kh " << format_g17(hist.snapped.kh)
              << " angle " << format_g17(hist.snapped.angle) << "\n";
        for (const auto& note : hist.notes) f << "# note " << note << "\n";
        f << "step,time,max_norm\n";
        for (size_t s = 0; s < hist.max_norms.size(); ++s)
            f << s << ',' << format_g17(s * hist.k) << ','
              << format_g17(hist.max_norms[s]) << "\n";
        f << "# growth_rate " << format_g17(aniso::growth_rate(hist)) << "\n";
        written.push_back(path);
    }
    if (!get("angles_deg", "").empty()) {
        std::vector<double> angles;
        std::stringstream ss(get("angles_deg", ""));
        std::string tok;
        while (std::getline(ss, tok, ','))
            angles.push_back(deg2rad(aniso::parse_g17(tok)));
        const aniso::AnisotropyReport rep =
            aniso::measure_anisotropy(cfg, ppw, angles);
        const std::string path = prefix + "_aniso.csv";
        std::ofstream f(path);
        if (!f)
            throw aniso::ValidationError("cannot write '" + path + "'");
        manifest(f, cmdline);
        f << "# params " << resolved << "\n";
        f << "angle_requested,angle_actual,kh_actual,mx,my,c_emp,c_pred\n";
        for (const auto& r : rep.rows)
            f << format_g17(r.angle_requested) << ','
              << format_g17(r.angle_actual) << ',' << format_g17(r.kh_actual)
              << ',' << r.mx << ',' << r.my << ',' << format_g17(r.c_emp)
              << ',' << format_g17(r.c_pred) << "\n";
        f << "# spread_emp " << format_g17(rep.spread_emp) << " spread_pred "
          << format_g17(rep.spread_pred) << "\n";
        written.push_back(path);
    }
    if (get("dump_fields", "0") == "1") {
        for (const auto& path : aniso::dump_fields(hist, prefix))
            written.push_back(path);
    }

    manifest(out, cmdline);
    out << "# params " << resolved << "\n";
    out << "# marcher " << marcher_name(cfg.marcher) << " sigma "
        << format_g17(cfg.c * cfg.k / cfg.h) << "\n";
    if (hist.has_snapped)
        out << "# snapped mx " << hist.snapped.mx << " my " << hist.snapped.my
            << " kh " << format_g17(hist.snapped.kh) << " angle "
            << format_g17(hist.snapped.angle) << "\n";
    for (const auto& note : hist.notes) out << "# note " << note << "\n";
    out << "# growth_rate " << format_g17(aniso::growth_rate(hist)) << "\n";
    for (const auto& path : written) out << "# wrote " << path << "\n";
}

struct VerifyOpts {
    bool fast = false;
    bool verbose = false;
};

int cmd_verify(const VerifyOpts& o, std::ostream& out) {
    const auto results = aniso::run_invariant_suite(!o.fast);
    int failed = 0;
    for (const auto& r : results) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", r.seconds);
        out << (r.pass ? "pass  " : "FAIL  ") << r.name << "  (" << buf
            << "s)\n";
        if (!r.pass || (o.verbose && !r.detail.empty()))
            out << "      " << r.detail << "\n";
        if (!r.pass) ++failed;
    }
    if (failed == 0) {
        out << "all " << results.size() << " checks passed\n";
        return 0;
    }
    out << failed << " of " << results.size() << " checks failed\n";
    return 2;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"anisoscope: numerical anisotropy analysis of "
                 "finite-difference advection schemes"};
    app.require_subcommand(1);

    const std::string cmdline = join_args(args);
    int rc = 0;

    auto* ls = app.add_subcommand("list-schemes",
                                  "List the built-in scheme catalog");
    ls->callback([&] { cmd_list_schemes(out, cmdline); });

    WavenumberOpts wo;
    auto* wn = app.add_subcommand(
        "wavenumber", "Tabulate the effective wavenumber of a scheme");
    wn->add_option("--scheme", wo.scheme,
                   "Catalog label, PF4, PF6, or 'exact'")
        ->required();
    wn->add_option("--samples", wo.samples, "Number of rows (default 64)");
    wn->add_option("--zmax", wo.zmax, "Top of the Kh range (default pi)");
    wn->callback([&] { cmd_wavenumber(wo, out, cmdline); });

    PolarOpts po;
    auto* pl = app.add_subcommand(
        "polar", "Phase/group velocity versus propagation angle");
    pl->add_option("--scheme", po.scheme,
                   "Catalog label, PF4, PF6, or 'exact'")
        ->required();
    pl->add_option("--ppw", po.ppw, "Points per wavelength (default 4)");
    pl->add_option("--angles", po.angles, "Angle count (default 72)");
    pl->add_option("--beta", po.beta, "Diagonal-blend weight (default 0)");
    pl->callback([&] { cmd_polar(po, out, cmdline); });

    IcfOpts io;
    auto* oi = app.add_subcommand(
        "optimize-icf",
        "Minimize axis-vs-diagonal velocity mismatch over the blend weight");
    oi->add_option("--scheme", io.scheme, "Catalog label")->required();
    oi->add_option("--khmax", io.khmax,
                   "Top of the integrated Kh band (default pi/2)");
    oi->add_option("--mode", io.mode, "'phase' or 'group' (default phase)");
    oi->add_option("--tol", io.tol, "Golden-section tolerance (default 1e-8)");
    oi->add_option("--panels", io.panels,
                   "Simpson panel count (default 512)");
    oi->callback([&] { cmd_optimize_icf(io, out, cmdline); });

    GsOpts go;
    auto* og = app.add_subcommand(
        "optimize-gs",
        "Minimize angular dispersion error of the compact-family weight");
    og->add_option("--wmax", go.wmax, "Top of the frequency band")->required();
    og->add_option("--tol", go.tol, "Golden-section tolerance (default 1e-8)");
    og->add_option("--wpanels", go.wpanels,
                   "Frequency panel count (default 256)");
    og->add_option("--thetapanels", go.thetapanels,
                   "Angle panel count (default 128)");
    og->callback([&] { cmd_optimize_gs(go, out, cmdline); });

    StabilityOpts so;
    auto* st = app.add_subcommand(
        "stability", "Closed-form versus empirical stability boundary");
    st->add_option("--scheme", so.scheme, "Catalog label (PF4/PF6 for "
                                          "maccormack)")
        ->required();
    st->add_option("--marcher", so.marcher,
                   "leapfrog, rk4 or maccormack (default leapfrog)");
    st->add_option("--beta", so.beta, "Diagonal-blend weight (default 0)");
    st->add_option("--direction", so.direction_deg,
                   "Advection direction in degrees (default 0)");
    st->add_option("--n", so.n, "Grid size (default 32)");
    st->add_option("--steps", so.steps, "Steps per probe run (default 500)");
    st->add_option("--span", so.span,
                   "Relative half-width of the sigma grid (default 0.15)");
    st->add_option("--step", so.step,
                   "Relative sigma grid step (default 0.01)");
    st->callback([&] { cmd_stability(so, out, cmdline); });

    SimulateOpts mo;
    auto* sim = app.add_subcommand(
        "simulate", "Run the 2D advection solver from a key=value config");
    sim->add_option("config", mo.config_path, "Path to the config file")
        ->required();
    sim->callback([&] { cmd_simulate(mo, out, cmdline); });

    VerifyOpts vo;
    auto* vf = app.add_subcommand(
        "verify", "Run the library's cross-validation suite");
    vf->add_flag("--fast", vo.fast, "Skip the checks that run simulations");
    vf->add_flag("-v,--verbose", vo.verbose, "Show details for passing checks");
    vf->callback([&] { rc = cmd_verify(vo, out); });

    std::vector<const char*> argv;
    argv.push_back("anisoscope");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ERROR:validation:" << e.what() << "\n";
        return 1;
    } catch (const aniso::Error& e) {
        err << "ERROR:" << e.category() << ':' << e.what() << "\n";
        return e.category() == "validation" ? 1 : 2;
    }
    return rc;
}

} // namespace anisoscope
