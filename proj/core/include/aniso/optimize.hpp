#pragma once

#include <functional>
#include <vector>

#include "aniso/schemes.hpp"

namespace aniso {

// ---------------------------------------------------------------------------
// Isotropy-corrected (diagonal-blend) parameter optimization

enum class IcfMode { Phase, Group };

// Axis-vs-diagonal anisotropy cost of the multidimensional operator built on
// an explicit base scheme, for the 2D wave equation dispersion:
//
//   C(beta) = integral_0^{kh_max} | c1(Kh) - c2(Kh; beta) |^2 d(Kh)
//
// where c1 is the grid-axis numerical phase velocity (beta-independent) and
// c2 the grid-diagonal one. IcfMode::Group uses the two group-velocity curves
// instead. The integral is a composite Simpson rule with `panels` panels
// (>= 512 by default); curves are cached on the quadrature nodes so repeated
// evaluations cost O(panels).
class IcfObjective {
public:
    IcfObjective(const SchemeSpec& base, double kh_max, IcfMode mode,
                 int panels = 512);

    double operator()(double beta) const;

    double kh_max() const { return kh_max_; }
    IcfMode mode() const { return mode_; }

private:
    double kh_max_;
    IcfMode mode_;
    double dx_;
    std::vector<double> simpson_w_; // quadrature weights including dx/3
    std::vector<double> c1_;        // axis curve at nodes
    std::vector<double> p_;         // diagonal phase bracket, beta-free part
    std::vector<double> q_;         // diagonal phase bracket, beta part
    std::vector<double> pd_;        // diagonal derivative bracket (group mode)
    std::vector<double> qd_;
};

struct IcfResult {
    double beta_star = 0;
    double objective_at_star = 0;
    double objective_at_zero = 0;
    bool degenerate_flat = false; // objective flat within 1e-14: beta_star = 0
};

// Minimizes the anisotropy cost over beta in [0, 4] by golden-section search
// (absolute tolerance tol) seeded with a coarse bracketing scan so a global
// interior minimum is located. kh_max must lie in (0, pi]. A flat objective
// (spread below 1e-14 across the bracket) returns beta_star = 0 with
// degenerate_flat set.
IcfResult icf_optimize(const SchemeSpec& base, double kh_max, IcfMode mode,
                       double tol = 1e-8, int panels = 512);

// ---------------------------------------------------------------------------
// One-parameter compact family (order sacrificed for resolution)

struct GsCoefficients {
    double a = 0;
    double b = 0;
};

// Explicit weights of the one-parameter tridiagonal compact family,
// a = 2 (2 + alpha) / 3, b = (-1 + 4 alpha) / 3. alpha = 1/4 gives the
// classical two-point member (b = 0); alpha = 1/3 the sixth-order member.
GsCoefficients gs_coefficients(double alpha_c);

// Scaled 1D effective wavenumber of that family,
// w_d(w) = (a sin w + (b/2) sin 2w) / (1 + 2 alpha cos w).
// Throws NumericError("singularity") when the denominator vanishes.
double gs_wd(double alpha_c, double w);

// Integrated 2D anisotropy error
//
//   E(alpha) = integral_0^{w_max} integral_0^{pi/2}
//              | cos t w_d(w cos t) + sin t w_d(w sin t) - w | dt dw
//
// by composite Simpson quadrature with w_panels x theta_panels panels.
// A denominator zero inside the integration range raises
// NumericError("singularity") naming the offending w.
double gs_isotropy_error(double alpha_c, double w_max, int w_panels = 256,
                         int theta_panels = 128);

struct GsResult {
    double alpha_star = 0;
    double error_at_star = 0;
    double error_at_zero = 0;
};

// Minimizes E over alpha in [0, 0.45] by bracketed golden-section search.
GsResult gs_optimize(double w_max, double tol = 1e-8, int w_panels = 256,
                     int theta_panels = 128);

// ---------------------------------------------------------------------------
// Isotropy-corrected FDTD weight calibration

// Mean per-mode weight over azimuth for modes of magnitude resolution_kh:
// each sampled direction theta (axis-excluding midpoint grid on (0, pi/2))
// contributes koh_alpha_of_mode at the temporal phase of the grid-axis mode
// of the same magnitude, sin(omega_k/2) = courant * sin(resolution_kh/2).
// That reference makes the result exactly independent of courant, matching
// the observed insensitivity to the Courant number. n_angles >= 8.
double koh_mean_alpha(double resolution_kh, double courant, int n_angles = 64);

// ---------------------------------------------------------------------------
// Shared 1D minimizer

// Golden-section search on [lo, hi] to absolute tolerance tol, seeded by a
// uniform scan with `seed_points` samples to bracket the global minimum.
// Returns the minimizing argument; *flat is set when the scan spread is
// below 1e-14 (the smallest argument is returned in that case).
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int seed_points = 401,
                          bool* flat = nullptr);

} // namespace aniso
