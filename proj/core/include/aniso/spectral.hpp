#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "aniso/schemes.hpp"

namespace aniso {

// ---------------------------------------------------------------------------
// 1D symbols

// Modified wavenumber K(z) of a centered scheme (see SchemeSpec). Defined for
// any real z; throws NumericError("singularity") if the compact denominator
// vanishes at z.
double modified_wavenumber(const SchemeSpec& s, double z);

// Derivative dK/dz, used for group-velocity curves of 1D schemes.
double modified_wavenumber_derivative(const SchemeSpec& s, double z);

struct WavenumberSample {
    double z = 0;
    double k_num = 0;
};

// K(z) sampled on n equispaced points of [0, z_max] (first row exactly z=0).
std::vector<WavenumberSample> wavenumber_curve(const SchemeSpec& s, int n,
                                               double z_max);

// Complex symbols of the forward/backward prefactored sweeps. For real z the
// two are complex conjugates: equal real parts, opposite imaginary parts.
std::complex<double> prefactored_symbol(const PrefactoredScheme& p, double z,
                                        bool forward);

// Averaged (real) effective wavenumber of the sweep pair; equals
// Re(prefactored_symbol(., z, fwd)).
double prefactored_average(const PrefactoredScheme& p, double z);

// Effective x-wavenumber of the isotropy-corrected multidimensional operator:
//
//   (2/(1+beta)) sum_n a_n { sin(n xi_h)
//       + (beta/2) [ sin(n (xi_h + eta_h)) + sin(n (xi_h - eta_h)) ] }.
//
// beta = 0 collapses to modified_wavenumber(base, xi_h), and eta_h = 0
// collapses to it for any beta.
double multidim_symbol(const MultiDimScheme& md, double xi_h, double eta_h);

// Fourier symbol of an explicit 2D stencil at scaled wavenumbers (xi_h,
// eta_h), for h = 1: sum_e w_e exp(i (di xi_h + dj eta_h)).
std::complex<double> stencil_symbol(const Stencil2D& st, double xi_h,
                                    double eta_h);

// ---------------------------------------------------------------------------
// 2D advection dispersion

// Directional wavenumber pair of a semi-discrete advection operator
// c (cos A dx + sin A dy): kx and ky are the real effective wavenumbers of
// the two derivative approximations at a scaled mode (xi_h, eta_h).
class SymbolProvider2D {
public:
    virtual ~SymbolProvider2D() = default;
    virtual double kx(double xi_h, double eta_h) const = 0;
    virtual double ky(double xi_h, double eta_h) const = 0;
    virtual std::string name() const = 0;
};

// Exact differentiation: kx = xi_h, ky = eta_h.
std::unique_ptr<SymbolProvider2D> exact_provider();
// Conventional scheme: kx = K(xi_h), ky = K(eta_h).
std::unique_ptr<SymbolProvider2D> scheme_provider(const SchemeSpec& s);
// Isotropy-corrected multidimensional operator for both derivatives.
std::unique_ptr<SymbolProvider2D> multidim_provider(const MultiDimScheme& md);
// Averaged prefactored operator, optionally blended with its diagonal
// counterparts using the same beta construction as MultiDimScheme.
std::unique_ptr<SymbolProvider2D> prefactored_provider(const PrefactoredScheme& p,
                                                       double beta = 0);
// First-derivative-x stencil for d/dx, its transpose for d/dy. The stencil
// symbol must be purely imaginary (centered); its imaginary part is used.
std::unique_ptr<SymbolProvider2D> stencil_provider(const Stencil2D& st);

struct PhaseGroup {
    double omega_h_over_c = 0; // scaled numerical frequency omega h / c
    double c_n_over_c = 0;     // numerical phase velocity / exact
    double g_n_over_c = 0;     // numerical group velocity (radial) / exact
};

// Numerical dispersion of 2D advection at propagation angle `angle` and
// scaled wavenumber magnitude Kh in (0, pi*sqrt(2)]:
//
//   omega h / c = cos A kx(xi_h, eta_h) + sin A ky(xi_h, eta_h),
//   (xi_h, eta_h) = Kh (cos A, sin A),
//
// with c_n/c = (omega h / c)/Kh and g_n/c = d(omega h / c)/d(Kh) at fixed
// angle, computed by a centered difference with relative step 1e-6 so all
// providers are treated uniformly. Kh <= 0 throws ValidationError.
PhaseGroup advection_phase_group(const SymbolProvider2D& sp, double kh,
                                 double angle);

struct VelocityPolar {
    double kh = 0;                  // scaled wavenumber magnitude (2 pi / ppw)
    std::vector<double> angles;     // n_angles values in [0, 2 pi)
    std::vector<PhaseGroup> values; // one per angle
    double max_abs_dev_phase = 0;   // max |c_n/c - 1|
    double spread_phase = 0;        // max - min of c_n/c over angles
    double max_abs_dev_group = 0;
    double spread_group = 0;
};

// Polar anisotropy diagram at ppw points per wavelength (Kh = 2 pi / ppw).
// ppw must keep Kh within (0, pi*sqrt(2)]; n_angles >= 4.
VelocityPolar anisotropy_polar(const SymbolProvider2D& sp, double ppw,
                               int n_angles);

// ---------------------------------------------------------------------------
// Scheme-specific dispersion relations

enum class SunTruemanBranch { Axis, Diagonal };

// Spatial factor of the weighted 2D FDTD dispersion relation, per unit h:
// axis branch      w sin(beta_h/2) + (1-w) sin(3 beta_h/2)/3,
// diagonal branch  the same evaluated at the diagonal phase constant and
//                  multiplied by sqrt(2), so that its square carries the
//                  factor-2 of the diagonal relation.
double sun_trueman_dispersion(double w, double beta_h, SunTruemanBranch br);

// Weight equating the axis and diagonal relations at the given scaled phase
// constants (so both branches yield one common temporal frequency):
//
//   w = [ sqrt(2) sin(3 bd/2)/3 - sin(3 ba/2)/3 ]
//       / { [ sin(ba/2) - sin(3 ba/2)/3 ] - sqrt(2) [ sin(bd/2) - sin(3 bd/2)/3 ] }.
//
// Depends only on the scaled products. A vanishing denominator (mesh too
// fine to distinguish the branches) throws NumericError("degenerate-mesh").
double sun_trueman_weight(double beta_a_h, double beta_d_h);

// Quadratic residual of the isotropy-corrected 2D FDTD dispersion relation
// at weight alpha for the scaled mode (xi_h, eta_h), temporal phase omega_k =
// omega * dt and Courant number courant = c dt / h:
//
//   R(alpha) = Cp Cx alpha^2 - 4 Cx alpha + Cp - sin^2(omega_k/2)/courant^2,
//   Cp = sin^2(xi_h/2) + sin^2(eta_h/2),  Cx = sin^2(xi_h/2) sin^2(eta_h/2).
double koh_mm_residual(double alpha, double xi_h, double eta_h, double omega_k,
                       double courant);

// Per-mode weight solving R(alpha) = 0 (root closest to zero):
//
//   alpha = (2/Cp) [ 1 - sqrt(1 - (Cp/(4 Cx)) (Cp - sin^2(omega_k/2)/courant^2)) ].
//
// Axis-aligned modes (Cx = 0) throw NumericError("singular-mode"); a negative
// discriminant throws NumericError("no-real-solution").
double koh_alpha_of_mode(double xi_h, double eta_h, double omega_k,
                         double courant);

// Residual of the 3D isotropic-dispersion FDTD relation
//
//   sin^2(omega_k/2)/courant^2 - (Kx^2 + Ky^2 + Kz^2),
//   Kp = Sp [ alpha (Pp - Qp) - beta Qp / 2 + 1 ],
//   Sx = sin(xi_h/2), Px = Sy Sz, Qx = Sy^2 + Sz^2 (cyclic),
//
// in units h = 1. alpha = beta = 0 reduces exactly to the standard staggered
// (Yee) relation.
double kim3d_dispersion_residual(double alpha_w, double beta_w, double xi_h,
                                 double eta_h, double zeta_h, double omega_k,
                                 double courant);

// Temporal phase omega_k in (0, pi] solving the relation above by bisection.
// Throws NumericError("no-real-solution") if the spatial term exceeds the
// reachable range.
double kim3d_solve_omega(double alpha_w, double beta_w, double xi_h,
                         double eta_h, double zeta_h, double courant);

} // namespace aniso
