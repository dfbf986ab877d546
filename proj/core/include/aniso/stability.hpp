#pragma once

#include <vector>

#include "aniso/schemes.hpp"

namespace aniso {

enum class Marcher { Leapfrog, RK4, MacCormack };

// Stability margin gain of the isotropy-corrected stencil under leap-frog
// time marching relative to the conventional stencil, (2 beta + 2)/(beta + 2):
// 1 at beta = 0, approaching 2 as beta grows.
double leapfrog_md_factor(double beta);

struct StabilityQuery {
    double sigma_x = 0; // |c_x| dt / h, the dominant direction by convention
    double sigma_y = 0; // |c_y| dt / h
    double beta = 0;    // diagonal-blend weight (multidimensional forms)
    double cfl = 1;     // marcher/scheme CFL constant
};

struct StabilityVerdict {
    bool stable = false;
    double margin = 0; // bound minus load; positive means inside the region
};

// Linear advection stability region. Conventional stencil:
// sigma_x + sigma_y <= cfl. Multidimensional stencil:
// (1 + beta) sigma_x + sigma_y <= cfl (1 + beta), with sigma_x the dominant
// direction (|c_x| >= |c_y|, callers swap otherwise).
StabilityVerdict advection_limit(const StabilityQuery& q, bool multidim);

// MacCormack-type stability region of the prefactored multidimensional
// scheme,  [s_M (1+beta)]^{2/3} + s_m^{2/3} <= (1+beta)^{2/3} / xi_max,
// applied with s_M = max(sigma_x, sigma_y) so the verdict is invariant under
// swapping the two Courant numbers. xi_max is the scheme's wavenumber-symbol
// bound (pi by default).
StabilityVerdict maccormack_limit(const StabilityQuery& q, double xi_max);

// Equal-Courant (grid diagonal) solution of the MacCormack region:
//
//   sigma <= (1 + beta) / ( xi_max^{3/2} [ 1 + (1+beta)^{2/3} ]^{3/2} ),
//
// strictly increasing in beta, 1/(2 xi_max)^{3/2} at beta = 0 and approaching
// 1/xi_max^{3/2} as beta -> infinity.
double maccormack_diagonal_sigma_max(double beta, double xi_max);

// Largest |K(z)| of the scheme's modified wavenumber over z in [0, pi]
// (dense scan refined by golden-section).
double max_abs_wavenumber(const SchemeSpec& s);

// CFL constant of an explicit-in-time marcher applied to the semi-discrete
// advection operator: the imaginary-axis stability extent of the marcher
// divided by max|K|. Leapfrog extent 1, RK4 extent 2*sqrt(2). MacCormack is
// governed by its own region above and is rejected here (ValidationError).
double cfl_constant(const SchemeSpec& s, Marcher marcher);

} // namespace aniso
