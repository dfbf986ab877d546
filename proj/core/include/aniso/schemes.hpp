#pragma once

#include <string>
#include <vector>

namespace aniso {

// Centered finite-difference first-derivative scheme in the normalized form
//
//   u'_j + sum_k alpha_k (u'_{j+k} + u'_{j-k}) = (1/h) sum_n a_n (u_{j+n} - u_{j-n})
//
// with modified wavenumber
//
//   K(z) = sum_n 2 a_n sin(n z) / (1 + sum_k 2 alpha_k cos(k z)),   z = kh.
//
// Explicit schemes have an empty alpha vector. Weights are stored exactly as
// published (rationals evaluated in double, decimals as printed), so catalog
// comparisons can be exact.
struct SchemeSpec {
    std::string label;
    std::vector<double> a;     // a_1 .. a_Ne
    std::vector<double> alpha; // alpha_1 .. alpha_Nc (empty for explicit)
    int formal_order = 0;
    std::string description;

    bool is_explicit() const { return alpha.empty(); }
    int explicit_width() const { return static_cast<int>(a.size()); }
    int implicit_width() const { return static_cast<int>(alpha.size()); }
};

// Prefactored compact scheme: a forward/backward operator pair
//
//   F:  a u'F_{j+1} + c u'F_{j-1} + (1-a-c) u'F_j
//         = (1/h) [ b u_{j+1} - (2b-1) u_j - (1-b) u_{j-1} ]
//
// with the backward operator mirrored. Averaging the two sweeps yields a real
// effective wavenumber of the stated formal order; the imaginary parts of the
// two sweep symbols cancel exactly. e and f are the explicit center/trailing
// weights (e = 2b-1, f = 1-b) used when the operator is written with all
// right-hand-side weights spelled out.
struct PrefactoredScheme {
    std::string label;
    double a = 0, b = 0, c = 0;
    double e = 0, f = 0;
    int formal_order = 0;
};

enum class StencilKind {
    FirstDerivX,  // approximates d/dx, weights in units 1/h
    SecondDerivXX,// approximates d2/dx2, weights in units 1/h^2
    Laplacian,    // approximates d2/dx2 + d2/dy2, weights in units 1/h^2
    CrossXY       // approximates d2/dxdy, weights in units 1/h^2
};

struct StencilEntry {
    int di = 0;   // x offset
    int dj = 0;   // y offset
    double w = 0; // weight for grid spacing h = 1
};

// Explicit 2D stencil on a uniform grid. Weights are stored for h = 1;
// evaluation at spacing h divides by h^p with p = h_power().
struct Stencil2D {
    std::string label;
    StencilKind kind = StencilKind::FirstDerivX;
    std::vector<StencilEntry> entries;

    int h_power() const { return kind == StencilKind::FirstDerivX ? 1 : 2; }
    int max_offset() const;
};

// Isotropy-corrected multidimensional first-derivative operator built from an
// explicit base scheme: the axis stencil is blended with its two diagonal
// counterparts,
//
//   (dx u)_{ij} = 1/(h (1+beta)) sum_n a_n [ (u_{i+n,j} - u_{i-n,j})
//                 + (beta/2) (u_{i+n,j+n} - u_{i-n,j-n})
//                 + (beta/2) (u_{i+n,j-n} - u_{i-n,j+n}) ],
//
// so beta = 0 recovers the one-dimensional scheme.
struct MultiDimScheme {
    SchemeSpec base; // must be explicit
    double beta = 0;
};

// The built-in catalog of centered schemes: E2, E4, E6 (standard explicit),
// DRP (optimized 7-point), C4 (classical tridiagonal compact), and the
// optimized compact schemes Haras, Lui, Lele.
const std::vector<SchemeSpec>& builtin_catalog();

// Lookup by label (case sensitive). Throws ValidationError if unknown.
const SchemeSpec& find_scheme(const std::string& label);

// Prefactored schemes of formal order 4 and 6. Order 6 carries the closed-form
// weights a = 1/2 - 1/(2 sqrt 5), b = 1 - 1/(30 a), c = 0; order 4 is derived
// from the same moment conditions (see derive_prefactored). Throws
// ValidationError for other orders.
const PrefactoredScheme& builtin_prefactored(int order);

// Solves the Taylor-moment conditions of the prefactored operator pair for the
// requested formal order (4 or 6) with c = 0 and returns the coefficients.
// Order 4 has one free parameter once the third-moment condition is imposed;
// it is fixed by requiring the explicit part to use only two points (b = 1),
// which also makes the averaged symbol equal 3 sin z / (2 + cos z). Roots are
// taken in (0, 1/2) so that the sweeps are contractive. Unsupported orders
// throw NumericError("infeasible").
PrefactoredScheme derive_prefactored(int order);

// Measured formal order of accuracy, determined from the power series of the
// scheme's symbol around z = 0 (exact series arithmetic; series division for
// compact denominators). A series coefficient counts as zero when it is below
// tol relative to the magnitude of the alternating sum that produced it; the
// default tolerance separates the printed-precision rounding of optimized
// catalog weights (relative error up to ~2e-7) from the smallest genuine
// truncation coefficient in the catalog (~4e-4). Inconsistent schemes (the
// z^1 coefficient is not 1) throw NumericError("consistency").
inline constexpr double kFormalOrderTol = 5e-7;
inline constexpr int kFormalOrderMax = 12;

int verify_formal_order(const SchemeSpec& s, double tol = kFormalOrderTol);

// Same measurement applied to the averaged (real) symbol of the sweep pair.
int verify_formal_order(const PrefactoredScheme& p, double tol = kFormalOrderTol);

// Order of a 2D stencil: minimum over a fan of directions of the first
// mismatched term in the directional Taylor expansion of its symbol.
int verify_formal_order(const Stencil2D& st, double tol = kFormalOrderTol);

// Coefficients of z^1..z^jmax of the symbol K(z) (odd entries only are
// nonzero for centered schemes). Exposed for tests.
std::vector<double> wavenumber_series(const SchemeSpec& s, int jmax);

// Isotropic 9-point first-derivative stencil: the centered x-difference
// applied with transverse row weights (1/6, 4/6, 1/6). Leading truncation
// term (h^2/6) Lap(du/dx).
Stencil2D kumar_dx();

// Isotropic second-derivative stencil: the 1D second difference applied with
// transverse row weights (1/12, 10/12, 1/12). Leading truncation term
// (h^2/12) Lap(d2u/dx2).
Stencil2D kumar_dxx();

// Standard non-isotropic references.
Stencil2D central_dx();             // (u_{i+1,j} - u_{i-1,j}) / (2h)
Stencil2D five_point_laplacian();   // axis-aligned 5-point Laplacian
Stencil2D diagonal_laplacian();     // 5-point Laplacian on the diagonal grid, step sqrt(2) h
Stencil2D central_cross_xy();       // 4-point cross derivative

// Weighted blend w_axis * five_point + w_diag * diagonal of the two Laplacian
// stencils. Weights must sum to 1 (ValidationError otherwise). The classical
// isotropic choice is (2/3, 1/3), whose directional error is fourth order in
// Kh while each constituent alone is second order.
Stencil2D trefethen_laplacian(double w_axis, double w_diag);

// Swap x and y roles (di <-> dj). FirstDerivX stencils become the matching
// d/dy operator; symmetric kinds map to themselves.
Stencil2D transpose(const Stencil2D& st);

// Wrap an explicit scheme into its isotropy-corrected multidimensional form.
// Throws ValidationError for compact bases or beta < 0.
MultiDimScheme make_multidim(const SchemeSpec& base, double beta);

// Expand the multidimensional operator into an explicit 2D stencil
// (FirstDerivX kind, weights include the 1/(1+beta) normalization).
Stencil2D to_stencil(const MultiDimScheme& md);

} // namespace aniso
