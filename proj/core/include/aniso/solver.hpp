#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "aniso/schemes.hpp"
#include "aniso/spectral.hpp"
#include "aniso/stability.hpp"

namespace aniso {

// Exact spectral differentiation, the reference operator for solver tests.
struct ExactOperator {};

using SchemeVariant = std::variant<SchemeSpec, MultiDimScheme, Stencil2D,
                                   PrefactoredScheme, ExactOperator>;

struct Field2D {
    int n = 0;
    std::vector<double> v; // row-major: v[j * n + i], i the x index

    double& at(int i, int j) { return v[static_cast<size_t>(j) * n + i]; }
    double at(int i, int j) const { return v[static_cast<size_t>(j) * n + i]; }
};

// Plane wave cos(kx x + ky y) with |k| h ~ kh at propagation angle `angle`,
// snapped to the nearest integer grid mode; the snapped values are recorded
// in the run output.
struct PlaneWaveInit {
    double kh = 0;
    double angle = 0;
};

// Periodic Gaussian pulse exp(-r^2 / (2 width^2)) centered in the box,
// width in physical length units.
struct GaussianInit {
    double width = 0;
};

// Caller-supplied start field; must match the configured grid size.
struct RawInit {
    Field2D field;
};

using InitialCondition = std::variant<PlaneWaveInit, GaussianInit, RawInit>;

// 2D linear advection  du/dt + c (cos A du/dx + sin A du/dy) = 0  on an
// n x n periodic grid with spacing h, time step k, marched `steps` steps.
struct SimulationConfig {
    SchemeVariant scheme = SchemeSpec{};
    Marcher marcher = Marcher::RK4;
    int n = 64;
    double h = 1;
    double k = 0.1;
    double c = 1;
    double angle = 0;
    int steps = 100;
    int record_stride = 0; // 0: choose ~16 snapshots automatically
};

struct SnappedMode {
    int mx = 0, my = 0;
    double kh = 0;    // actual scaled magnitude
    double angle = 0; // actual angle
};

struct FieldHistory {
    int n = 0;
    double h = 0, k = 0, c = 0, angle = 0;
    int steps = 0;
    int record_stride = 0;
    std::vector<double> times;      // snapshot times (includes t = 0)
    std::vector<Field2D> snapshots; // one per time
    std::vector<double> max_norms;  // per step, steps + 1 entries
    bool has_snapped = false;
    SnappedMode snapped;
    std::vector<std::string> notes; // warnings (CFL advisories, snapping)
};

// Runs the simulation. Validation: n >= 16 and even, h/k > 0, c >= 0,
// steps >= 1, stencil width < n/2, leap-frog restricted to centered (real
// symbol) operators, MacCormack restricted to prefactored operator pairs.
// Courant numbers exceeding the closed-form limit produce a warning note,
// not a rejection. Non-finite field values abort with
// NumericError("divergence") naming the step.
FieldHistory run_advection2d(const SimulationConfig& cfg,
                             const InitialCondition& init);

// Per-step max-norm amplification averaged (geometrically) over the final
// min(100, steps) steps. Exactly 1 for a field that does not change.
double growth_rate(const FieldHistory& hist);

struct AnisotropyMeasurement {
    double angle_requested = 0;
    double angle_actual = 0;
    double kh_actual = 0;
    int mx = 0, my = 0;
    double c_emp = 0;  // empirical phase velocity / c
    double c_pred = 0; // spectral prediction at the snapped mode
};

struct AnisotropyReport {
    double ppw = 0;
    std::vector<AnisotropyMeasurement> rows;
    double spread_emp = 0;  // max - min of c_emp over directions
    double spread_pred = 0;
};

// Empirical anisotropy: for each requested direction, advect the snapped
// plane-wave mode of magnitude ~2 pi / ppw with the template configuration
// and fit the mode's phase drift over the recorded snapshots. The spectral
// prediction is evaluated at the same snapped mode. Modes whose DFT
// amplitude collapses below 1e-12 of the start throw
// NumericError("undefined-phase").
AnisotropyReport measure_anisotropy(const SimulationConfig& cfg_template,
                                    double ppw,
                                    const std::vector<double>& angles);

// Log-log slope of the axis-vs-diagonal anisotropy of a Laplacian-kind
// stencil: discrepancy(Kh) = |S(Kh,0) - S(Kh/sqrt2, Kh/sqrt2)| / Kh^2,
// normalized by the principal Kh^2 part so a second-order-anisotropic
// stencil fits slope 2 and an isotropy-corrected one slope 4. Returns
// +infinity when the discrepancy is below 1e-15 everywhere (perfectly
// isotropic at sampled points).
double fit_anisotropy_order(const Stencil2D& lap,
                            const std::vector<double>& kh_values);

struct BoundarySample {
    double sigma = 0;
    double growth = 0;
};

struct BoundaryScan {
    double boundary_sigma = 0; // largest stable sigma in the grid
    std::vector<BoundarySample> samples;
};

// Empirical stability boundary: for each sigma = |c| dt / h in the grid (in
// increasing order), run the template configuration for >= 500 steps from a
// broadband pulse and classify via the whole-run per-step max-norm growth
// factor, (|u_T|_inf / |u_0|_inf)^(1/T) <= 1 + 1e-8. The pulse starts with
// aligned mode phases, so a neutral run can never exceed its initial peak and
// the whole-run factor is immune to the transient dispersion dips and
// revivals that pollute windowed estimates near the boundary. Independent
// runs may execute concurrently (ANISOSCOPE_THREADS caps the worker count; 0
// or unset picks automatically). All-unstable grids throw
// NumericError("boundary-not-found"); zero velocity is stable everywhere.
BoundaryScan empirical_stability_boundary(const SimulationConfig& cfg_template,
                                          const std::vector<double>& sigma_grid);

// Worker count honoring the ANISOSCOPE_THREADS environment variable.
int thread_budget();

// Raw snapshot dump: <path>.bin holds all snapshots concatenated, row-major,
// float64 little-endian; <path>.hdr is a small text sidecar describing the
// layout. Returns the two file names written.
std::vector<std::string> dump_fields(const FieldHistory& hist,
                                     const std::string& path_prefix);

} // namespace aniso
