#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "aniso/schemes.hpp"

namespace aniso {

// Periodic 1D derivative operator for a centered scheme on n points with
// spacing h. Compact schemes carry a factorization of the cyclic banded
// left-hand side, computed once at construction and reused per apply.
class PeriodicDerivative1D {
public:
    PeriodicDerivative1D(const SchemeSpec& s, int n, double h);
    ~PeriodicDerivative1D();
    PeriodicDerivative1D(PeriodicDerivative1D&&) noexcept;
    PeriodicDerivative1D& operator=(PeriodicDerivative1D&&) noexcept;

    void apply(const double* in, double* out) const;
    int size() const { return n_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int n_ = 0;
};

// One prefactored sweep (forward or backward) on a periodic line: solves the
// cyclic bidiagonal system defining the sweep derivative.
class PrefactoredSweep1D {
public:
    PrefactoredSweep1D(const PrefactoredScheme& p, int n, double h,
                       bool forward);
    ~PrefactoredSweep1D();
    PrefactoredSweep1D(PrefactoredSweep1D&&) noexcept;
    PrefactoredSweep1D& operator=(PrefactoredSweep1D&&) noexcept;

    void apply(const double* in, double* out) const;
    int size() const { return n_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int n_ = 0;
};

// Exact (trigonometric interpolation) periodic derivative: a circulant
// matrix-vector product with the spectral differentiation weights. The
// Nyquist mode derivative is zero, the standard real convention.
class SpectralDerivative1D {
public:
    SpectralDerivative1D(int n, double h);
    void apply(const double* in, double* out) const;
    int size() const { return static_cast<int>(w_.size()); }

private:
    std::vector<double> w_; // circulant first row
};

// Dense complex DFT tables for an n x n periodic grid; used for the
// exact-spectral time start and for mode extraction. O(n^2) per line.
class Dft2 {
public:
    explicit Dft2(int n);

    // Full 2D forward transform (row-major field), normalized by 1/n^2.
    std::vector<std::complex<double>> forward(const std::vector<double>& f) const;
    // Inverse of the above back to a real field (imaginary parts dropped).
    std::vector<double> inverse(const std::vector<std::complex<double>>& c) const;
    // Single coefficient at integer mode (mx, my), normalized by 1/n^2.
    std::complex<double> coefficient(const std::vector<double>& f, int mx,
                                     int my) const;
    int size() const { return n_; }

private:
    int n_;
    std::vector<std::complex<double>> wfwd_; // e^{-2 pi i j k / n}
    std::vector<std::complex<double>> winv_; // e^{+2 pi i j k / n}
};

} // namespace aniso
