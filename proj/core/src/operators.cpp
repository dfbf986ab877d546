#include "aniso/operators.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "aniso/errors.hpp"

namespace aniso {
namespace {

constexpr double kPi = 3.14159265358979323846;

int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

using SpMat = Eigen::SparseMatrix<double>;
using SpLU = Eigen::SparseLU<SpMat>;

void factor_cyclic(SpLU& lu, SpMat& A,
                   const std::vector<std::pair<int, double>>& band, int n) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(band.size() * n);
    for (int i = 0; i < n; ++i)
        for (const auto& [off, w] : band)
            trip.emplace_back(i, wrap(i + off, n), w);
    A.resize(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success)
        throw NumericError("singularity",
                           "cyclic operator matrix is not invertible");
}

} // namespace

struct PeriodicDerivative1D::Impl {
    std::vector<double> a;
    double h = 1;
    bool compact = false;
    SpMat A;
    SpLU lu;
    mutable Eigen::VectorXd rhs, sol;
};

PeriodicDerivative1D::PeriodicDerivative1D(const SchemeSpec& s, int n, double h)
    : impl_(new Impl), n_(n) {
    if (n < 4) throw ValidationError("periodic line needs at least 4 points");
    if (!(h > 0)) throw ValidationError("grid spacing must be positive");
    const int width = std::max(s.explicit_width(), s.implicit_width());
    if (2 * width >= n)
        throw ValidationError("stencil width " + std::to_string(width) +
                              " does not fit on " + std::to_string(n) +
                              " periodic points");
    impl_->a = s.a;
    impl_->h = h;
    impl_->compact = !s.is_explicit();
    if (impl_->compact) {
        std::vector<std::pair<int, double>> band{{0, 1.0}};
        for (size_t k = 0; k < s.alpha.size(); ++k) {
            band.emplace_back(static_cast<int>(k) + 1, s.alpha[k]);
            band.emplace_back(-static_cast<int>(k) - 1, s.alpha[k]);
        }
        factor_cyclic(impl_->lu, impl_->A, band, n);
        impl_->rhs.resize(n);
        impl_->sol.resize(n);
    }
}

PeriodicDerivative1D::~PeriodicDerivative1D() = default;
PeriodicDerivative1D::PeriodicDerivative1D(PeriodicDerivative1D&&) noexcept =
    default;
PeriodicDerivative1D& PeriodicDerivative1D::operator=(
    PeriodicDerivative1D&&) noexcept = default;

void PeriodicDerivative1D::apply(const double* in, double* out) const {
    const int n = n_;
    const double invh = 1.0 / impl_->h;
    double* target = impl_->compact ? impl_->rhs.data() : out;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (size_t k = 0; k < impl_->a.size(); ++k) {
            const int off = static_cast<int>(k) + 1;
            acc += impl_->a[k] * (in[wrap(i + off, n)] - in[wrap(i - off, n)]);
        }
        target[i] = acc * invh;
    }
    if (impl_->compact) {
        impl_->sol = impl_->lu.solve(impl_->rhs);
        for (int i = 0; i < n; ++i) out[i] = impl_->sol[i];
    }
}

struct PrefactoredSweep1D::Impl {
    double b = 0, h = 1;
    bool forward = true;
    SpMat A;
    SpLU lu;
    mutable Eigen::VectorXd rhs, sol;
};

PrefactoredSweep1D::PrefactoredSweep1D(const PrefactoredScheme& p, int n,
                                       double h, bool forward)
    : impl_(new Impl), n_(n) {
    if (n < 4) throw ValidationError("periodic line needs at least 4 points");
    if (!(h > 0)) throw ValidationError("grid spacing must be positive");
    impl_->b = p.b;
    impl_->h = h;
    impl_->forward = forward;
    // forward: a u'_{j+1} + c u'_{j-1} + (1-a-c) u'_j; backward mirrors
    std::vector<std::pair<int, double>> band{{0, 1.0 - p.a - p.c}};
    if (forward) {
        band.emplace_back(+1, p.a);
        if (p.c != 0.0) band.emplace_back(-1, p.c);
    } else {
        band.emplace_back(-1, p.a);
        if (p.c != 0.0) band.emplace_back(+1, p.c);
    }
    factor_cyclic(impl_->lu, impl_->A, band, n);
    impl_->rhs.resize(n);
    impl_->sol.resize(n);
}

PrefactoredSweep1D::~PrefactoredSweep1D() = default;
PrefactoredSweep1D::PrefactoredSweep1D(PrefactoredSweep1D&&) noexcept = default;
PrefactoredSweep1D& PrefactoredSweep1D::operator=(PrefactoredSweep1D&&) noexcept =
    default;

void PrefactoredSweep1D::apply(const double* in, double* out) const {
    const int n = n_;
    const double invh = 1.0 / impl_->h;
    const double b = impl_->b;
    const double e = 2.0 * b - 1.0, f = 1.0 - b;
    for (int i = 0; i < n; ++i) {
        double acc;
        if (impl_->forward)
            acc = b * in[wrap(i + 1, n)] - e * in[i] - f * in[wrap(i - 1, n)];
        else
            acc = f * in[wrap(i + 1, n)] + e * in[i] - b * in[wrap(i - 1, n)];
        impl_->rhs[i] = acc * invh;
    }
    impl_->sol = impl_->lu.solve(impl_->rhs);
    for (int i = 0; i < n; ++i) out[i] = impl_->sol[i];
}

SpectralDerivative1D::SpectralDerivative1D(int n, double h) {
    if (n < 4 || n % 2 != 0)
        throw ValidationError("spectral derivative needs an even point count >= 4");
    if (!(h > 0)) throw ValidationError("grid spacing must be positive");
    // circulant weights from the inverse transform of i k_m (Nyquist mode
    // derivative zero): w_d = -(4 pi / (n^2 h)) sum_{m=1}^{n/2-1} m sin(2 pi m d / n)
    w_.assign(n, 0.0);
    for (int d = 0; d < n; ++d) {
        double acc = 0.0;
        for (int m = 1; m <= n / 2 - 1; ++m)
            acc += m * std::sin(2.0 * kPi * m * d / n);
        w_[d] = -4.0 * kPi * acc / (static_cast<double>(n) * n * h);
    }
}

void SpectralDerivative1D::apply(const double* in, double* out) const {
    const int n = size();
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int d = 0; d < n; ++d) acc += w_[d] * in[wrap(i - d, n)];
        out[i] = acc;
    }
}

Dft2::Dft2(int n) : n_(n) {
    if (n < 2) throw ValidationError("transform needs at least 2 points");
    wfwd_.resize(n);
    winv_.resize(n);
    for (int r = 0; r < n; ++r) {
        const double t = 2.0 * kPi * r / n;
        wfwd_[r] = {std::cos(t), -std::sin(t)};
        winv_[r] = {std::cos(t), std::sin(t)};
    }
}

std::vector<std::complex<double>> Dft2::forward(
    const std::vector<double>& f) const {
    const int n = n_;
    if (static_cast<int>(f.size()) != n * n)
        throw ValidationError("field size does not match transform size");
    std::vector<std::complex<double>> tmp(static_cast<size_t>(n) * n);
    // rows first, then columns
    for (int j = 0; j < n; ++j)
        for (int mx = 0; mx < n; ++mx) {
            std::complex<double> acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += f[static_cast<size_t>(j) * n + i] *
                       wfwd_[(static_cast<long long>(mx) * i) % n];
            tmp[static_cast<size_t>(j) * n + mx] = acc;
        }
    std::vector<std::complex<double>> out(static_cast<size_t>(n) * n);
    const double norm = 1.0 / (static_cast<double>(n) * n);
    for (int my = 0; my < n; ++my)
        for (int mx = 0; mx < n; ++mx) {
            std::complex<double> acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += tmp[static_cast<size_t>(j) * n + mx] *
                       wfwd_[(static_cast<long long>(my) * j) % n];
            out[static_cast<size_t>(my) * n + mx] = acc * norm;
        }
    return out;
}

std::vector<double> Dft2::inverse(
    const std::vector<std::complex<double>>& c) const {
    const int n = n_;
    if (static_cast<int>(c.size()) != n * n)
        throw ValidationError("coefficient size does not match transform size");
    std::vector<std::complex<double>> tmp(static_cast<size_t>(n) * n);
    for (int my = 0; my < n; ++my)
        for (int i = 0; i < n; ++i) {
            std::complex<double> acc = 0.0;
            for (int mx = 0; mx < n; ++mx)
                acc += c[static_cast<size_t>(my) * n + mx] *
                       winv_[(static_cast<long long>(mx) * i) % n];
            tmp[static_cast<size_t>(my) * n + i] = acc;
        }
    std::vector<double> out(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            std::complex<double> acc = 0.0;
            for (int my = 0; my < n; ++my)
                acc += tmp[static_cast<size_t>(my) * n + i] *
                       winv_[(static_cast<long long>(my) * j) % n];
            out[static_cast<size_t>(j) * n + i] = acc.real();
        }
    return out;
}

std::complex<double> Dft2::coefficient(const std::vector<double>& f, int mx,
                                       int my) const {
    const int n = n_;
    if (static_cast<int>(f.size()) != n * n)
        throw ValidationError("field size does not match transform size");
    mx = wrap(mx, n);
    my = wrap(my, n);
    std::complex<double> acc = 0.0;
    for (int j = 0; j < n; ++j) {
        std::complex<double> row = 0.0;
        for (int i = 0; i < n; ++i)
            row += f[static_cast<size_t>(j) * n + i] *
                   wfwd_[(static_cast<long long>(mx) * i) % n];
        acc += row * wfwd_[(static_cast<long long>(my) * j) % n];
    }
    return acc / (static_cast<double>(n) * n);
}

} // namespace aniso
