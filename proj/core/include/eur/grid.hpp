#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace eur {

using cdouble = std::complex<double>;

/// Uniform 1D sample grid: sample k sits at x0 + k*dx.
///
/// Builders place samples at cell centers of [left, right], i.e.
/// x0 = left + dx/2, so that symmetric zeros of densities (oscillator
/// nodes, phase-distribution nodes) fall between samples.
struct Grid1D {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t n = 0;

    Grid1D() = default;
    Grid1D(double x0_, double dx_, std::size_t n_) : x0(x0_), dx(dx_), n(n_) {
        if (dx <= 0.0) throw std::invalid_argument("Grid1D: dx must be positive");
        if (n < 8) throw std::invalid_argument("Grid1D: need at least 8 samples");
    }

    /// Cell-centered grid covering [left, right] with n samples.
    static Grid1D over(double left, double right, std::size_t n) {
        if (!(right > left)) throw std::invalid_argument("Grid1D: empty interval");
        const double dx = (right - left) / static_cast<double>(n);
        return Grid1D(left + 0.5 * dx, dx, n);
    }

    double x(std::size_t k) const { return x0 + static_cast<double>(k) * dx; }
    double left() const { return x0 - 0.5 * dx; }
    double right() const { return x0 + (static_cast<double>(n) - 0.5) * dx; }

    /// Nearest sample index to a coordinate value.
    std::size_t index_of(double x_value) const {
        double t = std::round((x_value - x0) / dx);
        if (t < 0.0 || t >= static_cast<double>(n))
            throw std::out_of_range("Grid1D: coordinate outside grid");
        return static_cast<std::size_t>(t);
    }

    /// Conjugate (momentum) grid: spacing 2*pi*hbar/(n*dx), centered on zero.
    Grid1D conjugate(double hbar) const {
        const double dp = 2.0 * std::numbers::pi * hbar / (static_cast<double>(n) * dx);
        return Grid1D(-0.5 * static_cast<double>(n) * dp, dp, n);
    }

    bool operator==(const Grid1D&) const = default;
};

/// Product of two 1D grids; amplitudes are stored row-major,
/// index = ix * gy.n + iy.
struct Grid2D {
    Grid1D gx;
    Grid1D gy;

    std::size_t size() const { return gx.n * gy.n; }
    std::size_t at(std::size_t ix, std::size_t iy) const { return ix * gy.n + iy; }
};

}  // namespace eur
