#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace eur {

using cdouble = std::complex<double>;

/// Unnormalized discrete Fourier transform plan,
///   X_j = sum_k x_k exp(-2*pi*i*j*k/n)        (forward)
///   X_j = sum_k x_k exp(+2*pi*i*j*k/n)        (inverse, no 1/n)
/// Radix-2 in-place for powers of two, Bluestein chirp-z otherwise,
/// so any n >= 1 transforms with spectral accuracy.
///
/// Physical transforms build on this with the fixed convention
///   psi~(p) = (2*pi*hbar)^(-1/2) * Int psi(x) exp(-i*p*x/hbar) dx,
/// discretized on x_k = x0 + k*dx, p_j = (j - n/2)*dp, dp = 2*pi*hbar/(n*dx):
///   psi~_j = dx/sqrt(2*pi*hbar) * exp(-i*p_j*x0/hbar)
///            * DFT_j[ (-1)^k psi_k ],
/// where the (-1)^k twist shifts the DFT output so j indexes p in
/// increasing order with p=0 at j = n/2. The inverse applies the same
/// mapping backwards; round-tripping is exact to rounding, and the discrete
/// Parseval identity sum |psi|^2 dx = sum |psi~|^2 dp holds identically.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    void forward(cdouble* data) const { transform(data, false); }
    void inverse(cdouble* data) const { transform(data, true); }

    void forward(std::vector<cdouble>& v) const { forward(v.data()); }
    void inverse(std::vector<cdouble>& v) const { inverse(v.data()); }

private:
    void transform(cdouble* data, bool inv) const;
    void pow2_transform(cdouble* data, bool inv) const;

    std::size_t n_;
    bool pow2_;
    std::vector<std::size_t> bitrev_;      // pow2 path
    std::vector<cdouble> twiddle_;         // pow2 path, forward sign
    // Bluestein workspace (empty on the pow2 path)
    std::size_t m_ = 0;
    std::vector<cdouble> chirp_;
    std::vector<cdouble> chirp_fft_;
};

/// One-shot helpers for code that does not reuse a plan.
void fft_forward(std::vector<cdouble>& v);
void fft_inverse(std::vector<cdouble>& v);

/// Process-wide plan cache (plans are immutable once built).
const Fft& cached_fft(std::size_t n);

}  // namespace eur
