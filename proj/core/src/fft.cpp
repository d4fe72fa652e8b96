#include "eur/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace eur {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
    if (n == 0) throw std::invalid_argument("Fft: zero length");
    if (pow2_) {
        bitrev_.resize(n);
        std::size_t log2n = 0;
        while ((std::size_t{1} << log2n) < n) ++log2n;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < log2n; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
            bitrev_[i] = r;
        }
        twiddle_.resize(n / 2);
        for (std::size_t i = 0; i < n / 2; ++i) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
            twiddle_[i] = {std::cos(ang), std::sin(ang)};
        }
    } else {
        // Bluestein: length-n DFT as a cyclic convolution of size m >= 2n-1.
        m_ = next_pow2(2 * n - 1);
        chirp_.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            // k^2/2 mod n evaluated in exact integer arithmetic before scaling
            const unsigned long long kk = (static_cast<unsigned long long>(k) * k) % (2 * n);
            const double ang = -std::numbers::pi * static_cast<double>(kk) / static_cast<double>(n);
            chirp_[k] = {std::cos(ang), std::sin(ang)};
        }
        std::vector<cdouble> b(m_, cdouble{0.0, 0.0});
        b[0] = std::conj(chirp_[0]);
        for (std::size_t k = 1; k < n; ++k) b[k] = b[m_ - k] = std::conj(chirp_[k]);
        Fft sub(m_);
        sub.forward(b.data());
        chirp_fft_ = std::move(b);
    }
}

void Fft::pow2_transform(cdouble* a, bool inv) const {
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            const cdouble* w = twiddle_.data();
            for (std::size_t k = 0; k < half; ++k, w += step) {
                const cdouble tw = inv ? std::conj(*w) : *w;
                const cdouble u = a[i + k];
                const cdouble t = a[i + k + half] * tw;
                a[i + k] = u + t;
                a[i + k + half] = u - t;
            }
        }
    }
}

void Fft::transform(cdouble* data, bool inv) const {
    if (n_ == 1) return;
    if (pow2_) {
        pow2_transform(data, inv);
        return;
    }
    // Bluestein. x_k -> a_k = x_k * chirp_k, convolve with conj(chirp),
    // multiply by chirp again. Inverse transform conjugates around it.
    const std::size_t n = n_;
    std::vector<cdouble> a(m_, cdouble{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        const cdouble x = inv ? std::conj(data[k]) : data[k];
        a[k] = x * chirp_[k];
    }
    const Fft& sub = cached_fft(m_);
    sub.forward(a.data());
    for (std::size_t k = 0; k < m_; ++k) a[k] *= chirp_fft_[k];
    sub.inverse(a.data());
    const double scale = 1.0 / static_cast<double>(m_);
    for (std::size_t j = 0; j < n; ++j) {
        cdouble y = a[j] * scale * chirp_[j];
        data[j] = inv ? std::conj(y) : y;
    }
}

void fft_forward(std::vector<cdouble>& v) { cached_fft(v.size()).forward(v); }
void fft_inverse(std::vector<cdouble>& v) { cached_fft(v.size()).inverse(v); }

const Fft& cached_fft(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<Fft>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Fft>(n);
    return *slot;
}

}  // namespace eur
