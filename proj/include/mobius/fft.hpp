#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace mobius {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, in place.  sign = -1 forward, +1 inverse
// (no 1/n scaling on either direction).
inline void fft_pow2(cplx* data, std::size_t n, int sign)
{
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / double(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = data[i + k];
                cplx v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

inline void dft_naive(cplx* data, std::size_t n, int sign)
{
    std::vector<cplx> out(n, cplx(0.0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * std::numbers::pi * double(k * j % n) / double(n);
            out[k] += data[j] * cplx(std::cos(ang), std::sin(ang));
        }
    }
    std::copy(out.begin(), out.end(), data);
}

} // namespace detail

/// DFT with kernel e^{-2 pi i jk/n} (unscaled).
inline void fft_forward(cplx* data, std::size_t n)
{
    if (detail::is_pow2(n)) detail::fft_pow2(data, n, -1);
    else detail::dft_naive(data, n, -1);
}

/// DFT with kernel e^{+2 pi i jk/n} (unscaled).
inline void fft_inverse(cplx* data, std::size_t n)
{
    if (detail::is_pow2(n)) detail::fft_pow2(data, n, +1);
    else detail::dft_naive(data, n, +1);
}

} // namespace mobius
