#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mobius/fft.hpp"

namespace mobius {

namespace detail {

// Lanczos g = 7, 9 coefficients.
inline constexpr std::array<double, 9> lanczos_coeff = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline cplx gamma_lanczos(cplx z)
{
    // valid for Re z >= 0.5
    z -= 1.0;
    cplx x = lanczos_coeff[0];
    for (int i = 1; i < 9; ++i) x += lanczos_coeff[i] / (z + double(i));
    const cplx t = z + 7.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

} // namespace detail

/// Gamma function on the complex plane (Lanczos with reflection for Re z < 1/2).
inline cplx complex_gamma(cplx z)
{
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw std::domain_error("complex_gamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::numbers::pi / (std::sin(std::numbers::pi * z) * complex_gamma(1.0 - z));
    }
    return detail::gamma_lanczos(z);
}

/// log Gamma, principal-ish branch (continuous on Re z >= 0.5; reflection otherwise).
/// Used where Gamma itself would over/underflow.
inline cplx complex_lgamma(cplx z)
{
    if (z.real() < 0.5) {
        return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z))
             - complex_lgamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = detail::lanczos_coeff[0];
    for (int i = 1; i < 9; ++i) x += detail::lanczos_coeff[i] / (z + double(i));
    const cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

/// ln(n!) table, exact small values refined by lgamma beyond.
inline double ln_factorial(int n)
{
    static const std::vector<double> table = [] {
        std::vector<double> t(256);
        t[0] = 0.0;
        for (int i = 1; i < 256; ++i) t[i] = t[i - 1] + std::log(double(i));
        return t;
    }();
    if (n < 0) throw std::domain_error("ln_factorial: negative argument");
    if (n < 256) return table[std::size_t(n)];
    return std::lgamma(double(n) + 1.0);
}

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> node, weight;

    explicit GaussLegendre(int n)
    {
        node.resize(std::size_t(n));
        weight.resize(std::size_t(n));
        for (int i = 0; i < n; ++i) {
            // Newton from the Chebyshev-like initial guess
            double x = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * k + 1.0) * x * p1 - double(k) * p2) / (double(k) + 1.0);
                }
                pp = double(n) * (x * p0 - p1) / (x * x - 1.0);
                const double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            node[std::size_t(n - 1 - i)] = x;
            weight[std::size_t(n - 1 - i)] = 2.0 / ((1.0 - x * x) * pp * pp);
        }
    }

    /// Same rule mapped to [a, b].
    void mapped(double a, double b, std::vector<double>& x, std::vector<double>& w) const
    {
        const std::size_t n = node.size();
        x.resize(n);
        w.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 0.5 * (b - a) * node[i] + 0.5 * (a + b);
            w[i] = 0.5 * (b - a) * weight[i];
        }
    }
};

} // namespace mobius
