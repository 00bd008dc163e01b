#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mobius/special.hpp"

namespace mobius {

// Wigner rotation matrices in the convention where, for g = Z(alpha) Y(beta) Z(gamma)
// with Z(a) = diag(e^{-ia/2}, e^{+ia/2}) and Y(b) the real rotation matrix
// [[cos b/2, -sin b/2],[sin b/2, cos b/2]],
//   D^l_{mn}(g) = e^{-i m alpha} d^l_{mn}(beta) e^{-i n gamma}.

/// Wigner little-d, closed-form Jacobi sum.
inline double wigner_d(int l, int m, int n, double beta)
{
    if (std::abs(m) > l || std::abs(n) > l) return 0.0;
    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);
    const double lnc = std::log(std::abs(c));
    const double lns = std::log(std::abs(s));
    const double pref = 0.5 * (ln_factorial(l + m) + ln_factorial(l - m)
                               + ln_factorial(l + n) + ln_factorial(l - n));
    const int klo = std::max(0, m - n);
    const int khi = std::min(l + m, l - n);
    double sum = 0.0;
    for (int k = klo; k <= khi; ++k) {
        const int pc = 2 * l + m - n - 2 * k; // power of cos
        const int ps = n - m + 2 * k;         // power of sin
        double term;
        if ((pc > 0 && c == 0.0) || (ps > 0 && s == 0.0)) {
            term = 0.0;
        } else {
            term = std::exp(pref - ln_factorial(l + m - k) - ln_factorial(k)
                            - ln_factorial(l - n - k) - ln_factorial(n - m + k)
                            + (pc ? pc * lnc : 0.0) + (ps ? ps * lns : 0.0));
            if (c < 0.0 && (pc & 1)) term = -term;
            if (s < 0.0 && (ps & 1)) term = -term;
        }
        sum += (k & 1) ? -term : term;
    }
    return sum;
}

/// Wigner-D matrix element from Cayley-Klein parameters (a, b) of an SU(2)
/// element [[a, b], [-conj b, conj a]], by the same Jacobi sum.
inline cplx wigner_D_cayley(int l, int m, int n, cplx a, cplx b)
{
    if (std::abs(m) > l || std::abs(n) > l) return 0.0;
    const double ra = std::abs(a), rb = std::abs(b);
    const double lna = ra > 0.0 ? std::log(ra) : 0.0;
    const double lnb = rb > 0.0 ? std::log(rb) : 0.0;
    const double pref = 0.5 * (ln_factorial(l + m) + ln_factorial(l - m)
                               + ln_factorial(l + n) + ln_factorial(l - n));
    const int klo = std::max(0, m - n);
    const int khi = std::min(l + m, l - n);
    double sum = 0.0;
    for (int k = klo; k <= khi; ++k) {
        const int pa = (l + m - k) + (l - n - k); // power of |a|
        const int pb = k + (n - m + k);           // power of |b|
        double term;
        if ((pa > 0 && ra == 0.0) || (pb > 0 && rb == 0.0)) {
            term = 0.0;
        } else {
            term = std::exp(pref - ln_factorial(l + m - k) - ln_factorial(k)
                            - ln_factorial(l - n - k) - ln_factorial(n - m + k)
                            + (pa ? pa * lna : 0.0) + (pb ? pb * lnb : 0.0));
        }
        sum += ((m - n + k) & 1) ? -term : term;
    }
    // phases factor out of the k-sum: (m+n) arg a + (m-n) arg b
    const double ph = (m + n) * std::arg(a) + (m - n) * std::arg(b);
    return sum * cplx(std::cos(ph), std::sin(ph));
}

/// All d^l_{mn}(beta) for 0 <= l < B, packed per l as row-major (2l+1)^2 blocks
/// with indices m, n in [-l, l].  Three-term recurrence in l over each (m, n).
class WignerDTable {
public:
    WignerDTable(int B, double beta) : band_(B), offset_(std::size_t(B) + 1)
    {
        std::size_t total = 0;
        for (int l = 0; l < B; ++l) {
            offset_[std::size_t(l)] = total;
            total += std::size_t(2 * l + 1) * std::size_t(2 * l + 1);
        }
        offset_[std::size_t(B)] = total;
        val_.assign(total, 0.0);
        const double x = std::cos(beta);
        for (int m = -(B - 1); m <= B - 1; ++m) {
            for (int n = -(B - 1); n <= B - 1; ++n) {
                const int l0 = std::max(std::abs(m), std::abs(n));
                double dl1 = 0.0, dl2 = 0.0;
                for (int l = l0; l < B; ++l) {
                    double d;
                    if (l == l0) {
                        d = wigner_d(l, m, n, beta);
                    } else {
                        const double den = std::sqrt((double(l) * l - double(m) * m)
                                                     * (double(l) * l - double(n) * n));
                        const double w1 = double(l) * (2.0 * l - 1.0) / den;
                        const double w2 = (l == l0 + 1) ? 0.0
                            : std::sqrt((double(l - 1) * (l - 1) - double(m) * m)
                                        * (double(l - 1) * (l - 1) - double(n) * n))
                              * double(l) / (double(l - 1) * den);
                        const double corr = (m == 0 || n == 0)
                            ? 0.0 : double(m) * n / (double(l) * (l - 1.0));
                        d = w1 * (x - corr) * dl1 - w2 * dl2;
                    }
                    (*this)(l, m, n) = d;
                    dl2 = dl1;
                    dl1 = d;
                }
            }
        }
    }

    double& operator()(int l, int m, int n)
    {
        return val_[offset_[std::size_t(l)]
                    + std::size_t(m + l) * std::size_t(2 * l + 1) + std::size_t(n + l)];
    }
    double operator()(int l, int m, int n) const
    {
        return val_[offset_[std::size_t(l)]
                    + std::size_t(m + l) * std::size_t(2 * l + 1) + std::size_t(n + l)];
    }
    int band_limit() const { return band_; }

private:
    int band_;
    std::vector<std::size_t> offset_;
    std::vector<double> val_;
};

} // namespace mobius
