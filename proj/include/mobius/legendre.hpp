#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace mobius {

// Fully normalized associated Legendre functions Ptilde_l^m (Condon-Shortley
// phase included), so that Y_l^m(theta, phi) = Ptilde_l^m(cos theta) e^{i m phi}
// is an orthonormal basis of L^2(S^2).

/// Values Ptilde_l^m(x) for one x, all 0 <= m <= l < B, packed as tri[l*(l+1)/2 + m].
inline void legendre_column(int B, double x, double* tri)
{
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    double pmm = 0.28209479177387814; // sqrt(1/4pi)
    for (int m = 0; m < B; ++m) {
        tri[std::size_t(m) * std::size_t(m + 1) / 2 + std::size_t(m)] = pmm;
        double pl1 = pmm, pl2 = 0.0;
        for (int l = m + 1; l < B; ++l) {
            double p;
            if (l == m + 1) {
                p = std::sqrt(2.0 * m + 3.0) * x * pl1;
            } else {
                const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
                const double b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m)
                                           / (4.0 * double(l - 1) * (l - 1) - 1.0));
                p = a * (x * pl1 - b * pl2);
            }
            tri[std::size_t(l) * std::size_t(l + 1) / 2 + std::size_t(m)] = p;
            pl2 = pl1;
            pl1 = p;
        }
        pmm *= -std::sqrt((2.0 * m + 3.0) / (2.0 * m + 2.0)) * s;
    }
}

inline std::size_t tri_index(int l, int m) // m >= 0
{
    return std::size_t(l) * std::size_t(l + 1) / 2 + std::size_t(m);
}

/// Ptilde_l^m with signed m (Ptilde_l^{-m} = (-1)^m Ptilde_l^m).
inline double legendre_signed(const double* tri, int l, int m)
{
    if (m >= 0) return tri[tri_index(l, m)];
    return ((-m) % 2 ? -1.0 : 1.0) * tri[tri_index(l, -m)];
}

/// d/dtheta Ptilde_l^m(cos theta) from the ladder identity,
/// dPtilde_l^m = (1/2)[sqrt((l-m)(l+m+1)) Ptilde_l^{m+1} - sqrt((l+m)(l-m+1)) Ptilde_l^{m-1}].
inline double legendre_dtheta_signed(const double* tri, int l, int m)
{
    auto get = [&](int mm) -> double {
        if (mm > l || mm < -l) return 0.0;
        return legendre_signed(tri, l, mm);
    };
    const double up = std::sqrt(double(l - m) * double(l + m + 1));
    const double dn = std::sqrt(double(l + m) * double(l - m + 1));
    return 0.5 * (up * get(m + 1) - dn * get(m - 1));
}

/// d^2/dtheta^2 Ptilde_l^m(cos theta) (ladder applied twice).
inline double legendre_ddtheta_signed(const double* tri, int l, int m)
{
    auto dget = [&](int mm) -> double {
        if (mm > l || mm < -l) return 0.0;
        return legendre_dtheta_signed(tri, l, mm);
    };
    const double up = std::sqrt(double(l - m) * double(l + m + 1));
    const double dn = std::sqrt(double(l + m) * double(l - m + 1));
    return 0.5 * (up * dget(m + 1) - dn * dget(m - 1));
}

} // namespace mobius
