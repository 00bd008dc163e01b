#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "mobius/special.hpp"

namespace mobius {

// Mellin-side machinery for the transformation of log-polar basis functions
// by lower-triangular elements: the Hankel prefactor R_{ms}, the Mellin
// coefficient functions 1M/2M of the radial kernel M_{msu}^t, and a dense
// inverse-Mellin reference evaluation of M itself.

/// Hankel-transform prefactor R(m, s, t) built from Gamma ratios.
inline cplx hankel_prefactor(int m, double s, double t)
{
    const cplx is(0.0, s);
    if (m <= 0) {
        return complex_gamma(1.0 - 0.5 * (double(m) - t + is))
             / complex_gamma(0.5 * (double(-m) - t + is));
    }
    const double sign = (m % 2) ? -1.0 : 1.0;
    return sign * complex_gamma(1.0 - 0.5 * (double(-m) - t + is))
         / complex_gamma(0.5 * (double(m) - t + is));
}

namespace detail {

inline cplx gamma_ratio(cplx n1, cplx n2, cplx d1, cplx d2)
{
    return std::exp(complex_lgamma(n1) + complex_lgamma(n2)
                    - complex_lgamma(d1) - complex_lgamma(d2));
}

} // namespace detail

/// Mellin coefficient function 1M_{msu}^{t,sigma1}(omega) along Re = sigma1.
inline cplx mellin_coeff_1(int m, double s, int u, double t, double sigma1, double omega)
{
    const cplx is(0.0, s);
    const cplx io(0.0, omega);
    if (u == 0 && m != 0) return 0.0;
    if (u == 0 && m == 0) {
        const cplx pole = 1.0 - 0.5 * (2.0 - is + t); // = (is - t)/2
        return detail::gamma_ratio(0.5 * (2.0 - sigma1 + io), 0.5 * (is + sigma1 - io - t),
                                   0.5 * (2.0 + sigma1 - io), 0.5 * (2.0 - is - sigma1 + io + t))
             / (2.0 * pole);
    }
    if (u >= m) {
        if (u < 0) {
            return detail::gamma_ratio(0.5 * (-sigma1 + io - double(u)),
                                       0.5 * (double(u) + is - double(m) + sigma1 - io - t),
                                       0.5 * (2.0 - double(u) + sigma1 - io),
                                       0.5 * (2.0 + double(u) - is - double(m) - sigma1 + io + t))
                 / 2.0;
        }
        const double sg = (u % 2) ? -1.0 : 1.0;
        return sg * detail::gamma_ratio(0.5 * (double(u) - sigma1 + io),
                                        0.5 * (double(u) + is - double(m) + sigma1 - io - t),
                                        0.5 * (2.0 + double(u) + sigma1 - io),
                                        0.5 * (2.0 + double(u) - is - double(m) - sigma1 + io + t))
             / 2.0;
    }
    // u < m
    if (u < 0) {
        const double sg = ((u - m) % 2) ? -1.0 : 1.0;
        return sg * detail::gamma_ratio(0.5 * (-sigma1 + io - double(u)),
                                        0.5 * (double(-u) + is + double(m) + sigma1 - io - t),
                                        0.5 * (2.0 - double(u) + sigma1 - io),
                                        0.5 * (2.0 - double(u) - is + double(m) - sigma1 + io + t))
         / 2.0;
    }
    const double sg = (m % 2) ? -1.0 : 1.0;
    return sg * detail::gamma_ratio(0.5 * (double(u) - sigma1 + io),
                                    0.5 * (double(-u) + is + double(m) + sigma1 - io - t),
                                    0.5 * (2.0 + double(u) + sigma1 - io),
                                    0.5 * (2.0 - double(u) - is + double(m) - sigma1 + io + t))
         / 2.0;
}

/// Mellin coefficient function 2M_{msu}^{t,sigma2}(omega); nonzero only at u = 0.
inline cplx mellin_coeff_2(int m, double s, int u, double t, double sigma2, double omega)
{
    if (u != 0) return 0.0;
    const cplx is(0.0, s);
    const cplx io(0.0, omega);
    if (m == 0) {
        const cplx pole = 1.0 - 0.5 * (2.0 - is + t);
        return detail::gamma_ratio(0.5 * (-sigma2 + io), 0.5 * (2.0 + is + sigma2 - io - t),
                                   0.5 * (2.0 + sigma2 - io), 0.5 * (2.0 - is - sigma2 + io + t))
             / (2.0 * pole);
    }
    if (m < 0) {
        return detail::gamma_ratio(0.5 * (-sigma2 + io), 0.5 * (is - double(m) + sigma2 - io - t),
                                   0.5 * (2.0 + sigma2 - io),
                                   0.5 * (2.0 - is - double(m) - sigma2 + io + t))
             / 2.0;
    }
    const double sg = (m % 2) ? -1.0 : 1.0;
    return sg * detail::gamma_ratio(0.5 * (-sigma2 + io), 0.5 * (is + double(m) + sigma2 - io - t),
                                    0.5 * (2.0 + sigma2 - io),
                                    0.5 * (2.0 - is + double(m) - sigma2 + io + t))
         / 2.0;
}

inline cplx mellin_coeff(int j, int m, double s, int u, double t, double sigma, double omega)
{
    if (j == 1) return mellin_coeff_1(m, s, u, t, sigma, omega);
    if (j == 2) return mellin_coeff_2(m, s, u, t, sigma, omega);
    throw std::invalid_argument("mellin_coeff: j must be 1 or 2");
}

/// Largest admissible sigma1 for a given |u|: the generic branches of 1M have
/// a Gamma pole at sigma1 = |u| for |u| = 1, so the (t, 2) strip is capped.
inline double sigma1_upper(int u, double /*t*/)
{
    return (std::abs(u) == 1) ? 1.0 : 2.0;
}

/// Options for the dense inverse-Mellin reference.
struct MellinReferenceOptions {
    double omega_max = 60.0; // half-width of the frequency window
    int samples = 4096;      // uniform samples on [-omega_max, omega_max]
    double sigma1 = 0.0;     // 0 -> midpoint of the admissible interval
    double sigma2 = 0.0;     // 0 -> (t-1)/2
};

/// Dense inverse-Mellin evaluation of M_{msu}^t(x): tapered trapezoid over
/// the two coefficient strips.  The Mellin coefficients decay only
/// algebraically in omega, so the window is smoothly tapered over its outer
/// fifth; self-consistency under refinement is what the oracle guarantees.
inline cplx meijer_reference(int m, double s, int u, double t, double x,
                             const MellinReferenceOptions& opt = {})
{
    if (t <= 0.0 || t >= 1.0) throw std::invalid_argument("meijer_reference: t must be in (0,1)");
    if (x <= 0.0) throw std::invalid_argument("meijer_reference: argument must be positive");
    const double s1 = opt.sigma1 > 0.0 ? opt.sigma1 : 0.5 * (t + sigma1_upper(u, t));
    const double s2 = opt.sigma2 != 0.0 ? opt.sigma2 : 0.5 * (t - 1.0);
    const double lx = std::log(x);
    const int n = opt.samples;
    const double h = 2.0 * opt.omega_max / double(n - 1);
    auto taper = [&](double w) {
        const double aw = std::abs(w) / opt.omega_max;
        if (aw <= 0.8) return 1.0;
        const double q = (aw - 0.8) / 0.2;
        const double q4 = q * q * q * q;
        return 1.0 - q4 * (35.0 - 84.0 * q + 70.0 * q * q - 20.0 * q * q * q);
    };
    cplx acc(0.0);
    for (int k = 0; k < n; ++k) {
        const double w = -opt.omega_max + h * k;
        const double edge = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        const double win = edge * taper(w);
        const cplx p1 = std::exp(cplx(0.5 * s1 * lx, -0.5 * w * lx));
        const cplx p2 = std::exp(cplx(0.5 * s2 * lx, -0.5 * w * lx));
        acc += win * (mellin_coeff_1(m, s, u, t, s1, w) * p1
                      + mellin_coeff_2(m, s, u, t, s2, w) * p2);
    }
    return acc * h / (2.0 * std::numbers::pi);
}

} // namespace mobius
