// Spatial structure of the expansion error for small shear.
#include <cstdio>
#include <cmath>

#include "mobius/mellin.hpp"
#include "mobius/logpolar.hpp"
#include "mobius/geometry.hpp"

using namespace mobius;

int main()
{
    const double t = 0.15;
    const int m = 1;
    const double s = 1.0;
    const cplx a(1.0, 0.0);
    const cplx n(0.05, 0.0);
    const LowerTriangular L(a, n);
    const cplx a2 = a * a, an = a * n;
    const double alpha = std::abs(a2), tau = std::abs(an);
    const double phi = std::arg(a2), kappa = std::arg(an);
    MellinReferenceOptions o;
    o.omega_max = 400.0;
    o.samples = 32768;

    for (double az : {0.3, 0.6, 0.9, 1.4, 2.0})
        for (double ang : {0.0, 0.7, 0.9, 1.6, 2.9, 4.2}) {
            const cplx z = az * cplx(std::cos(ang), std::sin(ang));
            const cplx direct = eval_basis(LogPolarIndex(m, s, t), L.apply_inverse(z));
            cplx sum(0.0);
            const cplx jz = -1.0 / z;
            const double rj = std::abs(jz), tj = std::arg(jz);
            const double x = alpha * alpha * rj * rj / (tau * tau);
            for (int u = -16; u <= 16; ++u) {
                const double ph = -u * (phi + tj) - (m - u) * kappa;
                const cplx tpow = std::exp(cplx(t * std::log(tau), -s * std::log(tau)));
                cplx term = cplx(std::cos(ph), std::sin(ph)) * tpow
                          * meijer_reference(m, s, u, t, x, o);
                if ((m + u) % 2 != 0) term = -term;
                sum += term;
            }
            sum *= hankel_prefactor(m, s, t) * ((m % 2) ? -1.0 : 1.0);
            printf("az=%.2f ang=%.2f  direct=(%8.5f,%8.5f) sum=(%8.5f,%8.5f) |err|=%.2e\n", az,
                   ang, direct.real(), direct.imag(), sum.real(), sum.imag(),
                   std::abs(sum - direct));
        }
    return 0;
}
