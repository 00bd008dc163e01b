// Bisect the epsilon-path failure: vary one thing at a time from the
// verified-good configuration (generic a, n; Omega=400, 32768 samples).
#include <cstdio>
#include <cmath>

#include "mobius/mellin.hpp"
#include "mobius/logpolar.hpp"
#include "mobius/geometry.hpp"

using namespace mobius;

static double check(cplx a, cplx n, int U, double om, int samples, int m, double s)
{
    const double t = 0.15;
    const LowerTriangular L(a, n);
    const cplx a2 = a * a, an = a * n;
    const double alpha = std::abs(a2), tau = std::abs(an);
    const double phi = std::arg(a2), kappa = std::arg(an);
    MellinReferenceOptions o;
    o.omega_max = om;
    o.samples = samples;
    double num = 0.0, den = 0.0;
    for (double az : {0.3, 0.9, 2.0})
        for (double ang : {0.7, 2.9}) {
            const cplx z = az * cplx(std::cos(ang), std::sin(ang));
            const cplx direct = eval_basis(LogPolarIndex(m, s, t), L.apply_inverse(z));
            cplx sum(0.0);
            const cplx jz = -1.0 / z;
            const double rj = std::abs(jz), tj = std::arg(jz);
            const double x = alpha * alpha * rj * rj / (tau * tau);
            for (int u = -U; u <= U; ++u) {
                const double ph = -u * (phi + tj) - (m - u) * kappa;
                const cplx tpow = std::exp(cplx(t * std::log(tau), -s * std::log(tau)));
                cplx term = cplx(std::cos(ph), std::sin(ph)) * tpow
                          * meijer_reference(m, s, u, t, x, o);
                if ((m + u) % 2 != 0) term = -term;
                sum += term;
            }
            sum *= hankel_prefactor(m, s, t) * ((m % 2) ? -1.0 : 1.0);
            num += std::norm(sum - direct);
            den += std::norm(direct);
        }
    return std::sqrt(num / den);
}

int main()
{
    const cplx aG = 1.05 * cplx(std::cos(0.4), std::sin(0.4));
    const cplx nG = 0.8 * cplx(std::cos(1.1), std::sin(1.1));
    printf("baseline (good):              %.2e\n", check(aG, nG, 16, 400, 32768, 1, 1.0));
    printf("n -> 0.2 same dir:            %.2e\n", check(aG, 0.25 * nG, 16, 400, 32768, 1, 1.0));
    printf("n -> 0.05 same dir:           %.2e\n", check(aG, 0.0625 * nG, 16, 400, 32768, 1, 1.0));
    printf("n -> 0.05, wider window:      %.2e\n", check(aG, 0.0625 * nG, 16, 1200, 98304, 1, 1.0));
    printf("n -> 0.05, U=40:              %.2e\n", check(aG, 0.0625 * nG, 40, 400, 32768, 1, 1.0));
    printf("a -> 1 exactly, n generic:    %.2e\n", check(1.0, nG, 16, 400, 32768, 1, 1.0));
    printf("eps path (a=1, n=0.05):       %.2e\n", check(1.0, 0.05, 16, 400, 32768, 1, 1.0));
    printf("eps path, wider window:       %.2e\n", check(1.0, 0.05, 16, 1200, 98304, 1, 1.0));
    printf("eps path, m=0 s=0:            %.2e\n", check(1.0, 0.05, 16, 400, 32768, 0, 0.0));
    printf("eps path, huge window:        %.2e\n", check(1.0, 0.05, 16, 4000, 262144, 1, 1.0));
    return 0;
}
