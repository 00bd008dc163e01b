// Error of the expansion at a fixed point as |n| and arg(n) vary.
#include <cstdio>
#include <cmath>

#include "mobius/mellin.hpp"
#include "mobius/logpolar.hpp"
#include "mobius/geometry.hpp"

using namespace mobius;

static cplx expansion(cplx a, cplx n, cplx z, int m, double s, int U,
                      const MellinReferenceOptions& o)
{
    const double t = 0.15;
    const cplx a2 = a * a, an = a * n;
    const double alpha = std::abs(a2), tau = std::abs(an);
    const double phi = std::arg(a2), kappa = std::arg(an);
    const cplx jz = -1.0 / z;
    const double rj = std::abs(jz), tj = std::arg(jz);
    const double x = alpha * alpha * rj * rj / (tau * tau);
    cplx sum(0.0);
    for (int u = -U; u <= U; ++u) {
        const double ph = -u * (phi + tj) - (m - u) * kappa;
        const cplx tpow = std::exp(cplx(t * std::log(tau), -s * std::log(tau)));
        sum += cplx(std::cos(ph), std::sin(ph)) * tpow * meijer_reference(m, s, u, t, x, o);
    }
    sum *= hankel_prefactor(m, s, t);
    if (m % 2 != 0) sum = -sum;
    return sum;
}

int main()
{
    const double t = 0.15;
    const int m = 1;
    const double s = 1.0;
    const cplx z = 0.6 * cplx(std::cos(0.9), std::sin(0.9));
    MellinReferenceOptions o;
    o.omega_max = 400.0;
    o.samples = 32768;

    const cplx aG = 1.05 * cplx(std::cos(0.4), std::sin(0.4));
    printf("U scan at |n|=0.8 generic:\n");
    for (int U : {8, 16, 24, 32, 40, 48, 56}) {
        const cplx n = 0.8 * cplx(std::cos(1.1), std::sin(1.1));
        const LowerTriangular L(aG, n);
        const cplx direct = eval_basis(LogPolarIndex(m, s, t), L.apply_inverse(z));
        const cplx sum = expansion(aG, n, z, m, s, U, o);
        printf("  U=%2d  |err|=%.3e\n", U, std::abs(sum - direct));
    }
    printf("U scan at |n|=0.05, a=1:\n");
    for (int U : {8, 16, 32, 48, 64}) {
        const LowerTriangular L(1.0, 0.05);
        const cplx direct = eval_basis(LogPolarIndex(m, s, t), L.apply_inverse(z));
        const cplx sum = expansion(1.0, 0.05, z, m, s, U, o);
        printf("  U=%2d  |err|=%.3e\n", U, std::abs(sum - direct));
    }
    printf("arg n scan (a = 1, |n| = 0.4):\n");
    for (double na : {0.0, 0.5, 1.0, 1.5, 2.2, 3.0}) {
        const cplx n = 0.4 * cplx(std::cos(na), std::sin(na));
        const LowerTriangular L(1.0, n);
        const cplx direct = eval_basis(LogPolarIndex(m, s, t), L.apply_inverse(z));
        const cplx sum = expansion(1.0, n, z, m, s, 24, o);
        printf("  arg=%.1f  |err|=%.3e\n", na, std::abs(sum - direct));
    }
    printf("arg a scan (|a| = 1.05, n = 0.4e^{1.1i}):\n");
    for (double aa : {0.0, 0.2, 0.4, 0.8, 1.5}) {
        const cplx a = 1.05 * cplx(std::cos(aa), std::sin(aa));
        const cplx n = 0.4 * cplx(std::cos(1.1), std::sin(1.1));
        const LowerTriangular L(a, n);
        const cplx direct = eval_basis(LogPolarIndex(m, s, t), L.apply_inverse(z));
        const cplx sum = expansion(a, n, z, m, s, 24, o);
        printf("  arg a=%.1f  |err|=%.3e\n", aa, std::abs(sum - direct));
    }
    return 0;
}
