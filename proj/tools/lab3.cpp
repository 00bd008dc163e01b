// Per-component end-to-end error and coefficient tail magnitudes.
#include <cstdio>
#include <cmath>

#include "mobius/quadrature.hpp"
#include "mobius/xform.hpp"

using namespace mobius;

int main()
{
    const double t = 0.15;

    printf("coefficient magnitudes, u=0 defaults (sigma1=1.075, sigma2=-0.425):\n");
    for (int m : {0, 1}) {
        for (double w : {2.0, 5.0, 10.0, 20.0, 40.0, 80.0}) {
            const cplx m1 = mellin_coeff_1(m, 0.0, 0, t, 1.075, w);
            const cplx m2 = mellin_coeff_2(m, 0.0, 0, t, -0.425, w);
            printf("  m=%d w=%5.1f |M1|=%.4f |M2|=%.4f |M1+M2|=%.4f\n", m, w, std::abs(m1),
                   std::abs(m2), std::abs(m1 + m2));
        }
    }

    // near-identity transform error per basis component, direct quadrature
    // over a fine uniform omega comb (no optimization): establishes the best
    // case for a given span/resolution
    const LowerTriangular L = epsilon_substitute(LowerTriangular(1.0, 0.0));
    const cplx a2 = L.a * L.a, an = L.a * L.n;
    const double alpha = std::abs(a2), tau = std::abs(an);
    const double phi = std::arg(a2), kappa = std::arg(an);
    for (auto [span, Qd] : std::vector<std::pair<double, int>>{
             {10.0, 30}, {10.0, 200}, {30.0, 200}, {80.0, 600}, {200.0, 2000}}) {
        printf("span=%.0f Q=%d:\n", span, Qd);
        for (auto [m, s] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
            double emax = 0.0, dmax = 0.0;
            for (double az : {0.2, 0.5, 1.0, 2.0, 5.0}) {
                const cplx z = az * cplx(std::cos(0.7), std::sin(0.7));
                const cplx direct = eval_basis(LogPolarIndex(m, s, t), L.apply_inverse(z));
                // expansion: sum_u sum_j int xi B^{sigma_j}_{u omega}(z)
                cplx sum(0.0);
                const cplx jz = -1.0 / z;
                const double rj = std::abs(jz), tj = std::arg(jz);
                const double x = alpha * alpha * rj * rj / (tau * tau);
                for (int u = -6; u <= 6; ++u) {
                    const double s1 = 0.5 * (t + sigma1_upper(u, t));
                    const double s2 = 0.5 * (t - 1.0);
                    MellinReferenceOptions o;
                    o.omega_max = span;
                    o.samples = Qd;
                    o.sigma1 = s1;
                    o.sigma2 = s2;
                    const double ph = -u * (phi + tj) - (m - u) * kappa;
                    const cplx tpow = std::exp(cplx(t * std::log(tau), -s * std::log(tau)));
                    cplx term = cplx(std::cos(ph), std::sin(ph)) * tpow
                              * meijer_reference(m, s, u, t, x, o);
                    if ((m + u) % 2 != 0) term = -term;
                    sum += term;
                }
                sum *= hankel_prefactor(m, s, t) * ((m % 2) ? -1.0 : 1.0);
                emax = std::max(emax, std::abs(sum - direct));
                dmax = std::max(dmax, std::abs(direct));
            }
            printf("  m=%d s=%d maxerr=%.4f maxref=%.4f rel=%.4f\n", m, s, emax, dmax,
                   emax / dmax);
        }
    }
    return 0;
}
