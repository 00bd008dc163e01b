// u-truncation behaviour of the expansion on the epsilon path (small shear).
#include <cstdio>
#include <cmath>

#include "mobius/quadrature.hpp"
#include "mobius/xform.hpp"

using namespace mobius;

int main()
{
    const double t = 0.15;
    for (double eps : {0.05, 0.3}) {
        const LowerTriangular L = epsilon_substitute(LowerTriangular(1.0, 0.0), eps);
        const cplx a2 = L.a * L.a, an = L.a * L.n;
        const double alpha = std::abs(a2), tau = std::abs(an);
        const double phi = std::arg(a2), kappa = std::arg(an);
        printf("eps=%.2f:\n", eps);
        for (int U : {2, 4, 8, 16, 32}) {
            for (auto [m, s] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}}) {
                double num = 0.0, den = 0.0;
                for (double az : {0.2, 0.45, 1.0, 2.2, 5.0})
                    for (double ang : {0.3, 1.5, 2.7, 4.0}) {
                        const cplx z = az * cplx(std::cos(ang), std::sin(ang));
                        const cplx direct = eval_basis(LogPolarIndex(m, s, t), L.apply_inverse(z));
                        cplx sum(0.0);
                        const cplx jz = -1.0 / z;
                        const double rj = std::abs(jz), tj = std::arg(jz);
                        const double x = alpha * alpha * rj * rj / (tau * tau);
                        for (int u = -U; u <= U; ++u) {
                            MellinReferenceOptions o;
                            o.omega_max = 60.0;
                            o.samples = 4096;
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
                printf("  U=%2d m=%d s=%d relL2=%.4f\n", U, m, s, std::sqrt(num / den));
            }
        }
    }
    return 0;
}
