// Ground truth for the radial kernel: brute-force oscillatory quadrature of
//   K = int_0^inf rho^{is-1-t} J_{u-m}(rho tau) J_{-u}(rho beta) drho,
// compared against tau^{t-is} M_{msu}^t(beta^2/tau^2) / 2^{1-is+t} from the
// dense two-strip inverse-Mellin reference.
#include <cmath>
#include <cstdio>

#include "mobius/mellin.hpp"

using namespace mobius;

static cplx bruteforce_K(int m, double s, int u, double t, double tau, double beta)
{
    // Simpson with fine resolution against the beat frequency; generous tail.
    const double rho_max = 4000.0;
    const double step = 0.5 * M_PI / (40.0 * (tau + beta));
    const std::size_t n2 = std::size_t(rho_max / step / 2);
    const double h = rho_max / double(2 * n2);
    auto f = [&](double rho) -> cplx {
        if (rho == 0.0) return 0.0;
        const double j1 = std::cyl_bessel_j(std::abs(u - m), rho * tau);
        const double j2 = std::cyl_bessel_j(std::abs(u), rho * beta);
        double sign = 1.0;
        if (u - m < 0 && ((m - u) % 2)) sign = -sign;
        if (u > 0 && (u % 2)) sign = -sign; // J_{-u} = (-1)^u J_u
        const double lr = std::log(rho);
        return sign * j1 * j2 * std::exp(cplx((-1.0 - t) * lr, s * lr));
    };
    cplx acc = f(rho_max) - f(0.0);
    for (std::size_t k = 0; k < n2; ++k) acc += 4.0 * f(h * double(2 * k + 1));
    for (std::size_t k = 1; k < n2; ++k) acc += 2.0 * f(h * double(2 * k));
    return acc * (h / 3.0);
}

int main()
{
    const double t = 0.15;
    MellinReferenceOptions o;
    o.omega_max = 200.0;
    o.samples = 16384;

    const double tau = 1.0;
    for (auto [m, s, u] : std::vector<std::array<int, 3>>{{0, 0, 0}, {1, 0, 0}, {1, 1, 1},
                                                          {1, 0, 2}, {0, 1, -1}}) {
        printf("m=%d s=%d u=%d:\n", m, s, u);
        for (double x : {0.04, 0.25, 0.81, 1.21, 4.0, 25.0, 100.0}) {
            const double beta = tau * std::sqrt(x);
            const cplx K = bruteforce_K(m, double(s), u, t, tau, beta);
            // 2^{1-is+t} K = tau^{t-is} M(x)
            const cplx two = std::exp(cplx(1.0 + t, 0.0) * std::log(2.0)
                                      + cplx(0.0, -double(s)) * std::log(2.0));
            const cplx lhs = two * K; // tau = 1
            const cplx rhs = meijer_reference(m, double(s), u, t, x, o);
            printf("  x=%7.2f  K-route=(%9.5f,%9.5f)  mellin=(%9.5f,%9.5f)  |diff|=%.5f\n", x,
                   lhs.real(), lhs.imag(), rhs.real(), rhs.imag(), std::abs(lhs - rhs));
        }
    }
    return 0;
}
