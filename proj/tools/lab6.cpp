// Fit the discrepancy (true kernel - printed two-strip Mellin value) to a
// complex power law c * x^p per (m, s, u).
#include <cmath>
#include <cstdio>

#include "mobius/mellin.hpp"

using namespace mobius;

static cplx bruteforce_K(int m, double s, int u, double t, double tau, double beta)
{
    const double rho_max = 8000.0;
    const double step = 0.5 * M_PI / (80.0 * (tau + beta));
    const std::size_t n2 = std::size_t(rho_max / step / 2);
    const double h = rho_max / double(2 * n2);
    auto f = [&](double rho) -> cplx {
        if (rho == 0.0) return 0.0;
        const double j1 = std::cyl_bessel_j(std::abs(u - m), rho * tau);
        const double j2 = std::cyl_bessel_j(std::abs(u), rho * beta);
        double sign = 1.0;
        if (u - m < 0 && ((m - u) % 2)) sign = -sign;
        if (u > 0 && (u % 2)) sign = -sign;
        const double lr = std::log(rho);
        return sign * j1 * j2 * std::exp(cplx((-1.0 - t) * lr, s * lr));
    };
    cplx acc = f(rho_max) - f(0.0);
    for (std::size_t k = 0; k < n2; ++k) acc += 4.0 * f(h * double(2 * k + 1));
    for (std::size_t k = 1; k < n2; ++k) acc += 2.0 * f(h * double(2 * k));
    return acc * (h / 3.0);
}

int main(int argc, char** argv)
{
    const double t = argc > 1 ? std::atof(argv[1]) : 0.15;
    const double s2 = argc > 2 ? std::atof(argv[2]) : 0.0; // 0 -> default
    const double svar = argc > 3 ? std::atof(argv[3]) : 1.0;
    MellinReferenceOptions o;
    o.omega_max = 300.0;
    o.samples = 32768;
    o.sigma2 = s2;

    const double tau = 1.0;
    for (auto [m, sint, u] : std::vector<std::array<int, 3>>{
             {1, 0, 0}, {1, 1, 1}}) {
        const double s = sint == 0 ? 0.0 : svar;
        printf("m=%2d s=%4.2f u=%2d:", m, s, u);
        std::vector<double> xs = {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};
        (void)0;
        std::vector<cplx> d(xs.size());
        bool varies = false;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double beta = tau * std::sqrt(xs[i]);
            const cplx K = bruteforce_K(m, s, u, t, tau, beta);
            const cplx two = std::exp(cplx((1.0 + t) * std::log(2.0), -s * std::log(2.0)));
            d[i] = two * K - meijer_reference(m, s, u, t, xs[i], o);
            if (std::abs(d[i]) > 1e-4) varies = true;
        }
        if (!varies) {
            printf("  exact (max |diff| < 1e-4)\n");
            continue;
        }
        // complex log-linear fit: log d = log c + p log x
        cplx sum_p(0.0);
        int cnt = 0;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if (std::abs(d[i]) < 1e-6 || std::abs(d[i + 1]) < 1e-6) continue;
            const cplx ratio = d[i + 1] / d[i];
            sum_p += cplx(std::log(std::abs(ratio)), std::arg(ratio))
                   / (std::log(xs[i + 1]) - std::log(xs[i]));
            ++cnt;
        }
        const cplx p = sum_p / double(cnt);
        const cplx c = d[2]; // value at x = 1
        printf("  p=(%.4f,%.4f)  c=(%.5f,%.5f)  |d|:", p.real(), p.imag(), c.real(), c.imag());
        for (std::size_t i = 0; i < xs.size(); ++i) printf(" %.5f", std::abs(d[i]));
        printf("\n");
    }
    return 0;
}
