// Scratch probe: quadrature optimization cost/quality and the end-to-end
// filter-transformation error.
#include <array>
#include <chrono>
#include <cstdio>
#include <random>

#include "mobius/quadrature.hpp"
#include "mobius/xform.hpp"

using namespace mobius;

int main()
{
    const int M = 1, N = 1, Mp = 2, Q = 30;
    const double t = 0.15;

    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    std::vector<OptimizeReport> reports;
    QuadratureScheme scheme = optimize_quadrature(M, N, Mp, Q, t, {}, &reports);
    auto t1 = clock::now();
    printf("optimize_quadrature: %.1f s\n", std::chrono::duration<double>(t1 - t0).count());
    for (std::size_t u = 0; u < reports.size(); ++u)
        printf("  u=%zu iters=%zu energy %.6g -> %.6g\n", u, reports[u].energy_trace.size(),
               reports[u].initial_energy, reports[u].final_energy);

    // reconstruction quality per (m, s, u)
    const std::vector<double> rgrid = detail::log_spaced(1e-3, 1e3, 512);
    for (int u = 0; u <= Mp; ++u) {
        detail::QuadratureObjective obj(M, N, u, t, rgrid, {});
        const std::size_t iu = std::size_t(scheme.u_index(u));
        double worst = 0.0;
        for (int m = -M; m <= M; ++m)
            for (int s = -N; s <= N; ++s)
                worst = std::max(worst, obj.relative_error(m, s, scheme.sigma1[iu],
                                                           scheme.sigma2[iu], scheme.omega[iu]));
        printf("  u=%d worst relative reconstruction error %.4f  sigma1=%.4f sigma2=%.4f\n", u,
               worst, scheme.sigma1[iu], scheme.sigma2[iu]);
    }

    // end-to-end: transform_filter vs direct f(L^{-1} z) on the annulus
    MellinCoeffTable table(scheme);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    LogPolarFilter f(M, N, t);
    for (int m = -M; m <= M; ++m)
        for (int s = -N; s <= N; ++s) f.at(m, s) = cplx(g(rng), g(rng));
    f.symmetrize();

    const int B = 32;
    const GridSpec spec(B);
    for (auto [ar, aph, nr, nph] : std::vector<std::array<double, 4>>{
             {1.0, 0.0, 1e-12, 0.0},
             {1.1, 0.5, 0.3, 1.2},
             {0.9, -0.9, 0.45, -2.0},
         }) {
        const LowerTriangular L(ar * cplx(std::cos(aph), std::sin(aph)),
                                nr * cplx(std::cos(nph), std::sin(nph)));
        const ComplexGrid out = transform_filter(L, f, table, spec);
        const LowerTriangular Ls = epsilon_substitute(L);
        double num = 0.0, den = 0.0, imax = 0.0, pmax = 0.0;
        for (int i = 0; i < 2 * B; ++i)
            for (int j = 0; j < 2 * B; ++j) {
                const cplx z = spec.point(i, j);
                const double az = std::abs(z);
                if (az < 0.2 || az > 5.0) continue;
                const double direct = eval_filter(f, Ls.apply_inverse(z));
                const cplx got = out.at(0, i, j);
                imax = std::max(imax, std::abs(got.imag()));
                num += (got.real() - direct) * (got.real() - direct);
                den += direct * direct;
                pmax = std::max(pmax, std::abs(got.real() - direct)
                                          / std::max(1e-6, std::abs(direct)));
            }
        printf("L(a=%.2fe^{%.1fi}, n=%.2fe^{%.1fi}): relL2=%.4f maxrel=%.4f imag=%.2e\n", ar,
               aph, nr, nph, std::sqrt(num / den), pmax, imax);
    }
    return 0;
}
