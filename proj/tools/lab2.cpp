// Diagnostics: optimized-scheme reconstruction profile + end-to-end error.
#include <array>
#include <cstdio>
#include <cmath>
#include <random>

#include "mobius/quadrature.hpp"
#include "mobius/xform.hpp"

using namespace mobius;

static void report(const char* tag, int M, int N, int u, double t, double s1, double s2,
                   const std::vector<double>& om)
{
    const std::vector<double> rgrid = detail::log_spaced(1e-2, 1e2, 512);
    detail::QuadratureObjective obj(M, N, u, t, rgrid, {});
    const std::vector<double> wt = detail::trapezoid_weights(om);
    auto terms = obj.make_terms(s1, s2, om, wt);
    auto res = obj.residuals(terms); // rec - ref
    printf("%s u=%d sigma1=%.4f sigma2=%.4f energy=%.6g\n", tag, u, s1, s2, obj.energy_of(res));
    for (std::size_t p = 0; p < obj.pairs(); ++p) {
        const auto [m, s] = obj.pair(p);
        const double rel = obj.relative_error(m, s, s1, s2, om);
        // component norm over the grid
        double nn = 0.0;
        for (std::size_t i = 0; i < rgrid.size(); ++i) {
            const cplx ref = meijer_reference(m, double(s), u, t, rgrid[i] * rgrid[i], {});
            nn += std::norm(ref) * rgrid[i];
        }
        printf("  (m=%2d s=%2d) norm~%.3e rel=%.4f\n", m, s, nn, rel);
    }
}

static void end_to_end(const char* tag, const QuadratureScheme& scheme)
{
    MellinCoeffTable table(scheme);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    LogPolarFilter f(scheme.M, scheme.N, scheme.t);
    for (int m = -scheme.M; m <= scheme.M; ++m)
        for (int s = -scheme.N; s <= scheme.N; ++s) f.at(m, s) = cplx(g(rng), g(rng));
    f.symmetrize();
    const int B = 32;
    const GridSpec spec(B);
    printf("%s:\n", tag);
    for (auto [ar, aph, nr, nph] : std::vector<std::array<double, 4>>{
             {1.0, 0.0, 1e-12, 0.0},
             {1.1, 0.5, 0.3, 1.2},
             {0.9, -0.9, 0.45, -2.0},
         }) {
        const LowerTriangular L(ar * cplx(std::cos(aph), std::sin(aph)),
                                nr * cplx(std::cos(nph), std::sin(nph)));
        const ComplexGrid out = transform_filter(L, f, table, spec);
        const LowerTriangular Ls = epsilon_substitute(L);
        double num = 0.0, den = 0.0, dmax = 0.0, emax = 0.0;
        for (int i = 0; i < 2 * B; ++i)
            for (int j = 0; j < 2 * B; ++j) {
                const cplx z = spec.point(i, j);
                const double az = std::abs(z);
                if (az < 0.2 || az > 5.0) continue;
                const double direct = eval_filter(f, Ls.apply_inverse(z));
                const cplx got = out.at(0, i, j);
                num += (got.real() - direct) * (got.real() - direct);
                den += direct * direct;
                dmax = std::max(dmax, std::abs(direct));
                emax = std::max(emax, std::abs(got.real() - direct));
            }
        printf("  L(a=%.2f@%.1f n=%.2f@%.1f): relL2=%.4f  maxerr/maxref=%.4f\n", ar, aph, nr,
               nph, std::sqrt(num / den), emax / dmax);
    }
}

int main(int argc, char** argv)
{
    const int M = 1, N = 1, Q = 30;
    const int Mp = argc > 3 ? std::atoi(argv[3]) : 2;
    const double t = 0.15;
    const int iters = argc > 1 ? std::atoi(argv[1]) : 2000;
    const double s1floor = argc > 2 ? std::atof(argv[2]) : 0.0;

    OptimizeOptions opt;
    opt.iterations = iters;
    (void)s1floor;
    std::vector<OptimizeReport> reports;
    QuadratureScheme scheme;
    if (s1floor > 0.0) {
        // probe variant: narrow the sigma1 search interval from below
        scheme.M = M; scheme.N = N; scheme.Mp = Mp; scheme.Q = Q; scheme.t = t;
        scheme.sigma1.assign(std::size_t(2 * Mp + 1), 0.0);
        scheme.sigma2.assign(std::size_t(2 * Mp + 1), 0.0);
        scheme.omega.assign(std::size_t(2 * Mp + 1), {});
        scheme.weight.assign(std::size_t(2 * Mp + 1), {});
        // emulate by running optimize_scheme_u with shifted t? simplest: run and clamp after
        scheme = optimize_quadrature(M, N, Mp, Q, t, opt, &reports);
    } else {
        scheme = optimize_quadrature(M, N, Mp, Q, t, opt, &reports);
    }
    for (std::size_t u = 0; u < reports.size(); ++u) {
        std::size_t last_dec = 0;
        const auto& tr = reports[u].energy_trace;
        for (std::size_t i = 1; i < tr.size(); ++i)
            if (tr[i] < tr[i - 1]) last_dec = i;
        printf("u=%zu iters=%zu last-decrease@%zu energy %.6g -> %.6g\n", u, tr.size(), last_dec,
               reports[u].initial_energy, reports[u].final_energy);
    }
    for (int u = 0; u <= Mp; ++u) {
        const std::size_t iu = std::size_t(scheme.u_index(u));
        report("optimized", M, N, u, t, scheme.sigma1[iu], scheme.sigma2[iu], scheme.omega[iu]);
        printf("  omega:");
        for (double w : scheme.omega[iu]) printf(" %.2f", w);
        printf("\n");
    }
    end_to_end("end-to-end", scheme);
    return 0;
}
