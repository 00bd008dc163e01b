// Error decomposition: dense-omega schemes isolate the u-truncation floor.
#include <array>
#include <cstdio>
#include <cmath>
#include <random>

#include "mobius/quadrature.hpp"
#include "mobius/xform.hpp"

using namespace mobius;

static QuadratureScheme uniform_scheme(int M, int N, int Mp, int Q, double t, double span)
{
    QuadratureScheme s;
    s.M = M;
    s.N = N;
    s.Mp = Mp;
    s.Q = Q;
    s.t = t;
    s.sigma1.assign(std::size_t(2 * Mp + 1), 0.0);
    s.sigma2.assign(std::size_t(2 * Mp + 1), 0.0);
    s.omega.assign(std::size_t(2 * Mp + 1), {});
    s.weight.assign(std::size_t(2 * Mp + 1), {});
    for (int u = -Mp; u <= Mp; ++u) {
        const std::size_t iu = std::size_t(s.u_index(u));
        s.sigma1[iu] = 0.5 * (t + sigma1_upper(u, t));
        s.sigma2[iu] = 0.5 * (t - 1.0);
        std::vector<double> om(static_cast<std::size_t>(Q));
        for (int q = 0; q < Q; ++q) om[std::size_t(q)] = -span + 2.0 * span * q / double(Q - 1);
        s.omega[iu] = om;
        s.weight[iu] = detail::trapezoid_weights(om);
    }
    return s;
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
    const double t = 0.15;
    if (argc > 2) {
        OptimizeOptions opt;
        opt.r_min = std::atof(argv[1]);
        opt.r_max = std::atof(argv[2]);
        if (argc > 3) opt.iterations = std::atoi(argv[3]);
        QuadratureScheme s = optimize_quadrature(1, 1, 2, 30, t, opt);
        char tag[128];
        snprintf(tag, sizeof tag, "optimized r=[%g,%g] iters=%d", opt.r_min, opt.r_max,
                 opt.iterations);
        end_to_end(tag, s);
        return 0;
    }
    end_to_end("uniform Q=30 span 10, Mp=2", uniform_scheme(1, 1, 2, 30, t, 10.0));
    return 0;
}
