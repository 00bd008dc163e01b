// Operator equivariance error vs field smoothness and degeneracy filtering.
#include <cstdio>
#include <random>

#include "mobius/operators.hpp"

using namespace mobius;

static SHCoeffs smooth_field(int B, std::mt19937_64& rng, int support)
{
    std::normal_distribution<double> g(0.0, 1.0);
    SHCoeffs c(B);
    for (int l = 0; l < std::min(B, support); ++l) {
        const double s = std::exp(-double(l) * l / double(support * support) * 2.0);
        c.at(l, 0) = s * g(rng);
        for (int m = 1; m <= l; ++m) {
            const cplx v = s * cplx(g(rng), g(rng));
            c.at(l, m) = v;
            c.at(l, -m) = (m % 2 ? -1.0 : 1.0) * std::conj(v);
        }
    }
    return c;
}

int main()
{
    for (int B : {16, 32, 64}) {
        Sht sht(B);
        const GridSpec spec(B);
        for (int support : {6, 8, 10}) {
            for (double cut : {0.1, 0.25}) {
                std::mt19937_64 rng(101);
                double wf = 0.0, wd = 0.0;
                for (int trial = 0; trial < 6; ++trial) {
                    const SHCoeffs c = smooth_field(B, rng, support);
                    const MobiusTransform g = sample_transform(8.0, rng);
                    const MobiusTransform gi = g.inverse();
                    const RealGrid psi = sht.inverse_real(c);
                    const auto [frames, rho] = frame_density_operator(sht, psi);
                    RealGrid gpsi(spec, 1);
                    for (int i = 0; i < 2 * B; ++i)
                        for (int j = 0; j < 2 * B; ++j)
                            gpsi.at(0, i, j)
                                = Sht::evaluate(c, gi.apply(spec.point(i, j))).real();
                    const SHCoeffs gc = sht.forward(gpsi);
                    const auto [gframes, grho] = frame_density_operator(sht, gpsi);
                    double gdmax = 0.0, dmax = 0.0;
                    for (double v : grho.value) gdmax = std::max(gdmax, std::sqrt(v));
                    for (double v : rho.value) dmax = std::max(dmax, std::sqrt(v));

                    for (int i = 1; i < 2 * B; i += 3)
                        for (int j = 0; j < 2 * B; j += 3) {
                            const std::size_t k
                                = std::size_t(i) * std::size_t(2 * B) + std::size_t(j);
                            if (frames.degenerate[k] || std::sqrt(rho.value[k]) < cut * dmax)
                                continue;
                            const ExtComplex z(spec.point(i, j));
                            const ExtComplex gz = g.apply(z);
                            const auto [gth, gph] = Sht::chart_angles(gz);
                            LowerTriangular got;
                            bool deg;
                            double grho_at;
                            frame_density_at(gc, gth, gph, gdmax, got, deg, grho_at);
                            if (deg || std::sqrt(grho_at) < cut * gdmax) continue;
                            const LowerTriangular want = frame_transform(g, z) * frames.frame[k];
                            const double sg
                                = std::abs(got.a - want.a) < std::abs(got.a + want.a) ? 1.0
                                                                                      : -1.0;
                            const double scale
                                = std::max({std::abs(want.a), std::abs(want.n), 1.0});
                            wf = std::max(wf, std::max(std::abs(got.a - sg * want.a),
                                                       std::abs(got.n - sg * want.n)) / scale);
                            const double lam = scale_factor(g, z);
                            const double target = rho.value[k] / lam;
                            wd = std::max(wd, std::abs(grho_at - target) / target);
                        }
                }
                printf("B=%2d support=%2d cut=%.2f  worst_frame=%.2e worst_density=%.2e\n", B,
                       support, cut, wf, wd);
            }
        }
    }
    return 0;
}
