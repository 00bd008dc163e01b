#include <doctest.h>

#include <random>

#include "mobius/operators.hpp"

using namespace mobius;

namespace {

SHCoeffs smooth_field(int B, std::mt19937_64& rng, int support)
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

} // namespace

TEST_CASE("chart derivatives: constants and planar finite differences")
{
    const int B = 16;
    Sht sht(B);

    RealGrid constant(GridSpec(B), 1);
    std::fill(constant.raw().begin(), constant.raw().end(), 3.0);
    const ChartDerivatives cd = chart_derivatives(sht, constant);
    for (const cplx& v : cd.first) CHECK(std::abs(v) < 1e-10);
    for (const cplx& v : cd.second) CHECK(std::abs(v) < 1e-9);

    // random smooth field: Wirtinger derivatives against planar central
    // differences of the synthesized signal
    std::mt19937_64 rng(7);
    const SHCoeffs c = smooth_field(B, rng, 8);
    const RealGrid g = sht.inverse_real(c);
    const ChartDerivatives d = chart_derivatives(sht, g);
    const GridSpec spec(B);
    auto eval_at = [&](cplx z) {
        const auto [th, ph] = Sht::chart_angles(ExtComplex(z));
        return Sht::evaluate(c, th, ph).real();
    };
    const double h = 1e-4;
    int checked = 0;
    for (int i = 4; i < 2 * B - 4 && checked < 30; i += 3)
        for (int j = 0; j < 2 * B && checked < 30; j += 5) {
            const cplx z = spec.point(i, j);
            if (std::abs(z) < 0.15 || std::abs(z) > 6.0) continue;
            const double fx = (eval_at(z + h) - eval_at(z - h)) / (2.0 * h);
            const double fy = (eval_at(z + cplx(0, h)) - eval_at(z - cplx(0, h))) / (2.0 * h);
            const cplx fd_first = 0.5 * cplx(fx, -fy);
            const double fxx = (eval_at(z + h) - 2.0 * eval_at(z) + eval_at(z - h)) / (h * h);
            const double fyy = (eval_at(z + cplx(0, h)) - 2.0 * eval_at(z)
                                + eval_at(z - cplx(0, h))) / (h * h);
            const double fxy = (eval_at(z + cplx(h, h)) - eval_at(z + cplx(h, -h))
                                - eval_at(z + cplx(-h, h)) + eval_at(z + cplx(-h, -h)))
                             / (4.0 * h * h);
            const cplx fd_second = 0.25 * cplx(fxx - fyy, -2.0 * fxy);
            const std::size_t k = std::size_t(i) * std::size_t(2 * B) + std::size_t(j);
            CHECK(std::abs(d.first[k] - fd_first) < 1e-4);
            CHECK(std::abs(d.second[k] - fd_second) < 2e-3);
            ++checked;
        }
    CHECK(checked == 30);
}

TEST_CASE("constant signals have degenerate frames and zero density")
{
    const int B = 8;
    Sht sht(B);
    RealGrid constant(GridSpec(B), 1);
    std::fill(constant.raw().begin(), constant.raw().end(), -1.7);
    const auto [frames, rho] = frame_density_operator(sht, constant);
    for (bool d : frames.degenerate) CHECK(d);
    for (double v : rho.value) CHECK(v == 0.0);
}

TEST_CASE("frame and density transformation under the group")
{
    // D_z^g T_psi(z) = T_{g psi}(gz) and lambda^{-2} rho_psi(z) = rho_{g psi}(gz)
    // at non-degenerate points, discretization-limited
    const int B = 32;
    Sht sht(B);
    const GridSpec spec(B);
    std::mt19937_64 rng(17);

    int trials = 0;
    double worst_frame = 0.0, worst_density = 0.0;
    while (trials < 6) {
        const SHCoeffs c = smooth_field(B, rng, 6);
        const MobiusTransform g = sample_transform(4.0, rng);
        const MobiusTransform gi = g.inverse();

        const RealGrid psi = sht.inverse_real(c);
        const auto [frames, rho] = frame_density_operator(sht, psi);

        // g psi sampled exactly from coefficients, then band-limited
        RealGrid gpsi(spec, 1);
        for (int i = 0; i < 2 * B; ++i)
            for (int j = 0; j < 2 * B; ++j)
                gpsi.at(0, i, j) = Sht::evaluate(c, gi.apply(spec.point(i, j))).real();
        const SHCoeffs gc = sht.forward(gpsi);
        const auto [gframes, grho] = frame_density_operator(sht, gpsi);
        double gdmax = 0.0;
        for (double v : grho.value) gdmax = std::max(gdmax, std::sqrt(v));

        double dmax = 0.0;
        for (double v : rho.value) dmax = std::max(dmax, std::sqrt(v));

        for (int i = 2; i < 2 * B - 2; i += 5)
            for (int j = 0; j < 2 * B; j += 5) {
                const std::size_t k = std::size_t(i) * std::size_t(2 * B) + std::size_t(j);
                if (frames.degenerate[k] || std::sqrt(rho.value[k]) < 0.25 * dmax) continue;
                const ExtComplex z = ExtComplex(spec.point(i, j));
                const ExtComplex gz = g.apply(z);
                const auto [gth, gph] = Sht::chart_angles(gz);

                LowerTriangular got;
                bool deg;
                double grho_at;
                frame_density_at(gc, gth, gph, gdmax, got, deg, grho_at);
                if (deg || std::sqrt(grho_at) < 0.25 * gdmax) continue;

                const LowerTriangular want = frame_transform(g, z) * frames.frame[k];
                // frames live in SL(2, C) up to sign
                const double sg = std::abs(got.a - want.a) < std::abs(got.a + want.a) ? 1.0
                                                                                      : -1.0;
                const double scale = std::max({std::abs(want.a), std::abs(want.n), 1.0});
                worst_frame = std::max(worst_frame,
                                       std::max(std::abs(got.a - sg * want.a),
                                                std::abs(got.n - sg * want.n)) / scale);

                // density transforms with weight 1/lambda (area measure)
                const double lam = scale_factor(g, z);
                worst_density = std::max(worst_density,
                                         std::abs(grho_at - rho.value[k] / lam)
                                             / (rho.value[k] / lam));
            }
        ++trials;
    }
    CHECK(worst_frame < 1e-3);
    CHECK(worst_density < 1e-3);
}

TEST_CASE("restrict_frames")
{
    std::mt19937_64 rng(29);
    std::normal_distribution<double> g(0.0, 1.0);
    FrameField f;
    for (int k = 0; k < 64; ++k) {
        f.frame.push_back(LowerTriangular(cplx(g(rng), g(rng)) + cplx(2.0), cplx(g(rng), g(rng))));
        f.degenerate.push_back(false);
    }
    const FrameField cnz = restrict_frames(f, FrameMode::Cnz);
    for (const auto& L : cnz.frame) CHECK(std::abs(L.n) == 0.0);

    const FrameField u1 = restrict_frames(f, FrameMode::U1);
    for (const auto& L : u1.frame) {
        CHECK(std::abs(L.n) == 0.0);
        CHECK(std::abs(std::abs(L.a) - 1.0) < 1e-12);
    }

    // idempotent
    const FrameField u1b = restrict_frames(u1, FrameMode::U1);
    for (std::size_t k = 0; k < u1.frame.size(); ++k)
        CHECK(std::abs(u1.frame[k].a - u1b.frame[k].a) < 1e-15);

    const FrameField same = restrict_frames(f, FrameMode::L);
    for (std::size_t k = 0; k < f.frame.size(); ++k)
        CHECK(std::abs(same.frame[k].n - f.frame[k].n) == 0.0);

    CHECK_THROWS_AS((void)frame_mode_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("operator error decreases with band limit")
{
    std::mt19937_64 rng(37);
    const SHCoeffs c16 = smooth_field(16, rng, 6);
    const MobiusTransform g = sample_transform(3.0, rng);
    const MobiusTransform gi = g.inverse();

    double prev = 1e9;
    for (int B : {16, 32, 64}) {
        Sht sht(B);
        const GridSpec spec(B);
        SHCoeffs c(B);
        for (int l = 0; l < 16; ++l)
            for (int m = -l; m <= l; ++m) c.at(l, m) = c16.at(l, m);
        const RealGrid psi = sht.inverse_real(c);
        const auto [frames, rho] = frame_density_operator(sht, psi);
        RealGrid gpsi(spec, 1);
        for (int i = 0; i < 2 * B; ++i)
            for (int j = 0; j < 2 * B; ++j)
                gpsi.at(0, i, j) = Sht::evaluate(c, gi.apply(spec.point(i, j))).real();
        const SHCoeffs gc = sht.forward(gpsi);
        double gdmax = 0.0;
        {
            const DensityField grho = density_operator(sht, gpsi);
            for (double v : grho.value) gdmax = std::max(gdmax, std::sqrt(v));
        }
        double dmax = 0.0;
        for (double v : rho.value) dmax = std::max(dmax, std::sqrt(v));

        double worst = 0.0;
        for (int i = 1; i < 2 * B; i += std::max(1, B / 8))
            for (int j = 0; j < 2 * B; j += std::max(1, B / 8)) {
                const std::size_t k = std::size_t(i) * std::size_t(2 * B) + std::size_t(j);
                if (frames.degenerate[k] || std::sqrt(rho.value[k]) < 0.25 * dmax) continue;
                const ExtComplex gz = g.apply(ExtComplex(spec.point(i, j)));
                const auto [gth, gph] = Sht::chart_angles(gz);
                LowerTriangular got;
                bool deg;
                double grho_at;
                frame_density_at(gc, gth, gph, gdmax, got, deg, grho_at);
                if (deg || std::sqrt(grho_at) < 0.25 * gdmax) continue;
                const double lam = scale_factor(g, ExtComplex(spec.point(i, j)));
                worst = std::max(worst, std::abs(grho_at - rho.value[k] / lam)
                                            / (rho.value[k] / lam));
            }
        CHECK(worst < prev);
        prev = worst;
    }
}
