#include <doctest.h>

#include <random>

#include "mobius/geometry.hpp"

using namespace mobius;

namespace {

ExtComplex random_point(std::mt19937_64& rng)
{
    // covers both charts, occasionally far out
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> kind(0, 9);
    const int k = kind(rng);
    cplx z(u(rng), u(rng));
    if (k < 4) return ExtComplex(z);
    if (k < 8) return ExtComplex(z * 10.0);
    if (k < 9) return ExtComplex(z * 1e6);
    return ExtComplex(z * 1e-6);
}

MobiusTransform random_sl2(std::mt19937_64& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        MobiusTransform m(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)),
                          cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
        if (std::abs(m.det() - cplx(1.0)) < 1e-9) return m;
    }
}

} // namespace

TEST_CASE("apply: identity, inversion, diagonal")
{
    CHECK(approx_equal(MobiusTransform::identity().apply(cplx(3.0, 4.0)), cplx(3.0, 4.0), 1e-15));

    // J z = -1/z; at z = i this is a fixed point
    const auto J = MobiusTransform::inversion();
    CHECK(approx_equal(J.apply(cplx(0.0, 1.0)), cplx(0.0, 1.0), 1e-15));

    const double s = std::sqrt(2.0);
    MobiusTransform d(s, 0.0, 0.0, 1.0 / s);
    CHECK(approx_equal(d.apply(cplx(1.0)), cplx(2.0), 1e-14));

    // infinity maps to a/c, poles map to infinity
    MobiusTransform g(1.0, 2.0, 3.0, 4.0);
    CHECK(approx_equal(g.apply(ExtComplex::infinity()), cplx(1.0, 0.0) / cplx(3.0, 0.0), 1e-12));
    CHECK(g.apply(cplx(-4.0 / 3.0)).is_inf());
}

TEST_CASE("gen_log basics")
{
    CHECK(approx_equal(gen_log(cplx(0.0)).apply(cplx(0.0)), cplx(0.0), 1e-15));
    const MobiusTransform id = gen_log(cplx(0.0));
    CHECK(std::abs(id.a - cplx(1.0)) < 1e-15);
    CHECK(std::abs(id.b) < 1e-15);

    const cplx z(0.7, -0.2);
    CHECK(gen_log(z).apply(z).abs() < 1e-14);

    // real-line alignment: t z maps to the real line for t > 0
    for (double t : {0.25, 0.5, 2.0, 7.0}) {
        const ExtComplex w = gen_log(z).apply(z * t);
        CHECK(std::abs(w.value().imag()) < 1e-13);
    }

    // Euler form (0, theta, phi): entries match the closed form
    const double r = std::abs(z), phi = std::arg(z);
    const double theta = 2.0 * std::atan(r);
    const MobiusTransform lg = gen_log(z);
    const cplx em(std::cos(0.5 * phi), -std::sin(0.5 * phi));
    CHECK(std::abs(lg.a - std::cos(0.5 * theta) * em) < 1e-14);
    CHECK(std::abs(lg.b + std::sin(0.5 * theta) * std::conj(em)) < 1e-14);

    // unitarity over random points
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        const MobiusTransform m = gen_log(random_point(rng));
        CHECK(m.is_unitary(1e-12));
    }

    // convention at infinity
    const MobiusTransform at_inf = gen_log(ExtComplex::infinity());
    CHECK(std::abs(at_inf.a) < 1e-15);
    CHECK(std::abs(at_inf.b + cplx(1.0)) < 1e-15);
}

TEST_CASE("gen_exp inverts gen_log")
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        const ExtComplex z = random_point(rng);
        const MobiusTransform m = gen_exp(z) * gen_log(z);
        CHECK(std::abs(m.a - cplx(1.0)) < 1e-12);
        CHECK(std::abs(m.b) < 1e-12);
        CHECK(std::abs(m.c) < 1e-12);
    }
    CHECK(approx_equal(gen_exp(cplx(1.0, 1.0)).apply(cplx(0.0)), cplx(1.0, 1.0), 1e-14));

    // |d exp_z at 0| = 1 + |z|^2
    const cplx z(0.0, 2.0);
    const cplx de = mobius_diff(gen_exp(z), cplx(0.0));
    CHECK(std::abs(de) == doctest::Approx(1.0 + std::norm(z)).epsilon(1e-12));
}

TEST_CASE("frame_transform is lower-triangular")
{
    std::mt19937_64 rng(13);
    const ExtComplex z0(cplx(0.3, -0.4));
    const LowerTriangular lid = frame_transform(MobiusTransform::identity(), z0);
    CHECK(std::abs(lid.a - cplx(1.0)) < 1e-12);
    CHECK(std::abs(lid.n) < 1e-12);

    // rotation fixing the origin acts as a diagonal phase
    const double ang = 0.8;
    MobiusTransform rot(cplx(std::cos(ang), -std::sin(ang)) * 1.0, 0.0, 0.0,
                        cplx(std::cos(ang), std::sin(ang)));
    const LowerTriangular lr = frame_transform(rot, cplx(0.0));
    CHECK(std::abs(lr.a - rot.a) < 1e-12);
    CHECK(std::abs(lr.n) < 1e-12);

    for (int k = 0; k < 1000; ++k) {
        const MobiusTransform g = random_sl2(rng);
        const ExtComplex z = random_point(rng);
        const MobiusTransform m = gen_log(g.apply(z)) * g * gen_exp(z);
        CHECK(std::abs(m.b) < 1e-10);
    }
}

TEST_CASE("scale_factor")
{
    std::mt19937_64 rng(17);
    for (int k = 0; k < 50; ++k)
        CHECK(scale_factor(MobiusTransform::identity(), random_point(rng))
              == doctest::Approx(1.0).epsilon(1e-12));

    const double kk = 3.0;
    MobiusTransform d(std::sqrt(kk), 0.0, 0.0, 1.0 / std::sqrt(kk));
    CHECK(scale_factor(d, cplx(0.0)) == doctest::Approx(kk * kk).epsilon(1e-12));

    // lambda_g(z) = |d D_z^g at 0|^2
    for (int k = 0; k < 200; ++k) {
        const MobiusTransform g = random_sl2(rng);
        const ExtComplex z = random_point(rng);
        const LowerTriangular D = frame_transform(g, z);
        const cplx diff0 = mobius_diff(D.matrix(), cplx(0.0));
        CHECK(std::norm(diff0) == doctest::Approx(scale_factor(g, z)).epsilon(1e-8));
    }
}

TEST_CASE("mobius differentials")
{
    CHECK(std::abs(mobius_diff(MobiusTransform::identity(), cplx(0.4, 0.1)) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(mobius_hess0(MobiusTransform::identity())) < 1e-15);
    MobiusTransform g(1.0, 0.0, 1.0, 1.0);
    CHECK(std::abs(mobius_diff(g, cplx(1.0)) - cplx(0.25)) < 1e-14);
    CHECK_THROWS_AS((void)mobius_diff(g, cplx(-1.0)), std::domain_error);
}

TEST_CASE("group action and cocycles")
{
    std::mt19937_64 rng(23);
    for (int k = 0; k < 1000; ++k) {
        const MobiusTransform g = random_sl2(rng), h = random_sl2(rng);
        const ExtComplex z = random_point(rng);
        CHECK(approx_equal((g * h).apply(z), g.apply(h.apply(z)), 1e-10));
    }
    for (int k = 0; k < 300; ++k) {
        const MobiusTransform g = random_sl2(rng), h = random_sl2(rng);
        const ExtComplex z = random_point(rng);
        const ExtComplex hz = h.apply(z);
        const LowerTriangular lhs = frame_transform(g * h, z);
        const LowerTriangular rhs = frame_transform(g, hz) * frame_transform(h, z);
        const double sg = std::abs(lhs.a - rhs.a) < std::abs(lhs.a + rhs.a) ? 1.0 : -1.0;
        CHECK(std::abs(lhs.a - sg * rhs.a) < 1e-9 * std::max(1.0, std::abs(lhs.a)));
        CHECK(std::abs(lhs.n - sg * rhs.n) < 1e-9 * std::max(1.0, std::abs(lhs.n)));

        CHECK(scale_factor(g * h, z)
              == doctest::Approx(scale_factor(g, hz) * scale_factor(h, z)).epsilon(1e-9));
    }
}

TEST_CASE("inversion involution and transpose conjugation")
{
    std::mt19937_64 rng(29);
    const auto J = MobiusTransform::inversion();
    for (int k = 0; k < 200; ++k) {
        const ExtComplex z = random_point(rng);
        CHECK(approx_equal(J.apply(J.apply(z)), z, 1e-12));
    }
    // L^{-1} = J^{-1} L^T J, up to a global sign in SL(2, C)
    std::normal_distribution<double> g(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const LowerTriangular L(cplx(g(rng), g(rng)) + cplx(2.0), cplx(g(rng), g(rng)));
        const MobiusTransform Lm = L.matrix();
        const MobiusTransform Lt(Lm.a, Lm.c, Lm.b, Lm.d);
        const MobiusTransform rhs = J.inverse() * Lt * J;
        const MobiusTransform lhs = Lm.inverse();
        const double sg = std::abs(lhs.a - rhs.a) < std::abs(lhs.a + rhs.a) ? 1.0 : -1.0;
        CHECK(std::abs(lhs.a - sg * rhs.a) < 1e-12);
        CHECK(std::abs(lhs.b - sg * rhs.b) < 1e-12);
        CHECK(std::abs(lhs.c - sg * rhs.c) < 1e-12);
        CHECK(std::abs(lhs.d - sg * rhs.d) < 1e-12);
    }
}

TEST_CASE("sample_transform controls the maximal scale factor")
{
    std::mt19937_64 rng(31);

    // isometries at max_scale = 1
    for (int k = 0; k < 20; ++k) {
        const MobiusTransform g = sample_transform(1.0, rng);
        CHECK(g.is_unitary(1e-12));
        CHECK(scale_factor(g, random_point(rng)) == doctest::Approx(1.0).epsilon(1e-10));
    }

    CHECK_THROWS_AS((void)sample_transform(0.5, rng), std::invalid_argument);

    // dense grid search of lambda over the sphere approaches max_scale
    const double target = 4.0;
    for (int k = 0; k < 5; ++k) {
        const MobiusTransform g = sample_transform(target, rng);
        CHECK(std::abs(g.det() - cplx(1.0)) < 1e-12);
        double best = 0.0;
        const int n = 400;
        for (int i = 0; i < n; ++i) {
            const double th = std::numbers::pi * (i + 0.5) / n;
            for (int j = 0; j < n; ++j) {
                const double ph = 2.0 * std::numbers::pi * j / n;
                const cplx z = std::tan(0.5 * th) * cplx(std::cos(ph), std::sin(ph));
                best = std::max(best, scale_factor(g, z));
            }
        }
        CHECK(best == doctest::Approx(target).epsilon(2e-3));
        CHECK(best <= target * (1.0 + 1e-9));
    }
}
