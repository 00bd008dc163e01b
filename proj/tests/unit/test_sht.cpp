#include <doctest.h>

#include <random>

#include "mobius/sht.hpp"

using namespace mobius;

namespace {

SHCoeffs random_real_coeffs(int B, std::mt19937_64& rng, double decay = 0.0)
{
    std::normal_distribution<double> g(0.0, 1.0);
    SHCoeffs c(B);
    for (int l = 0; l < B; ++l) {
        const double s = std::exp(-decay * l * l);
        c.at(l, 0) = s * g(rng);
        for (int m = 1; m <= l; ++m) {
            const cplx v = s * cplx(g(rng), g(rng));
            c.at(l, m) = v;
            c.at(l, -m) = (m % 2 ? -1.0 : 1.0) * std::conj(v);
        }
    }
    return c;
}

double max_abs_diff(const SHCoeffs& a, const SHCoeffs& b)
{
    double e = 0.0;
    for (std::size_t k = 0; k < a.raw().size(); ++k) e = std::max(e, std::abs(a.raw()[k] - b.raw()[k]));
    return e;
}

// Independent orthonormality oracle: direct 2-D quadrature with a
// Gauss-Legendre colatitude rule on an oversampled grid.
cplx project_bruteforce(int l, int m, const SHCoeffs& coeffs, int nodes)
{
    GaussLegendre gl(nodes);
    std::vector<double> th, wt;
    gl.mapped(0.0, std::numbers::pi, th, wt);
    const int nphi = 2 * nodes;
    cplx acc(0.0);
    for (int i = 0; i < nodes; ++i) {
        std::vector<double> tri(std::size_t(coeffs.band_limit())
                                * std::size_t(coeffs.band_limit() + 1) / 2);
        cplx ring(0.0);
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / nphi;
            const cplx v = Sht::evaluate(coeffs, th[std::size_t(i)], phi);
            legendre_column(coeffs.band_limit(), std::cos(th[std::size_t(i)]), tri.data());
            const double p = legendre_signed(tri.data(), l, m);
            ring += v * p * cplx(std::cos(m * phi), -std::sin(m * phi));
        }
        acc += wt[std::size_t(i)] * std::sin(th[std::size_t(i)]) * ring * (2.0 * std::numbers::pi / nphi);
    }
    return acc;
}

} // namespace

TEST_CASE("quadrature weights are exact on the band")
{
    for (int B : {4, 8, 16}) {
        const auto w = colatitude_weights(B);
        const int N = 2 * B;
        for (int i = 0; i < N; ++i) CHECK(w[std::size_t(i)] > 0.0);
        // Legendre polynomial moments: sum w P_k(cos theta_i) = 2 delta_{k0}
        for (int k = 0; k < N; ++k) {
            double s = 0.0;
            for (int i = 0; i < N; ++i) {
                const double x = std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * N));
                double p0 = 1.0, p1 = x;
                for (int kk = 2; kk <= k; ++kk) {
                    const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                    p0 = p1;
                    p1 = p2;
                }
                s += w[std::size_t(i)] * (k == 0 ? 1.0 : p1);
            }
            CHECK(s == doctest::Approx(k == 0 ? 2.0 : 0.0).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("constant grid transforms to the DC coefficient")
{
    const int B = 8;
    Sht sht(B);
    RealGrid g(GridSpec(B), 1);
    std::fill(g.raw().begin(), g.raw().end(), 1.0);
    const SHCoeffs c = sht.forward(g);
    CHECK(c.at(0, 0).real() == doctest::Approx(std::sqrt(4.0 * std::numbers::pi)).epsilon(1e-12));
    double rest = 0.0;
    for (int l = 1; l < B; ++l)
        for (int m = -l; m <= l; ++m) rest = std::max(rest, std::abs(c.at(l, m)));
    CHECK(rest < 1e-12);

    SHCoeffs dc(B);
    dc.at(0, 0) = std::sqrt(4.0 * std::numbers::pi);
    const RealGrid back = sht.inverse_real(dc);
    for (double v : back.raw()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("round trips at several bands")
{
    std::mt19937_64 rng(3);
    for (int B : {8, 16, 32}) {
        Sht sht(B);
        const SHCoeffs c = random_real_coeffs(B, rng);
        const RealGrid g = sht.inverse_real(c);
        const SHCoeffs c2 = sht.forward(g);
        CHECK(max_abs_diff(c, c2) < 1e-10);

        const ComplexGrid g2 = sht.inverse(c2);
        for (std::size_t k = 0; k < g.raw().size(); ++k)
            CHECK(std::abs(g2.raw()[k] - g.raw()[k]) < 1e-10);
    }
}

TEST_CASE("single harmonic has a unit coefficient")
{
    const int B = 8;
    Sht sht(B);
    SHCoeffs c(B);
    c.at(3, 2) = 1.0;
    const ComplexGrid g = sht.inverse(c);
    const SHCoeffs c2 = sht.forward(g);
    CHECK(std::abs(c2.at(3, 2) - cplx(1.0)) < 1e-10);
    double rest = 0.0;
    for (int l = 0; l < B; ++l)
        for (int m = -l; m <= l; ++m)
            if (l != 3 || m != 2) rest = std::max(rest, std::abs(c2.at(l, m)));
    CHECK(rest < 1e-10);

    // against the direct 2-D quadrature oracle
    CHECK(std::abs(project_bruteforce(3, 2, c, 4 * B) - cplx(1.0)) < 1e-10);
    CHECK(std::abs(project_bruteforce(5, -4, c, 4 * B)) < 1e-10);
}

TEST_CASE("Parseval")
{
    std::mt19937_64 rng(5);
    const int B = 16;
    Sht sht(B);
    const SHCoeffs c = random_real_coeffs(B, rng);
    const RealGrid g = sht.inverse_real(c);
    RealGrid sq(GridSpec(B), 1);
    for (std::size_t k = 0; k < sq.raw().size(); ++k) sq.raw()[k] = g.raw()[k] * g.raw()[k];
    double sum = 0.0;
    for (const cplx& v : c.raw()) sum += std::norm(v);
    CHECK(sphere_integral(sht, sq) == doctest::Approx(sum).epsilon(1e-9));
}

TEST_CASE("wigner_d basics")
{
    CHECK(wigner_d(3, 2, 2, 0.0) == doctest::Approx(1.0));
    CHECK(wigner_d(3, 2, 1, 0.0) == doctest::Approx(0.0));
    for (double b : {0.3, 1.1, 2.7}) CHECK(wigner_d(1, 0, 0, b) == doctest::Approx(std::cos(b)));

    // recurrence table agrees with the Jacobi sum
    const int B = 12;
    for (double beta : {0.4, 1.3, 2.9}) {
        WignerDTable tab(B, beta);
        std::mt19937_64 rng(9);
        std::uniform_int_distribution<int> pick(0, B - 1);
        for (int k = 0; k < 200; ++k) {
            const int l = pick(rng);
            std::uniform_int_distribution<int> pm(-l, l);
            const int m = pm(rng), n = pm(rng);
            CHECK(tab(l, m, n) == doctest::Approx(wigner_d(l, m, n, beta)).epsilon(1e-10));
        }
    }
}

TEST_CASE("wigner_D rotates spherical harmonics like resampling")
{
    const int B = 8;
    Sht sht(B);
    std::mt19937_64 rng(21);
    const SHCoeffs c = random_real_coeffs(B, rng);

    for (int trial = 0; trial < 4; ++trial) {
        const MobiusTransform g = random_su2(rng);
        // resample psi(g^{-1} z) on the grid and transform
        RealGrid rg(GridSpec(B), 1);
        const MobiusTransform gi = g.inverse();
        for (int i = 0; i < 2 * B; ++i)
            for (int j = 0; j < 2 * B; ++j) {
                const ExtComplex w = gi.apply(GridSpec(B).point(i, j));
                rg.at(0, i, j) = Sht::evaluate(c, w).real();
            }
        const SHCoeffs rot = sht.forward(rg);

        // spectral rotation: (g psi)_{lm} = sum_n D^l_{-m,-n}(g) psi_{ln}
        SHCoeffs pred(B);
        for (int l = 0; l < B; ++l)
            for (int m = -l; m <= l; ++m) {
                cplx acc(0.0);
                for (int n = -l; n <= l; ++n) acc += wigner_D(l, -m, -n, g) * c.at(l, n);
                pred.at(l, m) = acc;
            }
        CHECK(max_abs_diff(rot, pred) < 1e-8);
    }

    CHECK_THROWS_AS((void)wigner_D(1, 0, 0, MobiusTransform(2.0, 0.0, 0.0, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("rotation covariance of the forward transform")
{
    const int B = 16;
    Sht sht(B);
    std::mt19937_64 rng(33);
    const SHCoeffs c = random_real_coeffs(B, rng);
    const MobiusTransform g = random_su2(rng);
    const MobiusTransform gi = g.inverse();
    RealGrid rg(GridSpec(B), 1);
    for (int i = 0; i < 2 * B; ++i)
        for (int j = 0; j < 2 * B; ++j)
            rg.at(0, i, j) = Sht::evaluate(c, gi.apply(GridSpec(B).point(i, j))).real();
    const SHCoeffs rot = sht.forward(rg);
    for (int l = 0; l < B; ++l) {
        for (int m = -l; m <= l; ++m) {
            cplx acc(0.0);
            for (int n = -l; n <= l; ++n) acc += wigner_D(l, -m, -n, g) * c.at(l, n);
            CHECK(std::abs(rot.at(l, m) - acc) < 1e-8);
        }
    }
}

TEST_CASE("spectral gradients")
{
    const int B = 16;
    Sht sht(B);

    RealGrid constant(GridSpec(B), 1);
    std::fill(constant.raw().begin(), constant.raw().end(), 2.5);
    const GradientField gc = sht.gradients(constant);
    for (double v : gc.dtheta.raw()) CHECK(std::abs(v) < 1e-10);
    for (double v : gc.dphi.raw()) CHECK(std::abs(v) < 1e-10);
    for (double v : gc.dtheta2.raw()) CHECK(std::abs(v) < 1e-10);

    // psi = cos theta: d/dtheta = -sin theta, d2/dtheta2 = -cos theta
    RealGrid ct(GridSpec(B), 1);
    for (int i = 0; i < 2 * B; ++i)
        for (int j = 0; j < 2 * B; ++j) ct.at(0, i, j) = std::cos(GridSpec(B).theta(i));
    const GradientField gt = sht.gradients(ct);
    for (int i = 0; i < 2 * B; ++i)
        for (int j = 0; j < 2 * B; ++j) {
            CHECK(gt.dtheta.at(0, i, j)
                  == doctest::Approx(-std::sin(GridSpec(B).theta(i))).epsilon(1e-8));
            CHECK(gt.dtheta2.at(0, i, j)
                  == doctest::Approx(-std::cos(GridSpec(B).theta(i))).epsilon(1e-8).scale(1.0));
        }

    // random band-limited field against central differences of the synthesis
    std::mt19937_64 rng(41);
    const int Bs = 8;
    Sht shts(Bs);
    const SHCoeffs c = random_real_coeffs(Bs, rng, 0.02);
    const RealGrid g = shts.inverse_real(c);
    const GradientField gf = shts.gradients(g);
    const double h = 1e-4;
    for (int i = 0; i < 2 * Bs; i += 3)
        for (int j = 0; j < 2 * Bs; j += 3) {
            const double th = GridSpec(Bs).theta(i), ph = GridSpec(Bs).phi(j);
            auto ev = [&](double t, double p) { return Sht::evaluate(c, t, p).real(); };
            const double dt = (ev(th + h, ph) - ev(th - h, ph)) / (2.0 * h);
            const double dp = (ev(th, ph + h) - ev(th, ph - h)) / (2.0 * h);
            const double dtt = (ev(th + h, ph) - 2.0 * ev(th, ph) + ev(th - h, ph)) / (h * h);
            const double dtp = (ev(th + h, ph + h) - ev(th + h, ph - h) - ev(th - h, ph + h)
                                + ev(th - h, ph - h)) / (4.0 * h * h);
            const double dpp = (ev(th, ph + h) - 2.0 * ev(th, ph) + ev(th, ph - h)) / (h * h);
            CHECK(std::abs(gf.dtheta.at(0, i, j) - dt) < 1e-4);
            CHECK(std::abs(gf.dphi.at(0, i, j) - dp) < 1e-4);
            CHECK(std::abs(gf.dtheta2.at(0, i, j) - dtt) < 1e-3);
            CHECK(std::abs(gf.dthetaphi.at(0, i, j) - dtp) < 1e-3);
            CHECK(std::abs(gf.dphi2.at(0, i, j) - dpp) < 1e-3);
        }
}
