#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mobius/fft.hpp"
#include "mobius/grid.hpp"
#include "mobius/legendre.hpp"

namespace mobius {

/// Triangular array of spherical harmonic coefficients, 0 <= l < B, |m| <= l.
class SHCoeffs {
public:
    SHCoeffs() = default;
    explicit SHCoeffs(int B) : band_(B), data_(std::size_t(B) * std::size_t(B), cplx(0.0)) {}

    int band_limit() const { return band_; }
    cplx& at(int l, int m) { return data_[std::size_t(l) * std::size_t(l) + std::size_t(l + m)]; }
    cplx at(int l, int m) const
    {
        return data_[std::size_t(l) * std::size_t(l) + std::size_t(l + m)];
    }
    std::vector<cplx>& raw() { return data_; }
    const std::vector<cplx>& raw() const { return data_; }

    /// Enforce psi_{l,-m} = (-1)^m conj(psi_{lm}) (projection onto real signals).
    void symmetrize_real()
    {
        for (int l = 0; l < band_; ++l) {
            at(l, 0) = cplx(at(l, 0).real(), 0.0);
            for (int m = 1; m <= l; ++m) {
                const cplx p = at(l, m), q = at(l, -m);
                const double sg = (m % 2) ? -1.0 : 1.0;
                const cplx avg = 0.5 * (p + sg * std::conj(q));
                at(l, m) = avg;
                at(l, -m) = sg * std::conj(avg);
            }
        }
    }

private:
    int band_ = 0;
    std::vector<cplx> data_;
};

/// First and second angular derivatives of a scalar grid signal.
struct GradientField {
    RealGrid dtheta, dphi, dtheta2, dthetaphi, dphi2;
};

/// Value and derivative jet of a synthesized signal at one point.
struct PointJet {
    double f, ft, fp, ftt, ftp, fpp;
};

/// Forward/inverse spherical harmonic transform on the offset equiangular
/// grid.  Longitude handled by FFT, colatitude by a dense normalized-Legendre
/// contraction with quadrature weights exact on the band.
class Sht {
public:
    explicit Sht(int B) : B_(B), spec_(B), weights_(colatitude_weights(B))
    {
        const int N = 2 * B;
        const std::size_t tri = std::size_t(B) * std::size_t(B + 1) / 2;
        plm_.resize(std::size_t(N) * tri);
        dplm_.resize(std::size_t(N) * tri);
        ddplm_.resize(std::size_t(N) * tri);
        std::vector<double> col(tri);
        for (int i = 0; i < N; ++i) {
            legendre_column(B, std::cos(spec_.theta(i)), col.data());
            double* p = plm_.data() + std::size_t(i) * tri;
            double* dp = dplm_.data() + std::size_t(i) * tri;
            double* ddp = ddplm_.data() + std::size_t(i) * tri;
            std::copy(col.begin(), col.end(), p);
            for (int l = 0; l < B; ++l)
                for (int m = 0; m <= l; ++m) {
                    dp[tri_index(l, m)] = legendre_dtheta_signed(col.data(), l, m);
                    ddp[tri_index(l, m)] = legendre_ddtheta_signed(col.data(), l, m);
                }
        }
    }

    int band_limit() const { return B_; }
    const GridSpec& spec() const { return spec_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Analysis of one channel.  Exact on B-band-limited input.
    template <class T>
    SHCoeffs forward(const SphericalGrid<T>& grid, int channel = 0) const
    {
        check_grid(grid.band_limit());
        const int N = 2 * B_;
        std::vector<cplx> rows(std::size_t(N) * std::size_t(N));
        const T* src = grid.channel(channel);
        for (std::size_t k = 0; k < rows.size(); ++k) rows[k] = cplx(src[k]);
        for (int i = 0; i < N; ++i) fft_forward(rows.data() + std::size_t(i) * N, std::size_t(N));

        SHCoeffs out(B_);
        const double fphi = std::numbers::pi / double(B_);
        const std::size_t tri = std::size_t(B_) * std::size_t(B_ + 1) / 2;
        for (int m = -(B_ - 1); m <= B_ - 1; ++m) {
            const int col = (m + N) % N;
            const double msign = (m < 0 && ((-m) % 2)) ? -1.0 : 1.0;
            const int ma = std::abs(m);
            for (int l = ma; l < B_; ++l) {
                cplx acc(0.0);
                for (int i = 0; i < N; ++i) {
                    const double p = plm_[std::size_t(i) * tri + tri_index(l, ma)];
                    acc += weights_[std::size_t(i)] * p * rows[std::size_t(i) * N + std::size_t(col)];
                }
                out.at(l, m) = fphi * msign * acc;
            }
        }
        return out;
    }

    /// Synthesis into one channel of a complex grid.
    void inverse(const SHCoeffs& coeffs, ComplexGrid& grid, int channel = 0) const
    {
        synth(coeffs, grid, channel, Mode::value);
    }

    ComplexGrid inverse(const SHCoeffs& coeffs) const
    {
        if (coeffs.band_limit() > B_)
            throw std::invalid_argument("Sht::inverse: coefficient band exceeds grid band");
        ComplexGrid g(spec_, 1);
        inverse(coeffs, g, 0);
        return g;
    }

    /// Synthesis of a real signal (conjugate-symmetric coefficients assumed).
    RealGrid inverse_real(const SHCoeffs& coeffs) const
    {
        ComplexGrid g = inverse(coeffs);
        RealGrid out(spec_, 1);
        for (std::size_t k = 0; k < out.raw().size(); ++k) out.raw()[k] = g.raw()[k].real();
        return out;
    }

    /// Spectral angular derivatives of a real band-limited channel.
    GradientField gradients(const RealGrid& grid, int channel = 0) const
    {
        const SHCoeffs c = forward(grid, channel);
        GradientField out{RealGrid(spec_, 1), RealGrid(spec_, 1), RealGrid(spec_, 1),
                          RealGrid(spec_, 1), RealGrid(spec_, 1)};
        ComplexGrid tmp(spec_, 1);
        auto take_real = [&](RealGrid& dst) {
            for (std::size_t k = 0; k < dst.raw().size(); ++k) dst.raw()[k] = tmp.raw()[k].real();
        };
        synth(c, tmp, 0, Mode::dtheta);
        take_real(out.dtheta);
        synth(c, tmp, 0, Mode::dtheta2);
        take_real(out.dtheta2);

        SHCoeffs cphi(B_);
        for (int l = 0; l < B_; ++l)
            for (int m = -l; m <= l; ++m) cphi.at(l, m) = cplx(0.0, double(m)) * c.at(l, m);
        synth(cphi, tmp, 0, Mode::value);
        take_real(out.dphi);
        synth(cphi, tmp, 0, Mode::dtheta);
        take_real(out.dthetaphi);

        SHCoeffs cphi2(B_);
        for (int l = 0; l < B_; ++l)
            for (int m = -l; m <= l; ++m) cphi2.at(l, m) = -double(m) * double(m) * c.at(l, m);
        synth(cphi2, tmp, 0, Mode::value);
        take_real(out.dphi2);
        return out;
    }

    /// Pointwise synthesis at an arbitrary direction.
    static cplx evaluate(const SHCoeffs& coeffs, double theta, double phi)
    {
        const int B = coeffs.band_limit();
        const std::size_t tri = std::size_t(B) * std::size_t(B + 1) / 2;
        std::vector<double> col(tri);
        legendre_column(B, std::cos(theta), col.data());
        cplx sum(0.0);
        for (int m = -(B - 1); m <= B - 1; ++m) {
            cplx acc(0.0);
            for (int l = std::abs(m); l < B; ++l)
                acc += coeffs.at(l, m) * legendre_signed(col.data(), l, m);
            acc *= cplx(std::cos(m * phi), std::sin(m * phi));
            sum += acc;
        }
        return sum;
    }

    static cplx evaluate(const SHCoeffs& coeffs, const ExtComplex& z)
    {
        const auto [theta, phi] = chart_angles(z);
        return evaluate(coeffs, theta, phi);
    }

    /// Pointwise synthesis with first and second angular derivatives
    /// (real-signal coefficients).
    static PointJet evaluate_jet(const SHCoeffs& coeffs, double theta, double phi)
    {
        const int B = coeffs.band_limit();
        const std::size_t tri = std::size_t(B) * std::size_t(B + 1) / 2;
        std::vector<double> col(tri);
        legendre_column(B, std::cos(theta), col.data());
        cplx f(0.0), ft(0.0), fp(0.0), ftt(0.0), ftp(0.0), fpp(0.0);
        for (int m = -(B - 1); m <= B - 1; ++m) {
            cplx a0(0.0), a1(0.0), a2(0.0);
            for (int l = std::abs(m); l < B; ++l) {
                const cplx c = coeffs.at(l, m);
                a0 += c * legendre_signed(col.data(), l, m);
                a1 += c * legendre_dtheta_signed(col.data(), l, m);
                a2 += c * legendre_ddtheta_signed(col.data(), l, m);
            }
            const cplx e(std::cos(m * phi), std::sin(m * phi));
            const cplx im(0.0, double(m));
            f += a0 * e;
            ft += a1 * e;
            fp += a0 * im * e;
            ftt += a2 * e;
            ftp += a1 * im * e;
            fpp += a0 * im * im * e;
        }
        return {f.real(), ft.real(), fp.real(), ftt.real(), ftp.real(), fpp.real()};
    }

    /// Chart angles of a sphere point: z = tan(theta/2) e^{i phi}.
    static std::pair<double, double> chart_angles(const ExtComplex& z)
    {
        if (z.is_inf()) return {std::numbers::pi, 0.0};
        const cplx v = z.value();
        if (std::abs(v) <= 1.0) return {2.0 * std::atan(std::abs(v)), std::arg(v)};
        const cplx w = 1.0 / v;
        return {std::numbers::pi - 2.0 * std::atan(std::abs(w)), -std::arg(w)};
    }

private:
    enum class Mode { value, dtheta, dtheta2 };

    void check_grid(int B) const
    {
        if (B != B_) throw std::invalid_argument("Sht: grid band limit mismatch");
    }

    void synth(const SHCoeffs& coeffs, ComplexGrid& grid, int channel, Mode mode) const
    {
        if (coeffs.band_limit() > B_)
            throw std::invalid_argument("Sht: coefficient band exceeds grid band");
        const int Bc = coeffs.band_limit();
        const int N = 2 * B_;
        const std::size_t tri = std::size_t(B_) * std::size_t(B_ + 1) / 2;
        const double* table = mode == Mode::value ? plm_.data()
                            : mode == Mode::dtheta ? dplm_.data()
                                                   : ddplm_.data();
        std::vector<cplx> row(static_cast<std::size_t>(N));
        cplx* dst = grid.channel(channel);
        for (int i = 0; i < N; ++i) {
            std::fill(row.begin(), row.end(), cplx(0.0));
            const double* tcol = table + std::size_t(i) * tri;
            for (int m = -(Bc - 1); m <= Bc - 1; ++m) {
                const double msign = (m < 0 && ((-m) % 2)) ? -1.0 : 1.0;
                const int ma = std::abs(m);
                cplx acc(0.0);
                for (int l = ma; l < Bc; ++l) acc += coeffs.at(l, m) * tcol[tri_index(l, ma)];
                row[std::size_t((m + N) % N)] = msign * acc;
            }
            fft_inverse(row.data(), std::size_t(N));
            std::copy(row.begin(), row.end(), dst + std::size_t(i) * N);
        }
    }

    int B_;
    GridSpec spec_;
    std::vector<double> weights_;
    std::vector<double> plm_, dplm_, ddplm_;
};

/// Quadrature of a scalar grid signal against the round area element.
template <class T>
inline T sphere_integral(const Sht& sht, const SphericalGrid<T>& grid, int channel = 0)
{
    const int N = 2 * sht.band_limit();
    const double fphi = std::numbers::pi / double(sht.band_limit());
    T sum{};
    const T* src = grid.channel(channel);
    for (int i = 0; i < N; ++i) {
        T ring{};
        for (int j = 0; j < N; ++j) ring += src[std::size_t(i) * N + std::size_t(j)];
        sum += sht.weights()[std::size_t(i)] * ring;
    }
    return fphi * sum;
}

} // namespace mobius
