#pragma once

#include <cmath>
#include <vector>

#include "mobius/geometry.hpp"
#include "mobius/sht.hpp"

namespace mobius {

// Frame operator T and density operator rho: at each point x the differential
// and Hessian of psi o exp_x at the origin,
//   d = psi_z(x) g'(0),   h = psi_zz(x) g'(0)^2 + psi_z(x) g''(0),
// with g = exp_x, assemble the lower-triangular frame
//   T(x) = [[d^{-1/2}, 0], [(h/2) d^{-3/2}, d^{1/2}]]
// and the density rho(x) = |d|^2.  Where |d| ~ 0 the frame is degenerate and
// rho vanishes, so the point drops out of the convolution.

/// Wirtinger derivatives of a real signal in the global stereographic chart.
struct ChartDerivatives {
    std::vector<cplx> first;  // psi_z per grid point
    std::vector<cplx> second; // psi_zz per grid point
};

namespace detail {

inline void chart_from_jet(double theta, double /*phi*/, double cphi_re, double cphi_im,
                           const double jet[5], cplx& out1, cplx& out2)
{
    // jet = {f_t, f_p, f_tt, f_tp, f_pp}
    const double r = std::tan(0.5 * theta);
    const double A = 2.0 / (1.0 + r * r);
    const cplx em(cphi_re, -cphi_im);   // e^{-i phi}
    const cplx em2 = em * em;           // e^{-2i phi}
    const cplx H(A * jet[0], -jet[1] / r);
    out1 = 0.5 * em * H;
    const cplx bracket(A * A * jet[2] - jet[4] / (r * r) - (r * A * A + A / r) * jet[0],
                       -2.0 * A * jet[3] / r + 2.0 * jet[1] / (r * r));
    out2 = 0.25 * em2 * bracket;
}

} // namespace detail

/// Chart derivatives of one channel from its spectral angular derivatives.
inline ChartDerivatives chart_derivatives(const Sht& sht, const RealGrid& psi, int channel = 0)
{
    const GradientField g = sht.gradients(psi, channel);
    const GridSpec& spec = sht.spec();
    ChartDerivatives out;
    out.first.resize(spec.points());
    out.second.resize(spec.points());
    for (int i = 0; i < spec.rings(); ++i) {
        const double theta = spec.theta(i);
        for (int j = 0; j < spec.columns(); ++j) {
            const double phi = spec.phi(j);
            const double jet[5] = {g.dtheta.at(0, i, j), g.dphi.at(0, i, j),
                                   g.dtheta2.at(0, i, j), g.dthetaphi.at(0, i, j),
                                   g.dphi2.at(0, i, j)};
            detail::chart_from_jet(theta, phi, std::cos(phi), std::sin(phi), jet,
                                   out.first[std::size_t(i) * std::size_t(spec.columns())
                                             + std::size_t(j)],
                                   out.second[std::size_t(i) * std::size_t(spec.columns())
                                              + std::size_t(j)]);
        }
    }
    return out;
}

/// Chart derivatives at one arbitrary point, synthesized from coefficients.
inline void chart_derivatives_at(const SHCoeffs& coeffs, double theta, double phi, cplx& psi_z,
                                 cplx& psi_zz)
{
    const PointJet j = Sht::evaluate_jet(coeffs, theta, phi);
    const double jet[5] = {j.ft, j.fp, j.ftt, j.ftp, j.fpp};
    detail::chart_from_jet(theta, phi, std::cos(phi), std::sin(phi), jet, psi_z, psi_zz);
}

/// Per-point lower-triangular frames with a degeneracy mask.
struct FrameField {
    std::vector<LowerTriangular> frame;
    std::vector<bool> degenerate;
};

/// Per-point nonnegative density.
struct DensityField {
    std::vector<double> value;
};

enum class FrameMode { L, Cnz, U1 };

inline FrameMode frame_mode_from_string(const std::string& s)
{
    if (s == "L") return FrameMode::L;
    if (s == "Cnz") return FrameMode::Cnz;
    if (s == "U1") return FrameMode::U1;
    throw std::invalid_argument("unknown frame mode: " + s);
}

inline const char* to_string(FrameMode m)
{
    switch (m) {
    case FrameMode::L: return "L";
    case FrameMode::Cnz: return "Cnz";
    default: return "U1";
    }
}

namespace detail {

inline void frame_density_from_d(cplx d, cplx h, double dmax, double rel_threshold,
                                 LowerTriangular& frame, bool& degenerate, double& rho)
{
    if (std::abs(d) <= rel_threshold * dmax || d == cplx(0.0)) {
        frame = LowerTriangular();
        degenerate = true;
        rho = 0.0;
        return;
    }
    const cplx root = std::sqrt(d); // principal branch; the sign acts trivially
    frame = LowerTriangular(1.0 / root, 0.5 * h / (root * root * root));
    degenerate = false;
    rho = std::norm(d);
}

/// d and h at grid point (theta, phi) from chart derivatives.
inline void differential_pair(double theta, double phi, cplx psi_z, cplx psi_zz, cplx& d, cplx& h)
{
    const double r = std::tan(0.5 * theta);
    const cplx eip(std::cos(phi), std::sin(phi));
    const cplx g1 = (1.0 + r * r) * eip;          // exp_x'(0)
    const cplx g2 = 2.0 * r * (1.0 + r * r) * eip; // exp_x''(0)
    d = psi_z * g1;
    h = psi_zz * g1 * g1 + psi_z * g2;
}

} // namespace detail

/// Frame and density fields of one real channel.  delta_rel is the relative
/// degeneracy threshold on |d|.
inline std::pair<FrameField, DensityField> frame_density_operator(const Sht& sht,
                                                                  const RealGrid& psi,
                                                                  int channel = 0,
                                                                  double delta_rel = 1e-8)
{
    const ChartDerivatives cd = chart_derivatives(sht, psi, channel);
    const GridSpec& spec = sht.spec();
    const std::size_t n = spec.points();
    std::vector<cplx> ds(n), hs(n);
    double dmax = 0.0;
    for (int i = 0; i < spec.rings(); ++i)
        for (int j = 0; j < spec.columns(); ++j) {
            const std::size_t k = std::size_t(i) * std::size_t(spec.columns()) + std::size_t(j);
            detail::differential_pair(spec.theta(i), spec.phi(j), cd.first[k], cd.second[k],
                                      ds[k], hs[k]);
            dmax = std::max(dmax, std::abs(ds[k]));
        }
    // numerically-zero derivative fields (constant signals) degenerate as a
    // whole: the relative threshold alone would keep roundoff-level frames
    double smax = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        smax = std::max(smax, std::abs(psi.channel(channel)[k]));
    const bool all_zero = dmax <= 1e-10 * std::max(1.0, smax);
    FrameField ff;
    DensityField rho;
    ff.frame.resize(n);
    ff.degenerate.resize(n);
    rho.value.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        bool deg;
        detail::frame_density_from_d(ds[k], hs[k], all_zero ? 0.0 : dmax, delta_rel,
                                     ff.frame[k], deg, rho.value[k]);
        if (all_zero) {
            ff.frame[k] = LowerTriangular();
            deg = true;
            rho.value[k] = 0.0;
        }
        ff.degenerate[k] = deg;
    }
    return {std::move(ff), std::move(rho)};
}

inline FrameField frame_operator(const Sht& sht, const RealGrid& psi, int channel = 0)
{
    return frame_density_operator(sht, psi, channel).first;
}

inline DensityField density_operator(const Sht& sht, const RealGrid& psi, int channel = 0)
{
    return frame_density_operator(sht, psi, channel).second;
}

/// Frame and density at one arbitrary point (exact synthesis from
/// coefficients; used by the equivariance property suites).  dmax of the
/// corresponding grid field should be supplied for the degeneracy test.
inline void frame_density_at(const SHCoeffs& coeffs, double theta, double phi, double dmax,
                             LowerTriangular& frame, bool& degenerate, double& rho,
                             double delta_rel = 1e-8)
{
    cplx psi_z, psi_zz, d, h;
    chart_derivatives_at(coeffs, theta, phi, psi_z, psi_zz);
    detail::differential_pair(theta, phi, psi_z, psi_zz, d, h);
    detail::frame_density_from_d(d, h, dmax, delta_rel, frame, degenerate, rho);
}

/// Baseline restrictions of the transformation field: L keeps the full
/// lower-triangular frame, Cnz drops the shear, U1 additionally drops the
/// dilation (rotations only).
inline FrameField restrict_frames(const FrameField& in, FrameMode mode)
{
    if (mode == FrameMode::L) return in;
    FrameField out = in;
    for (std::size_t k = 0; k < out.frame.size(); ++k) {
        if (out.degenerate[k]) continue;
        cplx a = out.frame[k].a;
        if (mode == FrameMode::U1) a /= std::abs(a);
        out.frame[k] = LowerTriangular(a, 0.0);
    }
    return out;
}

/// Density as a single-channel grid (debug export via the grid format).
inline RealGrid density_to_grid(const DensityField& rho, const GridSpec& spec)
{
    RealGrid g(spec, 1);
    std::copy(rho.value.begin(), rho.value.end(), g.raw().begin());
    return g;
}

} // namespace mobius
