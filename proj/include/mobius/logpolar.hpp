#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "mobius/sht.hpp"

namespace mobius {

// Spherical log-polar (Fourier-Mellin) basis functions
//   B_{ms}^t(z) = |z|^{i s - t} e^{i m arg z},
// localized about the origin for t > 0, about infinity for t < 0, integrable
// against the round measure for |t| < 1.

/// Index of one log-polar basis function.
struct LogPolarIndex {
    int m = 0;       // angular frequency
    double s = 0.0;  // radial (Mellin) frequency
    double t = 0.0;  // localization exponent, |t| < 1

    LogPolarIndex() = default;
    LogPolarIndex(int m_, double s_, double t_) : m(m_), s(s_), t(t_)
    {
        if (std::abs(t) >= 1.0)
            throw std::invalid_argument("LogPolarIndex: |t| must be < 1");
    }
};

/// B_{ms}^t(z); z must avoid {0, inf} (the offset grid guarantees this).
inline cplx eval_basis(const LogPolarIndex& idx, const ExtComplex& z)
{
    if (z.is_inf()) throw std::domain_error("eval_basis: singular at infinity");
    const cplx v = z.value();
    if (v == cplx(0.0)) throw std::domain_error("eval_basis: singular at zero");
    const double lr = std::log(std::abs(v));
    const double ph = idx.s * lr + idx.m * std::arg(v);
    return std::exp(-idx.t * lr) * cplx(std::cos(ph), std::sin(ph));
}

/// Real filter in the span of B_{ms}^t with integer radial frequencies,
/// |m| <= M, |s| <= N, and conjugate-symmetric coefficients
/// b_{-m,-s} = conj(b_{ms}).
class LogPolarFilter {
public:
    LogPolarFilter() = default;
    LogPolarFilter(int M, int N, double t)
        : M_(M), N_(N), t_(t),
          b_(std::size_t(2 * M + 1) * std::size_t(2 * N + 1), cplx(0.0))
    {
        if (t <= 0.0 || t >= 1.0)
            throw std::invalid_argument("LogPolarFilter: t must lie in (0, 1)");
    }

    int angular_band() const { return M_; }
    int radial_band() const { return N_; }
    double localization() const { return t_; }

    cplx& at(int m, int s)
    {
        return b_[std::size_t(m + M_) * std::size_t(2 * N_ + 1) + std::size_t(s + N_)];
    }
    cplx at(int m, int s) const
    {
        return b_[std::size_t(m + M_) * std::size_t(2 * N_ + 1) + std::size_t(s + N_)];
    }
    std::vector<cplx>& raw() { return b_; }
    const std::vector<cplx>& raw() const { return b_; }

    /// Project onto real filters: b_{-m,-s} <- conj(b_{ms}).
    void symmetrize()
    {
        for (int m = 0; m <= M_; ++m)
            for (int s = -N_; s <= N_; ++s) {
                if (m == 0 && s < 0) continue;
                const cplx avg = 0.5 * (at(m, s) + std::conj(at(-m, -s)));
                at(m, s) = (m == 0 && s == 0) ? cplx(avg.real(), 0.0) : avg;
                at(-m, -s) = std::conj(at(m, s));
            }
    }

    /// Pointwise filter value; real up to roundoff for symmetric coefficients.
    cplx eval(const ExtComplex& z) const
    {
        cplx acc(0.0);
        for (int m = -M_; m <= M_; ++m)
            for (int s = -N_; s <= N_; ++s) {
                const cplx c = at(m, s);
                if (c == cplx(0.0)) continue;
                acc += c * eval_basis(LogPolarIndex(m, double(s), t_), z);
            }
        return acc;
    }

private:
    int M_ = 0, N_ = 0;
    double t_ = 0.15;
    std::vector<cplx> b_;
};

/// Real filter value (symmetric coefficients assumed).
inline double eval_filter(const LogPolarFilter& f, const ExtComplex& z)
{
    return f.eval(z).real();
}

/// Grid samples of the filter.
inline RealGrid filter_samples(const LogPolarFilter& f, const GridSpec& spec)
{
    RealGrid g(spec, 1);
    for (int i = 0; i < spec.rings(); ++i)
        for (int j = 0; j < spec.columns(); ++j) g.at(0, i, j) = f.eval(spec.point(i, j)).real();
    return g;
}

/// Band-limited approximation of the filter: sample on the pole-free grid and
/// apply the forward transform.  Truncation error is the documented
/// approximation of the whole spectral pipeline.
inline SHCoeffs filter_to_sh(const LogPolarFilter& f, const Sht& sht)
{
    return sht.forward(filter_samples(f, sht.spec()));
}

/// Grid samples of one basis function (complex).
inline ComplexGrid basis_samples(const LogPolarIndex& idx, const GridSpec& spec)
{
    ComplexGrid g(spec, 1);
    for (int i = 0; i < spec.rings(); ++i)
        for (int j = 0; j < spec.columns(); ++j) g.at(0, i, j) = eval_basis(idx, spec.point(i, j));
    return g;
}

/// SH projection of one basis function.
inline SHCoeffs basis_to_sh(const LogPolarIndex& idx, const Sht& sht)
{
    return sht.forward(basis_samples(idx, sht.spec()));
}

} // namespace mobius
