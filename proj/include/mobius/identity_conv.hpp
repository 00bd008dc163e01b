#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mobius/parallel.hpp"
#include "mobius/sht.hpp"
#include "mobius/wigner.hpp"

namespace mobius {

// Identity convolution (psi *e f)(y) = int psi(z) f(log_z y) dz, computed
// spectrally.  Expanding f o log_z in spherical harmonics gives
//   (psi *e f)_{l'm''} = sum_{l >= |m''|} psi_{lm''} sum_{m'} f_{l'm'} Delta_{ll'}^{m'm''},
// where Delta depends only on the band limit:
//   Delta_{ll'}^{m'm''} = 2 pi int_0^pi Ptilde_l^{m''}(cos t) d^{l'}_{m''m'}(t) sin t dt.
// The longitude integral collapses to 2 pi delta_{m m''} because log_z has
// Euler form (0, theta, phi).

/// Real-valued Delta coefficients for one band limit, stored dense over the
/// valid index ranges (l' < B, |m'| <= l', l < B, |m''| <= min(l, l')).
class DeltaTable {
public:
    DeltaTable() = default;

    explicit DeltaTable(int B) : band_(B)
    {
        build_offsets();
        val_.assign(total_, 0.0);

        // Gauss-Legendre in theta; the integrands are trigonometric
        // polynomials of degree < 2B, so 4B nodes are exact to roundoff.
        GaussLegendre rule(4 * B);
        std::vector<double> th, wt;
        rule.mapped(0.0, std::numbers::pi, th, wt);

        const std::size_t tri = std::size_t(B) * std::size_t(B + 1) / 2;
        std::vector<double> leg(tri);
        for (std::size_t g = 0; g < th.size(); ++g) {
            legendre_column(B, std::cos(th[g]), leg.data());
            const WignerDTable dt(B, th[g]);
            const double wg = 2.0 * std::numbers::pi * wt[g] * std::sin(th[g]);
            parallel_for(std::size_t(B), [&](std::size_t lp) {
                const int l1 = int(lp);
                double* dst = val_.data() + lp_offset_[lp];
                for (int mp = -l1; mp <= l1; ++mp)
                    for (int l = 0; l < B; ++l) {
                        const int mu = std::min(l, l1);
                        for (int ms = -mu; ms <= mu; ++ms)
                            *dst++ += wg * legendre_signed(leg.data(), l, ms) * dt(l1, ms, mp);
                    }
            });
        }
    }

    int band_limit() const { return band_; }
    std::size_t size() const { return total_; }
    const std::vector<double>& raw() const { return val_; }
    std::vector<double>& raw() { return val_; }

    /// Delta_{ll'}^{m'm''}; zero outside the valid ranges.
    double at(int l, int l1, int mp, int ms) const
    {
        if (std::abs(ms) > std::min(l, l1) || std::abs(mp) > l1) return 0.0;
        return val_[index(l, l1, mp, ms)];
    }

    std::size_t index(int l, int l1, int mp, int ms) const
    {
        const int mu = std::min(l, l1);
        return lp_offset_[std::size_t(l1)]
             + std::size_t(mp + l1) * block_[std::size_t(l1)]
             + l_offset_[std::size_t(l1) * std::size_t(band_) + std::size_t(l)]
             + std::size_t(ms + mu);
    }

    /// Rebuild from raw values (file loading); caller guarantees sizes.
    static DeltaTable from_raw(int B, std::vector<double> values)
    {
        DeltaTable t;
        t.band_ = B;
        t.build_offsets();
        if (values.size() != t.total_)
            throw std::invalid_argument("DeltaTable: raw size mismatch");
        t.val_ = std::move(values);
        return t;
    }

private:
    void build_offsets()
    {
        const int B = band_;
        lp_offset_.resize(std::size_t(B) + 1);
        block_.resize(std::size_t(B));
        l_offset_.resize(std::size_t(B) * std::size_t(B));
        std::size_t total = 0;
        for (int l1 = 0; l1 < B; ++l1) {
            lp_offset_[std::size_t(l1)] = total;
            std::size_t blk = 0;
            for (int l = 0; l < B; ++l) {
                l_offset_[std::size_t(l1) * std::size_t(B) + std::size_t(l)] = blk;
                blk += std::size_t(2 * std::min(l, l1) + 1);
            }
            block_[std::size_t(l1)] = blk;
            total += std::size_t(2 * l1 + 1) * blk;
        }
        lp_offset_[std::size_t(B)] = total;
        total_ = total;
    }

    int band_ = 0;
    std::size_t total_ = 0;
    std::vector<std::size_t> lp_offset_, l_offset_;
    std::vector<std::size_t> block_;
    std::vector<double> val_;
};

/// Cached inner bracket of the spectral convolution:
/// FR_{l'm''l} = sum_{m'} f_{l'm'} Delta_{ll'}^{m'm''}.  Repeated convolutions
/// against a fixed right-hand filter then cost O(B^3).
class FilterResponse {
public:
    FilterResponse() = default;

    FilterResponse(const SHCoeffs& f, const DeltaTable& delta)
        : band_(delta.band_limit())
    {
        if (f.band_limit() != band_)
            throw std::invalid_argument("FilterResponse: band limit mismatch");
        const int B = band_;
        build_offsets();
        val_.assign(total_, cplx(0.0));
        for (int l1 = 0; l1 < B; ++l1)
            for (int ms = -l1; ms <= l1; ++ms)
                for (int l = std::abs(ms); l < B; ++l) {
                    cplx acc(0.0);
                    for (int mp = -l1; mp <= l1; ++mp)
                        acc += f.at(l1, mp) * delta.at(l, l1, mp, ms);
                    val_[index(l1, ms, l)] = acc;
                }
    }

    int band_limit() const { return band_; }

    cplx at(int l1, int ms, int l) const { return val_[index(l1, ms, l)]; }

    /// out_{l'm''} = sum_l psi_{lm''} FR_{l'm''l}
    SHCoeffs apply(const SHCoeffs& psi) const
    {
        if (psi.band_limit() != band_)
            throw std::invalid_argument("FilterResponse: band limit mismatch");
        const int B = band_;
        SHCoeffs out(B);
        for (int l1 = 0; l1 < B; ++l1)
            for (int ms = -l1; ms <= l1; ++ms) {
                cplx acc(0.0);
                const cplx* fr = val_.data() + index(l1, ms, std::abs(ms));
                for (int l = std::abs(ms); l < B; ++l) acc += psi.at(l, ms) * *fr++;
                out.at(l1, ms) = acc;
            }
        return out;
    }

private:
    std::size_t index(int l1, int ms, int l) const
    {
        return lp_offset_[std::size_t(l1)] + ms_offset_[std::size_t(l1)][std::size_t(ms + l1)]
             + std::size_t(l - std::abs(ms));
    }

    void build_offsets()
    {
        const int B = band_;
        lp_offset_.resize(std::size_t(B));
        ms_offset_.resize(std::size_t(B));
        std::size_t total = 0;
        for (int l1 = 0; l1 < B; ++l1) {
            lp_offset_[std::size_t(l1)] = total;
            ms_offset_[std::size_t(l1)].resize(std::size_t(2 * l1 + 1));
            std::size_t blk = 0;
            for (int ms = -l1; ms <= l1; ++ms) {
                ms_offset_[std::size_t(l1)][std::size_t(ms + l1)] = blk;
                blk += std::size_t(B - std::abs(ms));
            }
            total += blk;
        }
        total_ = total;
    }

    int band_ = 0;
    std::size_t total_ = 0;
    std::vector<std::size_t> lp_offset_;
    std::vector<std::vector<std::size_t>> ms_offset_;
    std::vector<cplx> val_;
};

/// Precompute the bracketed filter term of the spectral identity convolution.
inline FilterResponse precompute_filter_response(const SHCoeffs& f, const DeltaTable& delta)
{
    return FilterResponse(f, delta);
}

/// Spectral identity convolution of psi with f.
inline SHCoeffs identity_convolve(const SHCoeffs& psi, const SHCoeffs& f, const DeltaTable& delta)
{
    return FilterResponse(f, delta).apply(psi);
}

} // namespace mobius
