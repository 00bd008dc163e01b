#pragma once

#include <memory>
#include <random>

#include "mobius/identity_conv.hpp"
#include "mobius/operators.hpp"
#include "mobius/parallel.hpp"
#include "mobius/tables.hpp"
#include "mobius/xform.hpp"

namespace mobius {

// Mobius convolution as a sum of identity convolutions: per input channel the
// frame and density fields, per (u, q, j) slot the zeta-weighted spatial
// field reduced over input channels, an identity convolution against the
// SH-projected basis function of the slot, and a sum over slots.

/// Per-band-limit bundle of everything a forward pass needs: Delta table,
/// quadrature/Mellin tables, and the basis-side filter responses (the
/// precomputable bracket of the identity convolution, one per slot).
class ConvContext {
public:
    ConvContext(int B, std::shared_ptr<const DeltaTable> delta,
                std::shared_ptr<const MellinCoeffTable> mellin)
        : B_(B), delta_(std::move(delta)), mellin_(std::move(mellin)), sht_(B)
    {
        if (delta_->band_limit() != B)
            throw std::invalid_argument("ConvContext: Delta band limit mismatch");
        const auto& slots = mellin_->slots();
        basis_sh_.reserve(slots.size());
        basis_fr_.reserve(slots.size());
        for (const BasisSlot& sl : slots) {
            ComplexGrid samples(sht_.spec(), 1);
            for (int i = 0; i < 2 * B; ++i)
                for (int j = 0; j < 2 * B; ++j) {
                    const cplx z = sht_.spec().point(i, j);
                    const double lr = std::log(std::abs(z));
                    const double ph = sl.omega * lr + sl.u * std::arg(z);
                    samples.at(0, i, j) = std::exp(-sl.sigma * lr)
                                        * cplx(std::cos(ph), std::sin(ph));
                }
            basis_sh_.push_back(sht_.forward(samples));
        }
        basis_fr_.resize(slots.size());
        parallel_for(slots.size(), [&](std::size_t k) {
            basis_fr_[k] = FilterResponse(basis_sh_[k], *delta_);
        });
    }

    int band_limit() const { return B_; }
    const Sht& sht() const { return sht_; }
    const DeltaTable& delta() const { return *delta_; }
    const MellinCoeffTable& mellin() const { return *mellin_; }
    const std::vector<SHCoeffs>& basis_sh() const { return basis_sh_; }
    const std::vector<FilterResponse>& basis_fr() const { return basis_fr_; }

private:
    int B_;
    std::shared_ptr<const DeltaTable> delta_;
    std::shared_ptr<const MellinCoeffTable> mellin_;
    Sht sht_;
    std::vector<SHCoeffs> basis_sh_;
    std::vector<FilterResponse> basis_fr_;
};

/// Mobius convolution layer: a C x C' bank of log-polar filter coefficients
/// sharing (M, N, t).
struct MConvLayer {
    int in_channels = 0, out_channels = 0;
    int M = 1, N = 1;
    double t = 0.15;
    std::vector<cplx> bank; // [c'][c][m+M][s+N]

    MConvLayer() = default;
    MConvLayer(int C, int Cp, int M_, int N_, double t_)
        : in_channels(C), out_channels(Cp), M(M_), N(N_), t(t_),
          bank(std::size_t(C) * std::size_t(Cp) * std::size_t(2 * M_ + 1)
               * std::size_t(2 * N_ + 1), cplx(0.0))
    {
    }

    std::size_t pair_count() const
    {
        return std::size_t(2 * M + 1) * std::size_t(2 * N + 1);
    }
    cplx& b(int c, int cp, int m, int s)
    {
        return bank[((std::size_t(cp) * std::size_t(in_channels) + std::size_t(c)) * pair_count())
                    + std::size_t(m + M) * std::size_t(2 * N + 1) + std::size_t(s + N)];
    }
    cplx b(int c, int cp, int m, int s) const
    {
        return bank[((std::size_t(cp) * std::size_t(in_channels) + std::size_t(c)) * pair_count())
                    + std::size_t(m + M) * std::size_t(2 * N + 1) + std::size_t(s + N)];
    }

    LogPolarFilter filter(int c, int cp) const
    {
        LogPolarFilter f(M, N, t);
        for (int m = -M; m <= M; ++m)
            for (int s = -N; s <= N; ++s) f.at(m, s) = b(c, cp, m, s);
        return f;
    }

    /// Variance-preserving complex Gaussian initialization with the real
    /// filter symmetry enforced.
    static MConvLayer random(int C, int Cp, int M, int N, double t, std::mt19937_64& rng)
    {
        MConvLayer layer(C, Cp, M, N, t);
        std::normal_distribution<double> g(0.0, 1.0);
        const double sigma = 1.0 / std::sqrt(double(C) * double(2 * M + 1) * double(2 * N + 1));
        for (int cp = 0; cp < Cp; ++cp)
            for (int c = 0; c < C; ++c) {
                LogPolarFilter f(M, N, t);
                for (int m = -M; m <= M; ++m)
                    for (int s = -N; s <= N; ++s) f.at(m, s) = sigma * cplx(g(rng), g(rng));
                f.symmetrize();
                for (int m = -M; m <= M; ++m)
                    for (int s = -N; s <= N; ++s) layer.b(c, cp, m, s) = f.at(m, s);
            }
        return layer;
    }
};

/// Test hooks: force the trivial frame field or use psi itself as density
/// (turns the Mobius convolution into an identity convolution).
struct MConvOverride {
    bool identity_frames = false;
    bool density_is_signal = false;
};

namespace detail {

struct ChannelFields {
    FrameField frames;
    DensityField rho;
};

} // namespace detail

/// Forward Mobius convolution of a C-channel real grid.  max_imag_out, when
/// nonnull, receives the discarded imaginary residual (asserted small).
inline RealGrid mobius_convolve(const ConvContext& ctx, const RealGrid& psi,
                                const MConvLayer& layer, FrameMode mode = FrameMode::L,
                                const MConvOverride& ov = {}, double* max_imag_out = nullptr,
                                double imag_tol = 1e-6)
{
    const int B = ctx.band_limit();
    const int C = layer.in_channels, Cp = layer.out_channels;
    if (psi.channels() != C) throw std::invalid_argument("mobius_convolve: channel mismatch");
    if (psi.band_limit() != B) throw std::invalid_argument("mobius_convolve: band mismatch");
    if (layer.M != ctx.mellin().scheme().M || layer.N != ctx.mellin().scheme().N
        || layer.t != ctx.mellin().scheme().t)
        throw std::invalid_argument("mobius_convolve: filter band mismatch with tables");

    const GridSpec& spec = ctx.sht().spec();
    const std::size_t npts = spec.points();
    const auto& slots = ctx.mellin().slots();
    const std::size_t nslots = slots.size();
    const int M = layer.M, N = layer.N;
    const std::size_t pairs = layer.pair_count();

    // per-channel operator fields
    std::vector<detail::ChannelFields> fields(static_cast<std::size_t>(C));
    parallel_for(std::size_t(C), [&](std::size_t c) {
        if (ov.identity_frames || ov.density_is_signal) {
            auto fd = frame_density_operator(ctx.sht(), psi, int(c));
            fields[c].frames = std::move(fd.first);
            fields[c].rho = std::move(fd.second);
            if (ov.identity_frames) {
                fields[c].frames.frame.assign(npts, LowerTriangular());
                fields[c].frames.degenerate.assign(npts, false);
            }
            if (ov.density_is_signal) {
                const double* src = psi.channel(int(c));
                fields[c].rho.value.assign(src, src + npts);
            }
        } else {
            auto fd = frame_density_operator(ctx.sht(), psi, int(c));
            fields[c].frames = restrict_frames(fd.first, mode);
            fields[c].rho = std::move(fd.second);
        }
    });

    // per-point, per-channel geometry of the epsilon-substituted frames and
    // the filter-independent xi factors chi[k][pair]; the reduction over
    // input channels streams one slot at a time so the full (C x pairs x
    // slots x points) intermediate never exists
    struct PointGeom {
        double dl, lan, kan, pa2;
        bool active;
    };
    std::vector<PointGeom> geom(std::size_t(C) * npts);
    parallel_for(std::size_t(C) * npts, [&](std::size_t idx) {
        const std::size_t c = idx / npts, k = idx % npts;
        PointGeom& g = geom[idx];
        if (fields[c].frames.degenerate[k] || fields[c].rho.value[k] == 0.0) {
            g.active = false;
            return;
        }
        const LowerTriangular L = epsilon_substitute(fields[c].frames.frame[k]);
        const cplx a2 = L.a * L.a, an = L.a * L.n;
        g.dl = std::log(std::abs(a2)) - std::log(std::abs(an));
        g.lan = std::log(std::abs(an));
        g.kan = std::arg(an);
        g.pa2 = std::arg(a2);
        g.active = true;
    });

    std::vector<SHCoeffs> out_coeffs(static_cast<std::size_t>(Cp), SHCoeffs(B));
    std::vector<ComplexGrid> field_grids(static_cast<std::size_t>(Cp), ComplexGrid(spec, 1));

    // slot-major streaming; parallel over output channels inside each slot
    std::vector<cplx> chi(std::size_t(C) * npts * pairs);
    for (std::size_t k = 0; k < nslots; ++k) {
        const BasisSlot& sl = slots[k];
        parallel_for(std::size_t(C) * npts, [&](std::size_t idx) {
            const std::size_t c = idx / npts, p = idx % npts;
            cplx* row = chi.data() + idx * pairs;
            if (!geom[idx].active) {
                std::fill(row, row + pairs, cplx(0.0));
                return;
            }
            const PointGeom& g = geom[idx];
            const double amp = std::exp(sl.sigma * g.dl + ctx.mellin().scheme().t * g.lan)
                             * fields[c].rho.value[p] * sl.weight;
            const double ph0 = -sl.omega * g.dl + sl.u * (g.kan - g.pa2);
            for (int m = -M; m <= M; ++m)
                for (int s = -N; s <= N; ++s) {
                    const cplx pre = ctx.mellin().pretab(k, m, s);
                    if (pre == cplx(0.0)) {
                        row[std::size_t(m + M) * std::size_t(2 * N + 1) + std::size_t(s + N)]
                            = cplx(0.0);
                        continue;
                    }
                    const double ph = ph0 - m * g.kan - s * g.lan;
                    row[std::size_t(m + M) * std::size_t(2 * N + 1) + std::size_t(s + N)]
                        = amp * cplx(std::cos(ph), std::sin(ph)) * pre;
                }
        });
        parallel_for(std::size_t(Cp), [&](std::size_t cp) {
            cplx* dst = field_grids[cp].channel(0);
            for (std::size_t p = 0; p < npts; ++p) {
                cplx acc(0.0);
                for (int c = 0; c < C; ++c) {
                    const cplx* row = chi.data() + (std::size_t(c) * npts + p) * pairs;
                    const cplx* bw = layer.bank.data()
                                   + (cp * std::size_t(C) + std::size_t(c)) * pairs;
                    for (std::size_t q = 0; q < pairs; ++q) acc += bw[q] * row[q];
                }
                dst[p] = acc;
            }
            const SHCoeffs field_sh = ctx.sht().forward(field_grids[cp], 0);
            const SHCoeffs conv = ctx.basis_fr()[k].apply(field_sh);
            for (std::size_t i = 0; i < conv.raw().size(); ++i)
                out_coeffs[cp].raw()[i] += conv.raw()[i];
        });
    }

    RealGrid out(spec, Cp);
    double max_imag = 0.0;
    for (int cp = 0; cp < Cp; ++cp) {
        const ComplexGrid g = ctx.sht().inverse(out_coeffs[std::size_t(cp)]);
        double* dst = out.channel(cp);
        for (std::size_t p = 0; p < npts; ++p) {
            dst[p] = g.raw()[p].real();
            max_imag = std::max(max_imag, std::abs(g.raw()[p].imag()));
        }
    }
    if (max_imag_out) *max_imag_out = max_imag;
    if (max_imag > imag_tol)
        throw std::runtime_error("mobius_convolve: imaginary residual "
                                 + std::to_string(max_imag));
    return out;
}

/// Conformal filter-response normalization: per channel,
/// psi_c -> alpha_c psi_c / sqrt(int rho_{psi_c} + eps_c) + beta_c.
struct NormLayer {
    std::vector<double> alpha, beta, eps;

    static NormLayer identity(int C, double eps_val = 1e-6)
    {
        NormLayer n;
        n.alpha.assign(std::size_t(C), 1.0);
        n.beta.assign(std::size_t(C), 0.0);
        n.eps.assign(std::size_t(C), eps_val);
        return n;
    }
};

inline RealGrid frn_normalize(const ConvContext& ctx, const RealGrid& psi, const NormLayer& layer)
{
    const int C = psi.channels();
    RealGrid out(psi.spec(), C);
    for (int c = 0; c < C; ++c) {
        if (layer.eps[std::size_t(c)] <= 0.0)
            throw std::invalid_argument("frn_normalize: eps must be positive");
        const DensityField rho = density_operator(ctx.sht(), psi, c);
        RealGrid rg(psi.spec(), 1);
        std::copy(rho.value.begin(), rho.value.end(), rg.raw().begin());
        const double energy = sphere_integral(ctx.sht(), rg);
        const double denom = std::sqrt(energy + layer.eps[std::size_t(c)]);
        const double* src = psi.channel(c);
        double* dst = out.channel(c);
        for (std::size_t p = 0; p < psi.spec().points(); ++p)
            dst[p] = layer.alpha[std::size_t(c)] * src[p] / denom + layer.beta[std::size_t(c)];
    }
    return out;
}

/// Dirichlet energy of one channel (the normalization integrand).
inline double dirichlet_energy(const ConvContext& ctx, const RealGrid& psi, int channel = 0)
{
    const DensityField rho = density_operator(ctx.sht(), psi, channel);
    RealGrid rg(psi.spec(), 1);
    std::copy(rho.value.begin(), rho.value.end(), rg.raw().begin());
    return sphere_integral(ctx.sht(), rg);
}

/// Thresholded Mish activation: x -> Mish(x - gamma) + gamma.
struct ActivationLayer {
    std::vector<double> gamma;

    static ActivationLayer zero(int C)
    {
        ActivationLayer a;
        a.gamma.assign(std::size_t(C), 0.0);
        return a;
    }
};

inline double mish(double x)
{
    const double sp = x > 20.0 ? x : (x < -20.0 ? std::exp(x) : std::log1p(std::exp(x)));
    return x * std::tanh(sp);
}

inline RealGrid thresholded_mish(const RealGrid& psi, const ActivationLayer& layer)
{
    RealGrid out(psi.spec(), psi.channels());
    for (int c = 0; c < psi.channels(); ++c) {
        const double g = layer.gamma[std::size_t(c)];
        const double* src = psi.channel(c);
        double* dst = out.channel(c);
        for (std::size_t p = 0; p < psi.spec().points(); ++p) dst[p] = mish(src[p] - g) + g;
    }
    return out;
}

/// Two Mobius convolutions, each followed by normalization and the
/// non-linearity, with an optional residual connection.
struct MCResNetBlock {
    MConvLayer conv1, conv2;
    NormLayer norm1, norm2;
    ActivationLayer act1, act2;
    bool residual = true;

    static MCResNetBlock random(int C, int M, int N, double t, std::mt19937_64& rng,
                                bool residual = true)
    {
        MCResNetBlock b;
        b.conv1 = MConvLayer::random(C, C, M, N, t, rng);
        b.conv2 = MConvLayer::random(C, C, M, N, t, rng);
        b.norm1 = NormLayer::identity(C);
        b.norm2 = NormLayer::identity(C);
        b.act1 = ActivationLayer::zero(C);
        b.act2 = ActivationLayer::zero(C);
        b.residual = residual;
        return b;
    }
};

inline RealGrid mcresnet_forward(const ConvContext& ctx, const RealGrid& psi,
                                 const MCResNetBlock& block, FrameMode mode = FrameMode::L)
{
    if (block.residual && block.conv2.out_channels != psi.channels())
        throw std::invalid_argument("mcresnet_forward: residual needs matching channels");
    RealGrid h = mobius_convolve(ctx, psi, block.conv1, mode);
    h = frn_normalize(ctx, h, block.norm1);
    h = thresholded_mish(h, block.act1);
    h = mobius_convolve(ctx, h, block.conv2, mode);
    h = frn_normalize(ctx, h, block.norm2);
    h = thresholded_mish(h, block.act2);
    if (block.residual)
        for (std::size_t i = 0; i < h.raw().size(); ++i) h.raw()[i] += psi.raw()[i];
    return h;
}

} // namespace mobius
