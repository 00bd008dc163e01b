#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>

#include "mobius/layers.hpp"

namespace mobius {

// Equivariance-error experiments and runtime benchmarks over forward
// MCResNet blocks, shared by the command-line tool and the acceptance suite.

struct ExperimentConfig {
    int B = 32;
    int C = 8;
    FrameMode mode = FrameMode::L;
    std::vector<double> max_scales = {1.0, 2.0, 4.0, 8.0, 12.0};
    int trials = 20;
    std::uint64_t seed = 7;
    int M = 1, N = 1, Q = 30;
    double t = 0.15;
    int field_support = 0; // spectral support of the test fields; 0 -> B/4

    void validate() const
    {
        if (trials < 1) throw std::invalid_argument("trials must be >= 1");
        for (double s : max_scales)
            if (s < 1.0) throw std::invalid_argument("max_scale entries must be >= 1");
    }
};

struct ScaleResult {
    FrameMode mode;
    double max_scale = 0.0;
    double error = 0.0;     // E(R(g psi) - g R(psi))^2 / Var g R(psi)
    double error_sem = 0.0; // standard error of the per-trial error mean
    int trials = 0;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Smooth random band-limited real field (per-degree Gaussian decay keeps the
/// warped signal resolvable at the working band limit).
inline SHCoeffs random_band_limited(int B, std::mt19937_64& rng, int support)
{
    std::normal_distribution<double> g(0.0, 1.0);
    SHCoeffs c(B);
    for (int l = 0; l < std::min(B, support); ++l) {
        const double s = std::exp(-double(l) * l / (2.0 * double(support) * support / 4.0));
        c.at(l, 0) = s * g(rng);
        for (int m = 1; m <= l; ++m) {
            const cplx v = s * cplx(g(rng), g(rng));
            c.at(l, m) = v;
            c.at(l, -m) = (m % 2 ? -1.0 : 1.0) * std::conj(v);
        }
    }
    return c;
}

} // namespace detail

/// psi(g^{-1} .) per channel, synthesized exactly from coefficients.
inline RealGrid resample(const Sht& sht, const std::vector<SHCoeffs>& coeffs,
                         const MobiusTransform& g)
{
    const GridSpec& spec = sht.spec();
    const MobiusTransform gi = g.inverse();
    RealGrid out(spec, int(coeffs.size()));
    for (std::size_t c = 0; c < coeffs.size(); ++c)
        for (int i = 0; i < spec.rings(); ++i)
            for (int j = 0; j < spec.columns(); ++j)
                out.at(int(c), i, j)
                    = Sht::evaluate(coeffs[c], gi.apply(spec.point(i, j))).real();
    return out;
}

/// One equivariance sweep for a fixed frame mode.
inline std::vector<ScaleResult> equivariance_run(const ConvContext& ctx,
                                                 const ExperimentConfig& cfg)
{
    cfg.validate();
    const int B = cfg.B, C = cfg.C;
    const int support = cfg.field_support > 0 ? cfg.field_support : std::max(4, B / 4);
    std::vector<ScaleResult> results;

    for (std::size_t si = 0; si < cfg.max_scales.size(); ++si) {
        const double scale = cfg.max_scales[si];
        std::vector<double> trial_err(static_cast<std::size_t>(cfg.trials));
        parallel_for(std::size_t(cfg.trials), [&](std::size_t trial) {
            std::mt19937_64 rng(detail::splitmix(cfg.seed
                                                 ^ detail::splitmix(0x100 * si + trial * 3
                                                                    + 0x10000
                                                                          * std::uint64_t(cfg.mode))));
            const MCResNetBlock model = MCResNetBlock::random(C, cfg.M, cfg.N, cfg.t, rng,
                                                              /*residual=*/false);
            const MobiusTransform g = sample_transform(scale, rng);
            std::vector<SHCoeffs> psi_c;
            psi_c.reserve(std::size_t(C));
            RealGrid psi(ctx.sht().spec(), C);
            for (int c = 0; c < C; ++c) {
                psi_c.push_back(detail::random_band_limited(B, rng, support));
                const RealGrid one = ctx.sht().inverse_real(psi_c.back());
                std::copy(one.raw().begin(), one.raw().end(), psi.channel(c));
            }
            const RealGrid gpsi = resample(ctx.sht(), psi_c, g);

            // both sides of the residual are compared at the working band:
            // the transformed output is synthesized from coefficients, so the
            // raw left side would otherwise carry above-band content the
            // right side structurally cannot have
            RealGrid lhs = mcresnet_forward(ctx, gpsi, model, cfg.mode);
            for (int c = 0; c < C; ++c) {
                const SHCoeffs lc = ctx.sht().forward(lhs, c);
                const RealGrid lb = ctx.sht().inverse_real(lc);
                std::copy(lb.raw().begin(), lb.raw().end(), lhs.channel(c));
            }
            const RealGrid mid = mcresnet_forward(ctx, psi, model, cfg.mode);
            std::vector<SHCoeffs> mid_c;
            for (int c = 0; c < C; ++c) mid_c.push_back(ctx.sht().forward(mid, c));
            const RealGrid rhs = resample(ctx.sht(), mid_c, g);

            double sum = 0.0, sum2 = 0.0, res2 = 0.0;
            const std::size_t n = rhs.raw().size();
            for (std::size_t k = 0; k < n; ++k) {
                const double r = lhs.raw()[k] - rhs.raw()[k];
                res2 += r * r;
                sum += rhs.raw()[k];
                sum2 += rhs.raw()[k] * rhs.raw()[k];
            }
            const double mean = sum / double(n);
            const double var = sum2 / double(n) - mean * mean;
            trial_err[trial] = res2 / double(n) / var;
        });

        ScaleResult r;
        r.mode = cfg.mode;
        r.max_scale = scale;
        r.trials = cfg.trials;
        const double mean = std::accumulate(trial_err.begin(), trial_err.end(), 0.0)
                          / double(cfg.trials);
        double var = 0.0;
        for (double e : trial_err) var += (e - mean) * (e - mean);
        var /= std::max(1, cfg.trials - 1);
        r.error = mean;
        r.error_sem = std::sqrt(var / double(cfg.trials));
        results.push_back(r);
    }
    return results;
}

inline void write_equivariance_csv(const std::vector<ScaleResult>& rows, std::ostream& out)
{
    out << "# mobius-sphere equivariance v1\n";
    out << "mode,max_scale,error,error_sem,trials\n";
    out << std::setprecision(10);
    for (const ScaleResult& r : rows)
        out << to_string(r.mode) << "," << r.max_scale << "," << r.error << "," << r.error_sem
            << "," << r.trials << "\n";
}

struct BenchRow {
    int B = 0, C = 0;
    double mean_ms = 0.0, std_ms = 0.0;
    int repeats = 0;
};

/// Wall time of forward MCResNet blocks per (band limit, channel count).
inline std::vector<BenchRow> bench_run(TableStore& store, const std::vector<int>& bands,
                                       const std::vector<int>& channels, int repeats,
                                       std::uint64_t seed, int M = 1, int N = 1, int Q = 30,
                                       double t = 0.15)
{
    std::vector<BenchRow> rows;
    auto mellin = store.scheme(M, N, M + 1, Q, t);
    for (int B : bands) {
        ConvContext ctx(B, store.delta(B), mellin);
        for (int C : channels) {
            std::mt19937_64 rng(detail::splitmix(seed ^ (std::uint64_t(B) << 20)
                                                 ^ std::uint64_t(C)));
            const MCResNetBlock model = MCResNetBlock::random(C, M, N, t, rng);
            RealGrid psi(ctx.sht().spec(), C);
            for (int c = 0; c < C; ++c) {
                const RealGrid one = ctx.sht().inverse_real(
                    detail::random_band_limited(B, rng, std::max(4, B / 4)));
                std::copy(one.raw().begin(), one.raw().end(), psi.channel(c));
            }
            (void)mcresnet_forward(ctx, psi, model); // warm up
            std::vector<double> times(static_cast<std::size_t>(repeats));
            for (int rep = 0; rep < repeats; ++rep) {
                const auto t0 = std::chrono::steady_clock::now();
                (void)mcresnet_forward(ctx, psi, model);
                const auto t1 = std::chrono::steady_clock::now();
                times[std::size_t(rep)] = std::chrono::duration<double, std::milli>(t1 - t0)
                                              .count();
            }
            BenchRow row;
            row.B = B;
            row.C = C;
            row.repeats = repeats;
            row.mean_ms = std::accumulate(times.begin(), times.end(), 0.0) / double(repeats);
            double var = 0.0;
            for (double v : times) var += (v - row.mean_ms) * (v - row.mean_ms);
            row.std_ms = std::sqrt(var / std::max(1, repeats - 1));
            rows.push_back(row);
        }
    }
    return rows;
}

/// Least-squares slope of log(time) against log(B) at fixed channel count.
inline double fit_time_exponent(const std::vector<BenchRow>& rows, int C)
{
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const BenchRow& r : rows) {
        if (r.C != C) continue;
        const double x = std::log(double(r.B)), y = std::log(r.mean_ms);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("fit_time_exponent: need at least two band limits");
    return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

inline void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out)
{
    out << "# mobius-sphere bench v1\n";
    out << "band_limit,channels,mean_ms,std_ms,repeats\n";
    out << std::setprecision(10);
    for (const BenchRow& r : rows)
        out << r.B << "," << r.C << "," << r.mean_ms << "," << r.std_ms << "," << r.repeats
            << "\n";
}

// ---- basis projection file (MCB1) -------------------------------------------

/// SH projections of every slot basis function, as written by the precompute
/// command.  The projections are cheap to rebuild; the file is the recorded,
/// reloadable artifact.
inline void save_basis_projections(const ConvContext& ctx, const std::filesystem::path& path)
{
    detail::atomic_write(path, [&](mobius::detail::Writer& w) {
        w.bytes("MCB1", 4);
        w.u32(std::uint32_t(ctx.band_limit()));
        w.u32(std::uint32_t(ctx.mellin().scheme().Mp));
        w.u32(std::uint32_t(ctx.mellin().scheme().Q));
        w.f64(ctx.mellin().scheme().t);
        w.u32(std::uint32_t(ctx.basis_sh().size()));
        for (const SHCoeffs& c : ctx.basis_sh())
            for (const cplx& v : c.raw()) w.c128(v);
    });
}

inline std::vector<SHCoeffs> load_basis_projections(const std::filesystem::path& path, int* B_out)
{
    mobius::detail::Reader r(path);
    r.magic("MCB1");
    const int B = int(r.u32());
    if (B < 1 || B > 4096) throw FormatError("unreasonable band limit", r.offset() - 4);
    (void)r.u32();
    (void)r.u32();
    (void)r.f64();
    const std::uint32_t nslots = r.u32();
    if (nslots > 1u << 20) throw FormatError("unreasonable slot count", r.offset() - 4);
    std::vector<SHCoeffs> out;
    out.reserve(nslots);
    for (std::uint32_t k = 0; k < nslots; ++k) {
        SHCoeffs c(B);
        for (cplx& v : c.raw()) v = r.c128();
        out.push_back(std::move(c));
    }
    if (B_out) *B_out = B;
    return out;
}

// ---- layer parameter files -------------------------------------------------

struct LayerBundle {
    MConvLayer conv;
    NormLayer norm;
    ActivationLayer act;
    bool has_norm = false, has_act = false;
};

inline void save_layer_csv(const LayerBundle& bundle, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    const MConvLayer& l = bundle.conv;
    out << "# mobius-sphere layer v1: C=" << l.in_channels << " Cp=" << l.out_channels
        << " M=" << l.M << " N=" << l.N << " t=" << std::hexfloat << l.t << std::defaultfloat
        << "\n";
    out << std::setprecision(17);
    for (int cp = 0; cp < l.out_channels; ++cp)
        for (int c = 0; c < l.in_channels; ++c)
            for (int m = -l.M; m <= l.M; ++m)
                for (int s = -l.N; s <= l.N; ++s)
                    out << c << "," << cp << "," << m << "," << s << ","
                        << l.b(c, cp, m, s).real() << "," << l.b(c, cp, m, s).imag() << "\n";
    if (bundle.has_norm)
        for (int c = 0; c < l.out_channels; ++c)
            out << "norm," << c << "," << bundle.norm.alpha[std::size_t(c)] << ","
                << bundle.norm.beta[std::size_t(c)] << "," << bundle.norm.eps[std::size_t(c)]
                << "\n";
    if (bundle.has_act)
        for (int c = 0; c < l.out_channels; ++c)
            out << "act," << c << "," << bundle.act.gamma[std::size_t(c)] << "\n";
}

inline LayerBundle load_layer_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::string header;
    std::getline(in, header);
    int C = -1, Cp = -1, M = -1, N = -1;
    double t = 0.0;
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            if (tok.rfind("C=", 0) == 0) C = std::stoi(tok.substr(2));
            if (tok.rfind("Cp=", 0) == 0) Cp = std::stoi(tok.substr(3));
            if (tok.rfind("M=", 0) == 0) M = std::stoi(tok.substr(2));
            if (tok.rfind("N=", 0) == 0) N = std::stoi(tok.substr(2));
            if (tok.rfind("t=", 0) == 0) t = std::stod(tok.substr(2));
        }
    }
    if (C < 1 || Cp < 1 || M < 0 || N < 0 || t <= 0.0 || t >= 1.0)
        throw std::runtime_error("layer csv: malformed header in " + path.string());
    LayerBundle bundle;
    bundle.conv = MConvLayer(C, Cp, M, N, t);
    bundle.norm = NormLayer::identity(Cp);
    bundle.act = ActivationLayer::zero(Cp);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        if (cell == "norm") {
            std::getline(ls, cell, ',');
            const int c = std::stoi(cell);
            std::getline(ls, cell, ',');
            bundle.norm.alpha[std::size_t(c)] = std::stod(cell);
            std::getline(ls, cell, ',');
            bundle.norm.beta[std::size_t(c)] = std::stod(cell);
            std::getline(ls, cell, ',');
            bundle.norm.eps[std::size_t(c)] = std::stod(cell);
            bundle.has_norm = true;
        } else if (cell == "act") {
            std::getline(ls, cell, ',');
            const int c = std::stoi(cell);
            std::getline(ls, cell, ',');
            bundle.act.gamma[std::size_t(c)] = std::stod(cell);
            bundle.has_act = true;
        } else {
            const int c = std::stoi(cell);
            std::getline(ls, cell, ',');
            const int cp = std::stoi(cell);
            std::getline(ls, cell, ',');
            const int m = std::stoi(cell);
            std::getline(ls, cell, ',');
            const int s = std::stoi(cell);
            std::getline(ls, cell, ',');
            const double re = std::stod(cell);
            std::getline(ls, cell, ',');
            const double im = std::stod(cell);
            bundle.conv.b(c, cp, m, s) = cplx(re, im);
        }
    }
    return bundle;
}

} // namespace mobius
