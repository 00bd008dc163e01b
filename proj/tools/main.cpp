// mobius-sphere: precomputation, equivariance experiments, benchmarks, and
// file-based convolution for Mobius-equivariant spherical convolutions.
#include <CLI11.hpp>

#include <iostream>

#include "mobius/mobius.hpp"

using namespace mobius;

namespace {

std::filesystem::path require_table(const std::filesystem::path& p, const std::string& hint)
{
    if (!std::filesystem::exists(p))
        throw std::runtime_error("missing table " + p.string() + "; run `mobius-sphere "
                                 + hint + "` first");
    return p;
}

std::filesystem::path basis_path(const TableStore& store, int B, int M, int N, int Q, double t)
{
    std::ostringstream name;
    name << "basis_B" << B << "_M" << M << "_N" << N << "_Q" << Q << "_t" << t << ".mcb1";
    return store.dir() / name.str();
}

std::string precompute_hint(int B, int M, int N, int Q, double t)
{
    std::ostringstream s;
    s << "precompute --band-limit " << B << " --filter-band " << M << " --radial-band " << N
      << " --quad-points " << Q << " --localization " << t;
    return s.str();
}

int cmd_precompute(int B, int M, int N, int Q, double t, bool force)
{
    TableStore store;
    std::filesystem::create_directories(store.dir());
    const auto dpath = store.delta_path(B);
    const auto spath = store.scheme_path(M, N, M + 1, Q, t);
    const auto bpath = basis_path(store, B, M, N, Q, t);
    if (!force && std::filesystem::exists(dpath) && std::filesystem::exists(spath)
        && std::filesystem::exists(bpath)) {
        std::cout << "tables up to date in " << store.dir().string()
                  << " (use --force to rebuild)\n";
        return 0;
    }
    std::cout << "precomputing into " << store.dir().string() << "\n";
    auto delta = store.delta(B, force);
    std::cout << "  " << dpath.filename().string() << " (" << delta->size() << " entries)\n";
    auto mellin = store.scheme(M, N, M + 1, Q, t, {}, force);
    std::cout << "  " << spath.filename().string() << "\n";
    ConvContext ctx(B, delta, mellin);
    save_basis_projections(ctx, bpath);
    std::cout << "  " << bpath.filename().string() << " (" << ctx.basis_sh().size()
              << " basis projections)\n";
    return 0;
}

int cmd_equivariance(int B, int C, const std::vector<std::string>& modes,
                     std::vector<double> scales, int trials, std::uint64_t seed,
                     const std::string& out_path, int M, int N, int Q, double t)
{
    TableStore store;
    require_table(store.delta_path(B), precompute_hint(B, M, N, Q, t));
    require_table(store.scheme_path(M, N, M + 1, Q, t), precompute_hint(B, M, N, Q, t));
    ConvContext ctx(B, store.delta(B), store.scheme(M, N, M + 1, Q, t));

    std::vector<ScaleResult> rows;
    for (const std::string& mode : modes) {
        ExperimentConfig cfg;
        cfg.B = B;
        cfg.C = C;
        cfg.mode = frame_mode_from_string(mode);
        cfg.max_scales = scales;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.M = M;
        cfg.N = N;
        cfg.Q = Q;
        cfg.t = t;
        const auto part = equivariance_run(ctx, cfg);
        rows.insert(rows.end(), part.begin(), part.end());
        for (const ScaleResult& r : part)
            std::cout << to_string(r.mode) << " max_scale=" << r.max_scale
                      << " error=" << r.error << " (sem " << r.error_sem << ", " << r.trials
                      << " trials)\n";
    }
    if (out_path.empty()) {
        write_equivariance_csv(rows, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        write_equivariance_csv(rows, out);
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_convolve(const std::string& input, const std::string& params, const std::string& output,
                 const std::string& mode, int Q)
{
    TableStore store;
    const LayerBundle bundle = load_layer_csv(params);
    const LoadedGrid in = load_grid(input);
    if (in.dtype != 0)
        throw std::runtime_error("convolve expects a real grid (dtype 0): " + input);
    const int B = in.real.band_limit();
    const int M = bundle.conv.M, N = bundle.conv.N;
    const double t = bundle.conv.t;
    require_table(store.delta_path(B), precompute_hint(B, M, N, Q, t));
    require_table(store.scheme_path(M, N, M + 1, Q, t), precompute_hint(B, M, N, Q, t));
    ConvContext ctx(B, store.delta(B), store.scheme(M, N, M + 1, Q, t));

    RealGrid out = mobius_convolve(ctx, in.real, bundle.conv, frame_mode_from_string(mode));
    if (bundle.has_norm) out = frn_normalize(ctx, out, bundle.norm);
    if (bundle.has_act) out = thresholded_mish(out, bundle.act);
    save_grid(out, output);
    std::cout << "wrote " << output << " (" << out.channels() << " channels, B = " << B
              << ")\n";
    return 0;
}

int cmd_bench(const std::vector<int>& bands, const std::vector<int>& channels, int repeats,
              std::uint64_t seed, const std::string& out_path, int M, int N, int Q, double t)
{
    TableStore store;
    for (int B : bands) require_table(store.delta_path(B), precompute_hint(B, M, N, Q, t));
    require_table(store.scheme_path(M, N, M + 1, Q, t),
                  precompute_hint(bands.empty() ? 16 : bands.front(), M, N, Q, t));
    const auto rows = bench_run(store, bands, channels, repeats, seed, M, N, Q, t);
    for (const BenchRow& r : rows)
        std::cout << "B=" << r.B << " C=" << r.C << " mean=" << r.mean_ms << " ms (std "
                  << r.std_ms << ", " << r.repeats << " repeats)\n";
    if (bands.size() >= 2)
        for (int C : channels)
            std::cout << "log-log exponent of time vs B at C=" << C << ": "
                      << fit_time_exponent(rows, C) << "\n";
    if (out_path.empty()) {
        write_bench_csv(rows, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        write_bench_csv(rows, out);
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mobius-equivariant spherical convolution toolkit"};
    app.require_subcommand(1);

    int B = 32, C = 8, M = 1, N = 1, Q = 30, trials = 20, repeats = 5;
    double t = 0.15;
    std::uint64_t seed = 7;
    bool force = false;
    std::vector<double> scales = {1.0, 2.0, 4.0, 8.0, 12.0};
    std::vector<std::string> modes = {"L"};
    std::vector<int> bands = {8, 16, 32};
    std::vector<int> channel_list = {8};
    std::string out_path, input, params, output, mode = "L";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--filter-band", M, "angular band M of the filters");
        cmd->add_option("--radial-band", N, "radial band N of the filters");
        cmd->add_option("--quad-points", Q, "quadrature points per strip");
        cmd->add_option("--localization", t, "localization exponent t");
    };

    CLI::App* pre = app.add_subcommand("precompute", "build and store coefficient tables");
    pre->add_option("--band-limit", B, "grid band limit B");
    add_common(pre);
    pre->add_flag("--force", force, "rebuild even when files exist");

    CLI::App* equi = app.add_subcommand("equivariance", "equivariance-error experiment");
    equi->add_option("--band-limit", B, "grid band limit B");
    equi->add_option("--channels", C, "feature channels");
    equi->add_option("--mode", modes, "frame modes: L, Cnz, U1")->delimiter(',');
    equi->add_option("--max-scale", scales, "maximal conformal scale factors")->delimiter(',');
    equi->add_option("--trials", trials, "trials per scale");
    equi->add_option("--seed", seed, "master random seed");
    equi->add_option("--out", out_path, "output CSV path (stdout when omitted)");
    add_common(equi);

    CLI::App* conv = app.add_subcommand("convolve", "apply one convolution layer to a grid file");
    conv->add_option("input", input, "input grid (MCG1)")->required();
    conv->add_option("params", params, "layer parameter CSV")->required();
    conv->add_option("--out", output, "output grid path")->required();
    conv->add_option("--mode", mode, "frame mode: L, Cnz, U1");
    conv->add_option("--quad-points", Q, "quadrature points per strip");

    CLI::App* bench = app.add_subcommand("bench", "forward-block runtime benchmark");
    bench->add_option("--band-limit", bands, "band limits to time")->delimiter(',');
    bench->add_option("--channels", channel_list, "channel counts to time")->delimiter(',');
    bench->add_option("--repeats", repeats, "repeats per configuration");
    bench->add_option("--seed", seed, "master random seed");
    bench->add_option("--out", out_path, "output CSV path (stdout when omitted)");
    add_common(bench);

    CLI11_PARSE(app, argc, argv);

    try {
        if (pre->parsed()) return cmd_precompute(B, M, N, Q, t, force);
        if (equi->parsed())
            return cmd_equivariance(B, C, modes, scales, trials, seed, out_path, M, N, Q, t);
        if (conv->parsed()) return cmd_convolve(input, params, output, mode, Q);
        if (bench->parsed())
            return cmd_bench(bands, channel_list, repeats, seed, out_path, M, N, Q, t);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
