#pragma once

#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "mobius/io.hpp"

namespace mobius {

/// Disk- and memory-cached precomputed tables, keyed by their parameters.
/// The directory comes from MOBIUS_TABLE_DIR (default "tables"); files are
/// deterministic, so concurrent rebuilds are harmless.
class TableStore {
public:
    explicit TableStore(std::filesystem::path dir = default_dir()) : dir_(std::move(dir)) {}

    static std::filesystem::path default_dir()
    {
        if (const char* env = std::getenv("MOBIUS_TABLE_DIR")) return env;
        return "tables";
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path delta_path(int B) const
    {
        return dir_ / ("delta_B" + std::to_string(B) + ".mcd1");
    }
    std::filesystem::path scheme_path(int M, int N, int Mp, int Q, double t) const
    {
        std::ostringstream name;
        name << "scheme_M" << M << "_N" << N << "_Mp" << Mp << "_Q" << Q << "_t" << t << ".mcq1";
        return dir_ / name.str();
    }

    /// Delta table for one band limit; built and persisted when missing.
    std::shared_ptr<const DeltaTable> delta(int B, bool force = false)
    {
        const std::string key = "d" + std::to_string(B);
        std::lock_guard<std::mutex> lock(mu_);
        if (!force) {
            if (auto it = delta_.find(key); it != delta_.end()) return it->second;
        }
        const std::filesystem::path path = delta_path(B);
        std::shared_ptr<const DeltaTable> t;
        if (!force && std::filesystem::exists(path)) {
            t = std::make_shared<DeltaTable>(load_delta(path));
        } else {
            t = std::make_shared<DeltaTable>(B);
            save_delta(*t, path);
        }
        delta_[key] = t;
        return t;
    }

    /// Optimized quadrature scheme + pretabulated Mellin coefficients.
    std::shared_ptr<const MellinCoeffTable> scheme(int M, int N, int Mp, int Q, double t,
                                                   const OptimizeOptions& opt = {},
                                                   bool force = false)
    {
        std::ostringstream key;
        key << "s" << M << "," << N << "," << Mp << "," << Q << "," << t;
        std::lock_guard<std::mutex> lock(mu_);
        if (!force) {
            if (auto it = scheme_.find(key.str()); it != scheme_.end()) return it->second;
        }
        const std::filesystem::path path = scheme_path(M, N, Mp, Q, t);
        std::shared_ptr<const MellinCoeffTable> tab;
        if (!force && std::filesystem::exists(path)) {
            tab = std::make_shared<MellinCoeffTable>(load_scheme(path));
        } else {
            const QuadratureScheme s = optimize_quadrature(M, N, Mp, Q, t, opt);
            tab = std::make_shared<MellinCoeffTable>(s);
            SchemeFileMeta meta;
            meta.r_min = opt.r_min;
            meta.r_max = opt.r_max;
            meta.r_points = std::uint32_t(opt.r_points);
            meta.iterations = std::uint32_t(opt.iterations);
            meta.learning_rate = opt.learning_rate;
            meta.fd_step = opt.fd_step;
            meta.sigma_margin = opt.sigma_margin;
            meta.omega_box = opt.omega_box;
            meta.ref_omega_max = opt.reference.omega_max;
            meta.ref_samples = std::uint32_t(opt.reference.samples);
            save_scheme(*tab, path, meta);
        }
        scheme_[key.str()] = tab;
        return tab;
    }

    /// Process-wide store (tests and tools share loaded tables).
    static TableStore& global()
    {
        static TableStore store;
        return store;
    }

private:
    std::filesystem::path dir_;
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const DeltaTable>> delta_;
    std::map<std::string, std::shared_ptr<const MellinCoeffTable>> scheme_;
};

} // namespace mobius
