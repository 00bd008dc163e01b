#pragma once

#include <cstdint>
#include <cstring>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobius/grid.hpp"
#include "mobius/identity_conv.hpp"
#include "mobius/logpolar.hpp"
#include "mobius/sht.hpp"
#include "mobius/xform.hpp"

namespace mobius {

/// File-format violation carrying the offending byte offset.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::uint64_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset)
    {
    }
    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

namespace detail {

class Writer {
public:
    explicit Writer(const std::filesystem::path& path)
        : out_(path, std::ios::binary | std::ios::trunc)
    {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path.string());
    }
    void bytes(const void* p, std::size_t n) { out_.write(static_cast<const char*>(p), std::streamsize(n)); }
    void u8(std::uint8_t v) { bytes(&v, 1); }
    void u32(std::uint32_t v) { bytes(&v, 4); }
    void f64(double v) { bytes(&v, 8); }
    void c128(cplx v)
    {
        f64(v.real());
        f64(v.imag());
    }

private:
    std::ofstream out_;
};

class Reader {
public:
    explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary)
    {
        if (!in_) throw std::runtime_error("cannot open for reading: " + path.string());
    }
    void bytes(void* p, std::size_t n)
    {
        in_.read(static_cast<char*>(p), std::streamsize(n));
        if (in_.gcount() != std::streamsize(n))
            throw FormatError("unexpected end of file", offset_);
        offset_ += n;
    }
    std::uint8_t u8()
    {
        std::uint8_t v;
        bytes(&v, 1);
        return v;
    }
    std::uint32_t u32()
    {
        std::uint32_t v;
        bytes(&v, 4);
        return v;
    }
    double f64()
    {
        double v;
        bytes(&v, 8);
        return v;
    }
    cplx c128()
    {
        const double re = f64();
        const double im = f64();
        return {re, im};
    }
    void magic(const char* expect)
    {
        char m[4];
        bytes(m, 4);
        if (std::memcmp(m, expect, 4) != 0)
            throw FormatError(std::string("bad magic, expected ") + expect, offset_ - 4);
    }
    std::uint64_t offset() const { return offset_; }

private:
    std::ifstream in_;
    std::uint64_t offset_ = 0;
};

/// Write via a temporary then rename, so concurrent builders of identical
/// deterministic tables cannot leave torn files.
template <class Fn>
void atomic_write(const std::filesystem::path& path, Fn&& fn)
{
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        Writer w(tmp);
        fn(w);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace detail

// ---- MCG1: grid samples --------------------------------------------------

template <class T>
void save_grid(const SphericalGrid<T>& g, const std::filesystem::path& path)
{
    detail::atomic_write(path, [&](detail::Writer& w) {
        w.bytes("MCG1", 4);
        w.u32(std::uint32_t(g.band_limit()));
        w.u32(std::uint32_t(g.channels()));
        w.u8(std::is_same_v<T, double> ? 0 : 1);
        for (const T& v : g.raw()) {
            if constexpr (std::is_same_v<T, double>) w.f64(v);
            else w.c128(v);
        }
    });
}

/// Loaded grid; exactly one of the two members is populated.
struct LoadedGrid {
    int dtype = 0;
    RealGrid real;
    ComplexGrid cplx_grid;
};

inline LoadedGrid load_grid(const std::filesystem::path& path)
{
    detail::Reader r(path);
    r.magic("MCG1");
    const int B = int(r.u32());
    const int C = int(r.u32());
    if (B < 1 || B > 4096) throw FormatError("unreasonable band limit", r.offset() - 8);
    if (C < 1 || C > 65536) throw FormatError("unreasonable channel count", r.offset() - 4);
    const int dtype = r.u8();
    if (dtype != 0 && dtype != 1) throw FormatError("unknown dtype", r.offset() - 1);
    LoadedGrid out;
    out.dtype = dtype;
    if (dtype == 0) {
        out.real = RealGrid(GridSpec(B), C);
        for (double& v : out.real.raw()) v = r.f64();
    } else {
        out.cplx_grid = ComplexGrid(GridSpec(B), C);
        for (cplx& v : out.cplx_grid.raw()) v = r.c128();
    }
    return out;
}

// ---- MCD1: Delta coefficient table ----------------------------------------

inline void save_delta(const DeltaTable& t, const std::filesystem::path& path)
{
    detail::atomic_write(path, [&](detail::Writer& w) {
        w.bytes("MCD1", 4);
        w.u32(std::uint32_t(t.band_limit()));
        // complex128 in (l', m', l, m'') lexicographic order; Delta is real
        // in this Y/D convention, the imaginary slots stay zero
        for (double v : t.raw()) w.c128(cplx(v, 0.0));
    });
}

inline DeltaTable load_delta(const std::filesystem::path& path)
{
    detail::Reader r(path);
    r.magic("MCD1");
    const int B = int(r.u32());
    if (B < 1 || B > 1024) throw FormatError("unreasonable band limit", r.offset() - 4);
    std::size_t total = 0;
    for (int l1 = 0; l1 < B; ++l1) {
        std::size_t blk = 0;
        for (int l = 0; l < B; ++l) blk += std::size_t(2 * std::min(l, l1) + 1);
        total += std::size_t(2 * l1 + 1) * blk;
    }
    std::vector<double> vals(total);
    for (std::size_t k = 0; k < total; ++k) {
        const cplx v = r.c128();
        vals[k] = v.real();
    }
    return DeltaTable::from_raw(B, std::move(vals));
}

// ---- MCQ1: quadrature scheme + Mellin coefficient table --------------------

struct SchemeFileMeta {
    double r_min = 0, r_max = 0;
    std::uint32_t r_points = 0, iterations = 0;
    double learning_rate = 0, fd_step = 0, sigma_margin = 0, omega_box = 0;
    double ref_omega_max = 0;
    std::uint32_t ref_samples = 0;
};

inline void save_scheme(const MellinCoeffTable& table, const std::filesystem::path& path,
                        const SchemeFileMeta& meta = {})
{
    const QuadratureScheme& s = table.scheme();
    detail::atomic_write(path, [&](detail::Writer& w) {
        w.bytes("MCQ1", 4);
        w.u32(std::uint32_t(s.M));
        w.u32(std::uint32_t(s.N));
        w.u32(std::uint32_t(s.Mp));
        w.u32(std::uint32_t(s.Q));
        w.f64(s.t);
        for (int u = -s.Mp; u <= s.Mp; ++u) {
            const std::size_t iu = std::size_t(s.u_index(u));
            w.f64(s.sigma1[iu]);
            w.f64(s.sigma2[iu]);
            for (double v : s.omega[iu]) w.f64(v);
            for (double v : s.weight[iu]) w.f64(v);
        }
        for (const cplx& v : table.pretab_raw()) w.c128(v);
        for (const cplx& v : table.hankel_raw()) w.c128(v);
        // optimization provenance (trailing metadata block)
        w.f64(meta.r_min);
        w.f64(meta.r_max);
        w.u32(meta.r_points);
        w.u32(meta.iterations);
        w.f64(meta.learning_rate);
        w.f64(meta.fd_step);
        w.f64(meta.sigma_margin);
        w.f64(meta.omega_box);
        w.f64(meta.ref_omega_max);
        w.u32(meta.ref_samples);
    });
}

inline MellinCoeffTable load_scheme(const std::filesystem::path& path,
                                    SchemeFileMeta* meta = nullptr)
{
    detail::Reader r(path);
    r.magic("MCQ1");
    QuadratureScheme s;
    s.M = int(r.u32());
    s.N = int(r.u32());
    s.Mp = int(r.u32());
    s.Q = int(r.u32());
    if (s.M < 0 || s.M > 7 || s.N < 0 || s.N > 7 || s.Mp < 0 || s.Mp > 64 || s.Q < 1
        || s.Q > 65536)
        throw FormatError("unreasonable scheme dimensions", r.offset() - 16);
    s.t = r.f64();
    s.sigma1.assign(std::size_t(2 * s.Mp + 1), 0.0);
    s.sigma2.assign(std::size_t(2 * s.Mp + 1), 0.0);
    s.omega.assign(std::size_t(2 * s.Mp + 1), {});
    s.weight.assign(std::size_t(2 * s.Mp + 1), {});
    for (int u = -s.Mp; u <= s.Mp; ++u) {
        const std::size_t iu = std::size_t(s.u_index(u));
        s.sigma1[iu] = r.f64();
        s.sigma2[iu] = r.f64();
        s.omega[iu].resize(std::size_t(s.Q));
        s.weight[iu].resize(std::size_t(s.Q));
        for (double& v : s.omega[iu]) v = r.f64();
        for (double& v : s.weight[iu]) v = r.f64();
    }
    s.check();
    MellinCoeffTable table(s); // rebuilds pretab deterministically
    for (cplx& v : table.pretab_raw()) {
        const cplx file = r.c128();
        if (std::abs(file - v) > 1e-9 * std::max(1.0, std::abs(v)))
            throw FormatError("Mellin table inconsistent with scheme", r.offset() - 16);
        v = file;
    }
    for (std::size_t k = 0; k < table.hankel_raw().size(); ++k) (void)r.c128();
    if (meta) {
        meta->r_min = r.f64();
        meta->r_max = r.f64();
        meta->r_points = r.u32();
        meta->iterations = r.u32();
        meta->learning_rate = r.f64();
        meta->fd_step = r.f64();
        meta->sigma_margin = r.f64();
        meta->omega_box = r.f64();
        meta->ref_omega_max = r.f64();
        meta->ref_samples = r.u32();
    }
    return table;
}

// ---- filter coefficients (CSV) ---------------------------------------------

inline void save_filter_csv(const LogPolarFilter& f, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "# mobius-sphere filter v1: M=" << f.angular_band() << " N=" << f.radial_band()
        << " t=" << std::hexfloat << f.localization() << std::defaultfloat << "\n";
    out << "m,s,re,im\n";
    out.precision(17);
    for (int m = -f.angular_band(); m <= f.angular_band(); ++m)
        for (int s = -f.radial_band(); s <= f.radial_band(); ++s)
            out << m << "," << s << "," << f.at(m, s).real() << "," << f.at(m, s).imag() << "\n";
}

inline LogPolarFilter load_filter_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::string header;
    std::getline(in, header);
    int M = -1, N = -1;
    double t = 0.0;
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            if (tok.rfind("M=", 0) == 0) M = std::stoi(tok.substr(2));
            if (tok.rfind("N=", 0) == 0) N = std::stoi(tok.substr(2));
            if (tok.rfind("t=", 0) == 0) t = std::stod(tok.substr(2));
        }
    }
    if (M < 0 || N < 0 || t <= 0.0 || t >= 1.0)
        throw std::runtime_error("filter csv: malformed header in " + path.string());
    LogPolarFilter f(M, N, t);
    std::string line;
    std::getline(in, line); // column names
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string cell;
        int m, s;
        double re, im;
        std::getline(ls, cell, ',');
        m = std::stoi(cell);
        std::getline(ls, cell, ',');
        s = std::stoi(cell);
        std::getline(ls, cell, ',');
        re = std::stod(cell);
        std::getline(ls, cell, ',');
        im = std::stod(cell);
        if (std::abs(m) > M || std::abs(s) > N)
            throw std::runtime_error("filter csv: index out of band in " + path.string());
        f.at(m, s) = cplx(re, im);
    }
    return f;
}

} // namespace mobius
