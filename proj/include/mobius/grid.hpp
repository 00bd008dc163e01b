#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mobius/geometry.hpp"

namespace mobius {

/// 2B x 2B equiangular grid offset from the poles:
/// theta_i = pi (2i+1) / (4B), phi_j = pi j / B.
struct GridSpec {
    int band_limit = 0;

    GridSpec() = default;
    explicit GridSpec(int B) : band_limit(B)
    {
        if (B < 1) throw std::invalid_argument("GridSpec: band limit must be positive");
    }

    int rings() const { return 2 * band_limit; }
    int columns() const { return 2 * band_limit; }
    std::size_t points() const { return std::size_t(rings()) * std::size_t(columns()); }

    double theta(int i) const
    {
        return std::numbers::pi * (2.0 * i + 1.0) / (4.0 * band_limit);
    }
    double phi(int j) const { return std::numbers::pi * double(j) / double(band_limit); }

    /// Stereographic image tan(theta/2) e^{i phi}; finite and nonzero everywhere.
    cplx point(int i, int j) const
    {
        const double r = std::tan(0.5 * theta(i));
        return cplx(r * std::cos(phi(j)), r * std::sin(phi(j)));
    }

    bool operator==(const GridSpec& o) const { return band_limit == o.band_limit; }
};

/// C-channel samples on a GridSpec; T is double or cplx.
template <class T>
class SphericalGrid {
public:
    SphericalGrid() = default;
    SphericalGrid(GridSpec spec, int channels)
        : spec_(spec), channels_(channels),
          data_(std::size_t(channels) * spec.points(), T{})
    {
        if (channels < 1) throw std::invalid_argument("SphericalGrid: channels must be positive");
    }

    const GridSpec& spec() const { return spec_; }
    int channels() const { return channels_; }
    int band_limit() const { return spec_.band_limit; }

    T* channel(int c) { return data_.data() + std::size_t(c) * spec_.points(); }
    const T* channel(int c) const { return data_.data() + std::size_t(c) * spec_.points(); }

    T& at(int c, int i, int j)
    {
        return data_[std::size_t(c) * spec_.points()
                     + std::size_t(i) * std::size_t(spec_.columns()) + std::size_t(j)];
    }
    T at(int c, int i, int j) const
    {
        return data_[std::size_t(c) * spec_.points()
                     + std::size_t(i) * std::size_t(spec_.columns()) + std::size_t(j)];
    }

    std::vector<T>& raw() { return data_; }
    const std::vector<T>& raw() const { return data_; }

private:
    GridSpec spec_;
    int channels_ = 0;
    std::vector<T> data_;
};

using RealGrid = SphericalGrid<double>;
using ComplexGrid = SphericalGrid<cplx>;

/// Colatitude quadrature weights for the offset grid: the unique w with
/// sum_i w_i u(cos theta_i) = int_0^pi u(cos theta) sin theta dtheta for all
/// polynomials u of degree < 2B (solved in closed form through the DCT basis).
inline std::vector<double> colatitude_weights(int B)
{
    const int N = 2 * B;
    std::vector<double> w(std::size_t(N), 0.0);
    for (int i = 0; i < N; ++i) {
        const double th = std::numbers::pi * (2.0 * i + 1.0) / (2.0 * N);
        double acc = 1.0; // c_0 / 2 with c_0 = 2
        for (int k = 2; k < N; k += 2) acc += 2.0 / (1.0 - double(k) * k) * std::cos(k * th);
        w[std::size_t(i)] = 2.0 / double(N) * acc;
    }
    return w;
}

} // namespace mobius
