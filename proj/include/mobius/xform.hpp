#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mobius/logpolar.hpp"
#include "mobius/quadrature.hpp"

namespace mobius {

// Expansion of the action of lower-triangular elements on log-polar filters:
//   L B_{ms}^t = sum_u int sum_j xi_j^{u om}(m, s; L) B_{u om}^{sigma_j} dom,
// with, for L = [[a,0],[n,1/a]] and n != 0,
//   xi_{1,2} = (-1)^{m+u} (R_{ms}/2pi) B_{-u,-om}^{-sigma_j}(a^2)
//              B_{u-m, om-s}^{sigma_j - t}(an) jM_{msu}^{t,sigma_j}(om),
// and for n = 0 the exact single-term branch
//   xi_3 = delta_{mu} delta(s - om) B_{-m,-s}^{-t}(a^2), sigma_3 = t.
// The (-1)^{m+u} phase comes from the two inversion conjugations
// (J B_{ms}^t = (-1)^m B_{-m,-s}^{-t}).

/// Runtime shear substitution: |an| is clamped from below to a small
/// constant.  The expansion coefficients carry |an|^{t - sigma_1} ~
/// |an|^{-0.9}, so frames with near-vanishing shear would amplify the
/// quadrature error without bound; lifting them onto the |an| = eps shell
/// keeps the n != 0 branches well conditioned everywhere.
inline LowerTriangular epsilon_substitute(const LowerTriangular& L, double eps = 0.05)
{
    const cplx an = L.a * L.n;
    const double mag = std::abs(an);
    if (mag >= eps) return L;
    if (mag == 0.0) return LowerTriangular(L.a, eps / L.a);
    return LowerTriangular(L.a, L.n * (eps / mag));
}

/// One xi branch at arbitrary (u, omega).  For j = 3 the returned value is
/// the factor multiplying the (never discretized) delta(s - omega); callers
/// take the exact path by evaluating at omega = s.
inline cplx xi(int j, int u, double omega, int m, double s, double t, double sigma,
               const LowerTriangular& L)
{
    const bool n_zero = L.n == cplx(0.0);
    if (j == 3) {
        if (!n_zero || u != m) return 0.0;
        const cplx a2 = L.a * L.a;
        const double la = std::log(std::abs(a2));
        return std::exp(cplx(sigma * la, -s * la - m * std::arg(a2)));
    }
    if (j != 1 && j != 2) throw std::invalid_argument("xi: j must be 1, 2 or 3");
    if (n_zero) return 0.0;
    const cplx a2 = L.a * L.a;
    const cplx an = L.a * L.n;
    const double la2 = std::log(std::abs(a2)), pa2 = std::arg(a2);
    const double lan = std::log(std::abs(an)), kan = std::arg(an);
    // B^{-sigma}_{-u,-omega}(a^2) * B^{sigma-t}_{u-m, omega-s}(an)
    const double mod = sigma * (la2 - lan) + t * lan;
    const double ph = -omega * (la2 - lan) - s * lan - u * pa2 + (u - m) * kan;
    const cplx geom = std::exp(mod) * cplx(std::cos(ph), std::sin(ph));
    const double sgn = ((m + u) % 2) ? -1.0 : 1.0;
    return sgn * hankel_prefactor(m, s, t) / (2.0 * std::numbers::pi)
         * geom * mellin_coeff(j, m, s, u, t, sigma, omega);
}

/// One term of the discretized expansion: basis index and quadrature data.
struct BasisSlot {
    int j;        // Mellin strip
    int u;        // angular frequency
    double sigma; // localization of the output basis
    double omega; // radial frequency sample
    double weight;
};

/// The (2M'+2) x Q slot list of the runtime approximation: j = 1 over all u,
/// j = 2 only at u = 0 (its coefficients vanish elsewhere).
inline std::vector<BasisSlot> basis_slots(const QuadratureScheme& s)
{
    std::vector<BasisSlot> slots;
    slots.reserve(std::size_t(2 * s.Mp + 2) * std::size_t(s.Q));
    for (int u = -s.Mp; u <= s.Mp; ++u) {
        const std::size_t iu = std::size_t(s.u_index(u));
        for (int q = 0; q < s.Q; ++q)
            slots.push_back({1, u, s.sigma1[iu], s.omega[iu][std::size_t(q)],
                             s.weight[iu][std::size_t(q)]});
    }
    const std::size_t i0 = std::size_t(s.u_index(0));
    for (int q = 0; q < s.Q; ++q)
        slots.push_back({2, 0, s.sigma2[i0], s.omega[i0][std::size_t(q)],
                         s.weight[i0][std::size_t(q)]});
    return slots;
}

/// Pretabulated L-independent part of xi over the scheme's quadrature points:
/// P[slot][m][s] = (-1)^{m+u} R(m,s,t) jM_{msu}^{t,sigma_j}(omega_q) / 2pi,
/// plus the R values themselves.
class MellinCoeffTable {
public:
    MellinCoeffTable() = default;

    explicit MellinCoeffTable(const QuadratureScheme& scheme) : scheme_(scheme)
    {
        if (scheme.M > 7 || scheme.N > 7)
            throw std::invalid_argument("MellinCoeffTable: filter band too large");
        slots_ = basis_slots(scheme);
        const int M = scheme.M, N = scheme.N;
        pair_count_ = std::size_t(2 * M + 1) * std::size_t(2 * N + 1);
        pretab_.assign(slots_.size() * pair_count_, cplx(0.0));
        hankel_.assign(pair_count_, cplx(0.0));
        for (int m = -M; m <= M; ++m)
            for (int s = -N; s <= N; ++s)
                hankel_[pair_index(m, s)] = hankel_prefactor(m, double(s), scheme.t);
        for (std::size_t k = 0; k < slots_.size(); ++k) {
            const BasisSlot& sl = slots_[k];
            for (int m = -M; m <= M; ++m)
                for (int s = -N; s <= N; ++s) {
                    const double sgn = ((m + sl.u) % 2) ? -1.0 : 1.0;
                    pretab_[k * pair_count_ + pair_index(m, s)] =
                        sgn * hankel_[pair_index(m, s)]
                        * mellin_coeff(sl.j, m, double(s), sl.u, scheme.t, sl.sigma, sl.omega)
                        / (2.0 * std::numbers::pi);
                }
        }
    }

    const QuadratureScheme& scheme() const { return scheme_; }
    const std::vector<BasisSlot>& slots() const { return slots_; }
    std::size_t pair_index(int m, int s) const
    {
        return std::size_t(m + scheme_.M) * std::size_t(2 * scheme_.N + 1)
             + std::size_t(s + scheme_.N);
    }
    cplx pretab(std::size_t slot, int m, int s) const
    {
        return pretab_[slot * pair_count_ + pair_index(m, s)];
    }
    cplx hankel(int m, int s) const { return hankel_[pair_index(m, s)]; }
    const std::vector<cplx>& pretab_raw() const { return pretab_; }
    std::vector<cplx>& pretab_raw() { return pretab_; }
    const std::vector<cplx>& hankel_raw() const { return hankel_; }

    /// zeta for every slot at one frame value (n already epsilon-substituted):
    /// zeta_k = sum_{ms} b_{ms} xi_k(m, s; L).
    void zeta_block(const LowerTriangular& L, const LogPolarFilter& b,
                    cplx* out) const
    {
        const int M = scheme_.M, N = scheme_.N;
        const double t = scheme_.t;
        const cplx a2 = L.a * L.a;
        const cplx an = L.a * L.n;
        const double la2 = std::log(std::abs(a2)), pa2 = std::arg(a2);
        const double lan = std::log(std::abs(an)), kan = std::arg(an);

        // b_{ms} e^{-im kappa} |an|^{-is}, shared across slots
        cplx bp[16][16];
        for (int m = -M; m <= M; ++m)
            for (int s = -N; s <= N; ++s) {
                const double ph = -m * kan - s * lan;
                bp[m + M][s + N] = b.at(m, s) * cplx(std::cos(ph), std::sin(ph));
            }

        const double dl = la2 - lan;
        for (std::size_t k = 0; k < slots_.size(); ++k) {
            const BasisSlot& sl = slots_[k];
            const double mod = sl.sigma * dl + t * lan;
            const double ph = -sl.omega * dl + sl.u * (kan - pa2);
            const cplx geom = std::exp(mod) * cplx(std::cos(ph), std::sin(ph));
            cplx acc(0.0);
            const cplx* row = pretab_.data() + k * pair_count_;
            for (int m = -M; m <= M; ++m)
                for (int s = -N; s <= N; ++s)
                    acc += bp[m + M][s + N] * row[pair_index(m, s)];
            out[k] = geom * acc;
        }
    }

private:
    QuadratureScheme scheme_;
    std::vector<BasisSlot> slots_;
    std::size_t pair_count_ = 0;
    std::vector<cplx> pretab_;
    std::vector<cplx> hankel_;
};

/// Single zeta coefficient (linear in the filter coefficients).
inline cplx zeta(int j, int u, int q, const MellinCoeffTable& table, const LogPolarFilter& b,
                 const LowerTriangular& L)
{
    const QuadratureScheme& s = table.scheme();
    std::size_t k;
    if (j == 1) {
        k = std::size_t(u + s.Mp) * std::size_t(s.Q) + std::size_t(q);
    } else if (j == 2) {
        if (u != 0) return 0.0;
        k = std::size_t(2 * s.Mp + 1) * std::size_t(s.Q) + std::size_t(q);
    } else {
        throw std::invalid_argument("zeta: j must be 1 or 2");
    }
    std::vector<cplx> block(table.slots().size());
    table.zeta_block(L, b, block.data());
    return block[k];
}

/// Discretized transformation of a filter by one lower-triangular element:
/// grid samples of sum_k w_q zeta_k B^{sigma_j}_{u, omega_q}.  Real filters
/// give a real result up to roundoff (mirrored schemes pair conjugate slots).
inline ComplexGrid transform_filter(const LowerTriangular& L, const LogPolarFilter& f,
                                    const MellinCoeffTable& table, const GridSpec& spec)
{
    const LowerTriangular Ls = epsilon_substitute(L);
    const auto& slots = table.slots();
    std::vector<cplx> zb(slots.size());
    table.zeta_block(Ls, f, zb.data());

    ComplexGrid out(spec, 1);
    for (int i = 0; i < spec.rings(); ++i)
        for (int j = 0; j < spec.columns(); ++j) {
            const cplx z = spec.point(i, j);
            const double lr = std::log(std::abs(z));
            const double az = std::arg(z);
            cplx acc(0.0);
            for (std::size_t k = 0; k < slots.size(); ++k) {
                const BasisSlot& sl = slots[k];
                const double ph = sl.omega * lr + sl.u * az;
                acc += sl.weight * zb[k] * std::exp(-sl.sigma * lr)
                     * cplx(std::cos(ph), std::sin(ph));
            }
            out.at(0, i, j) = acc;
        }
    return out;
}

} // namespace mobius
