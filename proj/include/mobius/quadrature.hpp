#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mobius/mellin.hpp"
#include "mobius/parallel.hpp"

namespace mobius {

// Per-angular-frequency quadrature schemes for the discretized Mellin
// expansion: for each u in [-M', M'], localization values sigma1^u, sigma2^u
// and Q sample points omega_q^u with trapezoidal weights, optimized so that
// the Q-point reconstruction matches the dense inverse-Mellin reference of
// M_{msu}^t over all (m, s) in the filter band.

struct QuadratureScheme {
    int M = 0, N = 0, Mp = 0, Q = 0;
    double t = 0.15;
    // indexed by u + Mp
    std::vector<double> sigma1, sigma2;
    std::vector<std::vector<double>> omega, weight;

    int u_index(int u) const { return u + Mp; }

    void check() const
    {
        for (int u = -Mp; u <= Mp; ++u) {
            const double s1 = sigma1[std::size_t(u_index(u))];
            const double s2 = sigma2[std::size_t(u_index(u))];
            if (!(t < s1 && s1 < 2.0)) throw std::runtime_error("QuadratureScheme: sigma1 bound");
            if (!(t - 1.0 < s2 && s2 < 0.0))
                throw std::runtime_error("QuadratureScheme: sigma2 bound");
            const auto& om = omega[std::size_t(u_index(u))];
            for (std::size_t q = 1; q < om.size(); ++q)
                if (!(om[q] > om[q - 1])) throw std::runtime_error("QuadratureScheme: unsorted");
            for (double w : weight[std::size_t(u_index(u))])
                if (!(w > 0.0)) throw std::runtime_error("QuadratureScheme: weight sign");
        }
    }
};

struct OptimizeReport {
    std::vector<double> energy_trace; // accepted energy after each iteration
    double initial_energy = 0.0;
    double final_energy = 0.0;
};

namespace detail {

/// Trapezoid widths of sorted points.
inline std::vector<double> trapezoid_weights(const std::vector<double>& om)
{
    const std::size_t Q = om.size();
    std::vector<double> w(Q);
    if (Q == 1) {
        w[0] = 1.0;
        return w;
    }
    w[0] = 0.5 * (om[1] - om[0]);
    for (std::size_t q = 1; q + 1 < Q; ++q) w[q] = 0.5 * (om[q + 1] - om[q - 1]);
    w[Q - 1] = 0.5 * (om[Q - 1] - om[Q - 2]);
    return w;
}

inline std::vector<double> log_spaced(double lo, double hi, std::size_t n)
{
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i)
        r[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * double(i) / double(n - 1));
    return r;
}

/// Reconstruction-error model for one u.  Holds the dense reference values of
/// M_{msu}^t(r^2) over the filter band on the log-spaced r-grid and evaluates
/// candidate schemes; the parameter layout is fixed so finite-difference
/// probes touch only the terms a parameter feeds, which keeps the 2000 x
/// O(Q) descent affordable.
class QuadratureObjective {
public:
    QuadratureObjective(int M, int N, int u, double t, const std::vector<double>& rgrid,
                        const MellinReferenceOptions& ref)
        : M_(M), N_(N), u_(u), t_(t), r_(rgrid)
    {
        lr_.resize(r_.size());
        dr_.resize(r_.size());
        for (std::size_t i = 0; i < r_.size(); ++i) lr_[i] = std::log(r_[i]);
        for (std::size_t i = 0; i < r_.size(); ++i) {
            const double lo = i == 0 ? r_[0] : 0.5 * (r_[i] + r_[i - 1]);
            const double hi = i + 1 == r_.size() ? r_[i] : 0.5 * (r_[i] + r_[i + 1]);
            dr_[i] = hi - lo;
        }
        ref_.assign(pairs() * r_.size(), cplx(0.0));
        build_reference(ref);
    }

    /// Term indices with any nonzero coefficient: the j = 2 strip is
    /// structurally zero away from u = 0 and is skipped entirely.
    std::vector<std::size_t> live_terms(std::size_t Q) const
    {
        std::vector<std::size_t> live;
        for (std::size_t k = 0; k < 2 * Q; ++k)
            if (k < Q || u_ == 0) live.push_back(k);
        return live;
    }

    std::size_t pairs() const { return std::size_t(2 * M_ + 1) * std::size_t(2 * N_ + 1); }
    std::pair<int, int> pair(std::size_t p) const
    {
        const int m = int(p) / (2 * N_ + 1) - M_;
        const int s = int(p) % (2 * N_ + 1) - N_;
        return {m, s};
    }
    const std::vector<double>& rgrid() const { return r_; }

    // term values of one scheme: for k < Q the sigma1 strip, else sigma2
    struct Terms {
        std::vector<cplx> coeff; // pairs x 2Q, includes weight / 2pi
        std::vector<cplx> power; // 2Q x r
    };

    void fill_term(Terms& tm, std::size_t k, double s1, double s2,
                   const std::vector<double>& om, const std::vector<double>& wt) const
    {
        const std::size_t Q = om.size();
        const int j = k < Q ? 1 : 2;
        const double sig = j == 1 ? s1 : s2;
        const double w = om[k % Q];
        for (std::size_t p = 0; p < pairs(); ++p) {
            const auto [m, s] = pair(p);
            tm.coeff[p * 2 * Q + k] = wt[k % Q] * mellin_coeff(j, m, double(s), u_, t_, sig, w)
                                    / (2.0 * std::numbers::pi);
        }
        for (std::size_t i = 0; i < r_.size(); ++i)
            tm.power[k * r_.size() + i] = std::exp(cplx(sig * lr_[i], -w * lr_[i]));
    }

    Terms make_terms(double s1, double s2, const std::vector<double>& om,
                     const std::vector<double>& wt) const
    {
        Terms tm;
        const std::size_t Q = om.size();
        tm.coeff.assign(pairs() * 2 * Q, cplx(0.0));
        tm.power.assign(2 * Q * r_.size(), cplx(0.0));
        for (std::size_t k : live_terms(Q)) fill_term(tm, k, s1, s2, om, wt);
        return tm;
    }

    /// Residuals rec - ref for all (p, i).
    std::vector<cplx> residuals(const Terms& tm) const
    {
        const std::size_t Q2 = tm.power.size() / r_.size();
        const std::vector<std::size_t> live = live_terms(Q2 / 2);
        std::vector<cplx> res(ref_.size());
        for (std::size_t p = 0; p < pairs(); ++p)
            for (std::size_t i = 0; i < r_.size(); ++i) {
                cplx rec(0.0);
                for (std::size_t k : live)
                    rec += tm.coeff[p * Q2 + k] * tm.power[k * r_.size() + i];
                res[p * r_.size() + i] = rec - ref_[p * r_.size() + i];
            }
        return res;
    }

    double energy_of(const std::vector<cplx>& res) const
    {
        double e = 0.0;
        for (std::size_t p = 0; p < pairs(); ++p)
            for (std::size_t i = 0; i < r_.size(); ++i)
                e += std::norm(res[p * r_.size() + i]) * dr_[i];
        return e;
    }

    /// Energy after replacing the listed terms: new term values are given as
    /// compact (coeff, power) arrays indexed by position in `changed`.
    double energy_with(const std::vector<cplx>& res, const Terms& told,
                       const std::vector<std::size_t>& changed,
                       const std::vector<cplx>& ncoeff, const std::vector<cplx>& npower) const
    {
        const std::size_t Q2 = told.coeff.size() / pairs();
        const std::size_t nc = changed.size();
        double e = 0.0;
        for (std::size_t p = 0; p < pairs(); ++p)
            for (std::size_t i = 0; i < r_.size(); ++i) {
                cplx delta(0.0);
                for (std::size_t c = 0; c < nc; ++c) {
                    const std::size_t k = changed[c];
                    delta += ncoeff[c * pairs() + p] * npower[c * r_.size() + i]
                           - told.coeff[p * Q2 + k] * told.power[k * r_.size() + i];
                }
                e += std::norm(res[p * r_.size() + i] + delta) * dr_[i];
            }
        return e;
    }

    /// Compact term values for `fill`-style probes.
    void fill_compact(std::size_t c, std::size_t k, double s1, double s2,
                      const std::vector<double>& om, const std::vector<double>& wt,
                      std::vector<cplx>& ncoeff, std::vector<cplx>& npower) const
    {
        const std::size_t Q = om.size();
        const int j = k < Q ? 1 : 2;
        const double sig = j == 1 ? s1 : s2;
        const double w = om[k % Q];
        for (std::size_t p = 0; p < pairs(); ++p) {
            const auto [m, s] = pair(p);
            ncoeff[c * pairs() + p] = wt[k % Q] * mellin_coeff(j, m, double(s), u_, t_, sig, w)
                                    / (2.0 * std::numbers::pi);
        }
        for (std::size_t i = 0; i < r_.size(); ++i)
            npower[c * r_.size() + i] = std::exp(cplx(sig * lr_[i], -w * lr_[i]));
    }

    double reference_norm() const
    {
        double n = 0.0;
        for (std::size_t p = 0; p < pairs(); ++p)
            for (std::size_t i = 0; i < r_.size(); ++i)
                n += std::norm(ref_[p * r_.size() + i]) * dr_[i];
        return n;
    }

    /// Relative L2 error of one (m, s) reconstruction against the reference.
    double relative_error(int m, int s, double s1, double s2,
                          const std::vector<double>& om) const
    {
        const std::vector<double> wt = trapezoid_weights(om);
        const std::size_t p = std::size_t(m + M_) * std::size_t(2 * N_ + 1) + std::size_t(s + N_);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < r_.size(); ++i) {
            cplx rec(0.0);
            for (std::size_t q = 0; q < om.size(); ++q) {
                rec += wt[q] * mellin_coeff_1(m, double(s), u_, t_, s1, om[q])
                     * std::exp(cplx(s1 * lr_[i], -om[q] * lr_[i])) / (2.0 * std::numbers::pi);
                rec += wt[q] * mellin_coeff_2(m, double(s), u_, t_, s2, om[q])
                     * std::exp(cplx(s2 * lr_[i], -om[q] * lr_[i])) / (2.0 * std::numbers::pi);
            }
            num += std::norm(rec - ref_[p * r_.size() + i]) * dr_[i];
            den += std::norm(ref_[p * r_.size() + i]) * dr_[i];
        }
        return std::sqrt(num / den);
    }

private:
    // Same quadrature as meijer_reference, with the omega-samples of the
    // coefficient functions hoisted out of the r-loop and the phase factors
    // advanced by a geometric recurrence.
    void build_reference(const MellinReferenceOptions& opt)
    {
        const double s1 = opt.sigma1 > 0.0 ? opt.sigma1 : 0.5 * (t_ + sigma1_upper(u_, t_));
        const double s2 = opt.sigma2 != 0.0 ? opt.sigma2 : 0.5 * (t_ - 1.0);
        const int n = opt.samples;
        const double h = 2.0 * opt.omega_max / double(n - 1);
        auto taper = [&](double w) {
            const double aw = std::abs(w) / opt.omega_max;
            if (aw <= 0.8) return 1.0;
            const double q = (aw - 0.8) / 0.2;
            const double q4 = q * q * q * q;
            return 1.0 - q4 * (35.0 - 84.0 * q + 70.0 * q * q - 20.0 * q * q * q);
        };
        std::vector<cplx> c1(static_cast<std::size_t>(n)), c2(static_cast<std::size_t>(n));
        for (std::size_t p = 0; p < pairs(); ++p) {
            const auto [m, s] = pair(p);
            for (int k = 0; k < n; ++k) {
                const double w = -opt.omega_max + h * k;
                const double win = ((k == 0 || k == n - 1) ? 0.5 : 1.0) * taper(w)
                                 * h / (2.0 * std::numbers::pi);
                c1[std::size_t(k)] = win * mellin_coeff_1(m, double(s), u_, t_, s1, w);
                c2[std::size_t(k)] = win * mellin_coeff_2(m, double(s), u_, t_, s2, w);
            }
            for (std::size_t i = 0; i < r_.size(); ++i) {
                const double lx = 2.0 * lr_[i]; // log(r^2)
                const cplx step = std::exp(cplx(0.0, -0.5 * h * lx));
                cplx ph = std::exp(cplx(0.0, 0.5 * opt.omega_max * lx));
                const double a1 = std::exp(0.5 * s1 * lx), a2 = std::exp(0.5 * s2 * lx);
                cplx acc1(0.0), acc2(0.0);
                for (int k = 0; k < n; ++k) {
                    acc1 += c1[std::size_t(k)] * ph;
                    acc2 += c2[std::size_t(k)] * ph;
                    ph *= step;
                }
                ref_[p * r_.size() + i] = a1 * acc1 + a2 * acc2;
            }
        }
    }

    int M_, N_, u_;
    double t_;
    std::vector<double> r_;
    std::vector<double> lr_, dr_;
    std::vector<cplx> ref_;

public:
    /// Probe-support: rescale factors exp(+-step * lr_i) and exp(-+i step lr_i).
    const std::vector<double>& log_r() const { return lr_; }
};

} // namespace detail

struct OptimizeOptions {
    int iterations = 2000;
    double learning_rate = 1e-2;
    double fd_step = 1e-5;
    std::size_t r_points = 512;
    double r_min = 1e-2, r_max = 1e2;
    double init_omega_span = 10.0;
    // guard rails recorded with the scheme: sigma contours stay a fixed
    // fraction inside their admissible intervals (the strip edges carry
    // Gamma poles the descent would otherwise exploit) and nodes stay in a
    // bounded window (escaping nodes silence a component instead of
    // fitting it)
    double sigma_margin = 0.05;
    double omega_box = 25.0;
    MellinReferenceOptions reference{};
};

/// Minimize the summed reconstruction error for one u by finite-difference
/// gradient descent over (sigma1, sigma2, omega_1..omega_Q).  The sigmas are
/// kept strictly inside their admissible intervals by a logit
/// reparameterization; the step is halved whenever the energy fails to
/// decrease and the loop stops early once it underflows.
inline OptimizeReport optimize_scheme_u(int M, int N, int u, int Q, double t,
                                        double& sigma1, double& sigma2,
                                        std::vector<double>& omega,
                                        const OptimizeOptions& opt = {})
{
    if (Q < 2) throw std::invalid_argument("optimize_scheme_u: Q must be >= 2");
    const double s1_span = sigma1_upper(u, t) - t;
    const double s1_lo = t + opt.sigma_margin * s1_span;
    const double s1_hi = sigma1_upper(u, t) - opt.sigma_margin * s1_span;
    const double s2_lo = (t - 1.0) * (1.0 - opt.sigma_margin);
    const double s2_hi = (t - 1.0) * opt.sigma_margin;
    const std::vector<double> rgrid = detail::log_spaced(opt.r_min, opt.r_max, opt.r_points);
    detail::QuadratureObjective obj(M, N, u, t, rgrid, opt.reference);
    const std::size_t Qs = std::size_t(Q);

    auto to_logit = [](double v, double lo, double hi) {
        const double p = (v - lo) / (hi - lo);
        return std::log(p / (1.0 - p));
    };
    // clamped so the decoded sigma stays strictly inside (lo, hi) in floating
    // point even when the descent saturates the parameter
    auto from_logit = [](double y, double lo, double hi) {
        y = std::clamp(y, -30.0, 30.0);
        return lo + (hi - lo) / (1.0 + std::exp(-y));
    };

    // parameter vector: [logit sigma1, logit sigma2, omega_1..omega_Q]
    std::vector<double> x(2 + Qs);
    x[0] = to_logit(std::clamp(sigma1, s1_lo + 1e-6, s1_hi - 1e-6), s1_lo, s1_hi);
    x[1] = to_logit(std::clamp(sigma2, s2_lo + 1e-6, s2_hi - 1e-6), s2_lo, s2_hi);
    if (omega.size() != Qs) {
        omega.resize(Qs);
        for (int q = 0; q < Q; ++q)
            omega[std::size_t(q)] = -opt.init_omega_span
                                  + 2.0 * opt.init_omega_span * q / double(Q - 1);
    }
    std::copy(omega.begin(), omega.end(), x.begin() + 2);

    struct State {
        double s1, s2;
        std::vector<double> om, wt;
        detail::QuadratureObjective::Terms terms;
        std::vector<cplx> res;
        double energy;
    };
    auto decode = [&](const std::vector<double>& p) {
        std::vector<double> om(p.begin() + 2, p.end());
        std::sort(om.begin(), om.end());
        return std::tuple<double, double, std::vector<double>>(
            from_logit(p[0], s1_lo, s1_hi), from_logit(p[1], s2_lo, s2_hi), std::move(om));
    };
    auto make_state = [&](const std::vector<double>& p) {
        State st;
        std::tie(st.s1, st.s2, st.om) = decode(p);
        st.wt = detail::trapezoid_weights(st.om);
        st.terms = obj.make_terms(st.s1, st.s2, st.om, st.wt);
        st.res = obj.residuals(st.terms);
        st.energy = obj.energy_of(st.res);
        return st;
    };

    // energy of a single-parameter probe; affected term powers are rescaled
    // elementwise (the omega step is a fixed phase factor, the sigma step a
    // fixed amplitude factor), so probes need no fresh exponentials beyond
    // the handful of Mellin coefficients that actually move
    const std::vector<double>& lrv = obj.log_r();
    std::vector<cplx> wstep_p(lrv.size()), wstep_m(lrv.size());
    for (std::size_t i = 0; i < lrv.size(); ++i) {
        wstep_p[i] = std::exp(cplx(0.0, -opt.fd_step * lrv[i]));
        wstep_m[i] = std::conj(wstep_p[i]);
    }
    std::vector<cplx> ncoeff, npower;
    auto probe = [&](const State& st, std::size_t k, double step) {
        const std::size_t P = obj.pairs();
        std::vector<std::size_t> changed;
        if (k == 1 && u != 0) return st.energy; // j = 2 strip structurally zero
        if (k <= 1) {
            // sigma move: all terms of one strip rescale in amplitude
            const double siglo = k == 0 ? s1_lo : s2_lo;
            const double sighi = k == 0 ? s1_hi : s2_hi;
            const double sig0 = k == 0 ? st.s1 : st.s2;
            const double sig = from_logit(to_logit(sig0, siglo, sighi) + step, siglo, sighi);
            const double dsig = sig - sig0;
            const std::size_t base = k == 0 ? 0 : Qs;
            changed.resize(Qs);
            ncoeff.resize(Qs * P);
            npower.resize(Qs * lrv.size());
            for (std::size_t q = 0; q < Qs; ++q) {
                changed[q] = base + q;
                for (std::size_t pp = 0; pp < P; ++pp) {
                    const auto [m, sfreq] = obj.pair(pp);
                    ncoeff[q * P + pp] = st.wt[q]
                        * mellin_coeff(k == 0 ? 1 : 2, m, double(sfreq), u, t, sig, st.om[q])
                        / (2.0 * std::numbers::pi);
                }
                for (std::size_t i = 0; i < lrv.size(); ++i)
                    npower[q * lrv.size() + i] = st.terms.power[(base + q) * lrv.size() + i]
                                              * std::exp(dsig * lrv[i]);
            }
            return obj.energy_with(st.res, st.terms, changed, ncoeff, npower);
        }
        // omega move: the q-th point shifts by +-fd_step (order flips are
        // impossible at this scale unless points coincide, which the weights
        // keep apart); both strips' q-terms move, neighbor weights rescale
        const std::size_t q = k - 2;
        const double om_new = st.om[q] + step;
        std::vector<double> om = st.om;
        om[q] = om_new;
        const std::vector<double> wt = detail::trapezoid_weights(om);
        changed.clear();
        for (std::size_t qq = 0; qq < Qs; ++qq)
            if (qq == q || wt[qq] != st.wt[qq]) {
                changed.push_back(qq);
                if (u == 0) changed.push_back(Qs + qq);
            }
        ncoeff.resize(changed.size() * P);
        npower.resize(changed.size() * lrv.size());
        const std::vector<cplx>& ph = step > 0.0 ? wstep_p : wstep_m;
        for (std::size_t c = 0; c < changed.size(); ++c) {
            const std::size_t kk = changed[c];
            const std::size_t qq = kk % Qs;
            const int j = kk < Qs ? 1 : 2;
            const double sig = j == 1 ? st.s1 : st.s2;
            if (qq == q) {
                for (std::size_t pp = 0; pp < P; ++pp) {
                    const auto [m, sfreq] = obj.pair(pp);
                    ncoeff[c * P + pp] = wt[qq]
                        * mellin_coeff(j, m, double(sfreq), u, t, sig, om_new)
                        / (2.0 * std::numbers::pi);
                }
                for (std::size_t i = 0; i < lrv.size(); ++i)
                    npower[c * lrv.size() + i] = st.terms.power[kk * lrv.size() + i] * ph[i];
            } else {
                const double scale = wt[qq] / st.wt[qq];
                for (std::size_t pp = 0; pp < P; ++pp)
                    ncoeff[c * P + pp] = st.terms.coeff[pp * 2 * Qs + kk] * scale;
                for (std::size_t i = 0; i < lrv.size(); ++i)
                    npower[c * lrv.size() + i] = st.terms.power[kk * lrv.size() + i];
            }
        }
        return obj.energy_with(st.res, st.terms, changed, ncoeff, npower);
    };

    State cur = make_state(x);
    OptimizeReport report;
    report.initial_energy = cur.energy;

    // the descent runs on the norm-normalized energy (identical minimizers,
    // step sizes independent of the reference magnitude)
    const double scale = 1.0 / std::max(1e-300, obj.reference_norm());

    double lr = opt.learning_rate;
    std::vector<double> grad(x.size());
    for (int iter = 0; iter < opt.iterations; ++iter) {
        for (std::size_t k = 0; k < x.size(); ++k)
            grad[k] = scale * (probe(cur, k, opt.fd_step) - probe(cur, k, -opt.fd_step))
                    / (2.0 * opt.fd_step);
        std::vector<double> trial = x;
        for (std::size_t k = 0; k < x.size(); ++k) trial[k] -= lr * grad[k];
        bool inside = true;
        for (std::size_t k = 2; k < trial.size(); ++k)
            if (std::abs(trial[k]) > opt.omega_box) inside = false;
        State tst = make_state(trial);
        if (inside && tst.energy < cur.energy) {
            x = trial;
            // canonicalize: keep the omega block sorted so probe indices
            // track sorted positions across iterations
            x[0] = to_logit(tst.s1, s1_lo, s1_hi);
            x[1] = to_logit(tst.s2, s2_lo, s2_hi);
            std::copy(tst.om.begin(), tst.om.end(), x.begin() + 2);
            cur = std::move(tst);
        } else {
            lr *= 0.5;
            if (lr < 1e-12) {
                report.energy_trace.push_back(cur.energy);
                break;
            }
        }
        report.energy_trace.push_back(cur.energy);
    }
    report.final_energy = cur.energy;

    sigma1 = cur.s1;
    sigma2 = cur.s2;
    omega = cur.om;
    return report;
}

/// Build the full optimized scheme.  Only u >= 0 is optimized; the scheme for
/// -u is the exact mirror (same sigmas, negated reversed points), optimal by
/// the (m,s,u,omega) -> (-m,-s,-u,-omega) symmetry of the weighted
/// coefficients, and what makes real filters transform to real fields.
inline QuadratureScheme optimize_quadrature(int M, int N, int Mp, int Q, double t,
                                            const OptimizeOptions& opt = {},
                                            std::vector<OptimizeReport>* reports = nullptr)
{
    QuadratureScheme s;
    s.M = M;
    s.N = N;
    s.Mp = Mp;
    s.Q = Q;
    s.t = t;
    s.sigma1.assign(std::size_t(2 * Mp + 1), 0.0);
    s.sigma2.assign(std::size_t(2 * Mp + 1), 0.0);
    s.omega.assign(std::size_t(2 * Mp + 1), {});
    s.weight.assign(std::size_t(2 * Mp + 1), {});
    if (reports) reports->assign(std::size_t(Mp) + 1, {});

    parallel_for(std::size_t(Mp) + 1, [&](std::size_t uu) {
        const int u = int(uu);
        double s1 = 0.5 * (t + sigma1_upper(u, t));
        double s2 = 0.5 * (t - 1.0);
        std::vector<double> om;
        OptimizeReport rep = optimize_scheme_u(M, N, u, Q, t, s1, s2, om, opt);
        const std::size_t iu = std::size_t(s.u_index(u));
        s.sigma1[iu] = s1;
        s.sigma2[iu] = s2;
        s.omega[iu] = om;
        s.weight[iu] = detail::trapezoid_weights(om);
        if (reports) (*reports)[uu] = std::move(rep);
    });
    for (int u = 1; u <= Mp; ++u) {
        const std::size_t iu = std::size_t(s.u_index(u));
        const std::size_t im = std::size_t(s.u_index(-u));
        s.sigma1[im] = s.sigma1[iu];
        s.sigma2[im] = s.sigma2[iu];
        std::vector<double> om = s.omega[iu];
        std::reverse(om.begin(), om.end());
        for (double& w : om) w = -w;
        s.omega[im] = om;
        std::vector<double> wt = s.weight[iu];
        std::reverse(wt.begin(), wt.end());
        s.weight[im] = wt;
    }
    s.check();
    return s;
}

} // namespace mobius
