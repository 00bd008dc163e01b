#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "mobius/wigner.hpp"

namespace mobius {

/// A point of the Riemann sphere: a finite complex number or the point at
/// infinity.  Arithmetic near infinity is routed through the chart w = 1/z.
class ExtComplex {
public:
    ExtComplex() : v_(0.0), inf_(false) {}
    ExtComplex(cplx v) : v_(v), inf_(false) {}
    ExtComplex(double v) : v_(v), inf_(false) {}
    static ExtComplex infinity()
    {
        ExtComplex z;
        z.inf_ = true;
        return z;
    }

    bool is_inf() const { return inf_; }
    cplx value() const
    {
        if (inf_) throw std::domain_error("ExtComplex: value() at infinity");
        return v_;
    }
    /// 1/z as a chart value (0 when z is the point at infinity).
    cplx recip() const
    {
        if (inf_) return 0.0;
        if (v_ == cplx(0.0)) throw std::domain_error("ExtComplex: recip() at zero");
        return 1.0 / v_;
    }
    double abs() const { return inf_ ? std::numeric_limits<double>::infinity() : std::abs(v_); }

    friend bool approx_equal(const ExtComplex& x, const ExtComplex& y, double tol)
    {
        if (x.inf_ || y.inf_) {
            // compare in the reciprocal chart
            const cplx wx = x.inf_ ? cplx(0.0) : (std::abs(x.v_) > 1.0 ? 1.0 / x.v_ : cplx(0.0));
            const cplx wy = y.inf_ ? cplx(0.0) : (std::abs(y.v_) > 1.0 ? 1.0 / y.v_ : cplx(0.0));
            if (x.inf_ != y.inf_ && (std::abs(x.abs()) <= 1.0 || std::abs(y.abs()) <= 1.0))
                return false;
            return std::abs(wx - wy) <= tol;
        }
        return std::abs(x.v_ - y.v_) <= tol * std::max(1.0, std::max(std::abs(x.v_), std::abs(y.v_)));
    }

private:
    cplx v_;
    bool inf_;
};

/// Element of SL(2, C) acting on the Riemann sphere by z -> (az+b)/(cz+d).
/// Renormalized to unit determinant on construction (principal square root).
class MobiusTransform {
public:
    cplx a, b, c, d;

    MobiusTransform() : a(1.0), b(0.0), c(0.0), d(1.0) {}
    MobiusTransform(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_)
    {
        normalize();
    }

    static MobiusTransform identity() { return {}; }
    /// J = [[0,-1],[1,0]], the involution z -> -1/z.
    static MobiusTransform inversion() { return MobiusTransform(0.0, -1.0, 1.0, 0.0); }

    cplx det() const { return a * d - b * c; }

    void normalize()
    {
        const cplx s = std::sqrt(det());
        if (s == cplx(0.0)) throw std::invalid_argument("MobiusTransform: singular matrix");
        a /= s;
        b /= s;
        c /= s;
        d /= s;
    }

    MobiusTransform operator*(const MobiusTransform& o) const
    {
        return MobiusTransform(a * o.a + b * o.c, a * o.b + b * o.d,
                               c * o.a + d * o.c, c * o.b + d * o.d);
    }

    MobiusTransform inverse() const { return MobiusTransform(d, -b, -c, a); }

    /// Fractional linear action on the extended plane; poles map to infinity.
    ExtComplex apply(const ExtComplex& z) const
    {
        if (z.is_inf() || z.abs() > 1.0) {
            const cplx w = z.recip();
            const cplx num = a + b * w;
            const cplx den = c + d * w;
            if (den == cplx(0.0)) return ExtComplex::infinity();
            return ExtComplex(num / den);
        }
        const cplx zz = z.value();
        const cplx num = a * zz + b;
        const cplx den = c * zz + d;
        if (den == cplx(0.0)) return ExtComplex::infinity();
        return ExtComplex(num / den);
    }

    bool is_unitary(double tol = 1e-9) const
    {
        return std::abs(d - std::conj(a)) <= tol && std::abs(c + std::conj(b)) <= tol;
    }
};

/// Lower-triangular element [[a, 0], [n, 1/a]] of SL(2, C): the
/// origin-preserving subgroup combining rotation, dilation and a second-order
/// shear n.
struct LowerTriangular {
    cplx a, n;

    LowerTriangular() : a(1.0), n(0.0) {}
    LowerTriangular(cplx a_, cplx n_) : a(a_), n(n_)
    {
        if (a == cplx(0.0)) throw std::invalid_argument("LowerTriangular: a must be nonzero");
    }

    MobiusTransform matrix() const { return MobiusTransform(a, 0.0, n, 1.0 / a); }
    LowerTriangular inverse() const { return LowerTriangular(1.0 / a, -n); }
    LowerTriangular operator*(const LowerTriangular& o) const
    {
        return LowerTriangular(a * o.a, n * o.a + o.n / a);
    }
    ExtComplex apply_inverse(cplx z) const
    {
        // L^{-1} z = z / (a^2 - a n z)
        const cplx den = a * a - a * n * z;
        if (den == cplx(0.0)) return ExtComplex::infinity();
        return ExtComplex(z / den);
    }
};

/// Generalized logarithm: the SU(2) rotation taking z to the origin that maps
/// the great circle through the origin and z to the real line.  gen_log(inf)
/// is the pi-rotation [[0,-1],[1,0]] by convention.
inline MobiusTransform gen_log(const ExtComplex& z)
{
    if (z.is_inf()) return MobiusTransform(0.0, -1.0, 1.0, 0.0);
    const cplx zz = z.value();
    if (zz == cplx(0.0)) return MobiusTransform::identity();
    // With z = tan(theta/2) e^{i phi}:
    //   log_z = [[cos(theta/2) e^{-i phi/2}, -sin(theta/2) e^{+i phi/2}],
    //            [sin(theta/2) e^{-i phi/2},  cos(theta/2) e^{+i phi/2}]]
    double ch, sh; // cos(theta/2), sin(theta/2)
    double phi;
    if (std::abs(zz) <= 1.0) {
        const double r = std::abs(zz);
        const double q = std::sqrt(1.0 + r * r);
        ch = 1.0 / q;
        sh = r / q;
        phi = std::arg(zz);
    } else {
        const cplx w = 1.0 / zz;
        const double rw = std::abs(w);
        const double q = std::sqrt(1.0 + rw * rw);
        ch = rw / q;
        sh = 1.0 / q;
        phi = -std::arg(w);
    }
    const cplx em(std::cos(0.5 * phi), -std::sin(0.5 * phi)); // e^{-i phi/2}
    const cplx ep = std::conj(em);
    return MobiusTransform(ch * em, -sh * ep, sh * em, ch * ep);
}

/// Inverse of the generalized logarithm.
inline MobiusTransform gen_exp(const ExtComplex& z) { return gen_log(z).inverse(); }

/// D_z^g = log_{gz} o g o exp_z, guaranteed lower-triangular; the residual
/// upper-right entry is checked against tol and zeroed.
inline LowerTriangular frame_transform(const MobiusTransform& g, const ExtComplex& z,
                                       double tol = 1e-8)
{
    const ExtComplex gz = g.apply(z);
    const MobiusTransform m = gen_log(gz) * g * gen_exp(z);
    if (std::abs(m.b) > tol)
        throw std::runtime_error("frame_transform: result not lower-triangular");
    return LowerTriangular(m.a, m.c);
}

/// Conformal scale factor lambda_g(z) = (1+|z|^2)^2 / (|az+b|^2 + |cz+d|^2)^2.
inline double scale_factor(const MobiusTransform& g, const ExtComplex& z)
{
    if (z.is_inf() || z.abs() > 1.0) {
        const cplx w = z.recip();
        const double num = 1.0 + std::norm(w);
        const double den = std::norm(g.a + g.b * w) + std::norm(g.c + g.d * w);
        return (num * num) / (den * den);
    }
    const cplx zz = z.value();
    const double num = 1.0 + std::norm(zz);
    const double den = std::norm(g.a * zz + g.b) + std::norm(g.c * zz + g.d);
    return (num * num) / (den * den);
}

/// Holomorphic derivative of the fractional linear map at x: 1/(cx+d)^2.
inline cplx mobius_diff(const MobiusTransform& g, const ExtComplex& x)
{
    const cplx den = g.c * x.value() + g.d;
    if (den == cplx(0.0)) throw std::domain_error("mobius_diff: evaluation at a pole");
    return 1.0 / (den * den);
}

/// Second holomorphic derivative at the origin: -2c/d^3.
inline cplx mobius_hess0(const MobiusTransform& g)
{
    if (g.d == cplx(0.0)) throw std::domain_error("mobius_hess0: evaluation at a pole");
    return -2.0 * g.c / (g.d * g.d * g.d);
}

/// Haar-uniform SU(2) element (normalized 4-Gaussian quaternion).
inline MobiusTransform random_su2(std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    double q0 = gauss(rng), q1 = gauss(rng), q2 = gauss(rng), q3 = gauss(rng);
    const double nrm = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
    q0 /= nrm;
    q1 /= nrm;
    q2 /= nrm;
    q3 /= nrm;
    const cplx a(q0, q1), b(q2, q3);
    return MobiusTransform(a, b, -std::conj(b), std::conj(a));
}

/// Random Mobius transformation with a prescribed maximal conformal scale
/// factor: g = R1 diag(alpha^{1/4}, alpha^{-1/4}) R2 with R1, R2 Haar-uniform
/// in SU(2); max_z lambda_g(z) = max_scale exactly.
inline MobiusTransform sample_transform(double max_scale, std::mt19937_64& rng)
{
    if (max_scale < 1.0) throw std::invalid_argument("sample_transform: max_scale must be >= 1");
    const MobiusTransform r1 = random_su2(rng);
    const MobiusTransform r2 = random_su2(rng);
    const double s = std::pow(max_scale, 0.25);
    const MobiusTransform diag(s, 0.0, 0.0, 1.0 / s);
    return r1 * diag * r2;
}

/// Wigner-D of an SU(2) element (Cayley-Klein parameters of g).
inline cplx wigner_D(int l, int m, int n, const MobiusTransform& g)
{
    if (!g.is_unitary()) throw std::invalid_argument("wigner_D: g must be unitary");
    return wigner_D_cayley(l, m, n, g.a, g.b);
}

} // namespace mobius
