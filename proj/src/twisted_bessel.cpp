#include "lab/twisted_bessel.hpp"

#include "lab/bessel.hpp"
#include "lab/bump.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lab {

namespace {

double kappa_of(const TwistedAverageParams& p) {
    if (p.phase_sign_override != 0)
        return double(p.phase_sign_override);
    return p.kind == BesselKind::k_tilde_kind ? -1.0 : 1.0;
}

double kernel_eval(BesselKind kind, double T1, double y, double tol) {
    switch (kind) {
    case BesselKind::k_tilde_kind:
        return k_tilde(T1, y, tol);
    case BesselKind::j_minus_kind:
        return j_minus(T1, y, tol);
    default:
        return j_plus(T1, y, tol);
    }
}

double t_scale(const TwistedAverageParams& p) {
    return std::max(std::abs(p.T1), std::abs(p.T2));
}

double phi_prime(const TwistedAverageParams& p, double v) {
    double a = p.eps1 * p.alpha;
    double k = kappa_of(p);
    return (-a / p.T2) * (p.R - k / (p.R * v * v));
}

double phi_second(const TwistedAverageParams& p, double v) {
    double a = p.eps1 * p.alpha;
    double k = kappa_of(p);
    return (-a / p.T2) * (2.0 * k / (p.R * v * v * v));
}

double phase_second(const TwistedAverageParams& p, double v) {
    double phi = phi_fn(p, v);
    double d1 = phi_prime(p, v);
    double d2 = phi_second(p, v);
    return -p.T2 * (d2 * phi - d1 * d1) / (phi * phi) - p.eps2 * p.T1 / (v * v);
}

} // namespace

void check_twisted_params(const TwistedAverageParams& p) {
    if (p.kind != BesselKind::k_tilde_kind && p.kind != BesselKind::j_minus_kind)
        throw std::domain_error("twisted params: the dyadic machinery covers only "
                                "the ktilde and jminus kinds");
    if (!(p.alpha > 0.0))
        throw std::domain_error("twisted params: alpha must be > 0");
    if (!(p.R > 0.0))
        throw std::domain_error("twisted params: R must be > 0");
    if (p.T1 == 0.0 || p.T2 == 0.0)
        throw std::domain_error("twisted params: T1, T2 must be nonzero");
    double ratio = std::abs(p.T1) / std::abs(p.T2);
    if (ratio < 0.25 || ratio > 4.0)
        throw std::domain_error("twisted params: |T1/T2| must lie in [1/4, 4]");
    if (std::abs(p.eps1) != 1 || std::abs(p.eps2) != 1)
        throw std::domain_error("twisted params: eps1, eps2 must be +-1");
    if (p.phase_sign_override < -1 || p.phase_sign_override > 1)
        throw std::domain_error("twisted params: phase_sign_override must be -1, 0 or 1");
    if (t_scale(p) <= 1.0)
        throw std::domain_error("twisted params: max(|T1|, |T2|) must exceed 1");
}

double weight_U(double x) {
    if (x <= 0.0)
        return 0.0;
    return 2.0 * x * bump(2.0 * x * x - 3.0);
}

double dyadic_F(double x) {
    if (x <= 0.0)
        return 0.0;
    return bump(0.5 * x) - bump(x);
}

double phi_fn(const TwistedAverageParams& p, double v) {
    double a = p.eps1 * p.alpha;
    double k = kappa_of(p);
    return (-TWO_PI / p.T2) * ((a / TWO_PI) * (p.R * v + k / (p.R * v)) + p.U);
}

double script_W(const TwistedAverageParams& p, double y) {
    if (y < 1e-300)
        return 0.0;
    double w = weight_U(1.0 / y);
    if (w == 0.0)
        return 0.0;
    return TWO_PI * std::sqrt(t_scale(p) / std::abs(p.T2)) * w / y;
}

double omega_fn(const TwistedAverageParams& p, double v) {
    double f = dyadic_F(v - 1.0 / p.R);
    if (f == 0.0)
        return 0.0;
    return f * script_W(p, phi_fn(p, v));
}

double phase_fn(const TwistedAverageParams& p, double v) {
    if (!(v > 0.0))
        throw std::domain_error("phase_fn: v must be > 0");
    double phi = phi_fn(p, v);
    if (!(phi > 0.0))
        throw std::domain_error("phase_fn: phi must be > 0 on the weight support");
    return -p.T2 * std::log(phi) + p.eps2 * p.T1 * std::log(v);
}

double phase_deriv(const TwistedAverageParams& p, double v) {
    if (!(v > 0.0))
        throw std::domain_error("phase_deriv: v must be > 0");
    double phi = phi_fn(p, v);
    if (!(phi > 0.0))
        throw std::domain_error("phase_deriv: phi must be > 0 on the weight support");
    return -p.T2 * phi_prime(p, v) / phi + p.eps2 * p.T1 / v;
}

QuadResult twisted_integral(BesselKind kind, double T1, double t2, double alpha,
                            double U, double tol) {
    if (!(T1 > 0.0))
        throw std::domain_error("twisted_integral: T1 must be > 0");
    if (!(alpha > 0.0))
        throw std::domain_error("twisted_integral: alpha must be > 0");
    if (!(tol > 0.0))
        throw std::domain_error("twisted_integral: tol must be > 0");
    double bessel_tol = std::min(1e-9, 0.01 * tol);
    auto f = [=](double x) -> cplx {
        double w = weight_U(x);
        if (w == 0.0)
            return cplx(0.0, 0.0);
        double kernel = kernel_eval(kind, T1, alpha * x, bessel_tol);
        cplx twist = std::exp(cplx(0.0, t2 * std::log(x))) * e_of(U * x);
        return w * kernel * twist;
    };
    return integrate(f, 1.0, std::sqrt(2.0), tol, 400'000);
}

QuadResult twisted_average_direct(const TwistedAverageParams& p, double tol) {
    check_twisted_params(p);
    return twisted_integral(p.kind, p.T1, p.T2, p.alpha, p.U, tol);
}

QuadResult dyadic_block(const TwistedAverageParams& p, double tol) {
    check_twisted_params(p);
    if (!(tol > 0.0))
        throw std::domain_error("dyadic_block: tol must be > 0");
    double v_lo = 1.0 / p.R + 0.5;
    double v_hi = 1.0 / p.R + 2.0;
    auto f = [&](double v) -> cplx {
        double om = omega_fn(p, v);
        if (om == 0.0)
            return cplx(0.0, 0.0);
        double phase = -p.T2 * std::log(phi_fn(p, v)) + p.eps2 * p.T1 * std::log(v);
        return (om / v) * std::exp(cplx(0.0, phase));
    };
    return integrate(f, v_lo, v_hi, tol, 2'000'000);
}

RootPair stationary_roots(const TwistedAverageParams& p) {
    check_twisted_params(p);
    double s = p.eps2 * p.T1;
    if (s == p.T2)
        throw std::domain_error("stationary_roots: eps2 T1 = T2 degenerates the quadratic");
    double k = kappa_of(p);
    double b = -TWO_PI * p.U * s / (p.eps1 * p.alpha * p.R * (p.T2 - s));
    double c = -k * (p.T2 + s) / ((p.T2 - s) * p.R * p.R);
    RootPair out;
    double f = 0.25 * b * b - c;
    out.discriminant = cplx(f, 0.0);
    cplx root = std::sqrt(out.discriminant);
    out.z1 = -0.5 * b + root;
    out.z2 = -0.5 * b - root;
    out.real_roots = f >= 0.0;
    double gap = std::abs(out.z1 - out.z2);
    out.delta = gap > 0.0 ? -2.0 * std::log(p.R * gap) / std::log(t_scale(p))
                          : std::numeric_limits<double>::infinity();
    return out;
}

BlockAsymptotic asymptotic_block(const TwistedAverageParams& p) {
    RootPair rp = stationary_roots(p);
    double r_min = 4.0 * std::min(1.0 / p.alpha, 1.0 / t_scale(p));
    if (p.R < r_min)
        throw std::domain_error(
            "asymptotic_block: R below the wide-gap regime, use regime_bounds");
    BlockAsymptotic out;
    out.delta = rp.delta;
    if (!rp.real_roots) {
        out.roots_real = false;
        return out;
    }
    out.roots_real = true;
    double gap = std::abs(rp.z1 - rp.z2);
    double gap_floor =
        2.0 * std::cbrt((p.R + 1.0) * (p.R + 1.0) / (p.R * p.R * p.R * p.alpha));
    if (gap < gap_floor)
        throw std::domain_error(
            "asymptotic_block: root gap too small for the two-root expansion, "
            "use regime_bounds");
    for (double z : {rp.z1.real(), rp.z2.real()}) {
        if (z <= 0.0)
            continue;
        double om = omega_fn(p, z);
        if (om == 0.0)
            continue;
        double phase = -p.T2 * std::log(phi_fn(p, z)) + p.eps2 * p.T1 * std::log(z);
        double dd = phase_second(p, z);
        out.value += std::sqrt(TWO_PI / std::abs(dd)) * (om / z) *
                     std::exp(cplx(0.0, phase + 0.25 * PI * (dd > 0.0 ? 1.0 : -1.0)));
    }
    return out;
}

double regime_bounds(const TwistedAverageParams& p) {
    RootPair rp = stationary_roots(p);
    double r_min = 4.0 * std::min(1.0 / p.alpha, 1.0 / t_scale(p));
    double gap = std::abs(rp.z1 - rp.z2);
    double gap_floor =
        std::cbrt((p.R + 1.0) * (p.R + 1.0) / (p.R * p.R * p.R * p.alpha));
    if (p.R >= r_min && rp.real_roots && gap <= 0.5 * gap_floor)
        return std::cbrt(1.0 / ((p.R + 1.0) * p.alpha));
    if (p.R >= r_min && p.R <= 0.25)
        return 1.0 / std::sqrt(p.alpha);
    throw std::domain_error("regime_bounds: no applicable envelope regime");
}

double weight_bound_A(const TwistedAverageParams& p) {
    RootPair rp = stationary_roots(p);
    double gap = std::abs(rp.z1 - rp.z2);
    if (gap == 0.0)
        return std::numeric_limits<double>::infinity();
    double half = 1.0 / (p.R * gap); // T^{delta/2}
    return (1.0 + half / p.R) * (1.0 + half * half);
}

cplx reassembly_prefactor(const TwistedAverageParams& p) {
    check_twisted_params(p);
    double sg = p.T2 > 0.0 ? 1.0 : -1.0;
    return 0.5 / std::sqrt(TWO_PI * t_scale(p)) *
           std::exp(cplx(0.0, -0.25 * PI * sg - p.T2));
}

QuadResult twisted_average_reassembled(const TwistedAverageParams& p, double tol) {
    check_twisted_params(p);
    if (!(tol > 0.0))
        throw std::domain_error("twisted_average_reassembled: tol must be > 0");
    cplx pref = reassembly_prefactor(p);
    int k_hi = int(std::ceil(std::log2(8.0 * (1.0 + t_scale(p) / p.alpha)))) + 2;
    QuadResult out;
    out.converged = true;
    cplx acc(0.0, 0.0);
    double err = 0.0;
    for (int e1 : {1, -1}) {
        for (int e2 : {1, -1}) {
            for (int k = -10; k <= k_hi; ++k) {
                TwistedAverageParams q = p;
                q.eps1 = e1;
                q.eps2 = e2;
                q.R = std::ldexp(1.0, k);
                // phi is monotone on the block (R v > 1 there), so the weight
                // support test reduces to an endpoint range check
                double v_lo = 1.0 / q.R + 0.5;
                double v_hi = 1.0 / q.R + 2.0;
                double pa = phi_fn(q, v_lo);
                double pb = phi_fn(q, v_hi);
                if (std::max(pa, pb) < 1.0 / std::sqrt(2.0) - 1e-12 ||
                    std::min(pa, pb) > 1.0 + 1e-12)
                    continue;
                QuadResult blk = dyadic_block(q, tol);
                out.evaluations += blk.evaluations;
                out.converged = out.converged && blk.converged;
                acc += std::exp(cplx(0.0, e2 * p.T1 * std::log(q.R))) * blk.value;
                err += blk.abs_error;
            }
        }
    }
    out.value = pref * acc;
    out.abs_error = std::abs(pref) * err;
    return out;
}

} // namespace lab
