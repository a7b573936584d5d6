#include "lab/phase_algebra.hpp"

#include "lab/fd.hpp"
#include "lab/quadrature.hpp"
#include "lab/twisted_bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lab {

namespace {

constexpr double TWO_PI = 6.283185307179586476925286766559;

Rational promote(double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("phase constants: cannot promote a non-finite "
                                    "value to a rational");
    return Rational(x);
}

void trim(RatPoly& p) {
    while (!p.coeff.empty() && p.coeff.back() == 0)
        p.coeff.pop_back();
}

double alpha_of(const PhaseConstants& c, double u) {
    return std::sqrt(c.theta1 * (1.0 - u) * (1.0 + u));
}

double beta_of(const PhaseConstants& c, double u) {
    return std::sqrt(c.theta2 * (1.0 / (u * u) - 1.0));
}

// Block-weight arguments as displayed: both carry the -1/T2 prefactor; the
// conjugate twist of the x side is expressed through the +T2 log in phi_kl,
// not through this function.
double block_arg(double a, double R, double v, double freq, double T2) {
    return -(a * (R * v - 1.0 / (R * v)) + TWO_PI * freq) / T2;
}

void check_u(double u) {
    if (!(u > 0.0) || !(u < 1.0))
        throw std::invalid_argument("phase algebra: u must lie in (0,1)");
}

void check_sigma(int sigma) {
    if (sigma != 1 && sigma != -1)
        throw std::invalid_argument("phase algebra: branch signs must be +-1");
}

struct DerParts {
    double t;
    double p1, p2, p3, q1, q2, q3, q4, f1, g;
    double sq;   // sqrt(P1 P3)
    double c1;
    double rootp1;
};

DerParts der_parts(const PhaseConstants& c, const PolySet& ps, double u) {
    DerParts d;
    d.t = t_of_u(c, u);
    d.p1 = ps.P1.eval(d.t);
    d.p2 = ps.P2.eval(d.t);
    d.p3 = ps.P3.eval(d.t);
    d.q1 = ps.Q1.eval(d.t);
    d.q2 = ps.Q2.eval(d.t);
    d.q3 = ps.Q3.eval(d.t);
    d.q4 = ps.Q4.eval(d.t);
    d.f1 = ps.F1.eval(d.t);
    d.g = ps.G.eval(d.t);
    d.c1 = const_c1(c);
    if (!(d.p1 > 0.0))
        throw std::domain_error("phase algebra: P1(t) is not positive at this u");
    if (d.p3 < 0.0)
        throw std::domain_error("phase algebra: P3(t) is negative, the v-side "
                                "roots are complex at this u");
    d.sq = std::sqrt(d.p1 * d.p3);
    d.rootp1 = std::sqrt(d.p1);
    return d;
}

void check_denominator(double den, double scale) {
    if (std::abs(den) <= 1e-12 * std::max(1.0, scale))
        throw std::domain_error("phase algebra: a rationalized denominator is "
                                "too close to zero at this u");
}

} // namespace

void check_phase_constants(const PhaseConstants& c) {
    if (!(c.theta1 > 0.0) || !(c.theta2 > 0.0))
        throw std::invalid_argument("phase constants: theta1, theta2 must be > 0");
    if (!std::isfinite(c.U) || !std::isfinite(c.V))
        throw std::invalid_argument("phase constants: U, V must be finite");
    if (!(c.T1 > 0.0) || c.T2 == 0.0 || !std::isfinite(c.T2))
        throw std::invalid_argument("phase constants: T1 must be > 0 and T2 nonzero");
    double ratio = c.T1 / std::abs(c.T2);
    if (ratio < 0.25 || ratio > 4.0)
        throw std::invalid_argument("phase constants: |T1/T2| must lie in [1/4, 4]");
    if (std::abs(c.eps1) != 1 || std::abs(c.eps2) != 1 || std::abs(c.eps1p) != 1 ||
        std::abs(c.eps2p) != 1)
        throw std::invalid_argument("phase constants: sign selections must be +-1");
    if (!(c.R1 > 0.0) || !(c.R2 > 0.0))
        throw std::invalid_argument("phase constants: R1, R2 must be > 0");
    double floor = 1e-9 * (c.T1 + std::abs(c.T2));
    if (std::abs(c.eps2 * c.T1 - c.T2) <= floor ||
        std::abs(c.eps2p * c.T1 - c.T2) <= floor ||
        std::abs(c.eps2p * c.T1 + c.T2) <= floor)
        throw std::invalid_argument("phase constants: a tilt denominator "
                                    "eps2 T1 -+ T2 degenerates");
}

double const_c1(const PhaseConstants& c) {
    check_phase_constants(c);
    return (PI * c.U / std::sqrt(c.theta1)) * c.eps2 * c.T1 /
           (c.eps1 * (c.eps2 * c.T1 - c.T2));
}

double const_c0(const PhaseConstants& c) {
    check_phase_constants(c);
    return (c.eps2 * c.T1 + c.T2) / (c.T2 - c.eps2 * c.T1);
}

double const_c2(const PhaseConstants& c) {
    check_phase_constants(c);
    return (PI * c.V / std::sqrt(c.theta2)) * c.eps2p * c.T1 /
           (c.eps1p * (c.eps2p * c.T1 + c.T2));
}

double const_ct0(const PhaseConstants& c) {
    check_phase_constants(c);
    return (c.T2 - c.eps2p * c.T1) / (c.T2 + c.eps2p * c.T1);
}

double quan_A(const PhaseConstants& c) {
    double c1 = const_c1(c);
    double c0 = const_c0(c);
    double d = c0 - 1.0;
    return std::abs(4.0 * c1 * c1 / (d * d) - 1.0);
}

PhaseConstants swap_sides(const PhaseConstants& c) {
    PhaseConstants s = c;
    std::swap(s.theta1, s.theta2);
    std::swap(s.U, s.V);
    std::swap(s.eps1, s.eps1p);
    std::swap(s.eps2, s.eps2p);
    std::swap(s.R1, s.R2);
    s.T2 = -c.T2;
    return s;
}

int RatPoly::degree() const {
    int d = static_cast<int>(coeff.size()) - 1;
    while (d >= 0 && coeff[static_cast<size_t>(d)] == 0)
        --d;
    return d;
}

Rational RatPoly::lead() const {
    int d = degree();
    return d < 0 ? Rational(0) : coeff[static_cast<size_t>(d)];
}

double RatPoly::eval(double t) const {
    long double acc = 0.0L;
    for (size_t i = coeff.size(); i-- > 0;)
        acc = acc * t + coeff[i].convert_to<long double>();
    return static_cast<double>(acc);
}

RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
    RatPoly out;
    out.coeff.resize(std::max(a.coeff.size(), b.coeff.size()), Rational(0));
    for (size_t i = 0; i < a.coeff.size(); ++i)
        out.coeff[i] += a.coeff[i];
    for (size_t i = 0; i < b.coeff.size(); ++i)
        out.coeff[i] += b.coeff[i];
    trim(out);
    return out;
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
    return poly_add(a, poly_scale(Rational(-1), b));
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    RatPoly out;
    if (a.coeff.empty() || b.coeff.empty())
        return out;
    out.coeff.resize(a.coeff.size() + b.coeff.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeff.size(); ++i)
        for (size_t j = 0; j < b.coeff.size(); ++j)
            out.coeff[i + j] += a.coeff[i] * b.coeff[j];
    trim(out);
    return out;
}

RatPoly poly_scale(const Rational& s, const RatPoly& a) {
    RatPoly out = a;
    for (auto& x : out.coeff)
        x *= s;
    trim(out);
    return out;
}

PolySet build_polys(const PhaseConstants& c, int sigma_l) {
    check_sigma(sigma_l);
    PolySet ps;
    ps.sigma_l = sigma_l;
    ps.c1r = promote(const_c1(c));
    ps.c0r = promote(const_c0(c));
    ps.c2r = promote(const_c2(c));
    ps.ct0r = promote(const_ct0(c));
    if (ps.ct0r == 0)
        throw std::invalid_argument("build_polys: ct0 vanishes, the polynomial "
                                    "family degenerates");
    Rational inv = Rational(1) / ps.ct0r;
    Rational c2sq = ps.c2r * ps.c2r;
    Rational c1sq = ps.c1r * ps.c1r;
    Rational sig(sigma_l);

    ps.P1.coeff = {Rational(1) + c2sq * inv, Rational(0), -inv};
    ps.P2.coeff = {c2sq * inv, Rational(0), -inv};
    ps.P3 = poly_sub(poly_scale(c1sq, ps.P1), poly_scale(ps.c0r, ps.P2));
    ps.Q1.coeff = {-(ps.ct0r - 1) * c2sq * inv, 2 * sig * ps.c2r,
                   -(ps.ct0r + 1) * inv};
    ps.Q2.coeff = {-(ps.ct0r + 1) * c2sq * inv, 2 * sig * ps.c2r,
                   -(ps.ct0r - 1) * inv};
    ps.Q3 = poly_sub(poly_scale(ps.c0r + 1, ps.P2), poly_scale(2 * c1sq, ps.P1));
    ps.Q4 = poly_sub(poly_scale(ps.c0r - 1, ps.P2), poly_scale(2 * c1sq, ps.P1));

    Rational ratio3 = 3 * promote(c.T2) / promote(c.T1);
    Rational e2(c.eps2), e2p(c.eps2p);
    RatPoly p1q1 = poly_mul(ps.P1, ps.Q1);
    RatPoly p2q2 = poly_mul(ps.P2, ps.Q2);
    ps.F1 = poly_add(poly_scale(e2p, p1q1),
                     poly_add(poly_scale(e2, ps.Q2), poly_scale(ratio3, p2q2)));
    ps.G = poly_add(poly_scale(e2p, poly_mul(p1q1, ps.Q4)),
                    poly_add(poly_scale(e2, poly_mul(ps.Q2, ps.Q3)),
                             poly_scale(ratio3, poly_mul(p2q2, ps.Q4))));
    ps.N = poly_sub(poly_scale(4 * c1sq, poly_mul(poly_mul(ps.P1, ps.P3),
                                                  poly_mul(ps.F1, ps.F1))),
                    poly_mul(ps.G, ps.G));
    if (ps.N.degree() != 12)
        throw std::domain_error("build_polys: the numerator degree is not 12, "
                                "the constants are degenerate");
    return ps;
}

double lead_closed_form(const PhaseConstants& c) {
    double c1 = const_c1(c);
    double c0 = const_c0(c);
    double ct0 = const_ct0(c);
    double pre = 4.0 * c.T2 / (ct0 * ct0 * ct0 * (c.T2 + c.eps2p * c.T1));
    double c1sq = c1 * c1;
    double inner = 4.0 * c1sq * (c1sq - c0);
    double sub = 2.0 * c1sq - (c0 - 1.0);
    return pre * pre * (inner - sub * sub);
}

double root_v(const PhaseConstants& c, double u, int sigma_k) {
    check_u(u);
    check_sigma(sigma_k);
    double cb = const_c1(c) / std::sqrt((1.0 - u) * (1.0 + u));
    double disc = cb * cb - const_c0(c);
    if (disc < 0.0)
        throw std::domain_error("root_v: the v-side stationary roots are complex "
                                "at this u");
    double z = (-cb + sigma_k * std::sqrt(disc)) / c.R1;
    if (!(z > 0.0))
        throw std::domain_error("root_v: the selected v-side branch is nonpositive "
                                "at this u");
    return z;
}

double root_x(const PhaseConstants& c, double u, int sigma_l) {
    check_u(u);
    check_sigma(sigma_l);
    double cb = const_c2(c) / std::sqrt(1.0 / (u * u) - 1.0);
    double disc = cb * cb - const_ct0(c);
    if (disc < 0.0)
        throw std::domain_error("root_x: the x-side stationary roots are complex "
                                "at this u");
    double x = (-cb + sigma_l * std::sqrt(disc)) / c.R2;
    if (!(x > 0.0))
        throw std::domain_error("root_x: the selected x-side branch is nonpositive "
                                "at this u");
    return x;
}

double t_of_u(const PhaseConstants& c, double u) {
    check_u(u);
    double c2 = const_c2(c);
    double rad = c2 * c2 - const_ct0(c) * (1.0 / (u * u) - 1.0);
    if (rad < 0.0)
        throw std::domain_error("t_of_u: negative radicand, the x-side roots are "
                                "complex at this u");
    return std::sqrt(rad);
}

double phi_kl(const PhaseConstants& c, double u, int sigma_k, int sigma_l) {
    double z = root_v(c, u, sigma_k);
    double x = root_x(c, u, sigma_l);
    double pb = block_arg(c.eps1 * alpha_of(c, u), c.R1, z, c.U, c.T2);
    double qb = block_arg(c.eps1p * beta_of(c, u), c.R2, x, c.V, c.T2);
    if (pb == 0.0 || qb == 0.0)
        throw std::domain_error("phi_kl: a block weight argument vanishes at this u");
    return -(c.T2 / c.T1) * (std::log(std::abs(pb)) - std::log(std::abs(qb))) +
           c.eps2 * std::log(z) + c.eps2p * std::log(x) +
           3.0 * (c.T2 / c.T1) * std::log(u);
}

double der_root_form(const PhaseConstants& c, double u, int sigma_k, int sigma_l) {
    double z = root_v(c, u, sigma_k);
    double x = root_x(c, u, sigma_l);
    double iR1 = 1.0 / (c.R1 * c.R1);
    double iR2 = 1.0 / (c.R2 * c.R2);
    double zr = (z * z - iR1) / (z * z + iR1);
    double xr = (x * x - iR2) / (x * x + iR2);
    double om = 1.0 - u * u;
    return c.eps2 * c.T1 * u / om * zr + c.eps2p * c.T1 * xr / (u * om) +
           3.0 * c.T2 / u;
}

double der_sum_form(const PhaseConstants& c, double u, int sigma_k, int sigma_l) {
    check_sigma(sigma_k);
    PolySet ps = build_polys(c, sigma_l);
    DerParts d = der_parts(c, ps, u);
    double shift = 2.0 * sigma_k * d.c1 * d.sq;
    check_denominator(d.p2 * d.q2, std::abs(d.p2) + std::abs(d.q2));
    check_denominator(d.q4 + shift, std::abs(d.q4) + std::abs(shift));
    double term_x = c.eps2p * c.T1 * d.p1 * d.rootp1 * d.q1 / (d.p2 * d.q2);
    double term_v =
        c.eps2 * c.T1 * d.rootp1 * (d.q3 + shift) / (d.p2 * (d.q4 + shift));
    return term_x + term_v + 3.0 * c.T2 * d.rootp1;
}

double der_combined_form(const PhaseConstants& c, double u, int sigma_k,
                         int sigma_l) {
    check_sigma(sigma_k);
    PolySet ps = build_polys(c, sigma_l);
    DerParts d = der_parts(c, ps, u);
    double shift = 2.0 * sigma_k * d.c1 * d.sq;
    double den = d.p2 * d.q2 * (d.q4 + shift);
    check_denominator(den, std::abs(d.p2 * d.q2) + std::abs(d.q4 + shift));
    return c.T1 * d.rootp1 * (shift * d.f1 + d.g) / den;
}

double der_rationalized_form(const PhaseConstants& c, double u, int sigma_k,
                             int sigma_l) {
    check_sigma(sigma_k);
    PolySet ps = build_polys(c, sigma_l);
    DerParts d = der_parts(c, ps, u);
    double shift = 2.0 * sigma_k * d.c1 * d.sq;
    double den = d.p2 * d.q2 * (d.q4 + shift) * (shift * d.f1 - d.g);
    check_denominator(den, std::abs(d.p2 * d.q2 * (d.q4 + shift)) *
                               (std::abs(shift * d.f1) + std::abs(d.g)));
    return c.T1 * d.rootp1 * ps.N.eval(d.t) / den;
}

double second_term_direct(const PhaseConstants& c, double u, int sigma_l) {
    double x = root_x(c, u, sigma_l);
    double beta = beta_of(c, u);
    double beta_prime =
        -std::sqrt(c.theta2) / (u * u * u * std::sqrt(1.0 / (u * u) - 1.0));
    double psi = block_arg(c.eps1p * beta, c.R2, x, c.V, c.T2);
    if (psi == 0.0)
        throw std::domain_error("second_term_direct: the x-side block weight "
                                "argument vanishes");
    double dpsi = -(c.R2 * x - 1.0 / (c.R2 * x)) / c.T2;
    return (c.T2 / c.T1) * c.eps1p * beta_prime * dpsi / psi;
}

double second_term_poly(const PhaseConstants& c, double u, int sigma_l) {
    PolySet ps = build_polys(c, sigma_l);
    DerParts d = der_parts(c, ps, u);
    check_denominator(d.p2 * d.q2, std::abs(d.p2) + std::abs(d.q2));
    return c.eps2p * d.p1 * d.rootp1 * d.q1 / (d.p2 * d.q2);
}

double derivative_identity_check(const PhaseConstants& c, double u, int sigma_k,
                                 int sigma_l) {
    double rat = der_rationalized_form(c, u, sigma_k, sigma_l);
    double fd = c.T1 * nth_deriv([&](double v) { return phi_kl(c, v, sigma_k,
                                                               sigma_l); },
                                 u, 1, std::min(u, 1.0 - u));
    return std::abs(rat - fd) / std::max(1.0, std::abs(fd));
}

MonicNumerator monic_numerator(const PhaseConstants& c, int sigma_l, double T,
                               double u_ref) {
    if (!(T > 1.0))
        throw std::invalid_argument("monic_numerator: the scale T must exceed 1");
    check_u(u_ref);
    PolySet ps = build_polys(c, sigma_l);
    Rational lead = ps.N.lead();
    if (lead == 0)
        throw std::domain_error("monic_numerator: the leading coefficient of the "
                                "numerator degenerates (the A ~ 0 regime)");
    MonicNumerator out;
    out.coeff.assign(14, 0.0);
    for (size_t k = 0; k < ps.N.coeff.size(); ++k)
        out.coeff[k + 1] = Rational(ps.N.coeff[k] / lead).convert_to<double>();
    out.lead = lead.convert_to<double>();
    out.A = quan_A(c);
    double logT = std::log(T);
    out.delta1 = -std::log((1.0 - u_ref) * (1.0 + u_ref)) / logT;
    out.delta2 = -std::log(u_ref) / logT;
    out.K0 = out.A * std::pow(T, out.delta1 - 12.0 * out.delta2);
    return out;
}

ReducResult reduc_check(const PhaseConstants& c, int sigma_k, int sigma_l,
                        double u_lo, double u_hi, double tol) {
    check_u(u_lo);
    check_u(u_hi);
    if (!(u_lo < u_hi))
        throw std::invalid_argument("reduc_check: need u_lo < u_hi");
    if (!(tol > 0.0))
        throw std::invalid_argument("reduc_check: tol must be > 0");
    PolySet ps = build_polys(c, sigma_l);
    double c1 = const_c1(c), c0 = const_c0(c);
    double c2 = const_c2(c), ct0 = const_ct0(c);
    double T = std::max(c.T1, std::abs(c.T2));
    double logT = std::log(T);
    double u0 = 0.5 * (u_lo + u_hi);
    double om0 = 1.0 - u0 * u0;
    double g3 = c1 * c1 / om0 - 4.0 * c0;
    double g4 = c2 * c2 / (1.0 / (u0 * u0) - 1.0) - 4.0 * ct0;
    if (g3 == 0.0 || g4 == 0.0)
        throw std::domain_error("reduc_check: a dyadic localizer argument is "
                                "degenerate at the window center");
    double d1 = -std::log(om0) / logT;
    double d2 = -std::log(u0) / logT;
    double d3 = -std::log(std::abs(g3)) / logT;
    double d4 = -std::log(std::abs(g4)) / logT;
    double s1 = std::pow(T, d1), s2 = std::pow(T, d2);
    double s3 = std::pow(T, d3), s4 = std::pow(T, d4);

    TwistedAverageParams pv;
    pv.U = c.U;
    pv.T1 = c.T1;
    pv.T2 = c.T2;
    pv.kind = BesselKind::k_tilde_kind;
    pv.eps1 = c.eps1;
    pv.eps2 = c.eps2;
    pv.R = c.R1;
    TwistedAverageParams px;
    px.U = c.V;
    px.T1 = c.T1;
    px.T2 = -c.T2;
    px.kind = BesselKind::k_tilde_kind;
    px.eps1 = c.eps1p;
    px.eps2 = c.eps2p;
    px.R = c.R2;

    auto weight = [&](double u) -> double {
        double om = 1.0 - u * u;
        double iom = 1.0 / (u * u) - 1.0;
        double loc = dyadic_F(s1 * om) * dyadic_F(s2 * u) *
                     dyadic_F(std::abs(s3 * (c1 * c1 / om - 4.0 * c0))) *
                     dyadic_F(std::abs(s4 * (c2 * c2 / iom - 4.0 * ct0)));
        if (loc == 0.0)
            return 0.0;
        double discv = c1 * c1 / om - c0;
        double discx = c2 * c2 / iom - ct0;
        if (discv <= 0.0 || discx <= 0.0)
            return 0.0;
        double gapv = 2.0 * std::sqrt(discv) / c.R1;
        double gapx = 2.0 * std::sqrt(discx) / c.R2;
        double zv = (-c1 / std::sqrt(om) + sigma_k * std::sqrt(discv)) / c.R1;
        double xv = (-c2 / std::sqrt(iom) + sigma_l * std::sqrt(discx)) / c.R2;
        if (zv <= 0.0 || xv <= 0.0)
            return 0.0;
        TwistedAverageParams a = pv;
        a.alpha = alpha_of(c, u);
        TwistedAverageParams b = px;
        b.alpha = beta_of(c, u);
        double hk = std::pow(s1 * om, -0.25) * omega_fn(a, zv) /
                    std::sqrt(c.R1 * std::pow(T, 0.5 * d3) * gapv);
        double hl = std::pow(std::pow(T, d1 - 2.0 * d2) * iom, -0.25) *
                    omega_fn(b, xv) /
                    std::sqrt(c.R2 * std::pow(T, 0.5 * d4) * gapx);
        return loc / u * hk * hl;
    };

    QuadResult lhs = integrate(
        [&](double u) -> cplx {
            double w = weight(u);
            if (w == 0.0)
                return cplx(0.0, 0.0);
            return w * std::exp(cplx(0.0, c.T1 * phi_kl(c, u, sigma_k, sigma_l)));
        },
        u_lo, u_hi, tol);

    double ta = t_of_u(c, u_lo);
    double tb = t_of_u(c, u_hi);
    double sign = 1.0;
    if (ta > tb) {
        std::swap(ta, tb);
        sign = -1.0;
    }
    QuadResult rhs = integrate(
        [&](double t) -> cplx {
            double p1 = ps.P1.eval(t);
            if (!(p1 > 0.0))
                return cplx(0.0, 0.0);
            double u = 1.0 / std::sqrt(p1);
            if (!(u > 0.0) || !(u < 1.0))
                return cplx(0.0, 0.0);
            double w = weight(u);
            if (w == 0.0)
                return cplx(0.0, 0.0);
            double jac = (2.0 * t / ct0) / (2.0 * std::pow(p1, 1.5));
            return w * jac *
                   std::exp(cplx(0.0, c.T1 * phi_kl(c, u, sigma_k, sigma_l)));
        },
        ta, tb, tol);

    ReducResult out;
    out.lhs = lhs.value;
    out.rhs = sign * rhs.value;
    out.evaluations = lhs.evaluations + rhs.evaluations;
    double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
    out.rel_gap = scale > 0.0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
    return out;
}

} // namespace lab
