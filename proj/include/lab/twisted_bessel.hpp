#ifndef LAB_TWISTED_BESSEL_HPP
#define LAB_TWISTED_BESSEL_HPP

#include "lab/constants.hpp"
#include "lab/quadrature.hpp"

namespace lab {

enum class BesselKind { k_tilde_kind, j_minus_kind, j_plus_kind };

// Parameters of the twisted Bessel average
//   I(U, alpha) = int U(x) x^{iT2} K_{iT1}(alpha x) e(Ux) dx
// and of its dyadic v-blocks at scale R with signs (eps1, eps2).
struct TwistedAverageParams {
    double alpha = 1.0;
    double U = 0.0;
    double T1 = 100.0;
    double T2 = 100.0;
    BesselKind kind = BesselKind::k_tilde_kind;
    int eps1 = 1;
    int eps2 = 1;
    double R = 1.0;
    // 0: hyperbolic sign tied to the kind (sinh for ktilde gives Rv - 1/(Rv),
    // cosh for jminus gives Rv + 1/(Rv)); +-1 forces the sign, used only to
    // demonstrate that the opposite convention fails to reassemble.
    int phase_sign_override = 0;
};

void check_twisted_params(const TwistedAverageParams& p);

// Fixed x-weight of the average: U(x) = 2x W(x^2) with W a bump supported on
// [1,2], identically 1 on [1.25, 1.75].
double weight_U(double x);

// Telescoping dyadic partition: F(x) = p(x) - p(2x) with p smooth, 1 on
// (-inf,1], 0 on [2,inf); supp F = [1/2, 2] and sum_k F(x/2^k) = 1 on (0,inf).
double dyadic_F(double x);

// Induced v-weight data at scale R:
//   phi_fn    = phi_R(eps1 alpha, v) = (-2pi/T2)((eps1 alpha/2pi)(Rv + kappa/(Rv)) + U)
//   script_W  = W(y) = 2 pi T^{1/2} / |T2|^{1/2} y^{-1} U(y^{-1})
//   omega_fn  = F(v - 1/R) script_W(phi_fn(v))
// with kappa = -1 for the ktilde kind and +1 for jminus.
double phi_fn(const TwistedAverageParams& p, double v);
double script_W(const TwistedAverageParams& p, double y);
double omega_fn(const TwistedAverageParams& p, double v);

// Block phase -T2 log phi + eps2 T1 log v and its v-derivative; both require
// v > 0 and phi_fn(p, v) > 0.
double phase_fn(const TwistedAverageParams& p, double v);
double phase_deriv(const TwistedAverageParams& p, double v);

// General building block: int U(x) x^{i t2} K_{iT1}(alpha x) e(Ux) dx for any
// kernel kind and twist exponent, with no parameter-window restriction.  The
// reduced double-Bessel transforms are assembled from these.
QuadResult twisted_integral(BesselKind kind, double T1, double t2, double alpha,
                            double U, double tol);

// Oracle value of I(U, alpha) by direct nested quadrature.
QuadResult twisted_average_direct(const TwistedAverageParams& p, double tol);

// One dyadic block
//   I_R^{(eps1,eps2)} = int v^{-1} omega_fn(v) e((-T2 log phi + eps2 T1 log v)/2pi) dv.
QuadResult dyadic_block(const TwistedAverageParams& p, double tol);

struct RootPair {
    cplx z1{0.0, 0.0};
    cplx z2{0.0, 0.0};
    cplx discriminant{0.0, 0.0}; // f with z1 - z2 = 2 sqrt(f)
    double delta = 0.0;          // gap class, T^{-delta/2} := R |z1 - z2|
    bool real_roots = false;
};

// Roots of the v-phase derivative; they satisfy
//   v^2 - (2 pi U eps2 T1 / (eps1 alpha R (T2 - eps2 T1))) v
//       - kappa R^{-2} (T2 + eps2 T1)/(T2 - eps2 T1) = 0.
RootPair stationary_roots(const TwistedAverageParams& p);

struct BlockAsymptotic {
    cplx value{0.0, 0.0};
    bool roots_real = false; // false classifies the block negligible
    double delta = 0.0;
};

// Two-root stationary-phase main term of the block (exact one-term expansion,
// including the sqrt(2 pi) e^{i pi/4 sgn} constants the displayed form hides).
// Throws when the wide-gap regime preconditions fail.
BlockAsymptotic asymptotic_block(const TwistedAverageParams& p);

// Applicable envelope bound outside the asymptotic regime:
// ((R+1) alpha)^{-1/3} when the root gap is small, alpha^{-1/2} for small R;
// throws when neither regime applies.
double regime_bounds(const TwistedAverageParams& p);

// A = (1 + R^{-1} T^{delta/2})(1 + T^delta) with T^{-delta/2} = R |z1 - z2|.
double weight_bound_A(const TwistedAverageParams& p);

// Exact-constant reassembly
//   I ~ (1/2)(2 pi)^{-1/2} e^{-i pi/4 sgn T2} e(-T2/2pi) T^{-1/2}
//       sum_{eps1,eps2} sum_R R^{i eps2 T1} I_R^{(eps1,eps2)},
// the prefactor carried by the x-stationary-phase step run exactly.
QuadResult twisted_average_reassembled(const TwistedAverageParams& p, double tol);

cplx reassembly_prefactor(const TwistedAverageParams& p);

} // namespace lab

#endif
