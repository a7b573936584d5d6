#ifndef LAB_PHASE_ALGEBRA_HPP
#define LAB_PHASE_ALGEBRA_HPP

#include "lab/constants.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace lab {

// Parameters of the two-sided stationary phase behind the reduced K-kernel
// transform.  The v side is the average carrying the twist x^{+iT2} against
// e(Ux) at Bessel argument alpha(u) = sqrt(theta1 (1 - u^2)); the x side
// carries the conjugate twist y^{-iT2} against e(Vy) at
// beta(u) = sqrt(theta2 (u^{-2} - 1)).
struct PhaseConstants {
    double theta1 = 1.0;
    double theta2 = 1.0;
    double U = 0.0;
    double V = 0.0;
    double T1 = 100.0;
    double T2 = 80.0;
    int eps1 = 1; // v-side signs
    int eps2 = 1;
    int eps1p = 1; // x-side signs
    int eps2p = 1;
    double R1 = 1.0; // dyadic scales entering the two root maps
    double R2 = 1.0;
};

// Requires theta1, theta2 > 0, T1 > 0, T2 nonzero, |T1/T2| in [1/4, 4],
// R1, R2 > 0, unit signs, and the three denominators eps2 T1 - T2,
// eps2p T1 - T2, eps2p T1 + T2 away from zero.
void check_phase_constants(const PhaseConstants& c);

// Derived constants.  (c1, c0) and (c2, ct0) are the linear and constant
// data of the two stationary-root quadratics
//   v^2 + (2 c1 / (R1 sqrt(1-u^2))) v + c0 / R1^2 = 0,
//   x^2 + (2 c2 / (R2 sqrt(u^{-2}-1))) x + ct0 / R2^2 = 0,
// with
//   c1  = (pi U / sqrt(theta1)) eps2  T1 / (eps1  (eps2  T1 - T2)),
//   c0  = (eps2 T1 + T2) / (T2 - eps2 T1),
//   c2  = (pi V / sqrt(theta2)) eps2p T1 / (eps1p (eps2p T1 + T2)),
//   ct0 = (T2 - eps2p T1) / (T2 + eps2p T1).
// The opposite twist of the x side flips the sign of T2 in its denominators
// relative to the v side.
double const_c1(const PhaseConstants& c);
double const_c0(const PhaseConstants& c);
double const_c2(const PhaseConstants& c);
double const_ct0(const PhaseConstants& c);

// A = |4 c1^2 / (c0 - 1)^2 - 1|, which collapses to |(pi U)^2 / theta1 - 1|.
double quan_A(const PhaseConstants& c);

// Exchanges the two sides, (theta1, U, eps1, eps2, R1) with
// (theta2, V, eps1p, eps2p, R2), and negates T2.  Under this map
// (c1, c0) and (c2, ct0) swap exactly.
PhaseConstants swap_sides(const PhaseConstants& c);

using Rational = boost::multiprecision::cpp_rational;

// Dense polynomial in t over exact rationals; coeff[k] multiplies t^k.
struct RatPoly {
    std::vector<Rational> coeff;

    int degree() const; // -1 for the zero polynomial
    Rational lead() const;
    double eval(double t) const; // long double Horner
};

RatPoly poly_add(const RatPoly& a, const RatPoly& b);
RatPoly poly_sub(const RatPoly& a, const RatPoly& b);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_scale(const Rational& s, const RatPoly& a);

// The polynomial family in t = sqrt(c2^2 - ct0 (u^{-2} - 1)).  All
// coefficients are exact rationals of the (dyadically promoted) constants,
// so the defining relations hold coefficientwise:
//   P1 = -t^2/ct0 + (1 + c2^2/ct0),     P2 = (c2^2 - t^2)/ct0 = P1 - 1,
//   P3 = c1^2 P1 - c0 P2,
//   Q1 = -((ct0+1)/ct0) t^2 + 2 sigma_l c2 t - (ct0-1) c2^2/ct0,
//   Q2 = -((ct0-1)/ct0) t^2 + 2 sigma_l c2 t - (ct0+1) c2^2/ct0,
//   Q3 = (c0+1) P2 - 2 c1^2 P1,         Q4 = (c0-1) P2 - 2 c1^2 P1,
//   F1 = eps2p P1 Q1 + eps2 Q2 + (3T2/T1) P2 Q2   (F_{+-} = sigma_k F1),
//   G  = eps2p P1 Q1 Q4 + eps2 Q2 Q3 + (3T2/T1) P2 Q2 Q4,
//   N  = 4 c1^2 P1 P3 F1^2 - G^2        (degree 12, sigma_k-free).
struct PolySet {
    int sigma_l = 1; // sign of the 2 c2 t terms in Q1, Q2
    RatPoly P1, P2, P3;
    RatPoly Q1, Q2, Q3, Q4;
    RatPoly F1;
    RatPoly G;
    RatPoly N;
    Rational c1r, c0r, c2r, ct0r; // the promoted constants used in the build
};

PolySet build_polys(const PhaseConstants& c, int sigma_l);

// Closed form for the leading coefficient of N:
//   (4 T2 / (ct0^3 (T2 + eps2p T1)))^2
//     * (4 c1^2 (c1^2 - c0) - (2 c1^2 - (c0 - 1))^2),
// which simplifies to -(...)^2 (4 c1^2 + (c0-1)^2) and never vanishes on the
// admissible constant range.
double lead_closed_form(const PhaseConstants& c);

// Real stationary roots at parameter u in (0,1); sigma picks the branch.
// Throws std::domain_error when the discriminant is negative or the selected
// branch is nonpositive.
double root_v(const PhaseConstants& c, double u, int sigma_k);
double root_x(const PhaseConstants& c, double u, int sigma_l);

// t(u) = sqrt(c2^2 - ct0 (u^{-2} - 1)); throws on a negative radicand.
double t_of_u(const PhaseConstants& c, double u);

// Combined block phase at parameter u,
//   phi_kl(u) = -(T2/T1) log|phi_block| + (T2/T1) log|psi_block|
//             + eps2 log z_k + eps2p log x_l + 3 (T2/T1) log u,
// where phi_block, psi_block are the two block-weight arguments at the
// stationary roots.  A negative block argument contributes a u-independent
// unimodular constant to e^{iT1 phi}, dropped here to keep the phase real.
double phi_kl(const PhaseConstants& c, double u, int sigma_k, int sigma_l);

// The three printed forms of T1 phi_kl'(u).  All evaluate the same quantity;
// the chain isolates any transcription error to one rewriting step.
//   der_root_form:         eps2 T1 u/(1-u^2) (z^2-R1^-2)/(z^2+R1^-2)
//                        + eps2p T1 /(u(1-u^2)) (x^2-R2^-2)/(x^2+R2^-2)
//                        + 3 T2/u  evaluated at the two roots directly;
//   der_sum_form:          the same with both root ratios rewritten through
//                          the polynomial family at t(u);
//   der_combined_form:     single fraction with numerator
//                          2 sigma_k c1 sqrt(P1 P3) F1 + G;
//   der_rationalized_form: numerator N over the conjugate-multiplied
//                          denominator.
double der_root_form(const PhaseConstants& c, double u, int sigma_k, int sigma_l);
double der_sum_form(const PhaseConstants& c, double u, int sigma_k, int sigma_l);
double der_combined_form(const PhaseConstants& c, double u, int sigma_k, int sigma_l);
double der_rationalized_form(const PhaseConstants& c, double u, int sigma_k,
                             int sigma_l);

// Second term of the phase derivative: directly, as
// (T2/T1) eps1p beta'(u) (d/dalpha psi)/psi at the x root, and through the
// polynomial form eps2p P1^{3/2} Q1 / (P2 Q2).  The two must agree.
double second_term_direct(const PhaseConstants& c, double u, int sigma_l);
double second_term_poly(const PhaseConstants& c, double u, int sigma_l);

// |der_rationalized_form - T1 * central difference of phi_kl| / scale with
// scale = max(1, |finite difference|).  Admissible points keep the roots
// real and positive and the denominators away from zero.
double derivative_identity_check(const PhaseConstants& c, double u, int sigma_k,
                                 int sigma_l);

struct MonicNumerator {
    std::vector<double> coeff; // degree 13; coeff[13] == 1 exactly
    double lead = 0.0;         // leading coefficient of N used to normalize
    double A = 0.0;
    double delta1 = 0.0; // T^{-delta1} ~ 1 - u_ref^2
    double delta2 = 0.0; // T^{-delta2} ~ u_ref
    double K0 = 0.0;     // A T^{delta1 - 12 delta2}
};

// t N(t) normalized by the leading coefficient of N: a degree-13 monic
// polynomial, together with the oscillation scale K0 measured at the
// reference point (T, u_ref).  Throws when the leading coefficient
// degenerates (the A ~ 0 regime handled separately in the source analysis).
MonicNumerator monic_numerator(const PhaseConstants& c, int sigma_l, double T,
                               double u_ref);

struct ReducResult {
    cplx lhs{0.0, 0.0}; // integral of H_kl(u) e(T1 phi_kl(u)/2pi) du
    cplx rhs{0.0, 0.0}; // integral of F(t) e(T1 psi(t)) dt
    double rel_gap = 0.0;
    long evaluations = 0;
};

// Change-of-variable consistency u = P1(t)^{-1/2} of the localized phase
// integral at one parameter point.  H_kl is the product of the dyadic
// localizers and the two block weights; F(t) carries the Jacobian
// -P1'(t)/(2 P1(t)^{3/2}) and psi(t) = phi_kl(P1(t)^{-1/2})/(2pi).
ReducResult reduc_check(const PhaseConstants& c, int sigma_k, int sigma_l,
                        double u_lo, double u_hi, double tol);

} // namespace lab

#endif
