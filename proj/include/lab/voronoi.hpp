#ifndef LAB_VORONOI_HPP
#define LAB_VORONOI_HPP

#include "lab/constants.hpp"

#include <vector>

namespace lab {

// Summation-formula checks for twisted sums of modular coefficients against
// their dual-side expansions.  The cusp-form instance is the weight-12
// discriminant form in the unitary normalization lambda(n) = tau(n)/n^{11/2};
// the divisor instance uses lambda(n) = d(n) and carries a logarithmic main
// term next to its oscillatory and exponentially decaying dual kernels.

using Int128 = __int128;

enum class CoeffSource { tau, divisor };

struct CoefficientTable {
    CoeffSource source = CoeffSource::tau;
    int n_max = 0;
    // lambda[n-1] = lambda(n): tau(n)/n^{11/2} for the cusp table, d(n) for
    // the divisor table.
    std::vector<double> lambda;
    // Exact integer tau(n) (cusp table only), tau_exact[n-1].
    std::vector<Int128> tau_exact;
};

// tau(n) for n <= n_max by expanding q prod (1-q^k)^24: the Euler factor is
// built from the pentagonal-number series and raised to the 24th power by
// repeated sparse convolution in exact integer arithmetic.  Throws
// std::overflow_error if a coefficient would leave the 128-bit range and
// std::invalid_argument for n_max outside [1, 10^6].
CoefficientTable tau_coefficients(int n_max);

// d(n) for n <= n_max by a divisor sieve.
CoefficientTable divisor_coefficients(int n_max);

// Inverse of a modulo q (q > 0, gcd(a,q) = 1); result in [1, q-1] for q > 1,
// and 0 for q = 1.
int mod_inverse(int a, int q);

struct VoronoiInstance {
    int q = 1;
    int a = 1;           // residue class, gcd(a, q) = 1
    double N = 100.0;    // the weight is supported in [N, 2N]
    CoeffSource source = CoeffSource::tau;
    // Test plumbing for negative controls: a nonzero value replaces the
    // modular inverse of a on the dual side; omit_main_term drops the
    // logarithmic term of the divisor identity.
    int abar_override = 0;
    bool omit_main_term = false;
};

void check_voronoi_instance(const VoronoiInstance& inst);

// The fixed test weight: the polynomial bump (4 s (1-s))^13 at s = (x-N)/N,
// supported on [N, 2N] with peak 1 at x = 3N/2 and twelve vanishing
// derivatives at both endpoints; exact derivatives up to order 12.
double voronoi_weight(double x, double N);
double voronoi_weight_deriv(double x, double N, int k);

// int_N^{2N} h(x) B(4 pi sqrt(x y)) dx for B = J_11 (kind 0), Y_0 (kind 1),
// K_0 (kind 2); h is the fixed weight at scale N.  Oscillatory kinds use
// half-wavelength Gauss panels, the exponential kind adaptive quadrature.
double weight_bessel_transform(double y, double N, int kind);

// Certified bound on |int h(x) B(4 pi sqrt(x y)) dx| by iterated integration
// by parts against the Bessel recurrence, minimized over the number of parts
// steps j <= 12.  Valid for the oscillatory kinds (J_11, Y_0).
struct TailCertificate {
    int j_used = 0;
    double bound = 0.0;
};
TailCertificate transform_decay_bound(double y, double N, int kind);

// Certified bound on the full dual-sum tail beyond index M (coefficients
// bounded through d(n) <= 2 sqrt(n)).
double dual_tail_bound(const VoronoiInstance& inst, int M);

struct VoronoiResult {
    cplx lhs{0.0, 0.0};
    cplx rhs{0.0, 0.0};
    double residual = 0.0;      // |lhs - rhs| / (1 + |lhs|)
    int truncation_used = 0;    // dual terms actually summed
    double tail_bound = 0.0;    // certified bound on the omitted dual tail
    cplx main_term{0.0, 0.0};   // divisor identity only
    cplx dual_osc{0.0, 0.0};    // J_11 resp. Y_0 dual sum
    cplx dual_exp{0.0, 0.0};    // K_0 dual sum (divisor identity only)
};

// Cusp-form identity: sum lambda(n) e(an/q) h(n) against
// q^{-1} sum lambda(n) e(-abar n/q) H(n/q^2), H(y) = 2 pi i^12 int h(x)
// J_11(4 pi sqrt(xy)) dx.  truncation = 0 lets the certified tail bound pick
// the dual cutoff; a positive value forces it.  Throws BudgetExceeded when
// the certificate cannot reach tol/8 within the allowed range.
VoronoiResult voronoi_check_cusp(const VoronoiInstance& inst, int truncation,
                                 double tol);

// Divisor identity: sum d(n) e(an/q) h(n) against the main term
// (2/q) int (log(sqrt(x)/q) + gamma) h(x) dx plus the dual sums with kernels
// -2 pi e(-abar n/q) Y_0(4 pi sqrt(nx)/q) and 4 e(abar n/q)
// K_0(4 pi sqrt(nx)/q).
VoronoiResult voronoi_check_divisor(const VoronoiInstance& inst,
                                    int truncation, double tol);

} // namespace lab

#endif
