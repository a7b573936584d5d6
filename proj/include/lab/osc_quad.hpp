#ifndef LAB_OSC_QUAD_HPP
#define LAB_OSC_QUAD_HPP

#include "lab/constants.hpp"
#include "lab/quadrature.hpp"

#include <functional>
#include <vector>

namespace lab {

// An oscillatory integral  I = int_a^b w(t) e(h(t)) dt  together with the
// scale parameters that the desk bounds are stated in:
//   X bounds w, U is the variation scale of w (w^(j) << X U^-j),
//   Y bounds the phase size, Q its variation scale (h^(j) << Y Q^-j, j >= 2),
//   R is a lower bound for |h'| on the support when no stationary point
//   is present.
// Analytic derivative handles are optional; finite differences are used
// when they are absent.
struct OscillatorySpec {
    std::function<double(double)> weight;
    std::function<double(double)> phase;
    double a = 0.0;
    double b = 1.0;
    double X = 1.0;
    double U = 1.0;
    double Y = 1.0;
    double Q = 1.0;
    double R = 1.0;
    // weight_deriv(t, j) = w^(j)(t), phase_deriv(t, j) = h^(j)(t); either may
    // be empty.
    std::function<double(double, int)> weight_deriv;
    std::function<double(double, int)> phase_deriv;
};

// Direct numerical evaluation of the integral, used as the oracle that the
// closed-form expansions are judged against.
QuadResult oracle_integrate(const OscillatorySpec& spec, double tol_abs);

// Locate the stationary point of h in (a, b) by a sign scan of h' on 256
// subintervals followed by Newton refinement.  Throws if h' has no sign
// change or more than one.
double find_stationary_point(const OscillatorySpec& spec);

// Asymptotic expansion of the integral about the interior stationary point
// t0 (h'(t0) = 0, h''(t0) > 0), through the correction of order `order`:
//   I ~ e(h(t0)) sum_{n <= order} p_n  with  p_0 = e^{i pi/4} w(t0) / sqrt(2 h''(t0)).
// Each p_n is built from derivatives of w and h at t0 of order at most 2n
// and 2n + 2 respectively.
cplx stationary_phase_expand(const OscillatorySpec& spec, double t0, int order);

// Size bound for the integral when |h'| >= R (Q R / sqrt(Y) and R U both
// large): (b - a) X [ (Q R / sqrt(Y))^-A + (R U)^-A ].
double nonstationary_bound(const OscillatorySpec& spec, double A);

// Derivative-test bound for sum-length T_size and |h^(d)| ~ A_d:
//   X [ (A_d T)^{-1/(d+1)} + (A_d T U)^{-1/d} + (A_d T Q / sqrt(Y))^{-1/d} ].
double vdc_bound(const OscillatorySpec& spec, double T_size, double A_d, int d);

// n-th derivative of f(g(x)) from the derivative lists
//   f_derivs[k] = f^(k)(g(x)), k = 0..n,   g_derivs[j] = g^(j)(x), j = 0..n,
// by the combinatorial chain-rule sum over integer partitions of n.
cplx faa_di_bruno(const std::vector<cplx>& f_derivs,
                  const std::vector<cplx>& g_derivs, int n);

// All partitions of n with parts >= min_part, each partition reported as its
// multiplicity vector m[1..n] (m[j] = number of parts equal to j).
std::vector<std::vector<int>> partitions_with_min_part(int n, int min_part);

} // namespace lab

#endif
