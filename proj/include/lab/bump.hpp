#ifndef LAB_BUMP_HPP
#define LAB_BUMP_HPP

namespace lab {

// C-infinity mollifier exp(-1/(1-x^2)) on (-1,1), normalized to unit mass.
double mollifier(double x);

// k-th derivative of the normalized mollifier (exact rational-polynomial
// recurrence, k <= 12).
double mollifier_deriv(double x, int k);

// Smoothed indicator: the convolution of 1_{[-3/4,3/4]} with a width-1/4
// mollifier.  Identically 1 on [-1/2,1/2], supported on [-1,1].
double bump(double t);

// k-th derivative of bump (analytic, via the mollifier derivatives).
double bump_deriv(double t, int k);

} // namespace lab

#endif
