#ifndef LAB_QUADRATURE_HPP
#define LAB_QUADRATURE_HPP

#include "lab/constants.hpp"

#include <array>
#include <functional>

namespace lab {

struct QuadResult {
    cplx value{0.0, 0.0};
    double abs_error = 0.0; // accumulated estimate, not a rigorous bound
    long evaluations = 0;
    bool converged = false;
};

// Deterministic adaptive Simpson on [a,b].  The error estimate per panel is
// |S_fine - S_coarse|/15; panels are split depth-first left to right, so the
// evaluation sequence (and hence the result) is reproducible bit for bit.
QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                     double tol_abs, long max_evals = 2'000'000);

QuadResult integrate_real(const std::function<double(double)>& f, double a, double b,
                          double tol_abs, long max_evals = 2'000'000);

// Composite Simpson with a fixed uniform grid (n subintervals, n even).
cplx simpson_uniform(const std::function<cplx(double)>& f, double a, double b, int n);

// int_{x0}^infty f dx for tails that die off absolutely or through
// oscillation: keep a sharp base integral over [x0, X] and close with a
// smoothly tapered window of width `window`; X advances by half-windows until
// two consecutive totals agree within tol.
QuadResult integrate_tail(const std::function<cplx(double)>& f, double x0,
                          double window, double tol, int max_passes);

// 16-point Gauss-Legendre rule on [-1,1] (Newton on P_16, cached).
struct GaussRule16 {
    std::array<double, 16> x{};
    std::array<double, 16> w{};
};
const GaussRule16& gauss16();

// Integral of an oscillatory f over [a,b] by Gauss panels at most half a
// wavelength wide; freq(u) must bound the local phase derivative |phi'(u)|
// from above.  Error is spectral in the panel count, so no tolerance knob.
cplx osc_march(const std::function<cplx(double)>& f, double a, double b,
               const std::function<double(double)>& freq, long* evals = nullptr);

} // namespace lab

#endif
