#ifndef LAB_BESSEL_HPP
#define LAB_BESSEL_HPP

#include "lab/constants.hpp"
#include "lab/quadrature.hpp"

namespace lab {

// J_k for integer k >= 0, real y >= 0.  Series / asymptotics / recurrences,
// absolute accuracy ~1e-10 up to y = 1e4.
double bessel_j(int k, double y);

double bessel_y0(double y); // y > 0
double bessel_k0(double y); // y > 0

struct Y0K0 {
    double y0;
    double k0;
};
Y0K0 bessel_y0_k0(double y);

// Macdonald function of imaginary order, K_{iT}(x), x > 0 (real-valued).
// Non-oscillatory integral representation; loses relative accuracy ~e^{pi T/2}
// so intended for small T cross-checks.
double macdonald_k_imag(double T, double x);

// J_{iT}(x) by the ascending series; reliable for x <= ~30.
cplx bessel_j_imag_nu(double T, double x);

// Oscillatory kernels of imaginary order 'iT', defined directly by their
// integral representations (all real-valued for T, y > 0):
//
//   ktilde(T,y)  = int_R  e( (2 y sinh u + T u) / 2pi ) du   (symmetrized)
//                = 2 int_0^inf cos(2 y sinh u) cos(T u) du
//   jminus(T,y)  = Re int_R e( (2 y cosh u + T u) / 2pi ) du
//   jplus(T,y)   = Im of the same integral
//
// Evaluated with a smooth taper once the phase derivative exceeds a safety
// multiple of T; the taper placement is advanced until the value stabilizes,
// so the reported error covers the truncation.
QuadResult bessel_k_tilde(double T, double y, double tol);
QuadResult bessel_cosh_kernel(double T, double y, double tol); // complex: jminus + i jplus

double k_tilde(double T, double y, double tol = 1e-9);
double j_minus(double T, double y, double tol = 1e-9);
double j_plus(double T, double y, double tol = 1e-9);

} // namespace lab

#endif
