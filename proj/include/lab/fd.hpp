#ifndef LAB_FD_HPP
#define LAB_FD_HPP

#include "lab/constants.hpp"

#include <functional>

namespace lab {

// k-th derivative by central differences on a symmetric stencil wide enough
// for order k, with step chosen as eps^(1/(k+2)) times the given scale.
double nth_deriv(const std::function<double(double)>& f, double x, int k,
                 double scale = 1.0);

cplx nth_deriv_c(const std::function<cplx(double)>& f, double x, int k,
                 double scale = 1.0);

} // namespace lab

#endif
