#ifndef LAB_COMPLEX_GAMMA_HPP
#define LAB_COMPLEX_GAMMA_HPP

#include "lab/constants.hpp"

namespace lab {

// Principal branch of log Gamma: analytic on C minus (-inf,0], real on the
// positive real axis.  Throws std::domain_error at the poles 0,-1,-2,...
cplx log_gamma(cplx z);

// Gamma itself, via exp(log_gamma).
cplx gamma_fn(cplx z);

// A branch of log sin(pi z) suitable for use inside exponent sums: the
// result is computed half-plane by half-plane so that exp(log_sin_pi(z))
// equals sin(pi z) to full precision even for large |Im z|.
cplx log_sin_pi(cplx z);

cplx sin_pi(cplx z);
cplx cos_pi(cplx z);

} // namespace lab

#endif
