#ifndef LAB_CONSTANTS_HPP
#define LAB_CONSTANTS_HPP

#include <complex>
#include <numbers>

namespace lab {

using cplx = std::complex<double>;

inline constexpr double PI = std::numbers::pi_v<double>;
inline constexpr double TWO_PI = 2.0 * std::numbers::pi_v<double>;
inline constexpr double EULER_GAMMA = std::numbers::egamma_v<double>;

// e(x) = exp(2*pi*i*x).  Every oscillatory phase in the library goes through
// these two helpers so the convention is fixed in exactly one place.
inline cplx e_of(double x) {
    return cplx(std::cos(TWO_PI * x), std::sin(TWO_PI * x));
}

inline cplx e_of(cplx z) {
    return std::exp(cplx(0.0, 1.0) * TWO_PI * z);
}

inline constexpr cplx I_UNIT{0.0, 1.0};

} // namespace lab

#endif
