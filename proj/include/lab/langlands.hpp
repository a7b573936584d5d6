#ifndef LAB_LANGLANDS_HPP
#define LAB_LANGLANDS_HPP

#include "lab/constants.hpp"

#include <array>

namespace lab {

// Spectral parameter triple with mu1 + mu2 + mu3 = 0.
struct Mu {
    std::array<cplx, 3> v{cplx(0.0), cplx(0.0), cplx(0.0)};
};

Mu make_mu(cplx mu1, cplx mu2);

// Throws unless the entries sum to zero (1e-12 * scale) and real parts are
// bounded by re_bound.
void check_mu(const Mu& mu, double re_bound = 0.75);

// nu1 = (mu1 - mu2)/3, nu2 = (mu2 - mu3)/3, nu3 = (mu3 - mu1)/3.
std::array<cplx, 3> nu_coords(const Mu& mu);

double mu_norm(const Mu& mu);

enum class Weyl { I, W2, W3, W4, W5, W6 };

constexpr std::array<Weyl, 6> weyl_all = {Weyl::I,  Weyl::W2, Weyl::W3,
                                          Weyl::W4, Weyl::W5, Weyl::W6};

Mu weyl_apply(Weyl w, const Mu& mu);

// Group law: apply(compose(a, b), mu) = apply(a, apply(b, mu)).
Weyl weyl_compose(Weyl a, Weyl b);

// spec(mu) = prod_j 3 nu_j tan(3 pi nu_j / 2); throws when some 3 nu_j is at
// an odd integer (a pole of the tangent).
cplx spec_measure(const Mu& mu);

// Anchor data for the spectral window: mu0 in generic position at height T,
// genericity ratios in [c_lo, c_hi], polynomial degree cutoff A, and the
// window radius rho standing in for the asymptotic T^epsilon.
struct SpectralParams {
    Mu mu0;
    double T = 10.0;
    double c_lo = 0.15;
    double c_hi = 0.9;
    int A = 2;
    double rho = 1.0;
};

// Standard generic anchor used across the test families: imaginary direction
// proportional to (0.5533, 0.2435, -0.7967) scaled to Euclidean norm T.
SpectralParams default_spectral_params(double T);

void check_spectral_params(const SpectralParams& p);

// h(mu) = P(mu)^2 (sum_w psi((w(mu) - mu0)/rho))^2 with
// psi(z) = exp(z1^2 + z2^2 + z3^2) and P the spectral-pole-cancelling
// polynomial with zeros at 3 nu_j = +-(1 + 2n), n <= A.
double test_function_h(const Mu& mu, const SpectralParams& p);

} // namespace lab

#endif
