#ifndef LAB_GL3_KERNELS_HPP
#define LAB_GL3_KERNELS_HPP

#include "lab/constants.hpp"
#include "lab/langlands.hpp"

namespace lab {

// Single-variable Mellin kernel data: for sgn eps,
//   Gt^eps(s, mu) = pi^{-3s}/(12288 pi^{7/2}) (prod_j R1_j(s) + eps i prod_j R2_j(s)),
//   R1_j = Gamma((s - mu_j)/2) / Gamma((1 - s + mu_j)/2),
//   R2_j = Gamma((1 + s - mu_j)/2) / Gamma((2 - s + mu_j)/2).
cplx tilde_G(int eps, cplx s, const Mu& mu);

// G(s, mu) = (1/Gamma(s1+s2)) prod_j Gamma(s1 - mu_j) Gamma(s2 + mu_j);
// returns exact 0 when s1+s2 is a non-positive integer (zero of 1/Gamma).
cplx mellin_G(cplx s1, cplx s2, const Mu& mu);

// The four trigonometric factors S^{e1 e2}(s, mu), verbatim.
cplx trig_S(int e1, int e2, cplx s1, cplx s2, const Mu& mu);

// Stable product S^{e1 e2}((s,-s), mu_S) * G((s,-s), mu_G), the antidiagonal
// specialization where 1/(Gamma(z) sin(pi z)) collapses to Gamma(1-z)/pi.
// Exactly 0 for the ++ and -- sign pairs.
cplx gs_antidiagonal(int e1, int e2, cplx s, const Mu& mu_S, const Mu& mu_G);

// Closed form of gs_antidiagonal(+,-,s,mu,mu):
//   pi^2 cos(pi(mu2-mu3)/2) /
//   (32 sin(pi(mu1-mu2)/2) sin(pi(mu1-mu3)/2) (mu1-s)(s-mu2)(s-mu3)).
cplx residue_closed_form_pm(cplx s, const Mu& mu);

// Sum over the Weyl orbit of (S^{+-} + S^{-+})((s,-s), w(mu)) G((s,-s), mu);
// exponentially small in the parameter height.
cplx residue_cancellation(cplx s, const Mu& mu);

// K_{w4}(y; mu) = int |y|^{-s} Gt^{sgn y}(s, mu) ds/(2 pi i) on a vertical
// line right of the pole set; abscissa is overridable for the
// contour-independence test.
cplx k_w4(double y, const Mu& mu, double tol, double abscissa = 1.0 / 12.0);

// K_{w6}^{sgn y1, sgn y2}(y; mu): double Mellin-Barnes integral of
// |4 pi^2 y1|^{-s1} |4 pi^2 y2|^{-s2} G(s, mu) S^{sgn}(s, mu) over vertical
// lines chosen per sign pair (absolute convergence), with tapered truncation
// certified by step- and length-refinement.  For the ++ and -- sign pairs the
// integrand is entire to the right of the default lines and the contour is
// shifted toward the saddle, so tiny kernel values are extracted without
// catastrophic cancellation.  abscissa overrides are for the
// contour-independence test (pass 0,0 to use the defaults).
cplx k_w6_mellin_barnes(double y1, double y2, const Mu& mu, double tol,
                        double abscissa1 = 0.0, double abscissa2 = 0.0);

// Bessel-integral kernels J_i (i = 1..5) with u-integrals transformed so the
// wide-oscillation factor has a linear phase; sign selects J_1^{+-} and is
// ignored for i >= 2.  Requires imaginary mu.  Bessel arguments carry the
// 2 pi of the Mellin-side normalization, so these match k_w6_mellin_barnes at
// equal (y1, y2) pointwise.  tol is relative to the integrand peak, floored
// at the inner oscillatory-kernel noise.
cplx j_kernel(int i, int sign, double y1, double y2, const Mu& mu, double tol);

} // namespace lab

#endif
