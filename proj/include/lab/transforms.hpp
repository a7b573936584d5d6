#ifndef LAB_TRANSFORMS_HPP
#define LAB_TRANSFORMS_HPP

#include "lab/langlands.hpp"
#include "lab/quadrature.hpp"

#include <vector>

namespace lab {

struct TransformRequest {
    double y1 = 1.0;
    double y2 = 1.0;
    SpectralParams sp{};
    double tol = 1e-4;     // absolute tolerance handed to each kernel call
    long budget = 200'000'000;
    int mu_n = 6;          // Gauss-Legendre points per axis per Weyl ball
    double mu_radius = 3.0;
    bool use_mellin = false; // phi_w6 route selector
    double h_scale = 1.0;  // multiplies the test function, linearity hook
};

void check_transform_request(const TransformRequest& req);

struct MuNode {
    Mu mu;
    double weight;
};

// Tensor Gauss-Legendre nodes on squares of the given radius around every
// point of the Weyl orbit of sp.mu0 in the (Im mu1, Im mu2) plane.  Weights
// are plain area weights; the test function and spectral measure are left to
// the caller.  The plane carries the measure d(Im mu1) d(Im mu2).
std::vector<MuNode> mu_window_nodes(const SpectralParams& sp, int n, double radius);

// Phi_w4(y1) = int h(mu) K_w4(y1; mu) spec(mu) dmu over Re mu = 0.
QuadResult phi_w4(const TransformRequest& req);

// Phi_w6(y1,y2) = int h(mu) K_w6^{sgn y1, sgn y2}((y1,y2); mu) spec(mu) dmu.
// The default route expresses each sign quadrant through the double-Bessel
// integrals; the mixed and (-,-) quadrant identities hold after averaging
// against a Weyl-invariant weight, which this integral is.  use_mellin
// switches to the double contour representation of the kernel.
QuadResult phi_w6(const TransformRequest& req);

// K(theta1,theta2,U,V): the quadrant sum of int int U(x)U(y)
// Phi_w6(e1 th1 x^2, e2 th2 y^2) e(Ux+Vy) dx dy, assembled as the sum of the
// five double-Bessel parts below.
QuadResult k_transform(double th1, double th2, double U, double V,
                       const TransformRequest& req);

// One double-Bessel part K_i (i = 1..5).  Part 5 is the (+,+) quadrant, parts
// 2..4 each combine the (+,-) quadrant with its (-,+) mirror, part 1 is the
// (-,-) quadrant.  The parts sum to k_transform.
QuadResult k_i_transform(int i, double th1, double th2, double U, double V,
                         const TransformRequest& req);

// K_4 through the reduced u-integral of separated twisted integrals
// I(U, alpha(u)) I~(V, beta(u)) u^{3 mu2}, evaluated with direct kernel
// quadrature rather than the interpolated profiles of k_i_transform; the two
// must agree within combined tolerances.
QuadResult k4_pipeline(double th1, double th2, double U, double V,
                       const TransformRequest& req);

// Same with the u-range clipped to [u_lo, u_hi]; the localization tests
// compare windowed mass against the full integral.
QuadResult k4_pipeline_windowed(double th1, double th2, double U, double V,
                                const TransformRequest& req, double u_lo,
                                double u_hi);

// Single-mu integrand values of the two K_4 routes, for the dual-route and
// reparameterization tests: the reduced u-integral versus the raw (x,y)
// double integral over the kernel evaluator.
cplx k4_node_reduced(double th1, double th2, double U, double V, const Mu& mu,
                     double tol);
cplx k4_node_raw(double th1, double th2, double U, double V, const Mu& mu,
                 double tol);

} // namespace lab

#endif
