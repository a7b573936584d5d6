#include "lab/langlands.hpp"

#include <cmath>
#include <stdexcept>

namespace lab {

Mu make_mu(cplx mu1, cplx mu2) {
    Mu m;
    m.v = {mu1, mu2, -mu1 - mu2};
    return m;
}

void check_mu(const Mu& mu, double re_bound) {
    cplx s = mu.v[0] + mu.v[1] + mu.v[2];
    double scale = 1.0 + mu_norm(mu);
    if (std::abs(s) > 1e-12 * scale)
        throw std::invalid_argument("Mu: entries must sum to zero");
    for (const cplx& z : mu.v)
        if (std::fabs(z.real()) > re_bound)
            throw std::invalid_argument("Mu: real part outside the declared strip");
}

std::array<cplx, 3> nu_coords(const Mu& mu) {
    return {(mu.v[0] - mu.v[1]) / 3.0, (mu.v[1] - mu.v[2]) / 3.0,
            (mu.v[2] - mu.v[0]) / 3.0};
}

double mu_norm(const Mu& mu) {
    return std::sqrt(std::norm(mu.v[0]) + std::norm(mu.v[1]) +
                     std::norm(mu.v[2]));
}

namespace {

// Index images: entry k of the result is source index perm[k].
constexpr int weyl_perm[6][3] = {
    {0, 1, 2}, // I
    {0, 2, 1}, // w2: (a,b,c) -> (a,c,b)
    {1, 0, 2}, // w3: (a,b,c) -> (b,a,c)
    {1, 2, 0}, // w4: (a,b,c) -> (b,c,a)
    {2, 0, 1}, // w5: (a,b,c) -> (c,a,b)
    {2, 1, 0}, // w6: (a,b,c) -> (c,b,a)
};

} // namespace

Mu weyl_apply(Weyl w, const Mu& mu) {
    const int* p = weyl_perm[(int)w];
    Mu out;
    out.v = {mu.v[p[0]], mu.v[p[1]], mu.v[p[2]]};
    return out;
}

Weyl weyl_compose(Weyl a, Weyl b) {
    const int* pa = weyl_perm[(int)a];
    const int* pb = weyl_perm[(int)b];
    int comp[3];
    for (int k = 0; k < 3; ++k) comp[k] = pb[pa[k]];
    for (int w = 0; w < 6; ++w)
        if (comp[0] == weyl_perm[w][0] && comp[1] == weyl_perm[w][1] &&
            comp[2] == weyl_perm[w][2])
            return (Weyl)w;
    throw std::logic_error("weyl_compose: closure failure");
}

cplx spec_measure(const Mu& mu) {
    auto nu = nu_coords(mu);
    cplx prod = 1.0;
    for (const cplx& n : nu) {
        cplx th = 3.0 * n;
        if (std::fabs(th.imag()) < 1e-12) {
            double r = th.real();
            double odd = std::round((r - 1.0) / 2.0) * 2.0 + 1.0;
            if (std::fabs(r - odd) < 1e-12)
                throw std::domain_error("spec_measure: pole at odd integer 3 nu");
        }
        if (std::fabs(th.real()) < 1e-14) {
            // Imaginary axis: (i s) tan(i pi s / 2) = -s tanh(pi s / 2),
            // evaluated without the complex tangent (no pole for real s).
            double s = th.imag();
            prod *= -s * std::tanh(0.5 * PI * s);
            continue;
        }
        prod *= th * std::tan(0.5 * PI * th);
    }
    return prod;
}

SpectralParams default_spectral_params(double T) {
    SpectralParams p;
    const double d1 = 1.0, d2 = 0.44, d3 = -1.44;
    double nrm = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
    p.mu0 = make_mu(cplx(0.0, T * d1 / nrm), cplx(0.0, T * d2 / nrm));
    p.T = T;
    return p;
}

void check_spectral_params(const SpectralParams& p) {
    check_mu(p.mu0);
    double nrm = mu_norm(p.mu0);
    if (!(nrm > 0.0)) throw std::invalid_argument("SpectralParams: zero anchor");
    for (const cplx& z : p.mu0.v) {
        double ratio = std::abs(z) / nrm;
        if (ratio < p.c_lo || ratio > p.c_hi)
            throw std::invalid_argument("SpectralParams: anchor not in generic position");
    }
    if (p.A < 0 || !(p.rho > 0.0))
        throw std::invalid_argument("SpectralParams: invalid cutoff or radius");
}

double test_function_h(const Mu& mu, const SpectralParams& p) {
    auto nu = nu_coords(mu);
    auto nu0 = nu_coords(p.mu0);
    cplx P = 1.0;
    for (int n = 0; n <= p.A; ++n) {
        double r = (1.0 + 2.0 * n) / 3.0;
        for (int j = 0; j < 3; ++j)
            P *= (nu[j] - r) * (nu[j] + r) / std::norm(nu0[j]);
    }
    cplx sum = 0.0;
    for (Weyl w : weyl_all) {
        Mu wm = weyl_apply(w, mu);
        cplx arg = 0.0;
        for (int j = 0; j < 3; ++j) {
            cplx z = (wm.v[j] - p.mu0.v[j]) / p.rho;
            arg += z * z;
        }
        sum += std::exp(arg);
    }
    cplx h = P * P * sum * sum;
    return h.real();
}

} // namespace lab
