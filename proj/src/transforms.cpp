#include "lab/transforms.hpp"

#include "lab/bessel.hpp"
#include "lab/cheb.hpp"
#include "lab/complex_gamma.hpp"
#include "lab/errors.hpp"
#include "lab/gl3_kernels.hpp"
#include "lab/twisted_bessel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lab {

namespace {

constexpr double INV_12PI2 = 1.0 / (12.0 * PI * PI);
constexpr double INV_24PI2 = 1.0 / (24.0 * PI * PI);
const double SQRT2 = std::sqrt(2.0);

// Nominal cost units: one unit per interpolated integrand point, a flat rate
// per opaque kernel call sized to its internal quadrature work.
constexpr long COST_BESSEL = 150;
constexpr long COST_KW4 = 20'000;
constexpr long COST_KW6 = 300'000;
constexpr long COST_JK = 50'000;

struct EvalBudget {
    long remaining;
    void charge(long n) {
        remaining -= n;
        if (remaining < 0)
            throw BudgetExceeded("evaluation budget exhausted");
    }
};

double mu_m2(const Mu& mu) { return std::imag(mu.v[1]); }

double mu_t1(const Mu& mu) {
    return std::max(std::abs(std::imag(mu.v[2] - mu.v[0])), 1e-8);
}

// Argument beyond which the decaying kernel is dead to working precision.
double dead_k(double t1) { return 0.25 * PI * t1 + 14.0; }

// Scale beyond which a twisted integral against the oscillating kernels has
// no stationary point and is superpolynomially small.
double dead_j(double freq, double t2) {
    return PI * std::abs(freq) + 0.5 * std::abs(t2) + 60.0;
}

cplx log_cos_pi(cplx z) { return log_sin_pi(z + 0.5); }

// Constant relating the (+,+) kernel to the double-K integral:
// cos(3 pi nu1/2) cos(3 pi nu2/2) / cos(3 pi nu3/2) / (12 pi^2).
cplx c5_const(const Mu& mu) {
    auto nu = nu_coords(mu);
    return std::exp(log_cos_pi(1.5 * nu[0]) + log_cos_pi(1.5 * nu[1]) -
                    log_cos_pi(1.5 * nu[2])) *
           INV_12PI2;
}

int kind_index(BesselKind k) {
    switch (k) {
    case BesselKind::k_tilde_kind: return 0;
    case BesselKind::j_minus_kind: return 1;
    default: return 2;
    }
}

double kernel_direct(BesselKind kind, double t1, double z) {
    switch (kind) {
    case BesselKind::k_tilde_kind: return k_tilde(t1, z, 1e-9);
    case BesselKind::j_minus_kind: return j_minus(t1, z, 1e-9);
    default: return j_plus(t1, z, 1e-9);
    }
}

// Chebyshev surrogate for z -> K(z) on [z_lo, z_hi], split at the transition
// scale 0.9 t1: below it the kernel oscillates in log z at frequency t1, so
// the low piece interpolates in s = log z; above it the phase is close to
// linear in z.
struct KernelProfile {
    bool has_low = false;
    bool has_high = false;
    double z_lo = 0.0, z_split = 0.0, z_hi = 0.0;
    ChebSeries low, high;

    double eval(double z) const {
        if (z >= z_hi)
            return 0.0;
        if (z < z_lo)
            z = z_lo;
        if (has_low && (!has_high || z <= z_split))
            return low.eval(std::log(z));
        return high.eval(z);
    }
};

KernelProfile build_profile(BesselKind kind, double t1, double z_lo, double z_hi,
                            double fit_tol, EvalBudget& budget) {
    KernelProfile prof;
    if (z_hi <= z_lo * (1.0 + 1e-9))
        z_hi = z_lo * 1.5;
    prof.z_lo = z_lo;
    prof.z_hi = z_hi;
    auto f = [&](double z) {
        budget.charge(COST_BESSEL);
        return kernel_direct(kind, t1, z);
    };
    double zs = 0.9 * t1;
    if (zs <= z_lo * 1.25) {
        prof.has_high = true;
        prof.z_split = z_lo;
        prof.high = ChebSeries::fit_auto(f, z_lo, z_hi, fit_tol);
    } else if (zs >= 0.999 * z_hi) {
        prof.has_low = true;
        prof.z_split = z_hi;
        prof.low = ChebSeries::fit_auto([&](double s) { return f(std::exp(s)); },
                                        std::log(z_lo), std::log(z_hi), fit_tol);
    } else {
        prof.has_low = true;
        prof.has_high = true;
        prof.z_split = zs;
        prof.low = ChebSeries::fit_auto([&](double s) { return f(std::exp(s)); },
                                        std::log(z_lo), std::log(zs), fit_tol);
        prof.high = ChebSeries::fit_auto(f, zs, z_hi, fit_tol);
    }
    return prof;
}

// Twisted integral int U(x) x^{i t2} K(alpha x) e(freq x) dx with the kernel
// read from the profile.
QuadResult ti_profile(const KernelProfile& prof, double t2, double alpha,
                      double freq, double tol, EvalBudget& budget) {
    auto f = [&](double x) -> cplx {
        budget.charge(1);
        double w = weight_U(x);
        if (w == 0.0)
            return cplx(0.0);
        return w * prof.eval(alpha * x) *
               std::polar(1.0, t2 * std::log(x)) * e_of(freq * x);
    };
    return integrate(f, 1.0, SQRT2, tol, 120'000);
}

// One separated t-integral: the double (x,y) integral of a double-Bessel part
// factors at fixed t into a product of twisted integrals, the x slot carrying
// the +m2 log twist and frequency fa, the y slot -m2 and fb.
struct Piece {
    double lo = 0.0, hi = 0.0;
    BesselKind ka = BesselKind::k_tilde_kind;
    BesselKind kb = BesselKind::k_tilde_kind;
    std::function<double(double)> aa, ab;
    std::function<cplx(double)> w;
    double fa = 0.0, fb = 0.0;
    cplx mult{0.0};
};

// Appends the separated pieces of part i for arguments (e1 th1 x^2, e2 th2 y^2)
// with frequencies (U, V).  Mixed parts 2..4 appear twice, once per
// orientation of the (+,-)/(-,+) pair.
void add_pieces(std::vector<Piece>& out, int i, double th1, double th2,
                double U, double V, const Mu& mu) {
    double m2 = mu_m2(mu);
    double t1 = mu_t1(mu);
    double s1 = std::sqrt(th1), s2 = std::sqrt(th2);
    cplx pref12 = std::polar(1.0, 0.5 * m2 * std::log(th1 / th2));

    auto w_pm_log1sq = [m2](double sign) {
        return [m2, sign](double t) -> cplx {
            return std::polar(1.0, sign * 1.5 * m2 * std::log(t * t - 1.0)) *
                   (t / (t * t - 1.0));
        };
    };
    auto w_pm_logt = [m2](double sign) {
        return [m2, sign](double t) -> cplx {
            return std::polar(1.0, sign * 3.0 * m2 * std::log(t)) / t;
        };
    };

    if (i == 1) {
        for (BesselKind s : {BesselKind::j_minus_kind, BesselKind::j_plus_kind}) {
            Piece p;
            p.lo = SQRT2;
            p.hi = std::max(2.0, dead_j(U, m2) / s1);
            p.ka = p.kb = s;
            p.aa = [s1](double t) { return s1 * t; };
            p.ab = [s2](double t) { return s2 * t / std::sqrt(t * t - 1.0); };
            p.w = w_pm_log1sq(+1.0);
            p.fa = U;
            p.fb = V;
            p.mult = INV_12PI2 * pref12;
            out.push_back(p);

            Piece q;
            q.lo = SQRT2;
            q.hi = std::max(2.0, dead_j(V, m2) / s2);
            q.ka = q.kb = s;
            q.aa = [s1](double t) { return s1 * t / std::sqrt(t * t - 1.0); };
            q.ab = [s2](double t) { return s2 * t; };
            q.w = w_pm_log1sq(-1.0);
            q.fa = U;
            q.fb = V;
            q.mult = INV_12PI2 * pref12;
            out.push_back(q);
        }
        return;
    }

    if (i == 5) {
        cplx mult = c5_const(mu) * pref12;
        double dk = dead_k(t1);

        Piece p;
        p.lo = 1.0;
        p.hi = std::sqrt(std::max(dk * dk / (s1 * s1) - 1.0, 2.25));
        p.ka = p.kb = BesselKind::k_tilde_kind;
        p.aa = [s1](double t) { return s1 * std::sqrt(1.0 + t * t); };
        p.ab = [s2](double t) { return s2 * std::sqrt(1.0 + 1.0 / (t * t)); };
        p.w = w_pm_logt(+1.0);
        p.fa = U;
        p.fb = V;
        p.mult = mult;
        out.push_back(p);

        Piece q;
        q.lo = 1.0;
        q.hi = std::sqrt(std::max(dk * dk / (s2 * s2) - 1.0, 2.25));
        q.ka = q.kb = BesselKind::k_tilde_kind;
        q.aa = [s1](double t) { return s1 * std::sqrt(1.0 + 1.0 / (t * t)); };
        q.ab = [s2](double t) { return s2 * std::sqrt(1.0 + t * t); };
        q.w = w_pm_logt(-1.0);
        q.fa = U;
        q.fb = V;
        q.mult = mult;
        out.push_back(q);
        return;
    }

    // Parts 2..4: both orientations of the mixed quadrant pair.
    struct Orient {
        double sa, fa, sb, fb;
        cplx pref;
    };
    const Orient orients[2] = {{s1, U, s2, V, pref12},
                               {s2, V, s1, U, std::conj(pref12)}};
    for (const Orient& o : orients) {
        double sa = o.sa, sb = o.sb;
        cplx mult = INV_24PI2 * o.pref;
        double dk = dead_k(t1);
        if (i == 2) {
            Piece p;
            p.lo = 1e-3 * std::max(1.0 / sa, 1.5 / sb);
            p.hi = std::max(1.5, dead_j(o.fa, m2) / sa);
            p.ka = p.kb = BesselKind::j_minus_kind;
            p.aa = [sa](double t) { return sa * t; };
            p.ab = [sb](double t) { return sb * t / std::sqrt(1.0 + t * t); };
            p.w = [m2](double t) -> cplx {
                return std::polar(1.0, 1.5 * m2 * std::log1p(t * t)) *
                       (t / (1.0 + t * t));
            };
            p.fa = o.fa;
            p.fb = o.fb;
            p.mult = mult;
            out.push_back(p);
        } else if (i == 3) {
            Piece p;
            p.lo = 1.0;
            p.hi = std::sqrt(std::max(dk * dk / (sa * sa) - 1.0, 2.25));
            p.ka = BesselKind::k_tilde_kind;
            p.kb = BesselKind::j_minus_kind;
            p.aa = [sa](double t) { return sa * std::sqrt(1.0 + t * t); };
            p.ab = [sb](double t) { return sb * std::sqrt(1.0 + 1.0 / (t * t)); };
            p.w = w_pm_logt(+1.0);
            p.fa = o.fa;
            p.fb = o.fb;
            p.mult = mult;
            out.push_back(p);

            Piece q;
            q.lo = SQRT2;
            q.hi = std::max(2.0, dead_j(o.fb, m2) / sb);
            q.ka = BesselKind::k_tilde_kind;
            q.kb = BesselKind::j_minus_kind;
            q.aa = [sa](double t) { return sa * t / std::sqrt(t * t - 1.0); };
            q.ab = [sb](double t) { return sb * t; };
            q.w = w_pm_log1sq(-1.0);
            q.fa = o.fa;
            q.fb = o.fb;
            q.mult = mult;
            out.push_back(q);
        } else if (i == 4) {
            Piece p;
            p.lo = 1.0 / std::sqrt(1.0 + dk * dk / (sb * sb));
            p.hi = 1.0 - 5e-4;
            p.ka = p.kb = BesselKind::k_tilde_kind;
            p.aa = [sa](double u) { return sa * std::sqrt(1.0 - u * u); };
            p.ab = [sb](double u) { return sb * std::sqrt(1.0 - u * u) / u; };
            p.w = w_pm_logt(+1.0);
            p.fa = o.fa;
            p.fb = o.fb;
            p.mult = mult;
            out.push_back(p);
        } else {
            throw std::invalid_argument("double-Bessel part index must be 1..5");
        }
    }
}

// Evaluates sum_p mult_p int_p W(t) TI_a(t) TI_b(t) dt at one spectral point,
// sharing one kernel surrogate per Bessel kind across all pieces.
QuadResult k_node(const std::vector<int>& parts, double th1, double th2,
                  double U, double V, const Mu& mu, double tol,
                  EvalBudget& budget) {
    double m2 = mu_m2(mu);
    double t1 = mu_t1(mu);

    std::vector<Piece> pieces;
    for (int i : parts)
        add_pieces(pieces, i, th1, th2, U, V, mu);
    std::erase_if(pieces, [](const Piece& p) { return p.hi <= 1.05 * p.lo; });
    if (pieces.empty())
        return QuadResult{cplx(0.0), 0.0, 0, true};

    double zlo[3], zhi[3];
    std::fill_n(zlo, 3, std::numeric_limits<double>::infinity());
    std::fill_n(zhi, 3, 0.0);
    auto widen = [&](BesselKind k, double a1, double a2) {
        int idx = kind_index(k);
        zlo[idx] = std::min(zlo[idx], std::min(a1, a2));
        zhi[idx] = std::max(zhi[idx], std::max(a1, a2) * SQRT2);
    };
    for (const Piece& p : pieces) {
        widen(p.ka, p.aa(p.lo), p.aa(p.hi));
        widen(p.kb, p.ab(p.lo), p.ab(p.hi));
    }

    KernelProfile prof[3];
    const BesselKind kinds[3] = {BesselKind::k_tilde_kind,
                                 BesselKind::j_minus_kind,
                                 BesselKind::j_plus_kind};
    for (int k = 0; k < 3; ++k)
        if (zhi[k] > 0.0)
            prof[k] = build_profile(kinds[k], t1,
                                    std::max(zlo[k] * 0.999, 1e-4),
                                    zhi[k] * 1.0001, 1e-7, budget);

    QuadResult out;
    out.converged = true;
    for (const Piece& p : pieces) {
        double width = p.hi - p.lo;
        double m = std::max(std::abs(p.mult), 1e-300);
        double ptol = std::clamp(tol / (double(pieces.size()) * m), 1e-10, 1e-2);
        double titol = std::max(0.05 * ptol / std::max(1.0, width), 3e-11);
        const KernelProfile& pa = prof[kind_index(p.ka)];
        const KernelProfile& pb = prof[kind_index(p.kb)];
        auto f = [&](double t) -> cplx {
            QuadResult A = ti_profile(pa, +m2, p.aa(t), p.fa, titol, budget);
            QuadResult B = ti_profile(pb, -m2, p.ab(t), p.fb, titol, budget);
            return p.w(t) * A.value * B.value;
        };
        QuadResult r = integrate(f, p.lo, p.hi, ptol, 40'000);
        out.value += p.mult * r.value;
        out.abs_error += std::abs(p.mult) * (r.abs_error + 3.0 * titol * width);
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
    }
    return out;
}

// One orientation of the reduced double-K part: the u-integral of
// I(fa, alpha(u)) I~(fb, beta(u)) u^{3 i m2} / u against direct twisted
// integrals, with the kernel-death lower cutoff and an optional window clip.
QuadResult k4_reduced_orient(double tha, double fa, double thb, double fb,
                             const Mu& mu, double tol, double u_clip_lo,
                             double u_clip_hi, EvalBudget& budget) {
    double m2 = mu_m2(mu);
    double t1 = mu_t1(mu);
    double sa = std::sqrt(tha), sb = std::sqrt(thb);
    double dk = dead_k(t1);
    double u_lo = std::max(u_clip_lo, 1.0 / std::sqrt(1.0 + dk * dk / (sb * sb)));
    double u_hi = std::min(u_clip_hi, 1.0 - 5e-4);
    QuadResult out;
    out.converged = true;
    if (u_hi <= u_lo * (1.0 + 1e-7))
        return out;
    double titol = std::max(0.05 * tol, 1e-10);
    bool inner_ok = true;
    auto f = [&](double u) -> cplx {
        double al = sa * std::sqrt((1.0 - u) * (1.0 + u));
        double be = sb * std::sqrt(1.0 - u * u) / u;
        QuadResult A = twisted_integral(BesselKind::k_tilde_kind, t1, +m2, al,
                                        fa, titol);
        QuadResult B = twisted_integral(BesselKind::k_tilde_kind, t1, -m2, be,
                                        fb, titol);
        budget.charge(COST_BESSEL * (A.evaluations + B.evaluations));
        inner_ok = inner_ok && A.converged && B.converged;
        return A.value * B.value * std::polar(1.0, 3.0 * m2 * std::log(u)) / u;
    };
    QuadResult r = integrate(f, u_lo, u_hi, tol, 60'000);
    cplx pref = std::polar(1.0, 0.5 * m2 * std::log(tha / thb));
    out.value = pref * r.value;
    out.abs_error = r.abs_error + 2.0 * titol * (u_hi - u_lo);
    out.evaluations = r.evaluations;
    out.converged = r.converged && inner_ok;
    return out;
}

struct MuAssembly {
    std::vector<MuNode> nodes;
    std::vector<double> coef; // weight * h * spec, before h_scale
    double sum_abs = 0.0;
    double ring_abs = 0.0;
    double coef_max = 0.0;
};

MuAssembly prepare_mu(const TransformRequest& req) {
    MuAssembly a;
    a.nodes = mu_window_nodes(req.sp, req.mu_n, req.mu_radius);
    a.coef.resize(a.nodes.size());
    int n = req.mu_n;
    for (std::size_t idx = 0; idx < a.nodes.size(); ++idx) {
        double h = test_function_h(a.nodes[idx].mu, req.sp);
        double sm = std::real(spec_measure(a.nodes[idx].mu));
        double c = a.nodes[idx].weight * h * sm;
        a.coef[idx] = c;
        a.sum_abs += std::abs(c);
        a.coef_max = std::max(a.coef_max, std::abs(c));
        int ii = int((idx / std::size_t(n)) % std::size_t(n));
        int jj = int(idx % std::size_t(n));
        if (ii == 0 || ii == n - 1 || jj == 0 || jj == n - 1)
            a.ring_abs += std::abs(c);
    }
    return a;
}

template <typename NodeFn>
QuadResult assemble(const TransformRequest& req, double t_cap, NodeFn&& fn) {
    check_transform_request(req);
    if (req.sp.T > t_cap)
        throw std::invalid_argument(
            "spectral height exceeds the desk range of this transform");
    MuAssembly a = prepare_mu(req);
    if (a.ring_abs > 0.5 * req.tol * std::max(a.sum_abs, 1e-30))
        throw BudgetExceeded(
            "spectral window truncation is not certified at the requested tolerance");
    double ktol = std::max(req.tol / std::max(a.sum_abs, 1e-30), 1e-9);
    EvalBudget budget{req.budget};
    QuadResult out;
    out.converged = true;
    for (std::size_t idx = 0; idx < a.nodes.size(); ++idx) {
        double c = a.coef[idx];
        if (std::abs(c) <= 1e-14 * a.coef_max)
            continue;
        QuadResult r = fn(a.nodes[idx].mu, ktol, budget);
        out.value += c * r.value;
        out.abs_error += std::abs(c) * r.abs_error;
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
    }
    out.value *= req.h_scale;
    out.abs_error *= std::abs(req.h_scale);
    return out;
}

} // namespace

void check_transform_request(const TransformRequest& req) {
    check_spectral_params(req.sp);
    if (!(req.tol > 0.0) || !std::isfinite(req.tol))
        throw std::invalid_argument("tolerance must be positive");
    if (req.budget <= 0)
        throw std::invalid_argument("evaluation budget must be positive");
    if (req.mu_n < 1 || req.mu_n > 48)
        throw std::invalid_argument("spectral nodes per axis must be in [1,48]");
    if (!(req.mu_radius > 0.0) || req.mu_radius > 30.0)
        throw std::invalid_argument("spectral window radius must be in (0,30]");
    if (!std::isfinite(req.y1) || !std::isfinite(req.y2) ||
        !std::isfinite(req.h_scale))
        throw std::invalid_argument("transform arguments must be finite");
}

std::vector<MuNode> mu_window_nodes(const SpectralParams& sp, int n,
                                    double radius) {
    check_spectral_params(sp);
    if (n < 1 || n > 48)
        throw std::invalid_argument("spectral nodes per axis must be in [1,48]");
    if (!(radius > 0.0))
        throw std::invalid_argument("spectral window radius must be positive");

    // Gauss-Legendre nodes on [-1,1] by Newton iteration on P_n.
    std::vector<double> x(n), w(n);
    for (int k = 0; k < n; ++k) {
        double t = std::cos(PI * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            if (n == 1)
                p1 = t;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double pn = (n == 1) ? t : p1;
            dp = n * (t * pn - p0) / (t * t - 1.0);
            double step = pn / dp;
            t -= step;
            if (std::abs(step) < 1e-15)
                break;
        }
        x[k] = t;
        w[k] = 2.0 / ((1.0 - t * t) * dp * dp);
    }

    std::array<std::pair<double, double>, 6> centers;
    for (std::size_t wi = 0; wi < weyl_all.size(); ++wi) {
        Mu c = weyl_apply(weyl_all[wi], sp.mu0);
        centers[wi] = {std::imag(c.v[0]), std::imag(c.v[1])};
    }

    std::vector<MuNode> out;
    out.reserve(std::size_t(6) * n * n);
    for (const auto& c : centers) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double p1 = c.first + radius * x[i];
                double p2 = c.second + radius * x[j];
                // Overlapping orbit squares are de-duplicated by dividing
                // each weight by its covering multiplicity.
                int cover = 0;
                for (const auto& cc : centers)
                    if (std::abs(p1 - cc.first) <= radius + 1e-12 &&
                        std::abs(p2 - cc.second) <= radius + 1e-12)
                        ++cover;
                double wt = radius * w[i] * radius * w[j] / double(cover);
                out.push_back({make_mu(cplx(0.0, p1), cplx(0.0, p2)), wt});
            }
        }
    }
    return out;
}

QuadResult phi_w4(const TransformRequest& req) {
    if (req.y1 == 0.0)
        throw std::invalid_argument("phi_w4 needs a nonzero argument");
    return assemble(req, 15.0, [&](const Mu& mu, double ktol, EvalBudget& b) {
        b.charge(COST_KW4);
        cplx v = k_w4(req.y1, mu, ktol);
        return QuadResult{v, ktol, COST_KW4, true};
    });
}

QuadResult phi_w6(const TransformRequest& req) {
    if (req.y1 == 0.0 || req.y2 == 0.0)
        throw std::invalid_argument("phi_w6 needs nonzero arguments");
    return assemble(req, 15.0, [&](const Mu& mu, double ktol, EvalBudget& b) {
        if (req.use_mellin) {
            b.charge(COST_KW6);
            cplx v = k_w6_mellin_barnes(req.y1, req.y2, mu, ktol);
            return QuadResult{v, ktol, COST_KW6, true};
        }
        double a1 = std::abs(req.y1), a2 = std::abs(req.y2);
        cplx v;
        long cost;
        if (req.y1 > 0.0 && req.y2 > 0.0) {
            cplx c5 = c5_const(mu);
            double jt = std::clamp(ktol / std::max(std::abs(c5), 1.0), 1e-9, 1e-2);
            v = c5 * j_kernel(5, 1, a1, a2, mu, jt);
            cost = COST_JK;
        } else if (req.y1 > 0.0 && req.y2 < 0.0) {
            v = INV_24PI2 * (j_kernel(2, 1, a1, a2, mu, ktol) +
                             j_kernel(3, 1, a1, a2, mu, ktol) +
                             j_kernel(4, 1, a1, a2, mu, ktol));
            cost = 3 * COST_JK;
        } else if (req.y1 < 0.0 && req.y2 > 0.0) {
            v = INV_24PI2 * (j_kernel(2, 1, a2, a1, mu, ktol) +
                             j_kernel(3, 1, a2, a1, mu, ktol) +
                             j_kernel(4, 1, a2, a1, mu, ktol));
            cost = 3 * COST_JK;
        } else {
            v = INV_12PI2 * (j_kernel(1, -1, a1, a2, mu, ktol) +
                             j_kernel(1, +1, a1, a2, mu, ktol));
            cost = 2 * COST_JK;
        }
        b.charge(cost);
        return QuadResult{v, ktol, cost, true};
    });
}

QuadResult k_i_transform(int i, double th1, double th2, double U, double V,
                         const TransformRequest& req) {
    if (i < 1 || i > 5)
        throw std::invalid_argument("double-Bessel part index must be 1..5");
    if (!(th1 > 0.0) || !(th2 > 0.0))
        throw std::invalid_argument("theta scales must be positive");
    std::vector<int> parts{i};
    return assemble(req, 12.0, [&](const Mu& mu, double ktol, EvalBudget& b) {
        return k_node(parts, th1, th2, U, V, mu, ktol, b);
    });
}

QuadResult k_transform(double th1, double th2, double U, double V,
                       const TransformRequest& req) {
    if (!(th1 > 0.0) || !(th2 > 0.0))
        throw std::invalid_argument("theta scales must be positive");
    std::vector<int> parts{1, 2, 3, 4, 5};
    return assemble(req, 12.0, [&](const Mu& mu, double ktol, EvalBudget& b) {
        return k_node(parts, th1, th2, U, V, mu, ktol, b);
    });
}

QuadResult k4_pipeline_windowed(double th1, double th2, double U, double V,
                                const TransformRequest& req, double u_lo,
                                double u_hi) {
    if (!(th1 > 0.0) || !(th2 > 0.0))
        throw std::invalid_argument("theta scales must be positive");
    if (!(u_lo >= 0.0) || !(u_hi <= 1.0) || !(u_lo < u_hi))
        throw std::invalid_argument("u window must satisfy 0 <= lo < hi <= 1");
    return assemble(req, 12.0, [&](const Mu& mu, double ktol, EvalBudget& b) {
        QuadResult r1 =
            k4_reduced_orient(th1, U, th2, V, mu, ktol, u_lo, u_hi, b);
        QuadResult r2 =
            k4_reduced_orient(th2, V, th1, U, mu, ktol, u_lo, u_hi, b);
        QuadResult out;
        out.value = INV_24PI2 * (r1.value + r2.value);
        out.abs_error = INV_24PI2 * (r1.abs_error + r2.abs_error);
        out.evaluations = r1.evaluations + r2.evaluations;
        out.converged = r1.converged && r2.converged;
        return out;
    });
}

QuadResult k4_pipeline(double th1, double th2, double U, double V,
                       const TransformRequest& req) {
    return k4_pipeline_windowed(th1, th2, U, V, req, 0.0, 1.0);
}

cplx k4_node_reduced(double th1, double th2, double U, double V, const Mu& mu,
                     double tol) {
    if (!(th1 > 0.0) || !(th2 > 0.0))
        throw std::invalid_argument("theta scales must be positive");
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    EvalBudget b{std::numeric_limits<long>::max() / 2};
    QuadResult r1 = k4_reduced_orient(th1, U, th2, V, mu, tol, 0.0, 1.0, b);
    QuadResult r2 = k4_reduced_orient(th2, V, th1, U, mu, tol, 0.0, 1.0, b);
    return INV_24PI2 * (r1.value + r2.value);
}

cplx k4_node_raw(double th1, double th2, double U, double V, const Mu& mu,
                 double tol) {
    if (!(th1 > 0.0) || !(th2 > 0.0))
        throw std::invalid_argument("theta scales must be positive");
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    const int n = 16;
    auto orient = [&](double tha, double fa, double thb, double fb) -> cplx {
        auto fx = [&](double x) -> cplx {
            double wx = weight_U(x);
            if (wx == 0.0)
                return cplx(0.0);
            auto fy = [&](double y) -> cplx {
                double wy = weight_U(y);
                if (wy == 0.0)
                    return cplx(0.0);
                return wy * j_kernel(4, 1, tha * x * x, thb * y * y, mu, tol) *
                       e_of(fb * y);
            };
            return wx * simpson_uniform(fy, 1.0, SQRT2, n) * e_of(fa * x);
        };
        return simpson_uniform(fx, 1.0, SQRT2, n);
    };
    return (orient(th1, U, th2, V) + orient(th2, V, th1, U)) * INV_24PI2;
}

} // namespace lab
