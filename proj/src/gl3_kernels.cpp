#include "lab/gl3_kernels.hpp"

#include "lab/bessel.hpp"
#include "lab/bump.hpp"
#include "lab/complex_gamma.hpp"
#include "lab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace lab {

namespace {

cplx log_cos_pi(cplx z) { return log_sin_pi(z + 0.5); }

cplx integrate_chk(const std::function<cplx(double)>& f, double a, double b,
                   double tol, long max_evals = 2'000'000) {
    QuadResult q = integrate(f, a, b, tol, max_evals);
    if (!q.converged)
        throw std::runtime_error("quadrature tolerance unmet on [" + std::to_string(a) +
                                 ", " + std::to_string(b) + "]");
    return q.value;
}

cplx osc_extend(const std::function<cplx(double)>& f, double x0, double wlen,
                double tol, int max_pass) {
    QuadResult r = integrate_tail(f, x0, wlen, tol, max_pass);
    if (!r.converged)
        throw std::runtime_error("tail extension did not stabilize");
    return r.value;
}

} // namespace

cplx tilde_G(int eps, cplx s, const Mu& mu) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("tilde_G: eps must be +-1");
    cplx l1 = 0.0, l2 = 0.0;
    for (int j = 0; j < 3; ++j) {
        l1 += log_gamma(0.5 * (s - mu.v[j])) - log_gamma(0.5 * (1.0 - s + mu.v[j]));
        l2 += log_gamma(0.5 * (1.0 + s - mu.v[j])) - log_gamma(0.5 * (2.0 - s + mu.v[j]));
    }
    cplx front = std::exp(-3.0 * s * std::log(PI)) / (12288.0 * std::pow(PI, 3.5));
    return front * (std::exp(l1) + static_cast<double>(eps) * I_UNIT * std::exp(l2));
}

cplx mellin_G(cplx s1, cplx s2, const Mu& mu) {
    cplx z = s1 + s2;
    double zr = std::round(z.real());
    if (zr <= 0.0 && std::abs(z.real() - zr) < 1e-13 && std::abs(z.imag()) < 1e-13)
        return 0.0;
    cplx lg = -log_gamma(z);
    for (int j = 0; j < 3; ++j)
        lg += log_gamma(s1 - mu.v[j]) + log_gamma(s2 + mu.v[j]);
    return std::exp(lg);
}

cplx trig_S(int e1, int e2, cplx s1, cplx s2, const Mu& mu) {
    auto nu = nu_coords(mu);
    auto chk = [](cplx den) {
        if (std::abs(den) < 1e-280)
            throw std::domain_error("trig_S: pole of the trigonometric factor");
        return den;
    };
    if (e1 > 0 && e2 > 0)
        return cos_pi(1.5 * nu[0]) * cos_pi(1.5 * nu[1]) * cos_pi(1.5 * nu[2]) /
               (24.0 * PI * PI);
    if (e1 > 0 && e2 < 0) {
        cplx num = cos_pi(1.5 * nu[1]) * sin_pi(s1 - mu.v[0]) * sin_pi(s2 + mu.v[1]) *
                   sin_pi(s2 + mu.v[2]);
        cplx den = chk(sin_pi(1.5 * nu[0]) * sin_pi(1.5 * nu[2]) * sin_pi(s1 + s2));
        return -num / (32.0 * den);
    }
    if (e1 < 0 && e2 > 0) {
        cplx num = cos_pi(1.5 * nu[0]) * sin_pi(s1 - mu.v[0]) * sin_pi(s1 - mu.v[1]) *
                   sin_pi(s2 + mu.v[2]);
        cplx den = chk(sin_pi(1.5 * nu[1]) * sin_pi(1.5 * nu[2]) * sin_pi(s1 + s2));
        return -num / (32.0 * den);
    }
    cplx num = cos_pi(1.5 * nu[2]) * sin_pi(s1 - mu.v[1]) * sin_pi(s2 + mu.v[1]);
    cplx den = chk(sin_pi(1.5 * nu[1]) * sin_pi(1.5 * nu[0]));
    return -num / (32.0 * den);
}

cplx gs_antidiagonal(int e1, int e2, cplx s, const Mu& mu_S, const Mu& mu_G) {
    if (e1 == e2) return 0.0;
    auto nt = nu_coords(mu_S);
    cplx lg;
    if (e1 > 0) {
        lg = log_cos_pi(1.5 * nt[1]) - log_sin_pi(1.5 * nt[0]) - log_sin_pi(1.5 * nt[2]) +
             log_sin_pi(s - mu_S.v[0]) + log_sin_pi(-s + mu_S.v[1]) +
             log_sin_pi(-s + mu_S.v[2]);
    } else {
        lg = log_cos_pi(1.5 * nt[0]) - log_sin_pi(1.5 * nt[1]) - log_sin_pi(1.5 * nt[2]) +
             log_sin_pi(s - mu_S.v[0]) + log_sin_pi(s - mu_S.v[1]) +
             log_sin_pi(-s + mu_S.v[2]);
    }
    for (int j = 0; j < 3; ++j)
        lg += log_gamma(s - mu_G.v[j]) + log_gamma(-s + mu_G.v[j]);
    return -std::exp(lg) / (32.0 * PI);
}

cplx residue_closed_form_pm(cplx s, const Mu& mu) {
    cplx lg = 2.0 * std::log(PI) - std::log(32.0) +
              log_cos_pi(0.5 * (mu.v[1] - mu.v[2])) -
              log_sin_pi(0.5 * (mu.v[0] - mu.v[1])) -
              log_sin_pi(0.5 * (mu.v[0] - mu.v[2])) - std::log(mu.v[0] - s) -
              std::log(s - mu.v[1]) - std::log(s - mu.v[2]);
    return std::exp(lg);
}

cplx residue_cancellation(cplx s, const Mu& mu) {
    cplx acc = 0.0;
    for (Weyl w : weyl_all) {
        Mu wm = weyl_apply(w, mu);
        acc += gs_antidiagonal(+1, -1, s, wm, mu);
        acc += gs_antidiagonal(-1, +1, s, wm, mu);
    }
    return acc;
}

cplx k_w4(double y, const Mu& mu, double tol, double abscissa) {
    if (y == 0.0) throw std::invalid_argument("k_w4: y must be nonzero");
    if (!(tol > 0.0)) throw std::invalid_argument("k_w4: tol must be positive");
    if (!(abscissa > 0.0)) throw std::invalid_argument("k_w4: abscissa must be positive");
    for (int j = 0; j < 3; ++j)
        if (mu.v[j].real() >= abscissa - 0.02)
            throw std::invalid_argument("k_w4: abscissa must pass right of the pole set");
    int eps = y > 0.0 ? 1 : -1;
    double ay = std::fabs(y);
    double lny = std::log(ay);
    auto f = [&, eps, lny](double t) {
        cplx s(abscissa, t);
        return std::exp(-s * lny) * tilde_G(eps, s, mu) / TWO_PI;
    };
    double tstar = TWO_PI * std::cbrt(ay);
    double t_core = std::max({14.0, 1.35 * tstar + 10.0, 1.25 * mu_norm(mu) + 10.0});
    double wlen = std::max(30.0, 0.3 * tstar);
    cplx core = integrate_chk(f, -t_core, t_core, 0.5 * tol, 6'000'000);
    auto fneg = [&f](double t) { return f(-t); };
    cplx up = osc_extend(f, t_core, wlen, 0.2 * tol, 40);
    cplx dn = osc_extend(fneg, t_core, wlen, 0.2 * tol, 40);
    return core + up + dn;
}

namespace {

// One axis of the factorized double Mellin-Barnes integrand.  "kept" entries
// contribute Gamma(s -++ mu); "absorbed" entries had their sine folded in via
// Gamma(z) sin(pi z) = pi / Gamma(1-z) and contribute 1/Gamma(1 - s +- mu).
struct MbAxis {
    std::vector<cplx> kept;
    std::vector<cplx> absorbed;
};

struct MbCase {
    double sigma1 = 0.0, sigma2 = 0.0;
    cplx logpref{0.0, 0.0};
    double sign = 1.0;
    bool mixed = false; // Z = Gamma(1 - s1 - s2)/··· instead of 1/Gamma(s1 + s2)
    bool shiftable = false; // no poles right of the default lines
    MbAxis ax1, ax2;
};

MbCase mb_case(int e1, int e2, const Mu& mu) {
    auto nu = nu_coords(mu);
    const cplx m1 = mu.v[0], m2 = mu.v[1], m3 = mu.v[2];
    MbCase c;
    if (e1 > 0 && e2 > 0) {
        c.sigma1 = 0.3;
        c.sigma2 = 0.3;
        c.logpref = -std::log(24.0) - 2.0 * std::log(PI) + log_cos_pi(1.5 * nu[0]) +
                    log_cos_pi(1.5 * nu[1]) + log_cos_pi(1.5 * nu[2]);
        c.sign = 1.0;
        c.mixed = false;
        c.shiftable = true;
        c.ax1.kept = {m1, m2, m3};
        c.ax2.kept = {m1, m2, m3};
    } else if (e1 > 0 && e2 < 0) {
        c.sigma1 = 0.4;
        c.sigma2 = 0.1;
        c.logpref = -std::log(32.0) + 2.0 * std::log(PI) + log_cos_pi(1.5 * nu[1]) -
                    log_sin_pi(1.5 * nu[0]) - log_sin_pi(1.5 * nu[2]);
        c.sign = -1.0;
        c.mixed = true;
        c.ax1.kept = {m2, m3};
        c.ax1.absorbed = {m1};
        c.ax2.kept = {m1};
        c.ax2.absorbed = {m2, m3};
    } else if (e1 < 0 && e2 > 0) {
        c.sigma1 = 0.1;
        c.sigma2 = 0.4;
        c.logpref = -std::log(32.0) + 2.0 * std::log(PI) + log_cos_pi(1.5 * nu[0]) -
                    log_sin_pi(1.5 * nu[1]) - log_sin_pi(1.5 * nu[2]);
        c.sign = -1.0;
        c.mixed = true;
        c.ax1.kept = {m3};
        c.ax1.absorbed = {m1, m2};
        c.ax2.kept = {m1, m2};
        c.ax2.absorbed = {m3};
    } else {
        c.sigma1 = 0.12;
        c.sigma2 = 0.12;
        c.logpref = -std::log(32.0) + 2.0 * std::log(PI) + log_cos_pi(1.5 * nu[2]) -
                    log_sin_pi(1.5 * nu[1]) - log_sin_pi(1.5 * nu[0]);
        c.sign = -1.0;
        c.mixed = false;
        c.shiftable = true;
        c.ax1.kept = {m1, m3};
        c.ax1.absorbed = {m2};
        c.ax2.kept = {m1, m3};
        c.ax2.absorbed = {m2};
    }
    return c;
}

double mb_taper(double t, double L) {
    double r = std::fabs(t) / L;
    if (r <= 0.75) return 1.0;
    return bump(0.5 + 2.0 * (r - 0.75));
}

} // namespace

cplx k_w6_mellin_barnes(double y1, double y2, const Mu& mu, double tol,
                        double abscissa1, double abscissa2) {
    if (y1 == 0.0 || y2 == 0.0)
        throw std::invalid_argument("k_w6: arguments must be nonzero");
    if (!(tol > 0.0)) throw std::invalid_argument("k_w6: tol must be positive");
    double nrm = mu_norm(mu);
    if (nrm > 30.0)
        throw std::invalid_argument("k_w6: parameter height capped at 30");
    MbCase c = mb_case(y1 > 0.0 ? 1 : -1, y2 > 0.0 ? 1 : -1, mu);
    if (abscissa1 != 0.0) c.sigma1 = abscissa1;
    if (abscissa2 != 0.0) c.sigma2 = abscissa2;
    if (!(c.sigma1 > 0.0) || !(c.sigma2 > 0.0))
        throw std::invalid_argument("k_w6: abscissas must be positive");
    double lA1 = std::log(4.0 * PI * PI * std::fabs(y1));
    double lA2 = std::log(4.0 * PI * PI * std::fabs(y2));

    auto point_log = [&](const MbAxis& ax, double sigma, double lA, int which,
                         double t) -> cplx {
        cplx s(sigma, t);
        cplx lg = -s * lA;
        for (const cplx& m : ax.kept)
            lg += log_gamma(which == 1 ? s - m : s + m);
        for (const cplx& m : ax.absorbed)
            lg -= log_gamma(which == 1 ? 1.0 - s + m : 1.0 - s - m);
        return lg;
    };

    // Coarse-grid peak of log|integrand| at given abscissas; drives both the
    // contour choice and the truncation length.
    auto peak_log = [&](double s1, double s2) {
        double Lr = 1.2 * nrm + 2.0 * std::max(s1, s2) + 25.0;
        const int n = 56;
        std::vector<double> r1(n + 1), r2(n + 1);
        for (int k = 0; k <= n; ++k) {
            double t = -Lr + 2.0 * Lr * k / n;
            r1[k] = point_log(c.ax1, s1, lA1, 1, t).real();
            r2[k] = point_log(c.ax2, s2, lA2, 2, t).real();
        }
        double best = -1e300;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                double u = 2.0 * Lr * (i + j - n) / n;
                cplx z(s1 + s2, u);
                double zl = c.mixed ? log_gamma(1.0 - z).real() : -log_gamma(z).real();
                best = std::max(best, r1[i] + r2[j] + zl);
            }
        }
        return best + c.logpref.real();
    };

    if (c.shiftable && abscissa1 == 0.0 && abscissa2 == 0.0) {
        // the integrand is entire to the right, so move the contour toward the
        // saddle: minimizing the peak keeps cancellation proportionate to the
        // value being extracted
        double b1 = c.sigma1, b2 = c.sigma2, bp = peak_log(b1, b2);
        double rung = 0.3;
        for (int climb = 0; climb < 44; ++climb) {
            const double cand[3][2] = {{rung, rung}, {rung, b2}, {b1, rung}};
            bool better = false;
            for (const auto& cd : cand) {
                double p = peak_log(cd[0], cd[1]);
                if (p < bp) {
                    bp = p;
                    b1 = cd[0];
                    b2 = cd[1];
                    better = true;
                }
            }
            if (rung > 420.0) break;
            rung *= 1.35;
            if (!better && rung > 3.0 * std::max({b1, b2, 1.0})) break;
        }
        c.sigma1 = b1;
        c.sigma2 = b2;
    }

    double pk = peak_log(c.sigma1, c.sigma2);
    if (pk < -660.0) return cplx(0.0, 0.0); // below representable mass
    double smax = std::max(c.sigma1, c.sigma2);
    double L0 = std::max(18.0, 1.1 * nrm + 10.0) + 0.9 * smax +
                0.5 * std::max(0.0, std::min(90.0, pk - std::log(tol)));
    double om = std::fabs(lA1) + std::fabs(lA2) + 6.0 * std::log(2.0 + L0 + nrm) + 9.0;
    // trapezoid on a vertical line of an analytic, exponentially decaying
    // integrand converges like e^{-c/h}; h only needs to beat the aliasing
    // scale 2 pi / (phase rate)
    double h0 = std::min(1.2 / om, 0.3 * std::min(c.sigma1, c.sigma2));

    auto eval = [&](double L, double h) -> cplx {
        int N = static_cast<int>(std::ceil(2.0 * L / h));
        if (N % 2) ++N;
        if (N > 80000) throw std::runtime_error("k_w6: grid budget exceeded");
        double hh = 2.0 * L / N;
        // each factor is exponentiated relative to its own peak so the
        // balanced product survives when one factor alone under- or overflows
        auto axis = [&](const MbAxis& ax, double sigma, double lA, int which,
                        std::vector<cplx>& out) -> double {
            out.resize(N + 1);
            std::vector<cplx> lgs(N + 1);
            double mx = -1e300;
            for (int k = 0; k <= N; ++k) {
                double t = -L + k * hh;
                lgs[k] = point_log(ax, sigma, lA, which, t);
                mx = std::max(mx, lgs[k].real());
            }
            for (int k = 0; k <= N; ++k) {
                double t = -L + k * hh;
                out[k] = std::exp(lgs[k] - mx) * hh * mb_taper(t, L);
            }
            return mx;
        };
        std::vector<cplx> X, Y;
        double mx1 = axis(c.ax1, c.sigma1, lA1, 1, X);
        double mx2 = axis(c.ax2, c.sigma2, lA2, 2, Y);
        std::vector<cplx> Z(2 * N + 1), zlg(2 * N + 1);
        double sr = c.sigma1 + c.sigma2;
        double mxz = -1e300;
        for (int m = 0; m <= 2 * N; ++m) {
            double u = -2.0 * L + m * hh;
            cplx z(sr, u);
            zlg[m] = c.mixed ? log_gamma(1.0 - z) : -log_gamma(z);
            mxz = std::max(mxz, zlg[m].real());
        }
        for (int m = 0; m <= 2 * N; ++m) Z[m] = std::exp(zlg[m] - mxz);
        cplx acc = 0.0;
        for (int i = 0; i <= N; ++i) {
            if (X[i] == cplx(0.0)) continue;
            cplx inner = 0.0;
            const cplx* zrow = Z.data() + i;
            for (int j = 0; j <= N; ++j) inner += Y[j] * zrow[j];
            acc += X[i] * inner;
        }
        cplx scale = c.sign * std::exp(c.logpref + mx1 + mx2 + mxz);
        return scale * acc / (4.0 * PI * PI);
    };

    double L = L0, h = h0;
    for (int round = 0; round < 5; ++round) {
        cplx v = eval(L, h);
        cplx vh = eval(L, 0.5 * h);
        double err_h = std::abs(vh - v);
        cplx vL = eval(1.4 * L + 8.0, 0.5 * h);
        double err_L = std::abs(vL - vh);
        if (err_h <= 0.5 * tol && err_L <= 0.5 * tol) return vL;
        if (err_h > 0.5 * tol) h *= 0.5;
        if (err_L > 0.5 * tol) L = 1.4 * L + 8.0;
    }
    throw std::runtime_error("k_w6: certification failed to converge");
}

cplx j_kernel(int i, int sign, double y1, double y2, const Mu& mu, double tol) {
    if (i < 1 || i > 5) throw std::invalid_argument("j_kernel: index must be in 1..5");
    if (y1 == 0.0 || y2 == 0.0)
        throw std::invalid_argument("j_kernel: arguments must be nonzero");
    if (!(tol > 0.0)) throw std::invalid_argument("j_kernel: tol must be positive");
    double nrm = mu_norm(mu);
    for (int j = 0; j < 3; ++j)
        if (std::fabs(mu.v[j].real()) > 1e-9 * (1.0 + nrm))
            throw std::invalid_argument("j_kernel: requires imaginary parameters");
    // arguments carry the 2 pi of the Mellin-side normalization |4 pi^2 y|^{-s}
    double a = TWO_PI * std::sqrt(std::fabs(y1));
    double b = TWO_PI * std::sqrt(std::fabs(y2));
    double T = std::fabs((mu.v[2] - mu.v[0]).imag()); // order is 3 nu3 = mu3 - mu1
    double m2 = mu.v[1].imag();
    cplx pref = std::exp(0.5 * mu.v[1] * std::log(std::fabs(y1 / y2)));
    const double tb = 1e-9;
    const double rt2 = std::sqrt(2.0);

    // Quadrature tolerances are relative to the integrand peak, which can sit
    // hundreds of orders below 1 in the exponential-decay regime.  The floor
    // reflects the noise of the oscillatory inner kernels at their fixed tol.
    auto piece_tol = [&](const std::function<cplx(double)>& f,
                         std::initializer_list<double> pts) {
        double S = 0.0;
        for (double p : pts) S = std::max(S, std::abs(f(p)));
        double noise = 6e-9 * std::min(1.0, S * 1e3);
        return std::max({0.25 * tol * S, noise, 1e-300});
    };

    // Linear-phase tail pieces use x with first argument exactly a*x (or b*x);
    // the companion argument tends to a constant, so only the first factor
    // oscillates at scale 1/x and the tapered extension certifies truncation.
    auto jfac = [&](double x) { return sign > 0 ? j_plus(T, x, tb) : j_minus(T, x, tb); };

    switch (i) {
    case 1: {
        auto piece = [&](double al, double be, double pm) {
            auto f = [&, al, be, pm](double x) -> cplx {
                double q = x * x - 1.0;
                return jfac(al * x) * jfac(be * x / std::sqrt(q)) *
                       std::exp(cplx(0.0, pm * 1.5 * m2 * std::log(q))) * (x / q);
            };
            double X0 = std::max(10.0, 2.0 + T / std::max(al, 0.2));
            double wl = std::max(12.0, 8.0 / std::max(al, 0.25));
            double pt = piece_tol(f, {rt2 + 1e-4, 1.5, 1.8, 2.4, 3.5, 6.0, 0.6 * X0});
            return integrate_chk(f, rt2, X0, pt) + osc_extend(f, X0, wl, pt, 40);
        };
        return pref * (piece(a, b, 1.0) + piece(b, a, -1.0));
    }
    case 2: {
        auto f = [&](double x) -> cplx {
            if (x < 1e-7) return cplx(0.0);
            double p = 1.0 + x * x;
            return j_minus(T, a * x, tb) * j_minus(T, b * x / std::sqrt(p), tb) *
                   std::exp(cplx(0.0, 1.5 * m2 * std::log(p))) * (x / p);
        };
        double X0 = std::max(12.0, 2.0 + T / std::max(a, 0.2));
        double wl = std::max(12.0, 8.0 / std::max(a, 0.25));
        double pt = piece_tol(f, {0.05, 0.3, 0.8, 1.5, 3.0, 6.0, 0.6 * X0});
        return pref * (integrate_chk(f, 0.0, X0, pt) + osc_extend(f, X0, wl, pt, 40));
    }
    case 3: {
        auto fu = [&](double u) -> cplx {
            double r1 = std::sqrt(1.0 + u * u);
            double r2 = std::sqrt(1.0 + 1.0 / (u * u));
            return k_tilde(T, a * r1, tb) * j_minus(T, b * r2, tb) *
                   std::exp(cplx(0.0, 3.0 * m2 * std::log(u))) / u;
        };
        double U0 = std::max(4.0, (0.5 * T + 30.0) / std::max(a, 0.5));
        double ptu =
            piece_tol(fu, {1.0, 1.02, 1.1, 1.35, 2.0, 0.5 * (1.0 + U0), 0.9 * U0});
        cplx piece_u = integrate_chk(fu, 1.0, U0, ptu) +
                       osc_extend(fu, U0, 0.5 * U0, ptu, 20);
        auto fx = [&](double x) -> cplx {
            double q = x * x - 1.0;
            return j_minus(T, b * x, tb) * k_tilde(T, a * x / std::sqrt(q), tb) *
                   std::exp(cplx(0.0, -1.5 * m2 * std::log(q))) * (x / q);
        };
        double X0 = std::max(12.0, 2.0 + T / std::max(b, 0.2));
        double wl = std::max(12.0, 8.0 / std::max(b, 0.25));
        double ptx = piece_tol(fx, {rt2 + 1e-4, 1.5, 1.8, 2.4, 3.5, 6.0, 0.6 * X0});
        cplx piece_x = integrate_chk(fx, rt2, X0, ptx) +
                       osc_extend(fx, X0, wl, ptx, 40);
        return pref * (piece_u + piece_x);
    }
    case 4: {
        auto f = [&](double w) -> cplx {
            if (w < 1e-7) return cplx(0.0);
            double p = 1.0 + w * w;
            return k_tilde(T, a * w / std::sqrt(p), tb) * k_tilde(T, b * w, tb) *
                   std::exp(cplx(0.0, -1.5 * m2 * std::log(p))) * (w / p);
        };
        double W0 = std::max(4.0, (0.5 * T + 30.0) / std::max(b, 0.5));
        double pt = piece_tol(f, {0.05, 0.3, 0.8, 1.5, 3.0, 0.5 * W0, 0.9 * W0});
        return pref *
               (integrate_chk(f, 0.0, W0, pt) + osc_extend(f, W0, 0.5 * W0, pt, 20));
    }
    default: {
        auto piece = [&](double al, double be, double pm) {
            auto f = [&, al, be, pm](double u) -> cplx {
                double r1 = std::sqrt(1.0 + u * u);
                double r2 = std::sqrt(1.0 + 1.0 / (u * u));
                return k_tilde(T, al * r1, tb) * k_tilde(T, be * r2, tb) *
                       std::exp(cplx(0.0, pm * 3.0 * m2 * std::log(u))) / u;
            };
            double U0 = std::max(4.0, (0.5 * T + 30.0) / std::max(al, 0.5));
            double pt =
                piece_tol(f, {1.0, 1.02, 1.1, 1.35, 2.0, 0.5 * (1.0 + U0), 0.9 * U0});
            return integrate_chk(f, 1.0, U0, pt) +
                   osc_extend(f, U0, 0.5 * U0, pt, 20);
        };
        return pref * (piece(a, b, 1.0) + piece(b, a, -1.0));
    }
    }
}

} // namespace lab
