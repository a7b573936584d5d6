#include "lab/bessel.hpp"

#include "lab/bump.hpp"
#include "lab/complex_gamma.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lab {

namespace {

// ascending series for J_k, adequate below the asymptotic crossover
double j_series(int k, double y) {
    double half = 0.5 * y;
    double term = 1.0;
    for (int i = 1; i <= k; ++i)
        term *= half / i;
    double sum = term;
    double m2 = -half * half;
    for (int m = 1; m < 80; ++m) {
        term *= m2 / (double(m) * double(m + k));
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)) && m > 4)
            break;
    }
    return sum;
}

// Hankel asymptotic modulus/phase series P, Q for order k (y large)
void hankel_pq(int k, double y, double& P, double& Q) {
    double mu = 4.0 * double(k) * double(k);
    double term = 1.0;
    P = 1.0;
    Q = 0.0;
    double prev = 1e300;
    for (int j = 1; j <= 20; ++j) {
        term *= (mu - double(2 * j - 1) * double(2 * j - 1)) / (double(j) * 8.0 * y);
        if (std::abs(term) > prev)
            break; // asymptotic tail started growing
        prev = std::abs(term);
        int m = (j - 1) / 2;
        double signed_term = ((m % 2) ? -term : term);
        if (j % 2)
            Q += signed_term;
        else
            P += ((j / 2) % 2 ? -term : term);
    }
}

double j_asymptotic(int k, double y) {
    double P, Q;
    hankel_pq(k, y, P, Q);
    double chi = y - (0.5 * k + 0.25) * PI;
    return std::sqrt(2.0 / (PI * y)) * (P * std::cos(chi) - Q * std::sin(chi));
}

double j0j1(int k, double y) {
    if (y < 14.0)
        return j_series(k, y);
    return j_asymptotic(k, y);
}

double j_miller(int k, double y) {
    // downward recurrence, normalized by J_0 + 2 J_2 + 2 J_4 + ... = 1
    int start = k + 18 + int(std::sqrt(42.0 * k)) + int(1.2 * y);
    if (start % 2)
        ++start;
    double jp1 = 0.0, j = 1e-160, target = 0.0, norm = 0.0;
    for (int m = start; m >= 1; --m) {
        double jm1 = (2.0 * m / y) * j - jp1;
        jp1 = j;
        j = jm1;
        if (m - 1 == k)
            target = j;
        if ((m - 1) % 2 == 0)
            norm += (m - 1 == 0) ? j : 2.0 * j;
        if (std::abs(j) > 1e250) {
            j *= 1e-200;
            jp1 *= 1e-200;
            target *= 1e-200;
            norm *= 1e-200;
        }
    }
    return target / norm;
}

} // namespace

double bessel_j(int k, double y) {
    if (k < 0)
        throw std::domain_error("bessel_j: order must be >= 0");
    if (y < 0.0)
        throw std::domain_error("bessel_j: argument must be >= 0");
    if (y == 0.0)
        return k == 0 ? 1.0 : 0.0;
    if (k <= 1)
        return j0j1(k, y);
    if (y >= 1.2 * k + 14.0) {
        // upward recurrence from the asymptotic J_0, J_1
        double jm = j0j1(0, y), j = j0j1(1, y);
        for (int m = 1; m < k; ++m) {
            double jp = (2.0 * m / y) * j - jm;
            jm = j;
            j = jp;
        }
        return j;
    }
    if (y < 0.06 * k)
        return j_series(k, y);
    return j_miller(k, y);
}

double bessel_y0(double y) {
    if (y <= 0.0)
        throw std::domain_error("bessel_y0: argument must be > 0");
    if (y >= 9.0) {
        double P, Q;
        hankel_pq(0, y, P, Q);
        double chi = y - 0.25 * PI;
        return std::sqrt(2.0 / (PI * y)) * (P * std::sin(chi) + Q * std::cos(chi));
    }
    // log series: Y0 = (2/pi)[(log(y/2)+gamma) J0 + sum (-1)^{m+1} H_m (y^2/4)^m / (m!)^2]
    double q = 0.25 * y * y;
    double term = 1.0, H = 0.0, sum = 0.0;
    for (int m = 1; m < 60; ++m) {
        term *= q / (double(m) * double(m));
        H += 1.0 / m;
        double add = ((m % 2) ? H * term : -H * term);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)) && m > 4)
            break;
    }
    return (2.0 / PI) * ((std::log(0.5 * y) + EULER_GAMMA) * bessel_j(0, y) + sum);
}

double bessel_k0(double y) {
    if (y <= 0.0)
        throw std::domain_error("bessel_k0: argument must be > 0");
    if (y <= 2.0) {
        // K0 = -(log(y/2)+gamma) I0 + sum H_m (y^2/4)^m/(m!)^2
        double q = 0.25 * y * y;
        double term = 1.0, H = 0.0, sum = 0.0, i0 = 1.0;
        for (int m = 1; m < 60; ++m) {
            term *= q / (double(m) * double(m));
            i0 += term;
            H += 1.0 / m;
            sum += H * term;
            if (term < 1e-19 && m > 4)
                break;
        }
        return -(std::log(0.5 * y) + EULER_GAMMA) * i0 + sum;
    }
    // trapezoid on int_0^inf exp(-y cosh t) dt; aliasing error is
    // exp(-(2 pi / h)^2 / (2 y)), so the step tracks the 1/sqrt(y) peak width
    double h = std::min(0.2, 0.7 / std::sqrt(y));
    double sum = 0.5 * std::exp(-y);
    for (int n = 1;; ++n) {
        double a = y * std::cosh(n * h);
        if (a > 745.0)
            break;
        sum += std::exp(-a);
    }
    return h * sum;
}

Y0K0 bessel_y0_k0(double y) {
    return {bessel_y0(y), bessel_k0(y)};
}

double macdonald_k_imag(double T, double x) {
    if (x <= 0.0)
        throw std::domain_error("macdonald_k_imag: argument must be > 0");
    // the integrand is a Gaussian of width 1/sqrt(x) modulated at rate T;
    // trapezoid aliasing decays like exp(-(2 pi / h - T)^2 / (2 x))
    double h = std::min(0.15, TWO_PI / (T + 9.0 * std::sqrt(x) + 42.0));
    double sum = 0.5 * std::exp(-x);
    for (int n = 1;; ++n) {
        double t = n * h;
        double a = x * std::cosh(t);
        if (a > 745.0)
            break;
        sum += std::exp(-a) * std::cos(T * t);
    }
    return h * sum;
}

cplx bessel_j_imag_nu(double T, double x) {
    // (x/2)^{iT}/Gamma(1+iT) * sum_m (-x^2/4)^m / (m! prod_{r<=m}(r+iT))
    cplx nu(0.0, T);
    cplx pref = std::exp(nu * std::log(0.5 * x) - log_gamma(1.0 + nu));
    cplx term = 1.0, sum = 1.0;
    double m2 = -0.25 * x * x;
    for (int m = 1; m < 200; ++m) {
        term *= m2 / (double(m) * (double(m) + nu));
        sum += term;
        if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum)) && m > 4)
            break;
    }
    return pref * sum;
}

namespace {

// Shared machinery for the imaginary-order oscillatory kernels: integrate
// g on [0, u1] with half-wavelength Gauss panels (freq bounds |phase'|),
// then a tapered window [u1, u1+1]; advance u1 until stable.
QuadResult tapered_oscillatory(const std::function<cplx(double)>& g,
                               const std::function<double(double)>& freq,
                               double u1, double tol, long max_evals) {
    auto window = [](double v) { return bump(0.5 + 0.5 * v); }; // 1 at 0, 0 at 1
    QuadResult res;
    long evals = 0;
    cplx base = osc_march(g, 0.0, u1, freq, &evals);
    cplx prev_total;
    bool have_prev = false;
    double ext_err = 0.0;
    for (int pass = 0; pass < 12; ++pass) {
        cplx tail = osc_march([&](double u) { return g(u) * window(u - u1); },
                              u1, u1 + 1.0, freq, &evals);
        cplx total = base + tail;
        if (have_prev) {
            ext_err = std::abs(total - prev_total);
            if (ext_err <= 0.5 * tol) {
                res.value = total;
                res.abs_error = ext_err + 1e-14 * (1.0 + std::abs(total));
                res.evaluations = evals;
                res.converged = evals <= max_evals;
                return res;
            }
        }
        prev_total = total;
        have_prev = true;
        base += osc_march(g, u1, u1 + 0.5, freq, &evals);
        u1 += 0.5;
        if (evals > max_evals)
            break;
    }
    res.value = prev_total;
    res.abs_error = ext_err;
    res.evaluations = evals;
    res.converged = false;
    return res;
}

double truncation_point(double T, double y, bool sinh_kind) {
    // place the taper where the slowest phase derivative reaches M
    double M = std::max(7.0 * T, 50.0);
    double r = (T + M) / (2.0 * y);
    double u1;
    if (sinh_kind)
        u1 = (r > std::cosh(1.0)) ? std::acosh(r) : 1.0;
    else
        u1 = (r > std::sinh(1.0)) ? std::asinh(r) : 1.0;
    return u1;
}

} // namespace

QuadResult bessel_k_tilde(double T, double y, double tol) {
    if (T <= 0.0 || y <= 0.0)
        throw std::domain_error("bessel_k_tilde: requires T > 0, y > 0");
    if (2.0 * y >= T && 0.5 * PI * T < 700.0) {
        // monotone regime: the cosh factor cancels the Macdonald decay, and
        // the cancellation error of the real integral is ~ eps * e^{-2y}
        double ch = 2.0 * std::cosh(0.5 * PI * T);
        double est = 1e-15 * ch * bessel_k0(2.0 * y);
        if (est <= 0.5 * tol) {
            QuadResult r;
            r.value = cplx(ch * macdonald_k_imag(T, 2.0 * y), 0.0);
            r.abs_error = est;
            r.evaluations = 64;
            r.converged = true;
            return r;
        }
    }
    double u1 = truncation_point(T, y, true);
    auto g = [T, y](double u) {
        return cplx(2.0 * std::cos(2.0 * y * std::sinh(u)) * std::cos(T * u), 0.0);
    };
    auto freq = [T, y](double u) { return 2.0 * y * std::cosh(u) + T; };
    return tapered_oscillatory(g, freq, u1, tol, 4'000'000);
}

QuadResult bessel_cosh_kernel(double T, double y, double tol) {
    if (T <= 0.0 || y <= 0.0)
        throw std::domain_error("bessel_cosh_kernel: requires T > 0, y > 0");
    double u1 = truncation_point(T, y, false);
    auto g = [T, y](double u) {
        double c = 2.0 * y * std::cosh(u);
        return 2.0 * std::exp(cplx(0.0, c)) * std::cos(T * u);
    };
    auto freq = [T, y](double u) { return 2.0 * y * std::sinh(u) + T; };
    return tapered_oscillatory(g, freq, u1, tol, 4'000'000);
}

double k_tilde(double T, double y, double tol) {
    QuadResult r = bessel_k_tilde(T, y, tol);
    if (!r.converged)
        throw std::runtime_error("k_tilde: tolerance not met");
    return r.value.real();
}

double j_minus(double T, double y, double tol) {
    QuadResult r = bessel_cosh_kernel(T, y, tol);
    if (!r.converged)
        throw std::runtime_error("j_minus: tolerance not met");
    return r.value.real();
}

double j_plus(double T, double y, double tol) {
    QuadResult r = bessel_cosh_kernel(T, y, tol);
    if (!r.converged)
        throw std::runtime_error("j_plus: tolerance not met");
    return r.value.imag();
}

} // namespace lab
