#include "lab/bump.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lab {

// mass of exp(-1/(1-x^2)) on (-1,1); see tools/refvalues/special_values.py
static const double MOLLIFIER_MASS = 0.4439938161680794378230489;

static double raw_mollifier(double x) {
    if (std::abs(x) >= 1.0)
        return 0.0;
    return std::exp(-1.0 / (1.0 - x * x));
}

double mollifier(double x) {
    return raw_mollifier(x) / MOLLIFIER_MASS;
}

namespace {

// phi^(k)(x) = P_k(x) / (1-x^2)^(2k) * phi(x) with the polynomial recurrence
// P_{k+1} = P_k' (1-x^2)^2 + 4 k x P_k (1-x^2) - 2 x P_k.
struct Poly {
    std::vector<double> c; // c[i] coefficient of x^i

    double eval(double x) const {
        double acc = 0.0;
        for (size_t i = c.size(); i-- > 0;)
            acc = acc * x + c[i];
        return acc;
    }
};

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

Poly poly_diff(const Poly& a) {
    Poly r;
    if (a.c.size() <= 1) {
        r.c = {0.0};
        return r;
    }
    r.c.assign(a.c.size() - 1, 0.0);
    for (size_t i = 1; i < a.c.size(); ++i)
        r.c[i - 1] = a.c[i] * double(i);
    return r;
}

const int MAX_MOLL_DERIV = 12;

const std::vector<Poly>& mollifier_polys() {
    static const std::vector<Poly> polys = [] {
        std::vector<Poly> ps;
        Poly one;
        one.c = {1.0};
        ps.push_back(one); // P_0
        Poly u;            // 1 - x^2
        u.c = {1.0, 0.0, -1.0};
        Poly u2 = poly_mul(u, u);
        for (int k = 0; k < MAX_MOLL_DERIV; ++k) {
            Poly t1 = poly_mul(poly_diff(ps[k]), u2);
            Poly xk;
            xk.c = {0.0, 4.0 * k};
            Poly t2 = poly_mul(poly_mul(xk, ps[k]), u);
            Poly x2;
            x2.c = {0.0, -2.0};
            Poly t3 = poly_mul(x2, ps[k]);
            ps.push_back(poly_add(poly_add(t1, t2), t3));
        }
        return ps;
    }();
    return polys;
}

// cumulative integral of the normalized mollifier, tabulated once on a fine
// grid; values between nodes come from cubic Hermite interpolation with the
// exact density as the derivative.
struct MollCdf {
    static const int N = 4096;
    std::array<double, N + 1> F;
    double h;

    MollCdf() {
        h = 2.0 / N;
        // composite Simpson per cell at half resolution, accumulated
        F[0] = 0.0;
        for (int i = 0; i < N; ++i) {
            double a = -1.0 + i * h;
            double fa = mollifier(a), fm = mollifier(a + 0.5 * h), fb = mollifier(a + h);
            F[i + 1] = F[i] + h / 6.0 * (fa + 4.0 * fm + fb);
        }
        double scale = 1.0 / F[N];
        for (int i = 0; i <= N; ++i)
            F[i] *= scale;
    }

    double eval(double x) const {
        if (x <= -1.0) return 0.0;
        if (x >= 1.0) return 1.0;
        double s = (x + 1.0) / h;
        int i = int(s);
        if (i >= N) i = N - 1;
        double t = s - i;
        double x0 = -1.0 + i * h;
        double d0 = mollifier(x0) * h, d1 = mollifier(x0 + h) * h;
        double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * F[i] + (t3 - 2 * t2 + t) * d0 +
               (-2 * t3 + 3 * t2) * F[i + 1] + (t3 - t2) * d1;
    }
};

const MollCdf& moll_cdf() {
    static const MollCdf cdf;
    return cdf;
}

} // namespace

double mollifier_deriv(double x, int k) {
    if (k < 0 || k > MAX_MOLL_DERIV)
        throw std::domain_error("mollifier_deriv: order out of range");
    if (k == 0)
        return mollifier(x);
    if (std::abs(x) >= 1.0)
        return 0.0;
    double u = 1.0 - x * x;
    return mollifier_polys()[k].eval(x) * std::pow(u, -2.0 * k) * mollifier(x);
}

double bump(double t) {
    return moll_cdf().eval(4.0 * (t + 0.75)) - moll_cdf().eval(4.0 * (t - 0.75));
}

double bump_deriv(double t, int k) {
    if (k == 0)
        return bump(t);
    double s = std::pow(4.0, k);
    return s * (mollifier_deriv(4.0 * (t + 0.75), k - 1) -
                mollifier_deriv(4.0 * (t - 0.75), k - 1));
}

} // namespace lab
