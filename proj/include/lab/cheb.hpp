#ifndef LAB_CHEB_HPP
#define LAB_CHEB_HPP

#include "lab/constants.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace lab {

// Chebyshev interpolant on [a,b], built at Chebyshev-Lobatto points and
// evaluated by the Clenshaw recurrence.  Coefficients are stored so that
// f(x) = sum_j c[j] T_j(y) with y the affine map of x onto [-1,1].
struct ChebSeries {
    double a = 0.0;
    double b = 1.0;
    std::vector<double> c;

    double eval(double x) const {
        double y = 2.0 * (x - a) / (b - a) - 1.0;
        double b1 = 0.0, b2 = 0.0;
        for (std::size_t j = c.size(); j-- > 1;) {
            double b0 = 2.0 * y * b1 - b2 + c[j];
            b2 = b1;
            b1 = b0;
        }
        return y * b1 - b2 + c[0];
    }

    static ChebSeries fit(const std::function<double(double)>& f, double a, double b,
                          int n) {
        ChebSeries s;
        s.a = a;
        s.b = b;
        std::vector<double> fv(n + 1);
        for (int k = 0; k <= n; ++k) {
            double x = a + 0.5 * (b - a) * (1.0 + std::cos(PI * k / n));
            fv[k] = f(x);
        }
        s.c.assign(n + 1, 0.0);
        for (int j = 0; j <= n; ++j) {
            double acc = 0.5 * (fv[0] + ((j % 2) ? -fv[n] : fv[n]));
            for (int k = 1; k < n; ++k)
                acc += fv[k] * std::cos(PI * double(j) * double(k) / n);
            s.c[j] = 2.0 * acc / n;
        }
        s.c[0] *= 0.5;
        s.c[n] *= 0.5;
        return s;
    }

    // Doubles the node count until the trailing coefficient band drops below
    // tol relative to the largest coefficient, then trims the tail.
    static ChebSeries fit_auto(const std::function<double(double)>& f, double a,
                               double b, double tol, int n_max = 4096) {
        for (int n = 64; n <= n_max; n *= 2) {
            ChebSeries s = fit(f, a, b, n);
            double scale = 0.0;
            for (double v : s.c)
                scale = std::max(scale, std::abs(v));
            int band = std::max(6, n / 16);
            double tail = 0.0;
            for (int j = n + 1 - band; j <= n; ++j)
                tail = std::max(tail, std::abs(s.c[j]));
            if (tail <= tol * std::max(scale, 1e-30)) {
                double cut = 0.1 * tol * std::max(scale, 1e-30);
                while (s.c.size() > 8 && std::abs(s.c.back()) < cut)
                    s.c.pop_back();
                return s;
            }
        }
        throw std::runtime_error("cheb fit did not converge on the given range");
    }
};

} // namespace lab

#endif
