#include "lab/fd.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

namespace lab {

namespace {

// Coefficients c_{-m..m} with sum c_i f(x + i h) = f^(k)(x) h^k + O(h^{k+2}).
// Solved once per (k, m) from the Vandermonde system sum c_i i^p = k! [p == k].
std::vector<double> stencil_coeffs(int k, int m) {
    static std::map<std::pair<int, int>, std::vector<double>> cache;
    auto key = std::make_pair(k, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int n = 2 * m + 1;
    std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1, 0.0L));
    for (int p = 0; p < n; ++p) {
        for (int i = -m; i <= m; ++i) {
            long double v = 1.0L;
            for (int q = 0; q < p; ++q) v *= i;
            a[p][i + m] = v;
        }
        long double rhs = 0.0L;
        if (p == k) {
            rhs = 1.0L;
            for (int q = 2; q <= k; ++q) rhs *= q;
        }
        a[p][n] = rhs;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs((double)a[r][col]) > std::fabs((double)a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        if (a[col][col] == 0.0L) throw std::runtime_error("singular stencil system");
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            long double factor = a[r][col] / a[col][col];
            for (int c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    std::vector<double> coeffs(n);
    for (int i = 0; i < n; ++i) coeffs[i] = (double)(a[i][n] / a[i][i]);
    cache[key] = coeffs;
    return coeffs;
}

} // namespace

cplx nth_deriv_c(const std::function<cplx(double)>& f, double x, int k,
                 double scale) {
    if (k < 0) throw std::invalid_argument("nth_deriv: negative order");
    if (k == 0) return f(x);
    if (k > 8) throw std::invalid_argument("nth_deriv: order > 8 unsupported");
    const int m = std::max(2, (k + 2) / 2 + 1);
    const double eps = std::numeric_limits<double>::epsilon();
    const double h = std::pow(eps, 1.0 / (k + 2)) * scale;
    const auto& c = stencil_coeffs(k, m);
    cplx acc = 0.0;
    for (int i = -m; i <= m; ++i) acc += c[i + m] * f(x + i * h);
    return acc / std::pow(h, k);
}

double nth_deriv(const std::function<double(double)>& f, double x, int k,
                 double scale) {
    cplx v = nth_deriv_c([&](double t) { return cplx(f(t), 0.0); }, x, k, scale);
    return v.real();
}

} // namespace lab
