#include "lab/quadrature.hpp"

#include "lab/bump.hpp"

#include <cmath>

namespace lab {

namespace {

struct AdaptiveState {
    const std::function<cplx(double)>* f;
    long evals = 0;
    long max_evals = 0;
    double err_acc = 0.0;
    bool budget_hit = false;

    cplx eval(double x) {
        ++evals;
        return (*f)(x);
    }
};

cplx adapt(AdaptiveState& st, double a, double b, cplx fa, cplx fm, cplx fb,
           cplx whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    cplx flm = st.eval(lm), frm = st.eval(rm);
    double h6 = (b - a) / 12.0;
    cplx left = h6 * (fa + 4.0 * flm + fm);
    cplx right = h6 * (fm + 4.0 * frm + fb);
    cplx delta = left + right - whole;
    double err = std::abs(delta) / 15.0;
    if (depth <= 0 || err <= tol || st.evals >= st.max_evals) {
        if (err > tol && depth > 0 && st.evals >= st.max_evals)
            st.budget_hit = true;
        st.err_acc += err;
        return left + right + delta / 15.0;
    }
    cplx L = adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
    cplx R = adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    return L + R;
}

} // namespace

QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                     double tol_abs, long max_evals) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    AdaptiveState st;
    st.f = &f;
    st.max_evals = max_evals;
    cplx fa = st.eval(a), fb = st.eval(b), fm = st.eval(0.5 * (a + b));
    cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    res.value = adapt(st, a, b, fa, fm, fb, whole, tol_abs, 58);
    res.evaluations = st.evals;
    res.abs_error = st.err_acc;
    res.converged = !st.budget_hit && st.err_acc <= 4.0 * tol_abs;
    return res;
}

QuadResult integrate_real(const std::function<double(double)>& f, double a, double b,
                          double tol_abs, long max_evals) {
    return integrate([&f](double x) { return cplx(f(x), 0.0); }, a, b, tol_abs, max_evals);
}

cplx simpson_uniform(const std::function<cplx(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    double h = (b - a) / n;
    cplx acc = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        acc += f(a + h * i) * ((i % 2) ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

QuadResult integrate_tail(const std::function<cplx(double)>& f, double x0,
                          double window, double tol, int max_passes) {
    QuadResult out;
    double X = x0;
    cplx base(0.0, 0.0);
    double base_err = 0.0;
    cplx prev(0.0, 0.0);
    int stable = 0;
    for (int pass = 0; pass < max_passes; ++pass) {
        auto tapered = [&f, X, window](double x) {
            return f(x) * bump(0.5 + 0.5 * (x - X) / window);
        };
        QuadResult win = integrate(tapered, X, X + window, 0.05 * tol);
        out.evaluations += win.evaluations;
        cplx total = base + win.value;
        if (pass > 0 && std::abs(total - prev) <= 0.5 * tol) {
            if (++stable >= 2) {
                out.value = total;
                out.abs_error = base_err + win.abs_error + std::abs(total - prev);
                out.converged = win.converged;
                return out;
            }
        } else {
            stable = 0;
        }
        prev = total;
        QuadResult step = integrate(f, X, X + 0.5 * window, 0.05 * tol);
        out.evaluations += step.evaluations;
        base += step.value;
        base_err += step.abs_error;
        if (!step.converged) {
            out.value = total;
            out.abs_error = base_err;
            out.converged = false;
            return out;
        }
        X += 0.5 * window;
    }
    out.value = prev;
    out.abs_error = base_err;
    out.converged = false;
    return out;
}

const GaussRule16& gauss16() {
    static const GaussRule16 rule = [] {
        GaussRule16 r;
        const int n = 16;
        for (int k = 0; k < n; ++k) {
            double t = std::cos(PI * (k + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int j = 2; j <= n; ++j) {
                    double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (t * p1 - p0) / (t * t - 1.0);
                double step = p1 / dp;
                t -= step;
                if (std::abs(step) < 1e-15)
                    break;
            }
            r.x[k] = t;
            r.w[k] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        return r;
    }();
    return rule;
}

cplx osc_march(const std::function<cplx(double)>& f, double a, double b,
               const std::function<double(double)>& freq, long* evals) {
    if (!(b > a))
        return cplx(0.0, 0.0);
    const GaussRule16& g = gauss16();
    cplx total(0.0, 0.0);
    double u = a;
    long count = 0;
    const double floor_step = (b - a) * 1e-7;
    while (u < b) {
        double f_here = std::max(freq(u), 1e-12);
        double trial = std::min(b - u, PI / f_here);
        double f_right = std::max(freq(std::min(b, u + trial)), f_here);
        double du = std::max(std::min(b - u, PI / f_right), floor_step);
        double mid = u + 0.5 * du, half = 0.5 * du;
        cplx acc(0.0, 0.0);
        for (int k = 0; k < 16; ++k)
            acc += g.w[k] * f(mid + half * g.x[k]);
        total += acc * half;
        count += 16;
        u += du;
    }
    if (evals)
        *evals += count;
    return total;
}

} // namespace lab
