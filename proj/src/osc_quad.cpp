#include "lab/osc_quad.hpp"

#include "lab/fd.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lab {

namespace {

double weight_d(const OscillatorySpec& spec, double t, int j) {
    if (j == 0) return spec.weight(t);
    if (spec.weight_deriv) return spec.weight_deriv(t, j);
    return nth_deriv(spec.weight, t, j, spec.U);
}

double phase_d(const OscillatorySpec& spec, double t, int j) {
    if (j == 0) return spec.phase(t);
    if (spec.phase_deriv) return spec.phase_deriv(t, j);
    return nth_deriv(spec.phase, t, j, spec.Q);
}

void validate_spec(const OscillatorySpec& spec) {
    if (!spec.weight || !spec.phase)
        throw std::invalid_argument("OscillatorySpec: missing weight or phase");
    if (!(spec.a < spec.b) || !std::isfinite(spec.a) || !std::isfinite(spec.b))
        throw std::invalid_argument("OscillatorySpec: support must be a finite interval");
    if (!(spec.X > 0.0) || !(spec.U > 0.0) || !(spec.Y > 0.0) ||
        !(spec.Q > 0.0) || !(spec.R > 0.0))
        throw std::invalid_argument("OscillatorySpec: scales must be positive");
    // Supplied derivative handles must agree with finite differences at a few
    // fixed interior points, relative to the declared scale envelopes.
    static const double frac[5] = {0.11, 0.31, 0.52, 0.73, 0.93};
    const double pad = 0.05 * (spec.b - spec.a);
    for (int p = 0; p < 5; ++p) {
        double t = spec.a + pad + frac[p] * (spec.b - spec.a - 2.0 * pad);
        for (int j = 1; j <= 2; ++j) {
            if (spec.weight_deriv) {
                double hv = spec.weight_deriv(t, j);
                double fv = nth_deriv(spec.weight, t, j, spec.U);
                double floor_w = spec.X * std::pow(spec.U, -j);
                if (std::fabs(hv - fv) > 1e-5 * std::max(std::fabs(hv), floor_w))
                    throw std::invalid_argument(
                        "OscillatorySpec: weight derivative handle inconsistent with finite differences");
            }
            if (spec.phase_deriv) {
                double hv = spec.phase_deriv(t, j);
                double fv = nth_deriv(spec.phase, t, j, spec.Q);
                double floor_h = spec.Y * std::pow(spec.Q, -j);
                if (std::fabs(hv - fv) > 1e-5 * std::max(std::fabs(hv), floor_h))
                    throw std::invalid_argument(
                        "OscillatorySpec: phase derivative handle inconsistent with finite differences");
            }
        }
    }
}

} // namespace

QuadResult oracle_integrate(const OscillatorySpec& spec, double tol_abs) {
    validate_spec(spec);
    if (!(tol_abs > 0.0)) throw std::invalid_argument("oracle_integrate: tol must be positive");
    auto f = [&](double t) { return spec.weight(t) * e_of(spec.phase(t)); };
    QuadResult r = integrate(f, spec.a, spec.b, tol_abs);
    if (!r.converged)
        throw std::runtime_error("oracle_integrate: tolerance unmet, best value " +
                                 std::to_string(r.value.real()) + "+" +
                                 std::to_string(r.value.imag()) + "i, error " +
                                 std::to_string(r.abs_error));
    return r;
}

double find_stationary_point(const OscillatorySpec& spec) {
    validate_spec(spec);
    const int n = 256;
    auto hp = [&](double t) { return phase_d(spec, t, 1); };
    std::vector<double> grid(n + 1), val(n + 1);
    for (int i = 0; i <= n; ++i) {
        grid[i] = spec.a + (spec.b - spec.a) * i / n;
        val[i] = hp(grid[i]);
    }
    int found = -1, count = 0;
    for (int i = 0; i < n; ++i) {
        if (val[i] == 0.0 || val[i] * val[i + 1] < 0.0) {
            ++count;
            found = i;
        }
    }
    if (count == 0) throw std::runtime_error("find_stationary_point: no sign change of h' in support");
    if (count > 1) throw std::runtime_error("find_stationary_point: multiple stationary points, localize first");
    double lo = grid[found], hi = grid[found + 1];
    double flo = val[found];
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
        double f1 = hp(t);
        if (f1 == 0.0) return t;
        double f2 = phase_d(spec, t, 2);
        double step = (f2 != 0.0) ? f1 / f2 : 0.0;
        double tn = t - step;
        if (!(tn > lo && tn < hi) || step == 0.0) tn = 0.5 * (lo + hi);
        if ((flo < 0.0) != (f1 < 0.0)) hi = t; else { lo = t; flo = f1; }
        t = tn;
        if (hi - lo < 1e-15 * (spec.b - spec.a)) break;
    }
    return 0.5 * (lo + hi);
}

cplx stationary_phase_expand(const OscillatorySpec& spec, double t0, int order) {
    validate_spec(spec);
    if (order < 0 || order > 3)
        throw std::invalid_argument("stationary_phase_expand: order must be in [0,3]");
    if (!(t0 > spec.a && t0 < spec.b))
        throw std::runtime_error("stationary_phase_expand: no stationary point inside support");
    double hp = phase_d(spec, t0, 1);
    if (std::fabs(hp) > 1e-8 * spec.Y / spec.Q)
        throw std::runtime_error("stationary_phase_expand: h'(t0) not zero to tolerance");
    double hpp = phase_d(spec, t0, 2);
    if (std::fabs(hpp) < 1e-3 * spec.Y / (spec.Q * spec.Q))
        throw std::runtime_error("stationary_phase_expand: degenerate second derivative");
    if (hpp < 0.0) {
        // Conjugate phase: the weight is real, so I(w, -h) = conj I(w, h).
        OscillatorySpec flip = spec;
        auto ph = spec.phase;
        flip.phase = [ph](double t) { return -ph(t); };
        if (spec.phase_deriv) {
            auto pd = spec.phase_deriv;
            flip.phase_deriv = [pd](double t, int j) { return -pd(t, j); };
        }
        return std::conj(stationary_phase_expand(flip, t0, order));
    }

    const int max_d = 2 * order + 2;
    std::vector<double> wd(max_d + 1, 0.0), hd(max_d + 1, 0.0);
    for (int j = 0; j <= 2 * order; ++j) wd[j] = weight_d(spec, t0, j);
    for (int j = 2; j <= max_d; ++j) hd[j] = phase_d(spec, t0, j);

    // E[l] = l-th derivative at t0 of exp(i 2 pi H), where H is the phase
    // minus its value and quadratic jet at t0; only partition parts >= 3
    // survive because H and its first two derivatives vanish there.
    std::vector<cplx> E(2 * order + 1, 0.0);
    E[0] = 1.0;
    std::vector<double> lfact(2 * order + 1, 1.0);
    for (int l = 1; l <= 2 * order; ++l) lfact[l] = lfact[l - 1] * l;
    for (int l = 1; l <= 2 * order; ++l) {
        cplx acc = 0.0;
        for (const auto& m : partitions_with_min_part(l, 3)) {
            double denom = 1.0;
            cplx prod = 1.0;
            for (int j = 3; j <= l; ++j) {
                int mj = m[j];
                if (mj == 0) continue;
                double jf = lfact[j];
                for (int r = 0; r < mj; ++r) {
                    denom *= jf;
                    prod *= I_UNIT * TWO_PI * hd[j];
                }
                for (int r = 2; r <= mj; ++r) denom *= r;
            }
            acc += prod * (lfact[l] / denom);
        }
        E[l] = acc;
    }

    cplx sum = 0.0;
    cplx pow_fac = 1.0;
    double nfact = 1.0;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) {
            pow_fac *= I_UNIT / (4.0 * PI * hpp);
            nfact *= n;
        }
        int mder = 2 * n;
        cplx g = 0.0;
        double c = 1.0;
        for (int l = 0; l <= mder; ++l) {
            g += c * wd[mder - l] * E[l];
            c = c * (mder - l) / (l + 1.0);
        }
        sum += pow_fac * g / nfact;
    }
    cplx front = e_of(spec.phase(t0)) * std::polar(1.0, PI / 4.0) / std::sqrt(hpp);
    return front * sum;
}

double nonstationary_bound(const OscillatorySpec& spec, double A) {
    validate_spec(spec);
    const int n = 256;
    for (int i = 0; i <= n; ++i) {
        double t = spec.a + (spec.b - spec.a) * i / n;
        if (std::fabs(phase_d(spec, t, 1)) < spec.R * (1.0 - 1e-9))
            throw std::runtime_error("nonstationary_bound: declared R exceeds |h'| on the support grid");
    }
    double term1 = std::pow(spec.Q * spec.R / std::sqrt(spec.Y), -A);
    double term2 = std::pow(spec.R * spec.U, -A);
    return (spec.b - spec.a) * spec.X * (term1 + term2);
}

double vdc_bound(const OscillatorySpec& spec, double T_size, double A_coeff, int d) {
    if (d < 1) throw std::invalid_argument("vdc_bound: degree must be >= 1");
    if (!(T_size > 0.0) || !(A_coeff > 0.0))
        throw std::invalid_argument("vdc_bound: T and A must be positive");
    double at = A_coeff * T_size;
    double t1 = std::pow(at, -1.0 / (d + 1));
    double t2 = std::pow(at * spec.U, -1.0 / d);
    double t3 = std::pow(at * spec.Q / std::sqrt(spec.Y), -1.0 / d);
    return spec.X * (t1 + t2 + t3);
}

std::vector<std::vector<int>> partitions_with_min_part(int n, int min_part) {
    std::vector<std::vector<int>> out;
    if (n == 0) {
        out.emplace_back(std::vector<int>(1, 0));
        return out;
    }
    std::vector<int> mult(n + 1, 0);
    // Choose multiplicities of parts from the largest part down.
    std::function<void(int, int)> rec = [&](int remaining, int part) {
        if (remaining == 0) {
            out.push_back(mult);
            return;
        }
        if (part < min_part) return;
        for (int k = remaining / part; k >= 0; --k) {
            mult[part] = k;
            rec(remaining - k * part, part - 1);
            mult[part] = 0;
        }
    };
    rec(n, n);
    return out;
}

cplx faa_di_bruno(const std::vector<cplx>& f_derivs,
                  const std::vector<cplx>& g_derivs, int n) {
    if (n < 0) throw std::invalid_argument("faa_di_bruno: negative order");
    if ((int)f_derivs.size() < n + 1 || (int)g_derivs.size() < n + 1)
        throw std::invalid_argument("faa_di_bruno: insufficient derivative data");
    if (n == 0) return f_derivs[0];
    std::vector<double> fact(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) fact[k] = fact[k - 1] * k;
    cplx acc = 0.0;
    for (const auto& m : partitions_with_min_part(n, 1)) {
        int parts = 0;
        double denom = 1.0;
        cplx prod = 1.0;
        for (int j = 1; j <= n; ++j) {
            int mj = m[j];
            if (mj == 0) continue;
            parts += mj;
            for (int r = 0; r < mj; ++r) {
                denom *= fact[j];
                prod *= g_derivs[j];
            }
            for (int r = 2; r <= mj; ++r) denom *= r;
        }
        acc += f_derivs[parts] * prod * (fact[n] / denom);
    }
    return acc;
}

} // namespace lab
