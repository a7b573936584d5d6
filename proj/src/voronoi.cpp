#include "lab/voronoi.hpp"

#include "lab/bessel.hpp"
#include "lab/errors.hpp"
#include "lab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lab {

namespace {

constexpr int PARTS_MAX = 12;       // matches the analytic-derivative depth of the weight
constexpr int AUTO_TRUNC_MAX = 131072;

// The test weight is the polynomial bump (4 s (1-s))^13 on s = (x-N)/N: it
// vanishes to order 12 at both endpoints, which is exactly the depth the
// integration-by-parts certificates consume, and its derivative sup-norms
// grow far slower than those of an exponential-type mollifier (the certified
// dual truncations would otherwise be astronomically long).
constexpr int BUMP_POWER = 13;

const std::array<std::vector<long double>, PARTS_MAX + 1>& bump_poly_tables() {
    static const auto tables = [] {
        std::array<std::vector<long double>, PARTS_MAX + 1> t;
        std::vector<long double> p(2 * BUMP_POWER + 1, 0.0L);
        long double scale = powl(4.0L, BUMP_POWER);
        long double binom = 1.0L;
        for (int j = 0; j <= BUMP_POWER; ++j) {
            p[BUMP_POWER + j] = ((j % 2) ? -binom : binom) * scale;
            binom = binom * (BUMP_POWER - j) / (j + 1);
        }
        t[0] = std::move(p);
        for (int k = 1; k <= PARTS_MAX; ++k) {
            const auto& prev = t[k - 1];
            std::vector<long double> d(prev.size() - 1, 0.0L);
            for (std::size_t i = 1; i < prev.size(); ++i)
                d[i - 1] = prev[i] * (long double)i;
            t[k] = std::move(d);
        }
        return t;
    }();
    return tables;
}

double bump_poly_deriv(double s, int k) {
    if (s <= 0.0 || s >= 1.0)
        return 0.0;
    const auto& c = bump_poly_tables()[k];
    long double acc = 0.0L;
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * (long double)s + c[i];
    return double(acc);
}

const Int128 COEF_LIMIT = (Int128(1) << 120);

Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

double kernel_value(int kind, double z) {
    switch (kind) {
    case 0:
        return bessel_j(11, z);
    case 1:
        return bessel_y0(z);
    default:
        return bessel_k0(z);
    }
}

// L1 norms C_j = int_N^{2N} |phi_j(x)| dx of the iterated parts integrands:
// phi_0 = h and phi_{s+1} = (phi_s' - (nu+s)/2 * phi_s / x) sqrt(x), so that
// |int h(x) B_nu(c sqrt x) dx| <= (2/c)^j C_j sup|B_{nu+j}|.  Each phi_j is
// stored as sum_i a_i(x) h^{(i)}(x) with a_i a half-integer-power Laurent
// polynomial, kept exactly; only the final L1 integral is numerical.
using HalfPowerPoly = std::map<int, double>; // key = 2*(power of x)

std::array<double, PARTS_MAX + 1> parts_norms(double N, int nu) {
    static std::map<std::pair<double, int>, std::array<double, PARTS_MAX + 1>> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({N, nu});
        if (it != cache.end())
            return it->second;
    }

    const int grid = 4096;
    std::array<double, PARTS_MAX + 1> C{};

    std::vector<HalfPowerPoly> a(1);
    a[0][0] = 1.0;

    auto l1_norm = [&](const std::vector<HalfPowerPoly>& terms) {
        double sum = 0.0;
        double hstep = N / grid;
        for (int m = 0; m <= grid; ++m) {
            double x = N + hstep * m;
            double v = 0.0;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                if (terms[i].empty())
                    continue;
                double ai = 0.0;
                for (const auto& [p2, cf] : terms[i])
                    ai += cf * std::pow(x, 0.5 * p2);
                v += ai * voronoi_weight_deriv(x, N, int(i));
            }
            double wgt = (m == 0 || m == grid) ? 1.0 : (m % 2 ? 4.0 : 2.0);
            sum += wgt * std::abs(v);
        }
        return sum * hstep / 3.0 * 1.05;
    };

    C[0] = l1_norm(a);
    for (int s = 0; s < PARTS_MAX; ++s) {
        double nus = nu + s;
        std::vector<HalfPowerPoly> b(a.size() + 1);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (const auto& [p2, cf] : a[i]) {
                b[i][p2 - 1] += cf * 0.5 * (p2 - nus);
                b[i + 1][p2 + 1] += cf;
            }
        }
        a = std::move(b);
        C[s + 1] = l1_norm(a);
    }

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(std::make_pair(N, nu), C);
    return C;
}

// Best certified bound on |int h B_nu(c sqrt x) dx| from the precomputed
// norms.  For the Y kernel |Y_m(z)| <= 1 needs z >= m + 2, so the number of
// parts steps is capped by the smallest kernel argument c sqrt(N).
double bound_from_norms(double c, double N, int kind,
                        const std::array<double, PARTS_MAX + 1>& C,
                        int* j_used = nullptr, int j_min = 0) {
    double best = -1.0;
    int best_j = -1;
    for (int j = j_min; j <= PARTS_MAX; ++j) {
        if (kind == 1 && c * std::sqrt(N) < j + 2.0)
            break;
        double bound = C[j] * std::pow(2.0 / c, j);
        if (best < 0.0 || bound < best) {
            best = bound;
            best_j = j;
        }
    }
    if (best < 0.0) {
        best = C[0];
        best_j = 0;
    }
    if (j_used)
        *j_used = best_j;
    return best;
}

long long reduced_residue(long long a, long long n, int q) {
    long long r = (a % q) * (n % q) % q;
    if (r < 0)
        r += q;
    return r;
}

void ensure_table(CoefficientTable& table, CoeffSource source, int need) {
    if (table.n_max >= need)
        return;
    int size = std::max(need, 64);
    table = (source == CoeffSource::tau) ? tau_coefficients(size)
                                         : divisor_coefficients(size);
}

std::string format_tail_message(double tail, double tol, int M) {
    std::ostringstream os;
    os << "dual truncation insufficient: certified tail " << tail
       << " exceeds " << (tol / 8.0) << " at cutoff " << M;
    return os.str();
}

} // namespace

CoefficientTable tau_coefficients(int n_max) {
    if (n_max < 1 || n_max > 1000000)
        throw std::invalid_argument("tau_coefficients: n_max must be in [1, 10^6]");

    // (E^3)(q) = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2} (Euler factor cubed);
    // the 24th power of the Euler factor is its 8th power by sparse
    // convolution, and tau(n) is its coefficient at q^{n-1}.
    const int X = n_max; // degrees 0 .. X-1
    std::vector<std::pair<int, long long>> sparse;
    for (long long k = 0;; ++k) {
        long long d = k * (k + 1) / 2;
        if (d >= X)
            break;
        sparse.emplace_back(int(d), (k % 2 ? -(2 * k + 1) : (2 * k + 1)));
    }

    std::vector<Int128> dense(X, 0);
    for (const auto& [d, s] : sparse)
        dense[d] = s;

    std::vector<Int128> next(X);
    for (int pass = 1; pass < 8; ++pass) {
        std::fill(next.begin(), next.end(), Int128(0));
        for (const auto& [d, s] : sparse) {
            Int128 factor = s;
            for (int i = 0; i + d < X; ++i) {
                if (dense[i] == 0)
                    continue;
                Int128 add = dense[i] * factor;
                next[i + d] += add;
                if (abs128(next[i + d]) > COEF_LIMIT)
                    throw std::overflow_error(
                        "tau_coefficients: coefficient exceeds 128-bit range");
            }
        }
        dense.swap(next);
    }

    CoefficientTable table;
    table.source = CoeffSource::tau;
    table.n_max = n_max;
    table.tau_exact.assign(dense.begin(), dense.end());
    table.lambda.resize(n_max);
    for (int n = 1; n <= n_max; ++n) {
        long double t = static_cast<long double>(table.tau_exact[n - 1]);
        table.lambda[n - 1] = double(t / powl((long double)n, 5.5L));
    }
    return table;
}

CoefficientTable divisor_coefficients(int n_max) {
    if (n_max < 1 || n_max > 1000000)
        throw std::invalid_argument("divisor_coefficients: n_max must be in [1, 10^6]");
    std::vector<int> d(n_max + 1, 0);
    for (int i = 1; i <= n_max; ++i)
        for (int j = i; j <= n_max; j += i)
            ++d[j];
    CoefficientTable table;
    table.source = CoeffSource::divisor;
    table.n_max = n_max;
    table.lambda.resize(n_max);
    for (int n = 1; n <= n_max; ++n)
        table.lambda[n - 1] = double(d[n]);
    return table;
}

int mod_inverse(int a, int q) {
    if (q < 1)
        throw std::invalid_argument("mod_inverse: modulus must be positive");
    if (q == 1)
        return 0;
    long long r0 = q, r1 = ((long long)a % q + q) % q;
    long long s0 = 0, s1 = 1;
    while (r1 != 0) {
        long long div = r0 / r1;
        long long r2 = r0 - div * r1;
        long long s2 = s0 - div * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1)
        throw std::invalid_argument("mod_inverse: arguments are not coprime");
    return int((s0 % q + q) % q);
}

void check_voronoi_instance(const VoronoiInstance& inst) {
    if (inst.q < 1 || inst.q > 1000)
        throw std::invalid_argument("voronoi: modulus must be in [1, 1000]");
    if (!(inst.N >= 10.0) || !(inst.N <= 200000.0))
        throw std::invalid_argument("voronoi: weight scale must be in [10, 2e5]");
    if (double(inst.q) > PI * std::sqrt(inst.N))
        throw std::invalid_argument(
            "voronoi: modulus too large for the weight scale (dual kernel "
            "arguments would leave the certified range)");
    long long r = ((long long)inst.a % inst.q + inst.q) % inst.q;
    if (std::gcd((long long)inst.q, r) != 1)
        throw std::invalid_argument("voronoi: residue must be coprime to the modulus");
}

double voronoi_weight(double x, double N) {
    return bump_poly_deriv((x - N) / N, 0);
}

double voronoi_weight_deriv(double x, double N, int k) {
    if (k < 0 || k > PARTS_MAX)
        throw std::invalid_argument("voronoi_weight_deriv: order must be in [0, 12]");
    return bump_poly_deriv((x - N) / N, k) * std::pow(1.0 / N, k);
}

double weight_bessel_transform(double y, double N, int kind) {
    if (!(y > 0.0) || !(N > 0.0))
        throw std::invalid_argument("weight_bessel_transform: y and N must be positive");
    if (kind < 0 || kind > 2)
        throw std::invalid_argument("weight_bessel_transform: kind must be 0, 1 or 2");

    const double c = 4.0 * PI * std::sqrt(y);
    const double ulo = std::sqrt(N);
    const double uhi = std::sqrt(2.0 * N);

    if (kind == 2) {
        if (c * ulo > 700.0)
            return 0.0;
        double scale = std::exp(-c * ulo) * N;
        auto f = [&](double u) {
            return 2.0 * u * voronoi_weight(u * u, N) * bessel_k0(c * u);
        };
        double span = std::min(uhi, ulo + 100.0 / c);
        return integrate_real(f, ulo, span, std::max(1e-250, 1e-14 * scale), 400000)
            .value.real();
    }

    double panels_d = c * (uhi - ulo) / PI + 4.0;
    if (panels_d > 500000.0)
        throw std::invalid_argument("weight_bessel_transform: argument too oscillatory");
    int panels = std::max(24, int(std::ceil(panels_d)));

    const GaussRule16& g = gauss16();
    double total = 0.0;
    double step = (uhi - ulo) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = ulo + step * p;
        double mid = a + 0.5 * step;
        double half = 0.5 * step;
        double acc = 0.0;
        for (int k = 0; k < 16; ++k) {
            double u = mid + half * g.x[k];
            acc += g.w[k] * 2.0 * u * voronoi_weight(u * u, N) * kernel_value(kind, c * u);
        }
        total += acc * half;
    }
    return total;
}

TailCertificate transform_decay_bound(double y, double N, int kind) {
    if (!(y > 0.0) || !(N > 0.0))
        throw std::invalid_argument("transform_decay_bound: y and N must be positive");
    if (kind < 0 || kind > 1)
        throw std::invalid_argument("transform_decay_bound: oscillatory kinds only");
    const double c = 4.0 * PI * std::sqrt(y);
    auto C = parts_norms(N, kind == 0 ? 11 : 0);
    TailCertificate cert;
    cert.bound = bound_from_norms(c, N, kind, C, &cert.j_used);
    return cert;
}

double dual_tail_bound(const VoronoiInstance& inst, int M) {
    check_voronoi_instance(inst);
    if (M < 1)
        throw std::invalid_argument("dual_tail_bound: cutoff must be >= 1");
    const double q = inst.q;
    const double N = inst.N;
    const int kind = (inst.source == CoeffSource::tau) ? 0 : 1;
    const int nu = (kind == 0) ? 11 : 0;
    auto C = parts_norms(N, nu);

    // sum_{n>M} d(n) |term_n| with |H| <= (2/c_n)^j C_j, c_n = 4 pi sqrt(n)/q,
    // d(n) <= 2 sqrt(n); the n-sum is closed by monotone comparison with the
    // integral, so j >= 5 is required for convergence headroom.
    double best = -1.0;
    const double base = q / (2.0 * PI); // (2/c_n)^j = (base/sqrt n)^j
    for (int j = 5; j <= PARTS_MAX; ++j) {
        if (kind == 1 && (4.0 * PI * std::sqrt(M + 1.0) / q) * std::sqrt(N) < j + 2.0)
            continue;
        double sum_n = 2.0 * std::pow(M + 1.0, 0.5 * (1.0 - j)) +
                       (4.0 / (j - 3.0)) * std::pow(M + 1.0, 0.5 * (3.0 - j));
        double tail = (2.0 * PI / q) * std::pow(base, j) * C[j] * sum_n;
        if (best < 0.0 || tail < best)
            best = tail;
    }
    if (best < 0.0)
        return std::numeric_limits<double>::infinity();
    double tail = best;

    if (inst.source == CoeffSource::divisor) {
        // K_0 side: |K_0(z)| <= sqrt(pi/(2z)) e^{-z} and int h <= N.
        double ktail = 0.0;
        for (long long n = M + 1;; ++n) {
            double z = 4.0 * PI * std::sqrt(double(n) * N) / q;
            if (z > 700.0 || n > M + 2000000)
                break;
            ktail += (4.0 / q) * 2.0 * std::sqrt(double(n)) * N *
                     std::sqrt(PI / (2.0 * z)) * std::exp(-z);
        }
        tail += ktail;
    }
    return tail * 1.1;
}

namespace {

struct DualSetup {
    int M = 0;
    double tail = 0.0;
};

DualSetup select_truncation(const VoronoiInstance& inst, int truncation, double tol) {
    DualSetup s;
    if (truncation > 0) {
        s.M = truncation;
        s.tail = dual_tail_bound(inst, s.M);
        if (s.tail > tol / 8.0)
            throw BudgetExceeded(format_tail_message(s.tail, tol, s.M));
        return s;
    }
    for (int M = 32; M <= AUTO_TRUNC_MAX; M *= 2) {
        double tail = dual_tail_bound(inst, M);
        if (tail <= tol / 8.0) {
            s.M = M;
            s.tail = tail;
            return s;
        }
    }
    throw BudgetExceeded(format_tail_message(dual_tail_bound(inst, AUTO_TRUNC_MAX),
                                             tol, AUTO_TRUNC_MAX));
}

void check_tol(double tol) {
    if (!(tol >= 1e-12) || !(tol <= 1.0))
        throw std::invalid_argument("voronoi: tol must be in [1e-12, 1]");
}

} // namespace

VoronoiResult voronoi_check_cusp(const VoronoiInstance& inst, int truncation,
                                 double tol) {
    check_voronoi_instance(inst);
    check_tol(tol);
    if (inst.source != CoeffSource::tau)
        throw std::invalid_argument("voronoi_check_cusp: instance source must be tau");

    const int q = inst.q;
    const double N = inst.N;
    const int abar = inst.abar_override != 0
                         ? int(((long long)inst.abar_override % q + q) % q)
                         : mod_inverse(inst.a, q);

    DualSetup setup = select_truncation(inst, truncation, tol);

    CoefficientTable table;
    ensure_table(table, CoeffSource::tau, std::max(int(std::floor(2.0 * N)), setup.M));

    VoronoiResult res;
    res.truncation_used = setup.M;

    cplx lhs{0.0, 0.0};
    for (int n = int(std::ceil(N)); n <= int(std::floor(2.0 * N)); ++n) {
        double h = voronoi_weight(double(n), N);
        if (h == 0.0)
            continue;
        lhs += table.lambda[n - 1] * e_of(double(reduced_residue(inst.a, n, q)) / q) * h;
    }
    res.lhs = lhs;

    auto C = parts_norms(N, 11);
    const double skip_cut = tol * (1.0 + std::abs(lhs)) / (16.0 * double(setup.M));
    double skipped = 0.0;
    cplx dual{0.0, 0.0};
    for (int n = 1; n <= setup.M; ++n) {
        double y = double(n) / (double(q) * double(q));
        double c = 4.0 * PI * std::sqrt(y);
        double lam = table.lambda[n - 1];
        double term_bound =
            (2.0 * PI / q) * std::abs(lam) * bound_from_norms(c, N, 0, C);
        if (n > 8 && term_bound < skip_cut) {
            skipped += term_bound;
            continue;
        }
        double H = 2.0 * PI * weight_bessel_transform(y, N, 0); // i^{12} = 1
        dual += (lam / q) * e_of(-double(reduced_residue(abar, n, q)) / q) * H;
    }
    res.dual_osc = dual;
    res.rhs = dual;
    res.tail_bound = setup.tail + skipped;
    res.residual = std::abs(res.lhs - res.rhs) / (1.0 + std::abs(res.lhs));
    return res;
}

VoronoiResult voronoi_check_divisor(const VoronoiInstance& inst, int truncation,
                                    double tol) {
    check_voronoi_instance(inst);
    check_tol(tol);
    if (inst.source != CoeffSource::divisor)
        throw std::invalid_argument(
            "voronoi_check_divisor: instance source must be divisor");

    const int q = inst.q;
    const double N = inst.N;
    const int abar = inst.abar_override != 0
                         ? int(((long long)inst.abar_override % q + q) % q)
                         : mod_inverse(inst.a, q);

    DualSetup setup = select_truncation(inst, truncation, tol);

    CoefficientTable table;
    ensure_table(table, CoeffSource::divisor,
                 std::max(int(std::floor(2.0 * N)), setup.M));

    VoronoiResult res;
    res.truncation_used = setup.M;

    cplx lhs{0.0, 0.0};
    for (int n = int(std::ceil(N)); n <= int(std::floor(2.0 * N)); ++n) {
        double h = voronoi_weight(double(n), N);
        if (h == 0.0)
            continue;
        lhs += table.lambda[n - 1] * e_of(double(reduced_residue(inst.a, n, q)) / q) * h;
    }
    res.lhs = lhs;

    auto fmain = [&](double x) {
        return (std::log(std::sqrt(x) / q) + EULER_GAMMA) * voronoi_weight(x, N);
    };
    double main_scale = (std::abs(std::log(std::sqrt(2.0 * N) / q)) + 1.0) * N;
    res.main_term = (2.0 / q) *
                    integrate_real(fmain, N, 2.0 * N, 1e-12 * main_scale, 400000)
                        .value.real();

    auto C = parts_norms(N, 0);
    const double skip_cut = tol * (1.0 + std::abs(lhs)) / (16.0 * double(setup.M));
    double skipped = 0.0;
    cplx dual_y{0.0, 0.0};
    cplx dual_k{0.0, 0.0};
    for (int n = 1; n <= setup.M; ++n) {
        double y = double(n) / (double(q) * double(q));
        double c = 4.0 * PI * std::sqrt(y);
        double dn = table.lambda[n - 1];
        double term_bound =
            (2.0 * PI / q) * dn * bound_from_norms(c, N, 1, C);
        bool keep_y = !(n > 8 && term_bound < skip_cut);
        if (keep_y) {
            double IY = weight_bessel_transform(y, N, 1);
            dual_y += (dn / q) * (-2.0 * PI) *
                      e_of(-double(reduced_residue(abar, n, q)) / q) * IY;
        } else {
            skipped += term_bound;
        }
        if (c * std::sqrt(N) <= 80.0) {
            double IK = weight_bessel_transform(y, N, 2);
            dual_k += (dn / q) * 4.0 * e_of(double(reduced_residue(abar, n, q)) / q) * IK;
        }
    }
    res.dual_osc = dual_y;
    res.dual_exp = dual_k;
    res.rhs = dual_y + dual_k + (inst.omit_main_term ? cplx{0.0, 0.0} : res.main_term);
    res.tail_bound = setup.tail + skipped;
    res.residual = std::abs(res.lhs - res.rhs) / (1.0 + std::abs(res.lhs));
    return res;
}

} // namespace lab
