#include "lab/exp_sums.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace lab {

namespace {

long long mod_pos(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

std::mutex cache_mutex;

const std::vector<cplx>& roots_of_unity(long long c) {
    static std::map<long long, std::vector<cplx>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(c);
    if (it != cache.end()) return it->second;
    std::vector<cplx> v((size_t)c);
    for (long long k = 0; k < c; ++k) v[(size_t)k] = e_of((double)k / (double)c);
    return cache.emplace(c, std::move(v)).first->second;
}

// inv[x] = x^{-1} mod c when gcd(x, c) = 1, else -1.
const std::vector<long long>& inverse_table(long long c) {
    static std::map<long long, std::vector<long long>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(c);
    if (it != cache.end()) return it->second;
    std::vector<long long> v((size_t)c, -1);
    if (c == 1) {
        v[0] = 0;
    } else {
        for (long long x = 0; x < c; ++x) {
            if (std::gcd(x, c) != 1) continue;
            long long t = 0, newt = 1, r = c, newr = x;
            while (newr != 0) {
                long long q = r / newr;
                long long tmp = t - q * newt;
                t = newt;
                newt = tmp;
                tmp = r - q * newr;
                r = newr;
                newr = tmp;
            }
            v[(size_t)x] = mod_pos(t, c);
        }
    }
    return cache.emplace(c, std::move(v)).first->second;
}

long long gcd3(long long a, long long b, long long c) {
    return std::gcd(std::gcd(a, b), c);
}

// One solution of Y B + Z C = 1 (mod D); requires gcd(B, C, D) = 1.
// The two scan directions give independent solutions for the
// well-definedness check.
std::pair<long long, long long> solve_unimodular(long long B, long long C,
                                                 long long D, bool alternative) {
    if (D == 1) return {0, 0};
    const auto& inv = inverse_table(D);
    for (long long step = 0; step < D; ++step) {
        long long Z = alternative ? D - 1 - step : step;
        long long r = mod_pos(1 - Z * C, D);
        long long g = std::gcd(B, D);
        if (r % g != 0) continue;
        long long Dp = D / g;
        long long Y;
        if (Dp == 1) {
            Y = 0;
        } else {
            long long Bp = (B / g) % Dp;
            long long binv = inverse_table(Dp)[(size_t)mod_pos(Bp, Dp)];
            Y = mod_pos((r / g) % Dp * binv, Dp);
        }
        if (alternative) Y = mod_pos(Y + Dp, D);
        if (mod_pos(Y * B + Z * C, D) == 1) return {Y, Z};
    }
    (void)inv;
    throw std::runtime_error("solve_unimodular: no solution, gcd(B,C,D) != 1");
}

std::vector<std::array<long long, 4>> enumerate_w6(long long D1, long long D2,
                                                   bool alternative) {
    std::vector<std::array<long long, 4>> out;
    const long long M = D1 * D2;
    for (long long B1 = 0; B1 < D1; ++B1) {
        for (long long C1 = 0; C1 < D1; ++C1) {
            if (gcd3(B1, C1, D1) != 1) continue;
            for (long long B2 = 0; B2 < D2; ++B2) {
                // D1 C2 = -(B1 B2 + D2 C1) (mod D1 D2) determines C2 mod D2
                // when D1 divides the right side, and is impossible otherwise.
                long long r = mod_pos(-(B1 * B2 + D2 * C1), M);
                if (r % D1 != 0) continue;
                long long C2 = (r / D1) % D2;
                if (gcd3(B2, C2, D2) != 1) continue;
                auto [Y1, Z1] = solve_unimodular(B1, C1, D1, alternative);
                auto [Y2, Z2] = solve_unimodular(B2, C2, D2, alternative);
                out.push_back({B1, mod_pos(Y1 * D2 - Z1 * B2, D1), B2,
                               mod_pos(Y2 * D1 - Z2 * B1, D2)});
            }
        }
    }
    return out;
}

SumValue w6_from_multipliers(const KloostermanInput& in,
                             const std::vector<std::array<long long, 4>>& mult) {
    long long n1 = mod_pos(in.n1, in.D1), m1 = mod_pos(in.m1, in.D1);
    long long m2 = mod_pos(in.m2, in.D2), n2 = mod_pos(in.n2, in.D2);
    const auto& r1 = roots_of_unity(in.D1);
    const auto& r2 = roots_of_unity(in.D2);
    cplx acc = 0.0;
    for (const auto& t : mult) {
        long long i1 = (n1 * t[0] + m1 * t[1]) % in.D1;
        long long i2 = (m2 * t[2] + n2 * t[3]) % in.D2;
        acc += r1[(size_t)i1] * r2[(size_t)i2];
    }
    return {acc, (long long)mult.size()};
}

void check_moduli(long long D1, long long D2) {
    if (D1 < 1 || D2 < 1) throw std::invalid_argument("moduli must be >= 1");
}

} // namespace

long long mod_inverse(long long a, long long m) {
    if (m < 1) throw std::invalid_argument("mod_inverse: modulus must be >= 1");
    if (m == 1) return 0;
    long long aa = mod_pos(a, m);
    long long v = inverse_table(m)[(size_t)aa];
    if (v < 0) throw std::invalid_argument("mod_inverse: not invertible");
    return v;
}

SumValue kloosterman(long long m, long long n, long long c) {
    if (c < 1) throw std::invalid_argument("kloosterman: modulus must be >= 1");
    long long mm = mod_pos(m, c), nn = mod_pos(n, c);
    const auto& rou = roots_of_unity(c);
    const auto& inv = inverse_table(c);
    cplx acc = 0.0;
    long long count = 0;
    for (long long x = 0; x < c; ++x) {
        if (inv[(size_t)x] < 0) continue;
        acc += rou[(size_t)((mm * x + nn * inv[(size_t)x]) % c)];
        ++count;
    }
    return {acc, count};
}

SumValue ramanujan_sum(long long n, long long q) { return kloosterman(n, 0, q); }

SumValue gl3_kloosterman_w4(long long n1, long long n2, long long m1,
                            long long D1, long long D2) {
    check_moduli(D1, D2);
    if (D2 % D1 != 0)
        throw std::invalid_argument("gl3_kloosterman_w4: D1 must divide D2");
    const long long q = D2 / D1;
    long long a1 = mod_pos(n1, D1), a2 = mod_pos(n2, D1), b1 = mod_pos(m1, q);
    const auto& rou1 = roots_of_unity(D1);
    const auto& rouq = roots_of_unity(q);
    const auto& inv1 = inverse_table(D1);
    const auto& invq = inverse_table(q);
    cplx acc = 0.0;
    long long count = 0;
    for (long long C1 = 0; C1 < D1; ++C1) {
        if (inv1[(size_t)C1] < 0) continue;
        long long c1bar = inv1[(size_t)C1];
        for (long long C2 = 0; C2 < D2; ++C2) {
            if (invq[(size_t)(C2 % q)] < 0) continue;
            long long i1 = (a2 * ((c1bar * (C2 % D1)) % D1) + a1 * C1) % D1;
            long long iq = (b1 * invq[(size_t)(C2 % q)]) % q;
            acc += rou1[(size_t)i1] * rouq[(size_t)iq];
            ++count;
        }
    }
    return {acc, count};
}

const std::vector<std::array<long long, 4>>& w6_admissible_multipliers(
    long long D1, long long D2) {
    check_moduli(D1, D2);
    static std::map<std::pair<long long, long long>,
                    std::vector<std::array<long long, 4>>>
        cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(D1, D2);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, enumerate_w6(D1, D2, false)).first->second;
}

SumValue gl3_kloosterman_w6(const KloostermanInput& in) {
    check_moduli(in.D1, in.D2);
    return w6_from_multipliers(in, w6_admissible_multipliers(in.D1, in.D2));
}

SumValue gl3_kloosterman_w6_alt(const KloostermanInput& in) {
    check_moduli(in.D1, in.D2);
    return w6_from_multipliers(in, enumerate_w6(in.D1, in.D2, true));
}

namespace detail {

SumValue kn_rhs_slots(const KloostermanInput& in, long long a, long long b,
                      long long c, long long d) {
    const long long D1 = in.D1, D2 = in.D2;
    a = mod_pos(a, D1 * D2);
    b = mod_pos(b, D1 * D2);
    const long long g = std::gcd(D1, D2);
    cplx acc = 0.0;
    long long count = 0;
    for (long long f = 1; f <= g; ++f) {
        if (g % f != 0) continue;
        const auto& invf = inverse_table(f);
        for (long long y = 0; y < f; ++y) {
            if (invf[(size_t)y] < 0) continue;
            if (mod_pos(a * (D2 / f) + b * (D1 / f) * y, f) != 0) continue;
            long long ybar = invf[(size_t)y];
            long long num1 = a * D2 + b * D1 * y;
            long long num2 = a * D2 * ybar + b * D1;
            if (num1 % (f * f) != 0 || num2 % (f * f) != 0)
                throw std::runtime_error("kn_rhs_slots: non-integral factor frequency");
            SumValue s1 = kloosterman(c, num1 / (f * f), D1 / f);
            SumValue s2 = kloosterman(d, num2 / (f * f), D2 / f);
            acc += (double)f * s1.value * s2.value;
            count += f * s1.term_count * s2.term_count;
        }
    }
    return {acc, count};
}

} // namespace detail

SumValue kiral_nakasuji_rhs(const KloostermanInput& in) {
    check_moduli(in.D1, in.D2);
    return detail::kn_rhs_slots(in, in.m1, in.m2, in.n1, in.n2);
}

} // namespace lab
