#ifndef LAB_EXP_SUMS_HPP
#define LAB_EXP_SUMS_HPP

#include "lab/constants.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace lab {

struct SumValue {
    cplx value;
    long long term_count;
};

// Frequencies n1, n2, m1, m2 and moduli D1, D2 for the rank-two Kloosterman
// sums; frequencies are arbitrary integers and are reduced internally.
struct KloostermanInput {
    long long n1 = 0;
    long long n2 = 0;
    long long m1 = 0;
    long long m2 = 0;
    long long D1 = 1;
    long long D2 = 1;
};

// a^{-1} mod m (m >= 1, result in [0, m)); throws if gcd(a, m) > 1.
long long mod_inverse(long long a, long long m);

// Classical sum S(m, n; c) = sum over x mod c, (x,c)=1, of e((m x + n xbar)/c).
SumValue kloosterman(long long m, long long n, long long c);

// Ramanujan sum c_q(n) = S(n, 0; q).
SumValue ramanujan_sum(long long n, long long q);

// Twisted rank-two sum for D1 | D2:
//   sum over C1 mod D1, C2 mod D2 with (C1,D1) = (C2,D2/D1) = 1 of
//   e( n2 C1bar C2 / D1 + m1 C2bar / (D2/D1) + n1 C1 / D1 ).
SumValue gl3_kloosterman_w4(long long n1, long long n2, long long m1,
                            long long D1, long long D2);

// Long-element sum: quadruple sum over B_j, C_j mod D_j with
// (B_j, C_j, D_j) = 1 and D1 C2 + B1 B2 + D2 C1 = 0 mod D1 D2, each term
//   e( (n1 B1 + m1 (Y1 D2 - Z1 B2))/D1 + (m2 B2 + n2 (Y2 D1 - Z2 B1))/D2 )
// with Y_j B_j + Z_j C_j = 1 mod D_j.
SumValue gl3_kloosterman_w6(const KloostermanInput& in);

// Same sum with an independent solver for the (Y_j, Z_j) auxiliaries; the
// value must agree, which is the well-definedness check.
SumValue gl3_kloosterman_w6_alt(const KloostermanInput& in);

// Factorization of the long-element sum into classical sums:
//   sum over f | (D1, D2), y mod f with (y,f)=1 and
//   m1 (D2/f) + n1 (D1/f) y = 0 mod f, of
//   f * S(n1', M_f(y); D1/f) * S(n2', Mtilde_f(y); D2/f).
// The slot mapping between the two argument conventions is frozen by the
// exhaustive identity test against gl3_kloosterman_w6.
SumValue kiral_nakasuji_rhs(const KloostermanInput& in);

// Admissible-tuple phase multipliers for the long-element sum at fixed
// moduli: entries (u1, u2, v1, v2) so that the term for frequencies
// (n1, m1, m2, n2) is e((n1 u1 + m1 u2)/D1) e((m2 v1 + n2 v2)/D2).
// Shared across frequency sweeps; cached per (D1, D2).
const std::vector<std::array<long long, 4>>& w6_admissible_multipliers(
    long long D1, long long D2);

} // namespace lab

#endif
