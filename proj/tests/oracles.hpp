#pragma once
// Brute-force references used by the tests. Deliberately naive: plain
// machine integers, trial division, exhaustive residue scans. Nothing here
// calls into the library except to build Int values for comparison.
#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <utility>
#include <vector>

namespace oracle {

using i64 = long;  // 64-bit on the target platform, and mpz_class accepts it directly

inline std::vector<std::pair<mpz_class, unsigned>> trial_factor(i64 n) {
    std::vector<std::pair<mpz_class, unsigned>> out;
    n = std::labs(n);
    for (i64 p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(mpz_class(static_cast<long>(p)), e);
    }
    if (n > 1) out.emplace_back(mpz_class(static_cast<long>(n)), 1u);
    return out;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline bool is_squarefree(i64 n) {
    n = std::labs(n);
    if (n == 0) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

inline int omega_mult(i64 n) {
    int s = 0;
    for (auto& f : trial_factor(n)) s += static_cast<int>(f.second);
    return s;
}

inline int liouville(i64 n) { return omega_mult(n) % 2 ? -1 : 1; }

inline i64 max_square_divisor_root(i64 n) {
    n = std::labs(n);
    i64 best = 1;
    for (i64 c = 1; c * c <= n; ++c)
        if (n % (c * c) == 0) best = c;
    return best;
}

inline i64 powmod(i64 a, i64 e, i64 m) {
    i64 r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e) {
        if (e & 1) r = static_cast<i64>((__int128)r * a % m);
        a = static_cast<i64>((__int128)a * a % m);
        e >>= 1;
    }
    return r;
}

// Euler's criterion
inline int legendre(i64 a, i64 p) {
    i64 r = ((a % p) + p) % p;
    if (r == 0) return 0;
    i64 t = powmod(r, (p - 1) / 2, p);
    return t == 1 ? 1 : -1;
}

inline int jacobi_by_legendre(i64 a, i64 b) {
    int s = 1;
    for (auto& [p, e] : trial_factor(b)) {
        int l = legendre(a, p.get_si());
        for (unsigned i = 0; i < e; ++i) s *= l;
    }
    return s;
}

inline i64 strip(i64 n, i64 p) {
    while (n % p == 0) n /= p;
    return n;
}

inline int modified_symbol_by_definition(i64 a, i64 b, i64 delta) {
    int s = 1;
    for (auto& [pp, e] : trial_factor(b)) {
        i64 p = pp.get_si();
        if (delta % p == 0) continue;
        int l = legendre(strip(a, p), p);
        if (e % 2) s *= l;
    }
    return s;
}

// Solvability of a x^2 + b y^2 = z^2 over Q_p by a primitive solution
// modulo p^3 (odd p) or 2^5; valuations are first reduced to 0 or 1 so
// Hensel's lemma applies to any primitive residue solution.
inline int hilbert_by_search(i64 a, i64 b, i64 p) {
    auto reduce = [p](i64 x) {
        while (x % (p * p) == 0) x /= p * p;
        return x;
    };
    a = reduce(a);
    b = reduce(b);
    i64 m = (p == 2) ? 32 : p * p * p;
    std::vector<char> sq_any(m, 0), sq_unit(m, 0);
    for (i64 z = 0; z < m; ++z) {
        i64 s = z * z % m;
        sq_any[s] = 1;
        if (z % p) sq_unit[s] = 1;
    }
    i64 am = ((a % m) + m) % m, bm = ((b % m) + m) % m;
    for (i64 x = 0; x < m; ++x)
        for (i64 y = 0; y < m; ++y) {
            i64 val = (am * (x * x % m) + bm * (y * y % m)) % m;
            bool prim = (x % p) || (y % p);
            if (prim ? sq_any[val] : sq_unit[val]) return 1;
        }
    return -1;
}

}  // namespace oracle
