#include "ellroot/intmath.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace ellroot {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this base set is deterministic below 3.3e24
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

struct StepCounter {
    u64 left;
    void spend(u64 k) {
        if (k > left) throw BudgetExceeded("factorization: rho step budget exhausted");
        left -= k;
    }
};

// Brent's variant; returns a nontrivial divisor or n on failure for this c
u64 rho_u64(u64 n, u64 c, StepCounter& steps) {
    if (n % 2 == 0) return 2;
    auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
    const u64 m = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        steps.spend(r);
        for (u64 k = 0; k < r && g == 1; k += m) {
            ys = y;
            u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            steps.spend(lim);
            g = std::gcd(q, n);
        }
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

void factor_u64(u64 n, std::map<Int, unsigned>& out, StepCounter& steps) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[Int(static_cast<unsigned long>(n))] += 1;
        return;
    }
    for (u64 c = 1;; ++c) {
        u64 d = rho_u64(n, c, steps);
        if (d != n && d != 1) {
            factor_u64(d, out, steps);
            factor_u64(n / d, out, steps);
            return;
        }
    }
}

Int rho_mpz(const Int& n, unsigned long c, StepCounter& steps) {
    auto f = [&](Int& x) {
        x = x * x + c;
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    };
    Int y = 2, x = 2, ys = 2, q = 1, g = 1, t;
    const u64 m = 64;
    for (u64 r = 1; g == 1; r <<= 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) f(y);
        steps.spend(r);
        for (u64 k = 0; k < r && g == 1; k += m) {
            ys = y;
            u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                f(y);
                t = x - y;
                q *= t;
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            steps.spend(lim);
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (g == n) {
        do {
            f(ys);
            t = x - ys;
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

bool fits_u64(const Int& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 63; }

void factor_big(const Int& n, std::map<Int, unsigned>& out, StepCounter& steps) {
    if (n == 1) return;
    if (fits_u64(n)) {
        factor_u64(mpz_get_ui(n.get_mpz_t()), out, steps);
        return;
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
        out[n] += 1;
        return;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Int r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        std::map<Int, unsigned> sub;
        factor_big(r, sub, steps);
        for (auto& [p, e] : sub) out[p] += 2 * e;
        return;
    }
    for (unsigned long c = 1;; ++c) {
        Int d = rho_mpz(n, c, steps);
        if (d != n && d != 1) {
            factor_big(d, out, steps);
            factor_big(Int(n / d), out, steps);
            return;
        }
    }
}

}  // namespace

unsigned long Factorization::big_omega() const {
    unsigned long s = 0;
    for (auto& f : factors) s += f.second;
    return s;
}

unsigned Factorization::exponent_of(const Int& p) const {
    for (auto& f : factors)
        if (f.first == p) return f.second;
    return 0;
}

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = primes_up_to(1u << 22);
    return table;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
    std::vector<std::uint32_t> ps;
    if (bound < 2) return ps;
    std::vector<bool> comp(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        ps.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += i) comp[j] = true;
    }
    return ps;
}

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(mpz_get_ui(n.get_mpz_t()));
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Factorization factorize(const Int& n, const FactorBudget& budget) {
    if (n == 0) throw DomainError("factorize: zero input");
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > budget.max_bits)
        throw BudgetExceeded("factorize: input exceeds bit budget");
    Factorization F;
    F.value = n;
    F.sign = n < 0 ? -1 : 1;
    Int m = abs_int(n);
    std::map<Int, unsigned> acc;
    const auto& ps = small_primes();
    for (std::uint32_t p : ps) {
        if (p > budget.trial_bound) break;
        if (Int(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            acc[Int(p)] = e;
        }
    }
    StepCounter steps{budget.rho_steps};
    factor_big(m, acc, steps);
    for (auto& [p, e] : acc) F.factors.emplace_back(p, e);
    return F;
}

unsigned valuation(const Int& n, const Int& p) {
    if (n == 0) throw DomainError("valuation of zero");
    if (p < 2) throw DomainError("valuation: bad prime");
    Int m = n;
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++e;
    }
    return e;
}

Int strip_prime(const Int& n, const Int& p) {
    if (n == 0) throw DomainError("strip_prime of zero");
    Int m = n;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()))
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    return m;
}

std::vector<Int> prime_divisors(const Int& n) {
    std::vector<Int> out;
    for (auto& f : factorize(n).factors) out.push_back(f.first);
    return out;
}

Int radical(const Int& n) {
    Int r = 1;
    for (auto& f : factorize(n).factors) r *= f.first;
    return r;
}

// negative arguments are read through |n|
Sign liouville(const Int& n) {
    if (n == 0) throw DomainError("liouville: n must be nonzero");
    return factorize(abs_int(n)).big_omega() % 2 ? -1 : 1;
}

int moebius(const Int& n) {
    if (n == 0) throw DomainError("moebius: n must be nonzero");
    auto F = factorize(abs_int(n));
    for (auto& f : F.factors)
        if (f.second > 1) return 0;
    return F.factors.size() % 2 ? -1 : 1;
}

std::pair<Int, Int> square_decompose(const Int& n) {
    if (n == 0) throw DomainError("square_decompose: zero input");
    auto F = factorize(n);
    Int c = 1, l = F.sign;
    for (auto& [p, e] : F.factors) {
        for (unsigned i = 0; i < e / 2; ++i) c *= p;
        if (e % 2) l *= p;
    }
    return {c, l};
}

Int delta_free_part(const Int& n, const Int& delta) {
    if (n == 0 || delta == 0) throw DomainError("delta_free_part: zero input");
    Int m = n, g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), delta.get_mpz_t());
    while (g > 1) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), g.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), g.get_mpz_t());
    }
    return m;
}

int jacobi(const Int& a, const Int& b) {
    if (b <= 0 || mpz_even_p(b.get_mpz_t())) throw DomainError("jacobi: b must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), b.get_mpz_t());
}

Sign hilbert_p(const Int& a, const Int& b, const Int& p) {
    if (a == 0 || b == 0) throw DomainError("hilbert_p: zero input");
    if (p == 2) throw DomainError("hilbert_p: p = 2 handled by hilbert_2");
    unsigned va = valuation(a, p), vb = valuation(b, p);
    Int ap = strip_prime(a, p), bp = strip_prime(b, p);
    int s = 1;
    if ((va * vb) % 2 == 1 && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) s = -s;
    if (vb % 2) s *= jacobi(ap, p);
    if (va % 2) s *= jacobi(bp, p);
    return s;
}

Sign hilbert_inf(const Int& a, const Int& b) {
    if (a == 0 || b == 0) throw DomainError("hilbert_inf: zero input");
    return (a < 0 && b < 0) ? -1 : 1;
}

Sign hilbert_2(const Int& a, const Int& b) {
    if (a == 0 || b == 0) throw DomainError("hilbert_2: zero input");
    unsigned alpha = valuation(a, 2), beta = valuation(b, 2);
    Int u = strip_prime(a, 2), w = strip_prime(b, 2);
    auto eps = [](const Int& x) { return mpz_fdiv_ui(x.get_mpz_t(), 4) == 3 ? 1u : 0u; };
    auto omg = [](const Int& x) {
        unsigned long r = mpz_fdiv_ui(x.get_mpz_t(), 8);
        return (r == 3 || r == 5) ? 1u : 0u;
    };
    unsigned e = eps(u) * eps(w) + alpha * omg(w) + beta * omg(u);
    return e % 2 ? -1 : 1;
}

Sign modified_symbol(const Int& a, const Int& b, const Int& delta) {
    if (a == 0 || b == 0) throw DomainError("modified_symbol: zero input");
    if (delta == 0 || mpz_odd_p(delta.get_mpz_t())) throw DomainError("modified_symbol: delta must be even");
    Int bd = abs_int(delta_free_part(b, delta));
    if (bd == 1) return 1;
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), bd.get_mpz_t());
    if (g == 1) return jacobi(a, bd);
    int s = 1;
    for (auto& [p, e] : factorize(bd).factors)
        if (e % 2) s *= jacobi(strip_prime(a, p), p);
    return s;
}

std::pair<Int, Int> crt(const std::vector<std::pair<Int, Int>>& cs) {
    Int r = 0, m = 1;
    for (auto& [res, mod] : cs) {
        if (mod <= 0) throw DomainError("crt: moduli must be positive");
        Int g;
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), mod.get_mpz_t());
        if (g != 1) throw DomainError("crt: moduli not pairwise coprime");
        // r + m*k = res mod mod
        Int inv;
        mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), mod.get_mpz_t());
        if (mod == 1) inv = 0;
        Int k = mod_floor(Int((res - r) * inv), mod);
        r += m * k;
        m *= mod;
        r = mod_floor(r, m);
    }
    return {r, m};
}

}  // namespace ellroot
