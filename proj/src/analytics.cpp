#include "ellroot/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ellroot {

namespace {

constexpr long kTableCap = 30000000;

Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

long ipow_long(long p, unsigned e) {
    long r = 1;
    for (unsigned i = 0; i < e; ++i) r *= p;
    return r;
}

long mod_long(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// coefficients reduced mod m, low to high (h = 1) or by U-power (h = 2)
std::vector<long> reduce(const std::vector<Int>& c, long m) {
    std::vector<long> out;
    for (auto& x : c) out.push_back(to_i64(mod_floor(x, m)));
    return out;
}

long horner_mod(const std::vector<long>& c, long x, long m) {
    __int128 acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % m;
    return static_cast<long>(acc);
}

// F(x, Y) mod m as a polynomial in Y, low to high
std::vector<long> fix_first(const std::vector<long>& c, long x, long m) {
    std::size_t d = c.size() - 1;
    std::vector<long> out(d + 1);
    __int128 xp = 1;
    for (std::size_t i = 0; i <= d; ++i) {
        out[d - i] = static_cast<long>(static_cast<__int128>(c[i]) * xp % m);
        xp = xp * x % m;
    }
    return out;
}

// squarefree / Liouville lookups with a factorizing fallback past the table
struct ValueOracle {
    const ArithTables* tab = nullptr;
    bool squarefree(const Int& n) const {
        if (n == 0) return false;
        Int a = abs_int(n);
        if (tab && a <= tab->limit()) return tab->mu(to_i64(a)) != 0;
        return moebius(a) != 0;
    }
    int lambda(const Int& n) const {
        Int a = abs_int(n);
        if (tab && a <= tab->limit()) return tab->lambda(to_i64(a));
        return liouville(a);
    }
    // machine-word variants for values below 2^62
    bool squarefree(long n) const {
        if (n == 0) return false;
        long a = n < 0 ? -n : n;
        return tab && a <= tab->limit() ? tab->mu(a) != 0 : squarefree(Int(n));
    }
    int lambda(long n) const {
        long a = n < 0 ? -n : n;
        return tab && a <= tab->limit() ? tab->lambda(a) : lambda(Int(n));
    }
};

Int abs_bound(const ArithPoly& f, long X) {
    Int s = 0;
    const auto& c = f.h == 1 ? f.coef : f.form.coef;
    for (auto& x : c) s += abs_int(x);
    Int Xp;
    mpz_ui_pow_ui(Xp.get_mpz_t(), static_cast<unsigned long>(std::max(1L, X)), static_cast<unsigned long>(f.degree()));
    return s * Xp;
}

// values fit in a machine word over the whole box
bool word_sized(const Int& bound) { return bound < (Int(1) << 62); }

long strip_word(long x, const std::vector<long>& ps) {
    for (long p : ps)
        while (x != 0 && x % p == 0) x /= p;
    return x;
}

long table_size(const Int& bound) { return fits_i64(bound) ? std::min(to_i64(bound), kTableCap) : kTableCap; }

// first member of {x = r mod N} at or above lo
long first_at_least(long lo, long r, long N) { return lo + mod_long(r - lo, N); }

std::vector<Int> prime_list(const Int& N) { return N > 1 ? prime_divisors(N) : std::vector<Int>{}; }

Int strip_all(Int x, const std::vector<Int>& ps) {
    for (auto& p : ps)
        if (x != 0) x = strip_prime(x, p);
    return x;
}

// pieces shared by t_f calls for one polynomial
struct TfContext {
    const ArithPoly& f;
    int d;
    std::vector<Int> shifted;  // h = 2: coefficients of F(t, 1 + k t) ... as a polynomial in t
    Int lead, disc;
    explicit TfContext(const ArithPoly& g) : f(g), d(g.degree()) {
        std::vector<Int> P;
        if (f.h == 1) {
            P = f.coef;
        } else {
            // F(U, V + kU) has U^d coefficient F(1, k); choose k with F(1, k) != 0
            long k = 0;
            while (f.form(1, k) == 0) ++k;
            BinaryForm G = f.form.substitute(1, 0, k, 1);
            P = G.coef;  // G(t, 1) coefficients, t^i
        }
        lead = P.back();
        if (d >= 2) {
            std::vector<Rat> r(P.begin(), P.end());
            disc = discriminant(RatPoly(r)).get_num();
        } else {
            disc = 1;
        }
        shifted = P;
    }
    bool formula_applies(long p, unsigned nu) const {
        if (nu) return false;
        Int bad = lead * disc;
        return !mpz_divisible_ui_p(bad.get_mpz_t(), static_cast<unsigned long>(p));
    }
    long formula(long p) const {
        if (f.h == 1) return d == 1 ? 1 : static_cast<long>(modp::count_roots(shifted, static_cast<modp::u64>(p)));
        if (d == 1) return p * p;
        long r = static_cast<long>(modp::count_roots(shifted, static_cast<modp::u64>(p)));
        return p * p + (p * p - p) * r;
    }
    long brute(long p, unsigned nu, const TfBudget& budget) const {
        long m = ipow_long(p, 2 + nu);
        long cells = f.h == 1 ? m : m * m;
        if (m > 3037000499L / (f.h == 1 ? 1 : m) || cells > budget.max_residues)
            throw BudgetExceeded("t_f: " + std::to_string(p) + "^" + std::to_string(f.h * (2 + nu)) +
                                 " residues exceed the budget");
        long count = 0;
        if (f.h == 1) {
            auto c = reduce(f.coef, m);
            for (long x = 0; x < m; ++x)
                if (horner_mod(c, x, m) == 0) ++count;
            return count;
        }
        auto c = reduce(f.form.coef, m);
        for (long x = 0; x < m; ++x) {
            auto cy = fix_first(c, x, m);
            for (long y = 0; y < m; ++y)
                if (horner_mod(cy, y, m) == 0) ++count;
        }
        return count;
    }
    long count(long p, unsigned nu, const TfBudget& budget) const {
        return formula_applies(p, nu) ? formula(p) : brute(p, nu, budget);
    }
};

template <class F>
long sum_over(long lo, long hi, long step, const ExecConfig& cfg, F&& body) {
    if (hi < lo) return 0;
    std::size_t n = static_cast<std::size_t>((hi - lo) / step + 1);
    auto parts = map_ordered(n, cfg, [&](std::size_t i) { return body(lo + static_cast<long>(i) * step); });
    return std::accumulate(parts.begin(), parts.end(), 0L);
}

void require_box(long X) {
    if (X < 0) throw DomainError("X must be nonnegative");
}

}  // namespace

ArithPoly ArithPoly::univariate(std::vector<Int> c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) throw DomainError("zero polynomial");
    ArithPoly f;
    f.h = 1;
    f.coef = std::move(c);
    return f;
}

ArithPoly ArithPoly::univariate(const std::vector<long>& c) { return univariate(std::vector<Int>(c.begin(), c.end())); }

ArithPoly ArithPoly::binary(BinaryForm g) {
    if (g.is_zero()) throw DomainError("zero form");
    ArithPoly f;
    f.h = 2;
    f.form = std::move(g);
    return f;
}

int ArithPoly::degree() const { return h == 1 ? static_cast<int>(coef.size()) - 1 : form.degree; }

Int ArithPoly::content() const {
    if (h == 2) return form.content();
    Int g = 0;
    for (auto& x : coef) g = gcd_int(g, x);
    return g;
}

Int ArithPoly::operator()(const Int& x, const Int& y) const {
    if (h == 2) return form(x, y);
    Int acc = 0;
    for (std::size_t i = coef.size(); i-- > 0;) acc = acc * x + coef[i];
    return acc;
}

__int128 ArithPoly::eval128(long x, long y) const {
    const auto& c = h == 1 ? coef : form.coef;
    __int128 acc = to_i64(c.back());
    if (h == 1) {
        for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x + to_i64(c[i]);
        return acc;
    }
    // sum c_i x^i y^(d-i), Horner in x with a running power of y
    __int128 yp = 1;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        yp *= y;
        acc = acc * x + static_cast<__int128>(to_i64(c[i])) * yp;
    }
    return acc;
}

std::string ArithPoly::to_string() const {
    if (h == 2) return form.to_string();
    std::vector<Rat> r(coef.begin(), coef.end());
    return RatPoly(r).to_string();
}

void Progression::validate() const {
    if (h != 1 && h != 2) throw DomainError("progression dimension must be 1 or 2");
    if (N < 1) throw DomainError("progression modulus must be positive");
    if (h == 2 && N > 1 && (gcd_int(a, N) != 1 || gcd_int(b, N) != 1))
        throw DomainError("progression base must be coprime to N");
}

bool Progression::contains(const Int& x, const Int& y) const {
    if (mod_floor(x - a, N) != 0) return false;
    return h == 1 || mod_floor(y - b, N) == 0;
}

ValueGcd d_f(const ArithPoly& f, const std::optional<Progression>& A) {
    if (f.content() != 1) throw DomainError("polynomial is not primitive (content " + f.content().get_str() + ")");
    if (A && A->h != f.h) throw DomainError("progression dimension does not match");
    Progression P = A ? *A : Progression::all(f.h);
    long reach = f.degree() + 1;
    Int g = 0;
    for (long i = 0; i <= reach; ++i) {
        Int x = P.a + P.N * i;
        if (f.h == 1) {
            g = gcd_int(g, f(x));
            continue;
        }
        for (long j = 0; j <= reach; ++j) g = gcd_int(g, f(x, P.b + P.N * j));
    }
    ValueGcd out;
    out.delta = g;
    out.d = 1;
    if (g > 1)
        for (auto& [p, e] : factorize(g).factors)
            if (e > 1) {
                out.nu[p] = e - 1;
                Int pe;
                mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
                out.d *= pe;
            }
    return out;
}

long t_f(const ArithPoly& f, long p, unsigned nu, const TfBudget& budget) {
    if (p < 2 || !is_probable_prime(Int(p))) throw DomainError("t_f needs a prime");
    return TfContext(f).count(p, nu, budget);
}

EulerConstant euler_constant(const ArithPoly& f, long prime_bound, const std::optional<Progression>& A,
                             const TfBudget& budget) {
    if (prime_bound < 2) throw DomainError("prime bound must be at least 2");
    if (A) A->validate();
    auto vg = d_f(f);
    TfContext ctx(f);
    Int N = A ? A->N : Int(1);
    long double prod = 1;
    for (auto p : primes_up_to(static_cast<std::uint32_t>(prime_bound))) {
        if (mpz_divisible_ui_p(N.get_mpz_t(), p)) continue;
        unsigned nu = 0;
        if (auto it = vg.nu.find(Int(p)); it != vg.nu.end()) nu = it->second;
        long t = ctx.count(p, nu, budget);
        prod *= 1.0L - static_cast<long double>(t) / std::pow(static_cast<long double>(p), f.h * (2 + nu));
    }
    prod /= std::pow(static_cast<long double>(N.get_d()), f.h);
    EulerConstant c;
    c.prime_bound = prime_bound;
    c.value = static_cast<double>(prod);
    c.high = c.value;
    c.low = c.value * std::max(0.0, 1.0 - static_cast<double>(f.degree() + 1) / prime_bound);
    return c;
}

ArithTables::ArithTables(long limit) : limit_(std::max(1L, limit)), mu_(limit_ + 1, 1), lam_(limit_ + 1, 1) {
    std::vector<bool> comp(limit_ + 1, false);
    mu_[0] = 0;
    for (long p = 2; p <= limit_; ++p) {
        if (comp[p]) continue;
        for (long m = 2 * p; m <= limit_; m += p) comp[m] = true;
        for (long m = p; m <= limit_; m += p) mu_[m] = static_cast<signed char>(-mu_[m]);
        if (p <= limit_ / p)
            for (long m = p * p; m <= limit_; m += p * p) mu_[m] = 0;
        for (long q = p; q <= limit_; q = q > limit_ / p ? limit_ + 1 : q * p)
            for (long m = q; m <= limit_; m += q) lam_[m] = static_cast<signed char>(-lam_[m]);
    }
}

CountReport count_sqf(const ArithPoly& f, const Progression& A, long X, long prime_bound, const ExecConfig& cfg) {
    A.validate();
    require_box(X);
    if (A.h != f.h) throw DomainError("progression dimension does not match");
    auto vg = d_f(f, A);
    bool fast = word_sized(abs_bound(f, X));
    long dw = fast ? to_i64(vg.d) : 1;
    ArithTables tab(table_size(abs_bound(f, X) / vg.d + 1));
    ValueOracle vo{&tab};
    long N = to_i64(A.N), a = to_i64(mod_floor(A.a, A.N)), b = to_i64(mod_floor(A.b, A.N));
    CountReport rep;
    rep.X = X;
    rep.prime_bound = prime_bound;
    if (f.h == 1) {
        rep.convention = "1 <= t <= X, predicted C_{f,A} X";
        long lo = first_at_least(1, a, N);
        rep.count = sum_over(lo, X, N, cfg, [&](long t) {
            if (fast) return vo.squarefree(static_cast<long>(f.eval128(t) / dw)) ? 1L : 0L;
            return vo.squarefree(f(t) / vg.d) ? 1L : 0L;
        });
    } else {
        rep.convention = "|u|,|v| <= X, predicted C_{f,A} (2X)^2";
        long u0 = first_at_least(-X, a, N), v0 = first_at_least(-X, b, N);
        rep.count = sum_over(u0, X, N, cfg, [&](long u) {
            long c = 0;
            for (long v = v0; v <= X; v += N)
                if (fast ? vo.squarefree(static_cast<long>(f.eval128(u, v) / dw)) : vo.squarefree(f(u, v) / vg.d))
                    ++c;
            return c;
        });
    }
    auto C = euler_constant(f, prime_bound, A);
    double scale = f.h == 1 ? static_cast<double>(X) : std::pow(2.0 * X, 2);
    rep.predicted = C.value * scale;
    rep.predicted_low = C.low * scale;
    rep.predicted_high = C.high * scale;
    rep.ratio = rep.predicted != 0 ? rep.count / rep.predicted : 0;
    return rep;
}

long chowla_sum(const ArithPoly& f, const Progression& A, long X, const std::vector<HalfPlane>& sectors,
                const ExecConfig& cfg) {
    A.validate();
    require_box(X);
    if (A.h != f.h) throw DomainError("progression dimension does not match");
    if (f.h == 1 && !sectors.empty()) throw DomainError("sectors need two variables");
    ArithTables tab(table_size(abs_bound(f, X) + 1));
    ValueOracle vo{&tab};
    bool fast = word_sized(abs_bound(f, X));
    auto lam = [&](long u, long v) -> long {
        if (fast) {
            long x = static_cast<long>(f.eval128(u, v));
            return x == 0 ? 0 : vo.lambda(x);
        }
        Int x = f(u, v);
        return x == 0 ? 0 : vo.lambda(x);
    };
    long N = to_i64(A.N), a = to_i64(mod_floor(A.a, A.N)), b = to_i64(mod_floor(A.b, A.N));
    if (f.h == 1) return sum_over(first_at_least(1, a, N), X, N, cfg, [&](long t) { return lam(t, 0); });
    long u0 = first_at_least(-X, a, N), v0 = first_at_least(-X, b, N);
    return sum_over(u0, X, N, cfg, [&](long u) {
        long s = 0;
        for (long v = v0; v <= X; v += N) {
            bool inside = std::all_of(sectors.begin(), sectors.end(),
                                      [&](const HalfPlane& H) { return H.alpha * u + H.beta * v > 0; });
            if (!inside) continue;
            s += lam(u, v);
        }
        return s;
    });
}

CountReport count_T(const BinaryForm& f, const BinaryForm& g, const Progression& A, int eps, long X, long prime_bound,
                    const ExecConfig& cfg) {
    A.validate();
    require_box(X);
    if (A.h != 2) throw DomainError("count_T needs a two-variable progression");
    if (eps != 0 && eps != 1 && eps != -1) throw DomainError("eps must be +1, -1 or 0");
    if (f.content() != 1 || g.content() != 1) throw DomainError("f and g must be primitive");
    if (form_resultant(f, g) == 0) throw DomainError("f and g must be coprime (they share a factor)");
    ArithPoly F = ArithPoly::binary(f), G = ArithPoly::binary(g), FG = ArithPoly::binary(f * g);
    auto vg = d_f(FG, A);
    Int bound = std::max(abs_bound(F, X), abs_bound(G, X));
    if (vg.d != 1) bound = abs_bound(FG, X);
    ArithTables tab(table_size(bound + 1));
    ValueOracle vo{&tab};
    auto ps = prime_list(A.N);
    std::vector<long> pw;
    for (auto& p : ps) pw.push_back(to_i64(p));
    // the word path covers the common d = 1 case
    bool fast = vg.d == 1 && word_sized(std::max(abs_bound(F, X), abs_bound(G, X)));
    long N = to_i64(A.N), a = to_i64(mod_floor(A.a, A.N)), b = to_i64(mod_floor(A.b, A.N));
    long u0 = first_at_least(-X, a, N), v0 = first_at_least(-X, b, N);
    CountReport rep;
    rep.X = X;
    rep.prime_bound = prime_bound;
    rep.convention = "|u|,|v| <= X, squarefree away from N, predicted C_{fg,A}/2 (2X)^2";
    rep.count = sum_over(u0, X, N, cfg, [&](long u) {
        long c = 0;
        for (long v = v0; v <= X; v += N) {
            if (fast) {
                long fv = static_cast<long>(F.eval128(u, v)), gv = static_cast<long>(G.eval128(u, v));
                if (fv == 0 || gv == 0) continue;
                long x = strip_word(fv, pw), y = strip_word(gv, pw);
                if (vo.squarefree(x) && vo.squarefree(y) && std::gcd(x, y) == 1 && (eps == 0 || vo.lambda(fv) == eps))
                    ++c;
                continue;
            }
            Int fv = f(u, v), gv = g(u, v);
            if (fv == 0 || gv == 0) continue;
            bool ok;
            if (vg.d == 1) {
                Int x = strip_all(fv, ps), y = strip_all(gv, ps);
                ok = vo.squarefree(x) && vo.squarefree(y) && gcd_int(x, y) == 1;
            } else {
                ok = vo.squarefree(strip_all(Int(fv * gv / vg.d), ps));
            }
            if (ok && (eps == 0 || vo.lambda(fv) == eps)) ++c;
        }
        return c;
    });
    auto C = euler_constant(FG, prime_bound, A);
    double scale = std::pow(2.0 * X, 2) * (eps == 0 ? 1.0 : 0.5);
    rep.predicted = C.value * scale;
    rep.predicted_low = C.low * scale;
    rep.predicted_high = C.high * scale;
    rep.ratio = rep.predicted != 0 ? rep.count / rep.predicted : 0;
    return rep;
}

SquareDivisorReport square_divisor_counts(const ArithPoly& f, const std::vector<long>& primes, long X,
                                          const ExecConfig& cfg) {
    require_box(X);
    if (f.content() != 1) throw DomainError("polynomial is not primitive");
    SquareDivisorReport rep;
    rep.X = X;
    for (long p : primes) {
        if (p < 2 || !is_probable_prime(Int(p))) throw DomainError("square_divisor_counts needs primes");
        long m = p * p;
        if (f.h == 2 && m > 100000) throw BudgetExceeded("p^4 residues too many for prime " + std::to_string(p));
        // members of [-X, X] in each residue class mod m
        auto members = [&](long r) {
            long first = first_at_least(-X, r, m);
            return first > X ? 0L : (X - first) / m + 1;
        };
        SquareDivisorRow row;
        row.p = p;
        if (f.h == 1) {
            auto c = reduce(f.coef, m);
            for (long r = 0; r < m; ++r)
                if (horner_mod(c, r, m) == 0) row.count += members(r);
        } else {
            auto c = reduce(f.form.coef, m);
            row.count = sum_over(0, m - 1, 1, cfg, [&](long r) {
                long nr = members(r), s = 0;
                if (nr == 0) return 0L;
                auto cy = fix_first(c, r, m);
                for (long q = 0; q < m; ++q)
                    if (horner_mod(cy, q, m) == 0) s += members(q);
                return s * nr;
            });
        }
        double twoX = 2.0 * X;
        row.K = row.count / (std::pow(twoX, f.h) / static_cast<double>(m) + std::pow(twoX, f.h - 1));
        rep.rows.push_back(row);
    }
    if (!rep.rows.empty()) {
        auto [lo, hi] = std::minmax_element(rep.rows.begin(), rep.rows.end(),
                                            [](const SquareDivisorRow& x, const SquareDivisorRow& y) { return x.K < y.K; });
        rep.K_min = lo->K;
        rep.K_max = hi->K;
    }
    return rep;
}

}  // namespace ellroot
