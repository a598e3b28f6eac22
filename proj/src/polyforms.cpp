#include "ellroot/polyforms.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace ellroot {

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) {
    for (auto& x : c) x.canonicalize();
    normalize();
}

RatPoly RatPoly::from_ints(const std::vector<long>& coeffs) {
    std::vector<Rat> v;
    v.reserve(coeffs.size());
    for (long x : coeffs) v.emplace_back(x);
    return RatPoly(std::move(v));
}

RatPoly RatPoly::monomial(const Rat& a, int deg) {
    if (a == 0) return RatPoly();
    std::vector<Rat> v(deg + 1, Rat(0));
    v[deg] = a;
    return RatPoly(std::move(v));
}

void RatPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

const Rat& RatPoly::lead() const {
    if (c.empty()) throw DomainError("leading coefficient of zero polynomial");
    return c.back();
}

Rat RatPoly::operator()(const Rat& x) const {
    Rat r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

bool RatPoly::integral() const {
    for (auto& x : c)
        if (x.get_den() != 1) return false;
    return true;
}

RatPoly RatPoly::derivative() const {
    if (c.size() <= 1) return RatPoly();
    std::vector<Rat> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * Rat(static_cast<long>(i));
    return RatPoly(std::move(d));
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    Rat l = lead();
    std::vector<Rat> d(c);
    for (auto& x : d) x /= l;
    return RatPoly(std::move(d));
}

RatPoly RatPoly::shift(const Rat& a) const {
    // Horner in the ring: ((c_n)(T+a) + c_{n-1})(T+a) + ...
    RatPoly r;
    RatPoly lin(std::vector<Rat>{a, Rat(1)});
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * lin + RatPoly::constant(*it);
    return r;
}

RatPoly RatPoly::pow(unsigned e) const {
    RatPoly r = RatPoly::constant(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

RatPoly RatPoly::operator-() const {
    std::vector<Rat> d(c);
    for (auto& x : d) x = -x;
    return RatPoly(std::move(d));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> d(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) d[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) d[i] += b.c[i];
    return RatPoly(std::move(d));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> d(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) d[i + j] += a.c[i] * b.c[j];
    return RatPoly(std::move(d));
}

RatPoly operator*(const Rat& s, const RatPoly& a) {
    std::vector<Rat> d(a.c);
    for (auto& x : d) x *= s;
    return RatPoly(std::move(d));
}

std::string RatPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rat& a = c[i];
        if (a == 0) continue;
        Rat m = abs(a);
        os << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (m != 1 || i == 0) os << m.get_str();
        if (i >= 1) os << "T";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rat> r = a.c;
    int db = b.degree();
    if (a.degree() < db) return {RatPoly(), a};
    std::vector<Rat> q(a.degree() - db + 1, Rat(0));
    const Rat& lb = b.lead();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        Rat f = r[i] / lb;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c[j];
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly gcd_poly(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

RatPoly squarefree_part(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("squarefree part of zero polynomial");
    if (p.degree() == 0) return RatPoly::constant(1);
    RatPoly g = gcd_poly(p, p.derivative());
    return divmod(p, g).first.monic();
}

std::vector<std::pair<RatPoly, unsigned>> squarefree_decomposition(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("squarefree decomposition of zero polynomial");
    std::vector<std::pair<RatPoly, unsigned>> out;
    if (p.degree() == 0) return out;
    RatPoly f = p.monic();
    RatPoly a = gcd_poly(f, f.derivative());
    RatPoly b = divmod(f, a).first;
    RatPoly c = divmod(f.derivative(), a).first;
    RatPoly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        RatPoly g = gcd_poly(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

namespace {

// exact determinant over Q by elimination
Rat det_rat(std::vector<std::vector<Rat>> m) {
    std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
        }
    }
    return det;
}

// Bareiss fraction-free determinant over Z
Int det_int(std::vector<std::vector<Int>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Sylvester matrix from coefficient lists ordered high to low
template <class T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& p, const std::vector<T>& q) {
    std::size_t m = p.size() - 1, n = q.size() - 1, s = m + n;
    std::vector<std::vector<T>> M(s, std::vector<T>(s, T(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) M[i][i + j] = p[j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) M[n + i][i + j] = q[j];
    return M;
}

}  // namespace

Rat resultant(const RatPoly& p, const RatPoly& q) {
    if (p.is_zero() || q.is_zero()) throw DomainError("resultant with zero polynomial");
    if (p.degree() == 0 && q.degree() == 0) return 1;
    std::vector<Rat> ph(p.c.rbegin(), p.c.rend()), qh(q.c.rbegin(), q.c.rend());
    return det_rat(sylvester(ph, qh));
}

Rat discriminant(const RatPoly& p) {
    int n = p.degree();
    if (n < 1) throw DomainError("discriminant of constant polynomial");
    Rat r = resultant(p, p.derivative()) / p.lead();
    return ((n * (n - 1) / 2) % 2) ? Rat(-r) : r;
}

int count_real_roots(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("real roots of zero polynomial");
    RatPoly f = squarefree_part(p);
    if (f.degree() < 1) return 0;
    std::vector<RatPoly> seq{f, f.derivative()};
    while (seq.back().degree() > 0) {
        RatPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    auto changes = [&](bool at_plus) {
        int cnt = 0, last = 0;
        for (auto& s : seq) {
            int sg = sgn(s.lead());
            if (!at_plus && (s.degree() % 2)) sg = -sg;
            if (sg == 0) continue;
            if (last != 0 && sg != last) ++cnt;
            last = sg;
        }
        return cnt;
    };
    return changes(false) - changes(true);
}

// ------------------------------------------------------------ BinaryForm

BinaryForm::BinaryForm(int d, std::vector<Int> cs) : degree(d), coef(std::move(cs)) {
    if (d < 0 || static_cast<int>(coef.size()) != d + 1)
        throw DomainError("binary form coefficient count must be degree + 1");
}

Int BinaryForm::operator()(const Int& u, const Int& v) const {
    // Horner in U with V powers folded in
    Int r = 0, vp = 1;
    // r = sum coef[i] u^i v^(d-i); evaluate from the top
    for (int i = degree; i >= 0; --i) {
        r = r * u + coef[i] * vp;
        vp *= v;
    }
    return r;
}

Int evaluate(const BinaryForm& f, const Int& u, const Int& v) { return f(u, v); }

Int BinaryForm::content() const {
    Int g = 0;
    for (auto& x : coef) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

bool BinaryForm::is_zero() const {
    for (auto& x : coef)
        if (x != 0) return false;
    return true;
}

bool BinaryForm::is_primitive() const {
    if (content() != 1) return false;
    for (int i = degree; i >= 0; --i)
        if (coef[i] != 0) return coef[i] > 0;
    return false;
}

int BinaryForm::v_multiplicity() const {
    int top = degree;
    while (top >= 0 && coef[top] == 0) --top;
    if (top < 0) throw DomainError("V-multiplicity of zero form");
    return degree - top;
}

RatPoly BinaryForm::dehomogenize() const {
    std::vector<Rat> v;
    v.reserve(coef.size());
    for (auto& x : coef) v.emplace_back(x);
    return RatPoly(std::move(v));
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    std::vector<Int> d(a.degree + b.degree + 1, Int(0));
    for (int i = 0; i <= a.degree; ++i)
        for (int j = 0; j <= b.degree; ++j) d[i + j] += a.coef[i] * b.coef[j];
    return BinaryForm(a.degree + b.degree, std::move(d));
}

BinaryForm BinaryForm::pow(unsigned e) const {
    BinaryForm r, b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

BinaryForm BinaryForm::substitute(const Int& a, const Int& b, const Int& c, const Int& d) const {
    BinaryForm L1(1, {b, a}), L2(1, {d, c});
    BinaryForm acc(degree, std::vector<Int>(degree + 1, Int(0)));
    for (int i = 0; i <= degree; ++i) {
        if (coef[i] == 0) continue;
        BinaryForm t = L1.pow(i) * L2.pow(degree - i);
        for (int j = 0; j <= degree; ++j) acc.coef[j] += coef[i] * t.coef[j];
    }
    return acc;
}

std::string BinaryForm::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = degree; i >= 0; --i) {
        const Int& a = coef[i];
        if (a == 0) continue;
        Int m = abs_int(a);
        os << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        int j = degree - i;
        if (m != 1 || (i == 0 && j == 0)) os << m.get_str();
        if (i >= 1) os << "U";
        if (i >= 2) os << "^" << i;
        if (j >= 1) os << "V";
        if (j >= 2) os << "^" << j;
        first = false;
    }
    return first ? "0" : os.str();
}

Homogenized homogenize(const RatPoly& p, int d) {
    if (d < p.degree()) throw DomainError("homogenization degree below polynomial degree");
    if (d < 0) throw DomainError("negative homogenization degree");
    Int den = 1;
    for (auto& x : p.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> cs(d + 1, Int(0));
    for (int i = 0; i <= p.degree(); ++i) {
        Rat s = p.c[i] * Rat(den);
        cs[i] = s.get_num();
    }
    return {BinaryForm(d, std::move(cs)), den};
}

Int form_resultant(const BinaryForm& f, const BinaryForm& g) {
    std::vector<Int> fh(f.coef.rbegin(), f.coef.rend()), gh(g.coef.rbegin(), g.coef.rend());
    if (f.degree == 0 && g.degree == 0) return 1;
    return det_int(sylvester(fh, gh));
}

// ------------------------------------------------------------ mod p

namespace modp {

namespace {
void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((unsigned __int128)a * b % p); }
u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}
}  // namespace

u64 inv(u64 a, u64 p) {
    if (a % p == 0) throw DomainError("inverse of zero mod p");
    return powm(a % p, p - 2, p);
}

Poly reduce(const std::vector<Int>& f, u64 p) {
    Poly r(f.size());
    Int P = static_cast<unsigned long>(p);
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = mod_floor(f[i], P).get_ui();
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulm(a[i], b[j], p)) % p;
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
    trim(r);
    return r;
}

static void divmod_p(const Poly& a, const Poly& b, u64 p, Poly* q, Poly* r) {
    if (b.empty()) throw DomainError("division by zero polynomial mod p");
    Poly rr = a;
    trim(rr);
    std::size_t db = b.size() - 1;
    u64 il = inv(b.back(), p);
    Poly qq;
    if (rr.size() >= b.size()) qq.assign(rr.size() - db, 0);
    for (std::size_t i = rr.size(); i-- > db;) {
        u64 f = mulm(rr[i], il, p);
        if (!f) continue;
        qq[i - db] = f;
        for (std::size_t j = 0; j <= db; ++j) rr[i - db + j] = (rr[i - db + j] + p - mulm(f, b[j], p)) % p;
    }
    trim(rr);
    trim(qq);
    if (q) *q = std::move(qq);
    if (r) *r = std::move(rr);
}

Poly rem(const Poly& a, const Poly& b, u64 p) {
    Poly r;
    divmod_p(a, b, p, nullptr, &r);
    return r;
}

Poly quo(const Poly& a, const Poly& b, u64 p) {
    Poly q;
    divmod_p(a, b, p, &q, nullptr);
    return q;
}

Poly monic(const Poly& a, u64 p) {
    if (a.empty()) return a;
    u64 il = inv(a.back(), p);
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulm(a[i], il, p);
    return r;
}

Poly gcd(const Poly& a, const Poly& b, u64 p) {
    Poly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        Poly r = rem(x, y, p);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x, p);
}

Poly powmod(const Poly& base, const Int& e, const Poly& m, u64 p) {
    Poly r{1 % p}, b = rem(base, m, p);
    trim(r);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = rem(mul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, b, p), m, p);
    }
    return r;
}

Poly derivative(const Poly& a, u64 p) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulm(a[i], i % p, p);
    trim(r);
    return r;
}

// split a product of distinct monic irreducibles of common degree d
static void equal_degree(const Poly& f, std::size_t d, u64 p, std::mt19937_64& rng, std::vector<Poly>& out) {
    std::size_t n = f.size() - 1;
    if (n == d) {
        out.push_back(f);
        return;
    }
    Int e;
    mpz_pow_ui(e.get_mpz_t(), Int(static_cast<unsigned long>(p)).get_mpz_t(), d);
    e = (e - 1) / 2;
    std::uniform_int_distribution<u64> dist(0, p - 1);
    while (true) {
        Poly a(n);
        for (auto& x : a) x = dist(rng);
        trim(a);
        if (a.size() < 2) continue;
        Poly b = powmod(a, e, f, p);
        b = sub(b, Poly{1}, p);
        Poly g = gcd(f, b, p);
        if (g.size() > 1 && g.size() < f.size()) {
            equal_degree(g, d, p, rng, out);
            equal_degree(quo(f, g, p), d, p, rng, out);
            return;
        }
    }
}

std::vector<Poly> factor_squarefree(const Poly& f0, u64 p, std::uint64_t seed) {
    if (p == 2) throw DomainError("factor_squarefree needs odd p");
    std::mt19937_64 rng(seed);
    Poly f = monic(f0, p);
    std::vector<Poly> out;
    Poly x{0, 1};
    Poly h = x;
    Int P = static_cast<unsigned long>(p);
    for (std::size_t d = 1; f.size() - 1 >= 2 * d; ++d) {
        h = powmod(h, P, f, p);
        Poly g = gcd(f, sub(h, x, p), p);
        if (g.size() > 1) {
            equal_degree(g, d, p, rng, out);
            f = quo(f, g, p);
            h = rem(h, f, p);
        }
    }
    if (f.size() > 1) out.push_back(f);
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

std::vector<u64> roots(const std::vector<Int>& f, u64 p) {
    Poly g = reduce(f, p);
    if (g.empty()) throw DomainError("polynomial vanishes identically mod p");
    std::vector<u64> out;
    if (p < 64) {
        for (u64 x = 0; x < p; ++x) {
            u64 r = 0;
            for (std::size_t i = g.size(); i-- > 0;) r = (mulm(r, x, p) + g[i]) % p;
            if (!r) out.push_back(x);
        }
        return out;
    }
    Poly x{0, 1};
    Poly lin = gcd(g, sub(powmod(x, Int(static_cast<unsigned long>(p)), g, p), x, p), p);
    if (lin.size() <= 1) return out;
    std::mt19937_64 rng(7);
    std::vector<Poly> fs;
    equal_degree(lin, 1, p, rng, fs);
    for (auto& q : fs) out.push_back((p - q[0]) % p);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_roots(const std::vector<Int>& f, u64 p) {
    Poly g = reduce(f, p);
    if (g.empty()) throw DomainError("polynomial vanishes identically mod p");
    if (p < 64) return roots(f, p).size();
    Poly x{0, 1};
    Poly lin = gcd(g, sub(powmod(x, Int(static_cast<unsigned long>(p)), g, p), x, p), p);
    return lin.size() - 1;
}

}  // namespace modp

// -------------------------------------------------- factorization over Z

namespace {

using ZPoly = std::vector<Int>;  // low to high

void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

ZPoly zmod(const ZPoly& a, const Int& m) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_floor(a[i], m);
    ztrim(r);
    return r;
}

ZPoly zsym(const ZPoly& a, const Int& m) {
    Int half = m / 2;
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = mod_floor(a[i], m);
        if (r[i] > half) r[i] -= m;
    }
    ztrim(r);
    return r;
}

ZPoly from_modp(const modp::Poly& a) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
    return r;
}

Int zcontent(const ZPoly& a) {
    Int g = 0;
    for (auto& x : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

ZPoly zprimitive(ZPoly a) {
    Int g = zcontent(a);
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return a;
}

// exact division over Z; false if not divisible
bool zdivides(const ZPoly& f, const ZPoly& g, ZPoly* quot) {
    if (g.size() > f.size()) return false;
    ZPoly r = f;
    ZPoly q(f.size() - g.size() + 1, Int(0));
    const Int& lg = g.back();
    for (std::size_t i = r.size(); i >= g.size(); --i) {
        std::size_t top = i - 1, shift = i - g.size();
        if (r[top] == 0) continue;
        if (!mpz_divisible_p(r[top].get_mpz_t(), lg.get_mpz_t())) return false;
        Int t = r[top] / lg;
        q[shift] = t;
        for (std::size_t j = 0; j < g.size(); ++j) r[shift + j] -= t * g[j];
    }
    for (auto& x : r)
        if (x != 0) return false;
    ztrim(q);
    if (quot) *quot = std::move(q);
    return true;
}

// extended gcd mod p: s*a + t*b = 1
void ext_gcd(const modp::Poly& a, const modp::Poly& b, modp::u64 p, modp::Poly& s, modp::Poly& t) {
    using modp::Poly;
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        Poly q = modp::quo(r0, r1, p);
        Poly r2 = modp::sub(r0, modp::mul(q, r1, p), p);
        Poly s2 = modp::sub(s0, modp::mul(q, s1, p), p);
        Poly t2 = modp::sub(t0, modp::mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw Error("Hensel setup: factors not coprime mod p");
    modp::u64 il = modp::inv(r0[0], p);
    s = modp::mul(s0, modp::Poly{il}, p);
    t = modp::mul(t0, modp::Poly{il}, p);
}

// lift f = g*h (g monic mod p, lc(h) = lc(f)) to modulus p^k
void hensel_pair(const ZPoly& f, const modp::Poly& g0, const modp::Poly& h0, modp::u64 p, unsigned k, ZPoly& G,
                 ZPoly& H) {
    modp::Poly s, t;
    ext_gcd(g0, h0, p, s, t);
    G = from_modp(g0);
    H = from_modp(h0);
    H.back() = f.back();
    Int P = static_cast<unsigned long>(p), pj = P;
    for (unsigned j = 1; j < k; ++j) {
        ZPoly diff = zsub(f, zmul(G, H));
        for (auto& x : diff) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pj.get_mpz_t());
        modp::Poly e = modp::reduce(diff, p);
        if (!e.empty()) {
            modp::Poly te = modp::mul(t, e, p), q, tau;
            q = modp::quo(te, g0, p);
            tau = modp::rem(te, g0, p);
            // sigma = s*e + q*h0
            modp::Poly se = modp::mul(s, e, p), qh = modp::mul(q, h0, p);
            modp::Poly sg(std::max(se.size(), qh.size()), 0);
            for (std::size_t i = 0; i < se.size(); ++i) sg[i] = se[i];
            for (std::size_t i = 0; i < qh.size(); ++i) sg[i] = (sg[i] + qh[i]) % p;
            while (!sg.empty() && sg.back() == 0) sg.pop_back();
            ZPoly tz = from_modp(tau), sz = from_modp(sg);
            if (G.size() < tz.size()) G.resize(tz.size(), Int(0));
            for (std::size_t i = 0; i < tz.size(); ++i) G[i] += pj * tz[i];
            if (H.size() < sz.size()) H.resize(sz.size(), Int(0));
            for (std::size_t i = 0; i < sz.size(); ++i) H[i] += pj * sz[i];
        }
        pj *= P;
    }
    G = zmod(G, pj);
    H = zmod(H, pj);
}

// monic lifts mod p^k of the modular factors of f (lc(f) > 0, < p^k)
std::vector<ZPoly> multilift(const ZPoly& f, const std::vector<modp::Poly>& fs, std::size_t from, modp::u64 p,
                             unsigned k, const Int& M) {
    if (fs.size() - from == 1) {
        Int il;
        Int lc = mod_floor(f.back(), M);
        mpz_invert(il.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t());
        ZPoly g(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) g[i] = mod_floor(f[i] * il, M);
        return {g};
    }
    modp::Poly h0{modp::reduce({f.back()}, p)};
    for (std::size_t i = from + 1; i < fs.size(); ++i) h0 = modp::mul(h0, fs[i], p);
    ZPoly G, H;
    hensel_pair(f, fs[from], h0, p, k, G, H);
    // keep the exact leading coefficient for the next level
    H.back() = f.back();
    auto rest = multilift(H, fs, from + 1, p, k, M);
    rest.insert(rest.begin(), G);
    return rest;
}

Int isqrt_ceil(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n) ++r;
    return r;
}

// irreducible factors of a squarefree primitive f with positive leading coefficient
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    std::size_t n = f.size() - 1;
    if (n <= 1) return {f};
    // choose among several good primes the one with fewest modular factors
    ZPoly df(n);
    for (std::size_t i = 1; i <= n; ++i) df[i - 1] = f[i] * static_cast<unsigned long>(i);
    modp::u64 best_p = 0;
    std::vector<modp::Poly> best;
    int good = 0;
    for (auto q : small_primes()) {
        if (q < 5) continue;
        modp::u64 p = q;
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
        modp::Poly fp = modp::reduce(f, p);
        if (modp::gcd(fp, modp::reduce(df, p), p).size() != 1) continue;
        auto fs = modp::factor_squarefree(fp, p, 12345 + p);
        if (best.empty() || fs.size() < best.size()) {
            best = fs;
            best_p = p;
        }
        if (best.size() == 1) return {f};
        if (++good >= 6) break;
    }
    if (best.empty()) throw Error("no good prime found for factorization");
    modp::u64 p = best_p;
    Int norm2 = 0;
    for (auto& x : f) norm2 += x * x;
    Int bound = 2 * abs_int(f.back()) * (Int(1) << static_cast<unsigned>(n)) * (isqrt_ceil(norm2) + 1);
    Int M = 1;
    unsigned k = 0;
    while (M <= bound) {
        M *= static_cast<unsigned long>(p);
        ++k;
    }
    auto lifted = multilift(f, best, 0, p, k, M);

    std::vector<ZPoly> out;
    ZPoly cur = f;
    std::vector<ZPoly> pool = lifted;
    std::size_t s = 1;
    while (2 * s <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            ZPoly cand{cur.back()};
            for (auto i : idx) cand = zmod(zmul(cand, pool[i]), M);
            cand = zprimitive(zsym(cand, M));
            ZPoly q;
            if (cand.size() > 1 && zdivides(cur, cand, &q)) {
                out.push_back(cand);
                cur = q;
                std::vector<ZPoly> rest;
                for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < s && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    rest.push_back(pool[i]);
                }
                pool = std::move(rest);
                found = true;
                break;
            }
            // next combination
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (cur.size() > 1) out.push_back(zprimitive(cur));
    return out;
}

BinaryForm zpoly_to_form(const ZPoly& a) {
    return BinaryForm(static_cast<int>(a.size()) - 1, a);
}

}  // namespace

bool form_less(const BinaryForm& a, const BinaryForm& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.coef < b.coef;
}

FormFactorization factor_rational(const RatPoly& p, const FactorOptions& opt) {
    if (p.is_zero()) throw DomainError("factorization of zero polynomial");
    FormFactorization out;
    for (auto& [part, e] : squarefree_decomposition(p)) {
        // the cap bounds the squarefree pieces, which is where recombination cost lives
        if (part.degree() > opt.degree_cap) throw BudgetExceeded("polynomial degree above factorization cap");
        Homogenized h = homogenize(part, part.degree());
        ZPoly z = zprimitive(h.form.coef);
        for (auto& g : zassenhaus(z)) out.factors.emplace_back(zpoly_to_form(zprimitive(g)), e);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& x, const auto& y) { return form_less(x.first, y.first); });
    Rat prod_lead = 1;
    for (auto& [f, e] : out.factors) {
        Int l = f.coef.back();
        for (unsigned i = 0; i < e; ++i) prod_lead *= Rat(l);
    }
    out.constant = p.lead() / prod_lead;
    return out;
}

FormFactorization factor_form(const BinaryForm& f, const FactorOptions& opt) {
    if (f.is_zero()) throw DomainError("factorization of zero form");
    int w = f.v_multiplicity();
    FormFactorization out = factor_rational(f.dehomogenize(), opt);
    if (w > 0) {
        out.factors.emplace_back(BinaryForm::V(), w);
        std::sort(out.factors.begin(), out.factors.end(),
                  [](const auto& x, const auto& y) { return form_less(x.first, y.first); });
    }
    return out;
}

}  // namespace ellroot
