#include "ellroot/surface.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ellroot {

// ------------------------------------------------------------ Kodaira

int KodairaType::epsilon() const {
    switch (tag) {
        case Kod::II:
        case Kod::IIs:
        case Kod::I0s:
        case Kod::Ins:
            return -1;
        case Kod::III:
        case Kod::IIIs:
            return -2;
        case Kod::IV:
        case Kod::IVs:
            return -3;
        default:
            return 0;
    }
}

std::string KodairaType::name() const {
    switch (tag) {
        case Kod::I0: return "I0";
        case Kod::In: return "I" + std::to_string(m);
        case Kod::II: return "II";
        case Kod::III: return "III";
        case Kod::IV: return "IV";
        case Kod::I0s: return "I0*";
        case Kod::Ins: return "I" + std::to_string(m) + "*";
        case Kod::IVs: return "IV*";
        case Kod::IIIs: return "III*";
        case Kod::IIs: return "II*";
    }
    return "?";
}

KodairaType KodairaType::parse(const std::string& s) {
    static const std::pair<const char*, Kod> fixed[] = {{"I0", Kod::I0},    {"II", Kod::II},     {"III", Kod::III},
                                                        {"IV", Kod::IV},    {"I0*", Kod::I0s},   {"IV*", Kod::IVs},
                                                        {"III*", Kod::IIIs}, {"II*", Kod::IIs}};
    for (auto& [n, t] : fixed)
        if (s == n) return {t, 0};
    if (s.size() >= 2 && s[0] == 'I') {
        bool star = s.back() == '*';
        std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            long m = std::stol(digits);
            return star ? Istar(m) : I(m);
        }
    }
    throw ParseError("unknown Kodaira symbol: " + s);
}

KodairaType kodaira_from_valuations(long a, long b, long c) {
    if (c == 0) return KodairaType::I(0);
    if (a == 0) return KodairaType::I(c);
    if (c >= 6 && a >= 2 && b >= 3) {
        if (c == 6) return {Kod::I0s, 0};
        if (a == 2 && b == 3) return KodairaType::Istar(c - 6);
    }
    switch (c) {
        case 2: return {Kod::II, 0};
        case 3: return {Kod::III, 0};
        case 4: return {Kod::IV, 0};
        case 8: return {Kod::IVs, 0};
        case 9: return {Kod::IIIs, 0};
        case 10: return {Kod::IIs, 0};
        default: break;
    }
    throw Error("valuation triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                ") outside the Kodaira table: model not minimal");
}

// ------------------------------------------------------------ helpers

namespace {

BinaryForm scale(const BinaryForm& f, const Int& s) {
    BinaryForm r = f;
    for (auto& x : r.coef) x *= s;
    return r;
}

BinaryForm add(const BinaryForm& f, const BinaryForm& g) {
    if (f.degree != g.degree) throw DomainError("adding forms of different degree");
    BinaryForm r = f;
    for (int i = 0; i <= f.degree; ++i) r.coef[i] += g.coef[i];
    return r;
}

bool divides_exactly(const RatPoly& f, const RatPoly& p, RatPoly* q) {
    auto [qq, r] = divmod(f, p);
    if (!r.is_zero()) return false;
    if (q) *q = qq;
    return true;
}

Int rat_content_numerator(const BinaryForm& f) { return f.content(); }

void add_primes(std::set<Int>& s, const Int& n) {
    if (n == 0) return;
    for (auto& p : prime_divisors(abs_int(n))) s.insert(p);
}

}  // namespace

long place_valuation(const BinaryForm& F, const BinaryForm& P) {
    if (F.is_zero()) return kInfValuation;
    if (P.is_V()) return F.v_multiplicity();
    RatPoly f = F.dehomogenize(), p = P.dehomogenize(), q;
    long e = 0;
    while (divides_exactly(f, p, &q)) {
        f = q;
        ++e;
    }
    return e;
}

const Place* EllipticSurface::infinity_place() const {
    for (auto& p : places)
        if (p.infinity) return &p;
    return nullptr;
}

bool EllipticSurface::has_multiplicative() const {
    for (auto& p : places)
        if (p.type.multiplicative()) return true;
    return false;
}

KodairaType classify_place(const EllipticSurface& S, const BinaryForm& P) {
    long a = place_valuation(S.c4_form, P), b = place_valuation(S.c6_form, P), c = place_valuation(S.disc_form, P);
    return kodaira_from_valuations(a, b, c);
}

Int compute_delta(const EllipticSurface& S) {
    std::set<Int> primes{2, 3};
    for (auto* f : {&S.c4_form, &S.c6_form, &S.disc_form})
        if (!f->is_zero()) add_primes(primes, rat_content_numerator(*f));
    std::vector<BinaryForm> bad;
    for (auto& p : S.places) bad.push_back(p.form);
    for (std::size_t i = 0; i < bad.size(); ++i)
        for (std::size_t j = i + 1; j < bad.size(); ++j) add_primes(primes, form_resultant(bad[i], bad[j]));
    // primes where a bad place meets a further factor of c4 or c6: the symbols
    // (c6 / P) and the type at p both need these coprime
    for (auto* f : {&S.c4_form, &S.c6_form}) {
        if (f->is_zero()) continue;
        for (auto& [g, e] : factor_form(*f).factors) {
            bool is_bad = std::any_of(bad.begin(), bad.end(), [&](const BinaryForm& b) { return b == g; });
            if (is_bad) continue;
            for (auto& b : bad) add_primes(primes, form_resultant(b, g));
        }
    }
    Int d = 1;
    for (auto& p : primes) d *= p;
    return d;
}

std::pair<BinaryForm, BinaryForm> bad_forms(const EllipticSurface& S) { return {S.B_form, S.M_form}; }

EllipticSurface new_surface(const RatPoly& A0, const RatPoly& B0, const SurfaceOptions& opt) {
    if (!A0.integral() || !B0.integral()) throw DomainError("surface coefficients must be integral");
    RatPoly A = A0, B = B0;
    auto discr = [](const RatPoly& a, const RatPoly& b) {
        return Rat(-16) * (Rat(4) * a.pow(3) + Rat(27) * b.pow(2));
    };
    if (discr(A, B).is_zero()) throw DomainError("singular surface: discriminant vanishes identically");

    // remove P^4 | A, P^6 | B
    RatPoly common = A.is_zero() ? B : (B.is_zero() ? A : gcd_poly(A, B));
    if (common.degree() > 0) {
        for (auto& [f, e] : factor_rational(common, opt.factor).factors) {
            RatPoly p = f.dehomogenize(), p4 = p.pow(4), p6 = p.pow(6), qa, qb;
            while (divides_exactly(A, p4, &qa) && divides_exactly(B, p6, &qb)) {
                A = qa;
                B = qb;
            }
        }
    }

    EllipticSurface S;
    S.A = A;
    S.B = B;
    S.c4 = Rat(-1, 27) * A;
    S.c6 = Rat(-1, 54) * B;
    S.disc = discr(A, B);

    if (A.is_zero()) {
        S.isotrivial = true;
        S.j_constant = Rat(0);
    } else if (B.is_zero()) {
        S.isotrivial = true;
        S.j_constant = Rat(1728);
    } else {
        RatPoly a3 = A.pow(3), b2 = B.pow(2);
        Rat r = a3.lead() / b2.lead();
        if (a3 == r * b2) {
            S.isotrivial = true;
            S.j_constant = Rat(1728) * Rat(4) * r / (Rat(4) * r + Rat(27));
        }
    }
    if (S.isotrivial && !opt.allow_isotrivial)
        throw ScopeError("isotrivial surface: j is constant " + S.j_constant->get_str());

    int da = A.degree(), db = B.degree();
    S.k = std::max(da < 0 ? 0 : (da + 3) / 4, db < 0 ? 0 : (db + 5) / 6);
    S.a4_form = homogenize(A, 4 * S.k).form;
    S.a6_form = homogenize(B, 6 * S.k).form;
    S.c4_form = scale(S.a4_form, -48);
    S.c6_form = scale(S.a6_form, -864);
    S.disc_form = scale(add(scale(S.a4_form.pow(3), 4), scale(S.a6_form.pow(2), 27)), -16);

    S.B_form = S.M_form = S.B_full = S.M_full = BinaryForm();
    auto dfac = factor_form(S.disc_form, opt.factor);
    S.disc_constant = dfac.constant.get_num();
    for (auto& [P, e] : dfac.factors) {
        Place pl;
        pl.infinity = P.is_V();
        pl.form = P;
        pl.v_disc = e;
        pl.v_c4 = place_valuation(S.c4_form, P);
        pl.v_c6 = place_valuation(S.c6_form, P);
        pl.type = kodaira_from_valuations(pl.v_c4, pl.v_c6, pl.v_disc);
        pl.epsilon = pl.type.epsilon();
        S.places.push_back(pl);
    }
    std::stable_partition(S.places.begin(), S.places.end(), [](const Place& p) { return !p.infinity; });
    for (auto& p : S.places) {
        S.B_full = S.B_full * p.form;
        if (p.type.multiplicative()) S.M_full = S.M_full * p.form;
        if (p.infinity) continue;
        S.B_form = S.B_form * p.form;
        if (p.type.multiplicative()) S.M_form = S.M_form * p.form;
    }
    S.delta = compute_delta(S);
    S.delta_primes = prime_divisors(S.delta);
    return S;
}

EllipticSurface transform(const EllipticSurface& S, const Int& a, const Int& b, const Int& c, const Int& d) {
    Int det = a * d - b * c;
    if (det != 1 && det != -1) throw DomainError("change of variables must be unimodular");
    RatPoly A = S.a4_form.substitute(a, b, c, d).dehomogenize();
    RatPoly B = S.a6_form.substitute(a, b, c, d).dehomogenize();
    SurfaceOptions opt;
    opt.allow_isotrivial = S.isotrivial;
    return new_surface(A, B, opt);
}

// ------------------------------------------------------- example family

RatPoly example_P(const RatPoly& Q, int N, const Int& alpha, const Int& beta) {
    return Rat(3 * alpha * alpha) * Q.pow(2) + Rat(beta * beta) * RatPoly::monomial(1, 2 * N);
}

EllipticSurface build_example_surface(const RatPoly& Q, int N, const Int& alpha, const Int& beta) {
    if (N < 1) throw DomainError("exponent N must be positive");
    if (alpha == 0 || beta == 0) throw DomainError("alpha and beta must be nonzero");
    Int g;
    mpz_gcd(g.get_mpz_t(), alpha.get_mpz_t(), beta.get_mpz_t());
    if (g != 1) throw DomainError("alpha and beta must be coprime");
    if (Q.degree() < 1 || !Q.integral()) throw DomainError("Q must be a nonconstant integral polynomial");
    if (Q.coeff(0) == 0) throw DomainError("Q must not be divisible by T");
    if (gcd_poly(Q, Q.derivative()).degree() > 0) throw DomainError("Q must be squarefree");
    for (auto& [f, e] : factor_rational(Q).factors)
        if (f.degree > 6) throw DomainError("irreducible factors of Q must have degree at most 6");
    RatPoly P = example_P(Q, N, alpha, beta);
    RatPoly A = Rat(-27) * P * Q.pow(2);
    RatPoly B = Rat(-54 * beta) * P * Q.pow(3) * RatPoly::monomial(1, N);
    return new_surface(A, B);
}

RatPoly inverse_mod(const RatPoly& a, const RatPoly& m) {
    RatPoly r0 = m, r1 = divmod(a, m).second, s0, s1 = RatPoly::constant(1);
    // invariant: r_i = s_i * a mod m
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        RatPoly s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0.degree() != 0) throw DomainError("polynomial not invertible modulo the given modulus");
    return divmod(Rat(1) / r0.lead() * s0, m).second;
}

RatPoly example_mu3_witness(const BinaryForm& factor, const RatPoly& Q, int N, const Int& alpha, const Int& beta) {
    RatPoly m = factor.dehomogenize();
    RatPoly inv = inverse_mod(Rat(alpha) * Q, m);
    return divmod(Rat(beta) * RatPoly::monomial(1, N) * inv, m).second;
}

MuCertificate mu_root_certificate(const BinaryForm& P, int which, const std::optional<RatPoly>& witness) {
    if (which != 3 && which != 4) throw DomainError("root-of-unity order must be 3 or 4");
    if (P.is_zero() || P.degree < 1) throw DomainError("certificate needs a nonconstant form");
    if (factor_form(P).factors.size() != 1 || factor_form(P).factors[0].second != 1)
        throw DomainError("certificate needs an irreducible form");
    MuCertificate cert;
    Int c = which == 3 ? 3 : 1;
    RatPoly m = P.dehomogenize();
    std::optional<RatPoly> w = witness;
    if (!w && m.degree() == 2) {
        // Q[T]/P = Q(sqrt D); D = -c s^2 gives sqrt(-c) = (2aT + b)/s
        Rat a = m.c[2], b = m.c[1], cc = m.c[0];
        Rat D = b * b - 4 * a * cc;
        Rat t = D / Rat(-c);
        if (t > 0) {
            Int num = t.get_num(), den = t.get_den();
            if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
                Int sn, sd;
                mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
                mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
                Rat s(sn, sd);
                w = Rat(1) / s * RatPoly(std::vector<Rat>{b, 2 * a});
            }
        }
    }
    if (w && m.degree() >= 1) {
        RatPoly lhs = (*w) * (*w) + RatPoly::constant(Rat(c));
        auto [q, r] = divmod(lhs, m);
        if (r.is_zero()) {
            std::set<Int> ex{2, 3};
            auto dens = [&](const RatPoly& f) {
                for (auto& x : f.c) add_primes(ex, x.get_den());
            };
            dens(*w);
            dens(q);
            dens(m);
            add_primes(ex, P.coef.back() == 0 ? Int(1) : P.coef.back());
            cert.status = MuStatus::verified;
            cert.exceptional_primes.assign(ex.begin(), ex.end());
            return cert;
        }
    }
    // refutation: a split prime outside the exceptional set with p != 1 mod which
    std::set<Int> ex{2, 3};
    add_primes(ex, P.coef.back());
    if (m.degree() >= 2) add_primes(ex, discriminant(m).get_num());
    for (long v = 1; v <= 30; ++v)
        for (long u = -30; u <= 30; ++u) {
            if (std::gcd(u, v) != 1) continue;
            Int val = P(u, v);
            if (val == 0) continue;
            for (auto& p : prime_divisors(abs_int(val))) {
                if (ex.count(p)) continue;
                if (mod_floor(p, which) != 1) {
                    cert.status = MuStatus::refuted;
                    cert.refuting_prime = p;
                    cert.sample_u = u;
                    cert.sample_v = v;
                    return cert;
                }
            }
        }
    return cert;
}

}  // namespace ellroot
