#include "ellroot/constancy.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ellroot {

namespace {

bool contains(const std::vector<BinaryForm>& v, const BinaryForm& f) {
    return std::find(v.begin(), v.end(), f) != v.end();
}

bool is_definite(const BinaryForm& f) {
    if (f.degree % 2 || f.v_multiplicity() > 0) return false;
    return count_real_roots(f.dehomogenize()) == 0;
}

// exact quotient of forms, coefficient vectors read as polynomials in U/V
BinaryForm form_quotient(const BinaryForm& f, const BinaryForm& g) {
    std::vector<Rat> fc(f.coef.begin(), f.coef.end()), gc(g.coef.begin(), g.coef.end());
    auto [q, r] = divmod(RatPoly(fc), RatPoly(gc));
    int d = f.degree - g.degree;
    if (!r.is_zero() || d < 0 || q.degree() > d) throw DomainError("form does not divide");
    std::vector<Int> out(d + 1, Int(0));
    for (int i = 0; i <= q.degree(); ++i) {
        if (q.c[i].get_den() != 1) throw DomainError("form quotient is not integral");
        out[i] = q.c[i].get_num();
    }
    return BinaryForm(d, out);
}

// value of an integral polynomial at n modulo m (m < 2^62)
long poly_mod(const RatPoly& f, long n, long m) {
    __int128 acc = 0;
    for (int i = f.degree(); i >= 0; --i) {
        long c = to_i64(mod_floor(f.c[i].get_num(), m));
        acc = (acc * n + c) % m;
    }
    return static_cast<long>(acc);
}

void require_integral(const RatPoly& f, const char* what) {
    if (!f.integral()) throw DomainError(std::string(what) + " must have integer coefficients");
}

Sign product(const std::vector<Sign>& v) {
    Sign s = 1;
    for (auto x : v) s *= x;
    return s;
}

std::string pair_str(const Int& u, const Int& v) { return "(" + u.get_str() + "," + v.get_str() + ")"; }

}  // namespace

std::vector<int> SignRegionForm::key(const Int& u, const Int& v) const {
    std::vector<int> k;
    for (auto& f : factors) k.push_back(sgn(f(u, v)));
    return k;
}

bool SignRegionForm::all_positive(const Int& u, const Int& v) const {
    for (auto& f : factors)
        if (f(u, v) <= 0) return false;
    return true;
}

SignRegionForm sign_region_form(const EllipticSurface& S) {
    std::vector<BinaryForm> all;
    for (auto* f : {&S.disc_form, &S.c6_form}) {
        if (f->is_zero()) continue;
        for (auto& [g, e] : factor_form(*f).factors)
            if (!contains(all, g)) all.push_back(g);
    }
    std::sort(all.begin(), all.end(), form_less);
    SignRegionForm R;
    for (auto& g : all) {
        if (is_definite(g)) {
            R.dropped.push_back(g);
        } else {
            R.factors.push_back(g);
            R.R = R.R * g;
        }
    }
    return R;
}

bool admissible(const EllipticSurface& S, const Int& N, const Int& u, const Int& v) {
    for (auto& p : prime_divisors(abs_int(N))) {
        if (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t()) && mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t()))
            return false;
        for (auto& pl : S.places)
            if (mpz_divisible_p(Int(pl.form(u, v)).get_mpz_t(), p.get_mpz_t())) return false;
    }
    return true;
}

ConstancyCertificate verify_local_constancy(const EllipticSurface& S, const Int& N, const SignRegionForm& R,
                                            long sample_count, const ConstancyOptions& opt, const ExecConfig& cfg) {
    if (N < 1) throw DomainError("modulus must be positive");
    if (!fits_i64(N) || N > (Int(1) << 40)) throw DomainError("modulus too large for sampling");
    ConstancyCertificate cert;
    cert.N = N;
    cert.R = R;
    cert.seed = opt.seed;
    long n = to_i64(N), w = opt.window;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<long> res(0, n - 1), di(-w, w), dj(0, w);

    auto member = [&](long a, long b, long& u, long& v) {
        u = a + n * di(rng);
        v = b + n * dj(rng);
        return v >= 1 && std::gcd(u, v) == 1 && S.disc_form(u, v) != 0;
    };
    long attempts = 0;
    while (static_cast<long>(cert.samples.size()) < sample_count && attempts < 1000 * (sample_count + 1)) {
        ++attempts;
        long a = res(rng), b = res(rng);
        if (!admissible(S, N, a, b)) continue;
        long u1, v1;
        if (!member(a, b, u1, v1)) continue;
        auto k1 = R.key(u1, v1);
        if (std::count(k1.begin(), k1.end(), 0)) continue;
        for (int t = 0; t < 30; ++t) {
            long u2, v2;
            if (!member(a, b, u2, v2) || (u2 == u1 && v2 == v1) || R.key(u2, v2) != k1) continue;
            cert.samples.push_back({{u1, v1}, {u2, v2}});
            break;
        }
    }
    cert.samples_tested = static_cast<long>(cert.samples.size());

    auto found = map_ordered(cert.samples.size(), cfg, [&](std::size_t i) {
        auto [p1, p2] = cert.samples[i];
        std::vector<std::string> out;
        Sign g1 = 1, g2 = 1;
        for (auto& pl : S.places) {
            g1 *= g_P(S, pl, p1.first, p1.second);
            g2 *= g_P(S, pl, p2.first, p2.second);
        }
        if (g1 != g2) out.push_back("product of g differs");
        if (opt.check_direct) {
            auto d1 = decompose(S, p1.first, p1.second), d2 = decompose(S, p2.first, p2.second);
            Sign c1 = d1.away_product_direct * d1.lambda_M * product(d1.h_values);
            Sign c2 = d2.away_product_direct * d2.lambda_M * product(d2.h_values);
            if (c1 != c2) out.push_back("corrected direct product differs");
        }
        return out;
    });
    for (std::size_t i = 0; i < found.size(); ++i)
        for (auto& what : found[i]) {
            auto [p1, p2] = cert.samples[i];
            cert.violations.push_back({p1.first, p1.second, p2.first, p2.second, what});
        }
    return cert;
}

ModulusSearch candidate_modulus(const EllipticSurface& S, int cap, long samples, std::uint64_t seed,
                                const ExecConfig& cfg) {
    std::map<Int, int> floor_alpha;
    for (auto& p : S.delta_primes) floor_alpha[p] = p == 2 ? 3 : 1;
    for (auto& [p, a] : floor_alpha)
        if (a > cap) throw DomainError("exponent cap below the mandatory 24");
    auto modulus = [](const std::map<Int, int>& al) {
        Int N = 1;
        for (auto& [p, a] : al) {
            Int pa;
            mpz_pow_ui(pa.get_mpz_t(), p.get_mpz_t(), a);
            N *= pa;
        }
        return N;
    };
    SignRegionForm R = sign_region_form(S);
    ConstancyOptions opt;
    opt.seed = seed;
    opt.check_direct = false;
    auto clean = [&](const std::map<Int, int>& al) {
        auto c = verify_local_constancy(S, modulus(al), R, samples, opt, cfg);
        if (c.untested()) throw DomainError("no admissible class found for modulus " + modulus(al).get_str());
        return c.violations.empty();
    };
    auto alpha = floor_alpha;
    while (!clean(alpha)) {
        bool grew = false;
        for (auto& [p, a] : alpha)
            if (a < cap) {
                ++a;
                grew = true;
            }
        if (!grew) throw BudgetExceeded("exponent search reached the cap without a clean sample");
    }
    for (auto& [p, a] : alpha)
        while (a > floor_alpha[p]) {
            --a;
            if (clean(alpha)) continue;
            ++a;
            break;
        }
    return {modulus(alpha), alpha};
}

std::vector<PlaceExemption> h_exemptions(const EllipticSurface& S, const std::map<std::string, RatPoly>& witnesses) {
    std::vector<PlaceExemption> out;
    for (auto& pl : S.places) {
        PlaceExemption e;
        int which = 0;
        switch (pl.type.tag) {
            case Kod::I0s:
                e.exempt = true;
                e.reason = "I0*: h is identically 1";
                break;
            case Kod::II:
            case Kod::IIs:
            case Kod::IV:
            case Kod::IVs:
                which = 3;
                break;
            case Kod::III:
            case Kod::IIIs:
                which = 4;
                break;
            default:
                e.reason = "h depends on square parts";
        }
        if (which && pl.form.degree < 2) {
            e.reason = "residue field is Q";
        } else if (which) {
            std::optional<RatPoly> w;
            if (auto it = witnesses.find(pl.label()); it != witnesses.end()) w = it->second;
            auto cert = mu_root_certificate(pl.form, which, w);
            bool inside = std::all_of(cert.exceptional_primes.begin(), cert.exceptional_primes.end(),
                                      [&](const Int& p) { return mpz_divisible_p(S.delta.get_mpz_t(), p.get_mpz_t()); });
            std::string mu = which == 3 ? "mu3" : "mu4";
            if (cert.status == MuStatus::verified && inside) {
                e.exempt = true;
                e.reason = mu + " certified";
            } else if (cert.status == MuStatus::verified) {
                e.reason = mu + " certified but exceptional primes leave delta";
            } else if (cert.status == MuStatus::refuted) {
                e.reason = mu + " refuted at " + cert.refuting_prime.get_str();
            } else {
                e.reason = mu + " not certified";
            }
        }
        out.push_back(e);
    }
    return out;
}

bool q0_conditions(const RatPoly& Pnum, const RatPoly& Q, const Int& q0, const Int& n) {
    Rat qv = Q(Rat(n)), pv = Pnum(Rat(n));
    if (qv.get_den() != 1 || pv.get_den() != 1 || qv == 0) return false;
    Int qn = qv.get_num(), pn = pv.get_num();
    if (valuation(qn, q0) != 2 || mpz_divisible_p(pn.get_mpz_t(), q0.get_mpz_t())) return false;
    return mod_floor(qn / (q0 * q0) * pn, q0) == 1;
}

namespace {
// n mod q0^3 with q0^2 || Q(n), q0 not dividing Pnum(n); residue r = q0^-2 Q(n) Pnum(n) mod q0
template <class Accept>
std::vector<long> scan_q0(const RatPoly& Pnum, const RatPoly& Q, long q, Accept accept) {
    long q2 = q * q, q3 = q2 * q;
    std::vector<long> out;
    std::vector<long> rts;
    if (q < 5) {
        for (long r = 0; r < q; ++r)
            if (poly_mod(Q, r, q) == 0) rts.push_back(r);
    } else {
        std::vector<Int> qc;
        for (auto& c : Q.c) qc.push_back(c.get_num());
        for (auto r : modp::roots(qc, static_cast<modp::u64>(q))) rts.push_back(static_cast<long>(r));
    }
    for (auto r : rts) {
        for (long k = 0; k < q2; ++k) {
            long n = r + q * k;
            long qv = poly_mod(Q, n, q3);
            if (qv % q2 != 0 || qv == 0) continue;
            long pv = poly_mod(Pnum, n, q);
            if (pv == 0) continue;
            long res = static_cast<long>((static_cast<__int128>(qv / q2) * pv) % q);
            if (accept(res)) out.push_back(n);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

Q0Choice find_q0(const RatPoly& Pnum, const RatPoly& Q, const std::vector<Int>& excluded, long prime_bound) {
    require_integral(Pnum, "Pnum");
    require_integral(Q, "Q");
    if (Q.degree() < 1) throw DomainError("Q must be nonconstant");
    if (resultant(Pnum, Q) == 0) throw DomainError("Res(Pnum, Q) vanishes");
    if (Q.degree() >= 2 && discriminant(Q) == 0) throw DomainError("Q must have nonzero discriminant");
    for (auto p : small_primes()) {
        if (p > static_cast<std::uint32_t>(prime_bound)) break;
        if (std::find(excluded.begin(), excluded.end(), Int(p)) != excluded.end()) continue;
        long q = p;
        auto ns = scan_q0(Pnum, Q, q, [](long r) { return r == 1; });
        if (!ns.empty()) return {Int(q), Int(ns.front())};
    }
    throw BudgetExceeded("no q0 below the prime bound " + std::to_string(prime_bound));
}

std::vector<Int> q0_classes(const RatPoly& Pnum, const RatPoly& Q, const Int& q0) {
    require_integral(Pnum, "Pnum");
    require_integral(Q, "Q");
    if (!fits_i64(q0) || q0 > 200000) throw DomainError("q0 too large");
    long q = to_i64(q0);
    auto ns = scan_q0(Pnum, Q, q, [q](long r) { return jacobi(r, q) == 1; });
    return {ns.begin(), ns.end()};
}

BinaryForm twist_cofactor(const EllipticSurface& S, const Place& Q) {
    if (Q.type.tag != Kod::Ins) throw DomainError("twist cofactor needs an I_m* place with m >= 1");
    BinaryForm minus_c6 = S.c6_form;
    for (auto& c : minus_c6.coef) c = -c;
    return form_quotient(minus_c6, Q.form.pow(3));
}

bool VariationWitness::all_pass() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const HypothesisCheck& h) { return h.pass; });
}

VariationContext variation_context(const EllipticSurface& S, const Int& N,
                                   const std::map<std::string, RatPoly>& witnesses) {
    VariationContext ctx;
    ctx.N = N;
    ctx.R = sign_region_form(S);
    ctx.exempt = h_exemptions(S, witnesses);
    for (std::size_t i = 0; i < S.places.size(); ++i)
        if (S.places[i].type.tag == Kod::Ins) {
            ctx.twist_place = i;
            break;
        }
    return ctx;
}

VariationWitness check_variation(const EllipticSurface& S, const VariationContext& ctx, std::pair<Int, Int> pair1,
                                 std::pair<Int, Int> pair2, VariationMode mode, std::optional<Int> q0) {
    VariationWitness w;
    w.mode = mode;
    w.q0 = q0;
    FiberCurve F1 = fiber_at(S, pair1.first, pair1.second), F2 = fiber_at(S, pair2.first, pair2.second);
    w.pair1 = {F1.u, F1.v};
    w.pair2 = {F2.u, F2.v};
    const Int &u1 = F1.u, &v1 = F1.v, &u2 = F2.u, &v2 = F2.v;
    auto add = [&](std::string name, bool pass, std::string detail = {}) {
        w.hypotheses.push_back({std::move(name), pass, std::move(detail)});
    };

    add("congruent mod N", mod_floor(u1 - u2, ctx.N) == 0 && mod_floor(v1 - v2, ctx.N) == 0,
        "N = " + ctx.N.get_str());
    add("admissible class", admissible(S, ctx.N, u1, v1), "bad-place values are units at the primes of N");
    auto k1 = ctx.R.key(u1, v1), k2 = ctx.R.key(u2, v2);
    add("same sign region", k1 == k2 && !std::count(k1.begin(), k1.end(), 0));

    Int m1 = S.M_full(u1, v1), m2 = S.M_full(u2, v2);
    add("M values squarefree", moebius(m1) != 0 && moebius(m2) != 0, "M = " + m1.get_str() + ", " + m2.get_str());

    bool twisting = mode == VariationMode::q0_twist;
    if (twisting) {
        bool ok = q0 && ctx.twist_place && is_probable_prime(*q0) &&
                  !mpz_divisible_p(S.delta.get_mpz_t(), q0->get_mpz_t());
        add("q0 prime outside delta with an I_m* place", ok);
        if (!ok) return w;
    }

    std::vector<Int> c6s{S.c6_form(u1, v1), S.c6_form(u2, v2)};
    for (std::size_t i = 0; i < S.places.size(); ++i) {
        const Place& pl = S.places[i];
        if (ctx.exempt[i].exempt) continue;
        Int x1 = pl.form(u1, v1), x2 = pl.form(u2, v2);
        auto [c1, l1] = square_decompose(x1);
        auto [c2, l2] = square_decompose(x2);
        bool is_twist = twisting && *ctx.twist_place == i;
        Int expect_c2 = is_twist ? Int(c1 * *q0) : c1;
        Int g;
        mpz_gcd(g.get_mpz_t(), c1.get_mpz_t(), l1.get_mpz_t());
        bool ok = c2 == expect_c2 && g == 1;
        Int gl1, gl2;
        mpz_gcd(gl1.get_mpz_t(), l1.get_mpz_t(), ctx.N.get_mpz_t());
        mpz_gcd(gl2.get_mpz_t(), l2.get_mpz_t(), ctx.N.get_mpz_t());
        ok = ok && gl1 == 1 && gl2 == 1;
        if (is_twist) {
            ok = ok && !mpz_divisible_p(Int(c1 * l1 * l2).get_mpz_t(), q0->get_mpz_t());
            Int t = strip_prime(c6s[1], *q0);
            add("twist residue square mod q0", valuation(c6s[1], *q0) == 6 && jacobi(-t, *q0) == 1,
                "q0 = " + q0->get_str());
        }
        std::ostringstream os;
        os << pl.label() << ": " << x1 << " = " << c1 << "^2*" << l1 << ", " << x2 << " = " << c2 << "^2*" << l2;
        add("square parts " + pl.label(), ok, os.str());
        if (pl.type.tag == Kod::In || pl.type.tag == Kod::Ins) {
            bool match = true;
            for (auto& p : prime_divisors(c1)) {
                if (mpz_divisible_p(S.delta.get_mpz_t(), p.get_mpz_t())) continue;
                if (jacobi(-strip_prime(c6s[0], p), p) != jacobi(-strip_prime(c6s[1], p), p)) match = false;
            }
            add("square-part residues " + pl.label(), match);
        }
    }

    w.predicted_relation = (m1 == 0 || m2 == 0) ? 1 : liouville(m1) * liouville(m2);
    if (twisting) w.predicted_relation = -w.predicted_relation;
    w.direct_relation = root_away_from_delta(F1, S.delta) * root_away_from_delta(F2, S.delta);
    return w;
}

VariationWitness predict_variation(const EllipticSurface& S, const VariationContext& ctx, std::pair<Int, Int> pair1,
                                   std::pair<Int, Int> pair2, VariationMode mode, std::optional<Int> q0) {
    auto w = check_variation(S, ctx, std::move(pair1), std::move(pair2), mode, q0);
    if (!w.all_pass()) {
        std::string msg = "hypotheses failed for " + pair_str(w.pair1.first, w.pair1.second) + " vs " +
                          pair_str(w.pair2.first, w.pair2.second) + ":";
        for (auto& h : w.hypotheses)
            if (!h.pass) msg += " [" + h.name + (h.detail.empty() ? "" : ": " + h.detail) + "]";
        throw HypothesisError(msg);
    }
    return w;
}

}  // namespace ellroot
