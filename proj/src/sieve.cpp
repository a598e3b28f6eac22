#include "ellroot/sieve.hpp"

#include <algorithm>
#include <sstream>

namespace ellroot {

namespace {

using u128 = unsigned __int128;

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

Int ipow(const Int& p, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
    return r;
}

bool divides(const Int& d, const Int& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

BinaryForm negated(BinaryForm f) {
    for (auto& c : f.coef) c = -c;
    return f;
}

std::vector<BinaryForm> irreducible_parts(const BinaryForm& f) {
    std::vector<BinaryForm> out;
    if (f.degree == 0) return out;
    for (auto& [g, e] : factor_form(f).factors) out.push_back(g);
    return out;
}

enum class Verdict { accept, reject, undecided };

struct Prepared {
    std::vector<BinaryForm> f_parts, g_parts;
};

Prepared prepare(const SieveSpec& s, bool use_g) {
    Prepared p;
    p.f_parts = irreducible_parts(s.f);
    if (use_g) p.g_parts = irreducible_parts(s.g);
    return p;
}

// valuations prescribed at S, squarefree cofactor, pairwise coprime pieces; adds Omega
Verdict judge_form(const std::vector<BinaryForm>& parts, const std::vector<Int>& S, const std::vector<int>& t,
                   const Int& u, const Int& v, unsigned& omega) {
    std::vector<Int> vals;
    for (auto& P : parts) {
        Int x = P(u, v);
        if (x == 0) return Verdict::reject;
        vals.push_back(abs_int(x));
    }
    for (std::size_t i = 0; i < S.size(); ++i) {
        long total = 0;
        for (auto& x : vals) {
            unsigned e = valuation(x, S[i]);
            total += e;
            if (e) x = strip_prime(x, S[i]);
        }
        int want = i < t.size() ? t[i] : 0;
        if (total != want) return Verdict::reject;
        omega += static_cast<unsigned>(want);
    }
    bool undecided = false;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        auto r = squarefree_parity(vals[i]);
        if (!r.decided) {
            undecided = true;
            continue;
        }
        if (!r.squarefree) return Verdict::reject;
        omega += r.omega;
        for (std::size_t j = 0; j < i; ++j) {
            Int g;
            mpz_gcd(g.get_mpz_t(), vals[i].get_mpz_t(), vals[j].get_mpz_t());
            if (g != 1) return Verdict::reject;
        }
    }
    return undecided ? Verdict::undecided : Verdict::accept;
}

Verdict judge(const SieveSpec& s, const Prepared& prep, bool use_g, const Int& u, const Int& v) {
    for (auto& Ri : s.R)
        if (Ri(u, v) <= 0) return Verdict::reject;
    unsigned omega_f = 0, omega_g = 0;
    Verdict vf = judge_form(prep.f_parts, s.S, s.t, u, v, omega_f);
    if (vf == Verdict::reject) return vf;
    Verdict vg = Verdict::accept;
    if (use_g) {
        vg = judge_form(prep.g_parts, s.S, s.t2, u, v, omega_g);
        if (vg == Verdict::reject) return vg;
    }
    if (vf == Verdict::undecided || vg == Verdict::undecided) return Verdict::undecided;
    if (use_g && s.eps && (omega_f % 2 ? -1 : 1) != *s.eps) return Verdict::reject;
    return Verdict::accept;
}

struct Stripe {
    std::vector<long> us;
    long candidates = 0, hits = 0, undecided = 0;
};

SieveRun enumerate(const SieveSpec& spec, bool use_g, long limit, const SieveOptions& opt, const ExecConfig& cfg) {
    auto errs = spec.check(use_g);
    if (!errs.empty()) throw DomainError("inconsistent sieve spec: " + join(errs, "; "));
    if (use_g && !spec.eps) throw DomainError("the squarefree-Liouville sieve needs a prescribed sign");
    if (!fits_i64(spec.N) || spec.N > (Int(1) << 40)) throw DomainError("sieve modulus too large");
    SieveRun run;
    run.box = opt.max_box;
    run.notes = spec.notes();
    if (limit <= 0 || opt.max_box < 1) return run;
    Prepared prep = prepare(spec, use_g);
    long N = to_i64(spec.N), box = opt.max_box;
    long a0 = to_i64(mod_floor(spec.a, spec.N)), b0 = to_i64(mod_floor(spec.b, spec.N));
    std::vector<long> vs;
    for (long v = b0 == 0 ? N : b0; v <= box; v += N) vs.push_back(v);
    long u_first = -box + to_i64(mod_floor(Int(a0 + box), spec.N));
    long chunk = std::max(1L, opt.chunk);

    std::vector<std::pair<long, long>> found;
    for (std::size_t start = 0; start < vs.size(); start += chunk) {
        std::size_t len = std::min<std::size_t>(chunk, vs.size() - start);
        auto stripes = map_ordered(len, cfg, [&](std::size_t k) {
            Stripe st;
            long v = vs[start + k];
            Int V(v);
            if (spec.ratio) {
                Int g;
                mpz_gcd(g.get_mpz_t(), V.get_mpz_t(), spec.ratio->modulus.get_mpz_t());
                if (g != 1) return st;
            }
            for (long u = u_first; u <= box; u += N) {
                if (std::gcd(u, v) != 1) continue;
                Int U(u);
                if (spec.ratio && !spec.ratio->contains(U, V)) continue;
                ++st.candidates;
                Verdict r = judge(spec, prep, use_g, U, V);
                if (r == Verdict::undecided) ++st.undecided;
                if (r != Verdict::accept) continue;
                ++st.hits;
                st.us.push_back(u);
            }
            return st;
        });
        for (std::size_t k = 0; k < stripes.size(); ++k) {
            auto& st = stripes[k];
            run.candidates += st.candidates;
            run.hits += st.hits;
            run.undecided += st.undecided;
            for (long u : st.us) found.emplace_back(u, vs[start + k]);
        }
        run.v_scanned += static_cast<long>(len);
        if (static_cast<long>(found.size()) >= limit) break;
    }
    if (static_cast<long>(found.size()) > limit) found.resize(limit);
    run.pairs = std::move(found);
    if (run.undecided) run.notes.push_back(std::to_string(run.undecided) + " values too large to classify were skipped");
    return run;
}

}  // namespace

SqfParity squarefree_parity(const Int& n) {
    SqfParity out;
    if (n == 0) return out;
    Int m = abs_int(n);
    const auto& ps = small_primes();
    std::size_t i = 0;
    // wide cofactor: keep dividing until it fits a machine word
    while (!mpz_fits_ulong_p(m.get_mpz_t())) {
        if (i >= ps.size()) {
            Int p3 = ipow(Int(ps.back()), 3);
            if (p3 <= m) {
                out.decided = false;
                return out;
            }
            break;
        }
        unsigned long p = ps[i++];
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return out;
        ++out.omega;
    }
    if (!mpz_fits_ulong_p(m.get_mpz_t())) {
        // every prime below the table end is gone and the cube bound passed
        if (mpz_probab_prime_p(m.get_mpz_t(), 30)) {
            out.squarefree = true;
            ++out.omega;
        } else if (!mpz_perfect_square_p(m.get_mpz_t())) {
            out.squarefree = true;
            out.omega += 2;
        }
        return out;
    }
    unsigned long r = mpz_get_ui(m.get_mpz_t());
    for (; i < ps.size(); ++i) {
        unsigned long p = ps[i];
        if (static_cast<u128>(p) * p * p > r) break;
        if (r % p) continue;
        r /= p;
        if (r % p == 0) return out;
        ++out.omega;
    }
    out.squarefree = true;
    if (r == 1) return out;
    Int rr(r);
    if (mpz_probab_prime_p(rr.get_mpz_t(), 30)) {
        ++out.omega;
    } else if (mpz_perfect_square_p(rr.get_mpz_t())) {
        out.squarefree = false;
    } else {
        out.omega += 2;
    }
    return out;
}

bool RatioClass::contains(const Int& u, const Int& v) const {
    for (auto& n : residues)
        if (mod_floor(u - n * v, modulus) == 0) return true;
    return false;
}

std::vector<std::string> SieveSpec::check(bool use_g) const {
    std::vector<std::string> errs;
    if (f.degree < 1) errs.push_back("f must be nonconstant");
    if (N < 1) errs.push_back("N must be positive");
    auto shape = [&](const BinaryForm& F, const char* name) {
        if (F.content() != 1) errs.push_back(std::string(name) + " is not primitive");
        if (F.degree < 1) return;
        for (auto& [h, e] : factor_form(F).factors)
            if (e > 1) errs.push_back(std::string(name) + " has the square factor " + h.to_string());
    };
    shape(f, "f");
    if (use_g && g.degree > 0) {
        shape(g, "g");
        auto fp = irreducible_parts(f);
        for (auto& h : irreducible_parts(g))
            if (std::find(fp.begin(), fp.end(), h) != fp.end())
                errs.push_back("f and g share the factor " + h.to_string());
    }
    if (t.size() != S.size() || (use_g && !t2.empty() && t2.size() != S.size()))
        errs.push_back("valuation lists must match the primes");
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (!is_probable_prime(S[i])) errs.push_back(S[i].get_str() + " is not prime");
        for (std::size_t j = 0; j < i; ++j)
            if (S[i] == S[j]) errs.push_back("repeated prime " + S[i].get_str());
    }
    if (!errs.empty() || N < 1) return errs;

    auto tv = [&](std::size_t i) { return i < t.size() ? t[i] : 0; };
    auto tv2 = [&](std::size_t i) { return use_g && i < t2.size() ? t2[i] : 0; };
    Int fab = f(a, b), gab = use_g ? g(a, b) : Int(1);
    for (std::size_t i = 0; i < S.size(); ++i) {
        const Int& p = S[i];
        unsigned need = static_cast<unsigned>(tv(i) + tv2(i) + 1);
        bool in_ratio = ratio && divides(ipow(p, need), ratio->modulus);
        if (in_ratio) {
            for (auto& n : ratio->residues) {
                Int fn = f(n, 1), gn = use_g ? g(n, 1) : Int(1);
                if (fn == 0 || gn == 0 || valuation(fn, p) != static_cast<unsigned>(tv(i)) ||
                    valuation(gn, p) != static_cast<unsigned>(tv2(i)))
                    errs.push_back("ratio residue " + n.get_str() + " has the wrong valuation at " + p.get_str());
            }
            continue;
        }
        if (!divides(ipow(p, need), N)) {
            if (tv(i) == 0 && tv2(i) == 0) continue;  // coprimality imposed by the filter alone
            errs.push_back(p.get_str() + "^" + std::to_string(need) + " does not divide N");
            continue;
        }
        if (fab == 0 || gab == 0 || valuation(fab, p) != static_cast<unsigned>(tv(i)) ||
            valuation(gab, p) != static_cast<unsigned>(tv2(i)))
            errs.push_back("the seed has the wrong valuation at " + p.get_str());
    }
    int D = f.degree + (use_g ? g.degree : 0);
    for (auto p : primes_up_to(D > 1 ? static_cast<std::uint32_t>(D - 1) : 0))
        if (!divides(ipow(Int(p), 2), N)) errs.push_back(std::to_string(p) + "^2 does not divide N");
    for (auto& p : prime_divisors(N)) {
        if (std::find(S.begin(), S.end(), p) != S.end()) continue;
        if (divides(p * p, fab * gab)) errs.push_back("f g at the seed is divisible by " + p.get_str() + "^2");
    }
    if (ratio) {
        Int g0;
        mpz_gcd(g0.get_mpz_t(), ratio->modulus.get_mpz_t(), N.get_mpz_t());
        if (g0 != 1) errs.push_back("ratio modulus must be coprime to N");
        if (ratio->residues.empty()) errs.push_back("ratio class is empty");
    }
    return errs;
}

std::vector<std::string> SieveSpec::notes() const {
    std::vector<std::string> out;
    for (auto* F : {&f, &g})
        for (auto& h : irreducible_parts(*F))
            if (h.degree > 6)
                out.push_back("factor " + h.to_string() + " has degree above 6: the filter is exact but unbounded");
    for (std::size_t i = 0; i < S.size(); ++i) {
        bool in_ratio = ratio && divides(S[i], ratio->modulus);
        if (!divides(S[i], N) && !in_ratio) out.push_back("coprimality to " + S[i].get_str() + " imposed by the filter only");
    }
    return out;
}

SieveRun vasieve_enumerate(const SieveSpec& spec, long limit, const SieveOptions& opt, const ExecConfig& cfg) {
    return enumerate(spec, false, limit, opt, cfg);
}

SieveRun sfl_enumerate(const SieveSpec& spec, long limit, const SieveOptions& opt, const ExecConfig& cfg) {
    return enumerate(spec, true, limit, opt, cfg);
}

bool sieve_accepts(const SieveSpec& spec, bool use_g, const Int& u, const Int& v) {
    if (mod_floor(u - spec.a, spec.N) != 0 || mod_floor(v - spec.b, spec.N) != 0) return false;
    Int g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    if (g != 1 || v < 1) return false;
    if (spec.ratio && !spec.ratio->contains(u, v)) return false;
    return judge(spec, prepare(spec, use_g), use_g, u, v) == Verdict::accept;
}

SeedClass seed_class(const EllipticSurface& S, const Int& N, const SignRegionForm& R,
                     const std::optional<std::pair<Int, Int>>& extra) {
    if (N < 1) throw DomainError("modulus must be positive");
    SeedClass sc;
    sc.N = N;
    std::vector<std::pair<Int, Int>> ca, cb;
    for (auto& p : prime_divisors(N)) {
        if (!fits_i64(p) || p > 100000) throw DomainError("prime " + p.get_str() + " too large for a residue scan");
        long q = to_i64(p);
        bool done = false;
        for (long yi = 1; yi <= q && !done; ++yi) {
            long y = yi % q;  // units first, then 0
            for (long x = 0; x < q && !done; ++x) {
                if (x == 0 && y == 0) continue;
                bool ok = std::all_of(S.places.begin(), S.places.end(),
                                      [&](const Place& pl) { return !divides(p, pl.form(x, y)); });
                if (!ok) continue;
                sc.per_prime[p] = {x, y};
                done = true;
            }
        }
        if (!done) throw DomainError("no admissible class modulo " + p.get_str() + ": every residue hits a bad place");
        Int pa = ipow(p, valuation(N, p));
        ca.push_back({Int(sc.per_prime[p].first), pa});
        cb.push_back({Int(sc.per_prime[p].second), pa});
    }
    if (extra) {
        const auto& [q0, n] = *extra;
        if (divides(q0, N)) throw DomainError("q0 must not divide N");
        Int q3 = ipow(q0, 3);
        ca.push_back({mod_floor(n, q3), q3});
        cb.push_back({Int(1), q3});
    }
    auto [A, M] = crt(ca);
    Int B = crt(cb).first;
    sc.N = M;

    // representative in a sign region, preferring the one where every factor is positive
    std::optional<std::pair<Int, Int>> positive, any;
    std::vector<int> any_key;
    const long reach = 60;
    for (long j = 0; j <= reach && !positive; ++j) {
        Int v = B + M * j;
        if (v < 1) continue;
        for (long i = -reach; i <= reach; ++i) {
            Int u = A + M * i, g;
            mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
            if (g != 1) continue;
            auto k = R.key(u, v);
            if (std::count(k.begin(), k.end(), 0)) continue;
            if (std::all_of(k.begin(), k.end(), [](int s) { return s > 0; })) {
                positive = {u, v};
                break;
            }
            if (!any) {
                any = {u, v};
                any_key = k;
            }
        }
    }
    if (positive) {
        std::tie(sc.a, sc.b) = *positive;
        sc.R = R.factors;
    } else if (any) {
        std::tie(sc.a, sc.b) = *any;
        for (std::size_t i = 0; i < R.factors.size(); ++i)
            sc.R.push_back(any_key[i] > 0 ? R.factors[i] : negated(R.factors[i]));
    } else {
        throw DomainError("no class representative off the sign-region boundary");
    }
    return sc;
}

std::vector<std::string> family_hypothesis_failures(const EllipticSurface& S,
                                                    const std::map<std::string, RatPoly>& witnesses) {
    std::vector<std::string> out;
    auto ex = h_exemptions(S, witnesses);
    for (std::size_t i = 0; i < S.places.size(); ++i) {
        const Place& pl = S.places[i];
        if (ex[i].exempt || pl.form.degree <= 6) continue;
        out.push_back("degree bound: bad place " + pl.label() + " of type " + pl.type.name() + " has degree " +
                      std::to_string(pl.form.degree) + " > 6 and no exemption (" + ex[i].reason + ")");
    }
    int degM = S.M_full.degree;
    bool linear = std::all_of(S.places.begin(), S.places.end(),
                              [](const Place& pl) { return !pl.type.multiplicative() || pl.form.degree == 1; });
    if (degM > 3 && !linear)
        out.push_back("multiplicative part: deg M <= 3 or M a product of linear forms (deg M = " +
                      std::to_string(degM) + ")");
    if (degM == 0 && std::none_of(S.places.begin(), S.places.end(),
                                  [](const Place& pl) { return pl.type.tag == Kod::Ins; }))
        out.push_back("twist place: M = 1 needs a place of type I_m* with m >= 1");
    return out;
}

namespace {

std::vector<FamilyFiber> signed_fibers(const EllipticSurface& S, const std::vector<std::pair<long, long>>& pairs,
                                       const ExecConfig& cfg) {
    return map_ordered(pairs.size(), cfg, [&](std::size_t i) {
        auto [u, v] = pairs[i];
        return FamilyFiber{u, v, root_away_from_delta(fiber_at(S, u, v), S.delta)};
    });
}

Sign common_sign(const std::vector<FamilyFiber>& fam, const char* name) {
    if (fam.empty()) throw BudgetExceeded(std::string("family ") + name + " is empty inside the box");
    for (auto& x : fam)
        if (x.away != fam[0].away)
            throw Error(std::string("family ") + name + " mixes away-from-delta signs at (" + std::to_string(x.u) +
                        "," + std::to_string(x.v) + ")");
    return fam[0].away;
}

}  // namespace

Families wpm_families(const EllipticSurface& S0, long limit, const FamilyOptions& opt, const ExecConfig& cfg) {
    if (S0.isotrivial) throw ScopeError("isotrivial surface");
    if (limit < 1) throw DomainError("limit must be positive");
    auto fails = family_hypothesis_failures(S0, opt.witnesses);
    if (!fails.empty()) throw HypothesisError(join(fails, "; "));

    Families fam;
    bool twist = S0.M_full.degree == 0;
    fam.mode = twist ? FamilyMode::q0_twist : FamilyMode::multiplicative;

    // the twist place must be finite; move infinity when it is the only one
    EllipticSurface S = S0;
    if (twist && std::none_of(S0.places.begin(), S0.places.end(),
                              [](const Place& pl) { return pl.type.tag == Kod::Ins && !pl.infinity; })) {
        fam.change_of_variable = std::array<long, 4>{1, 0, 1, 1};
        S = transform(S0, 1, 0, 1, 1);
        fam.notes.push_back("twist place at infinity: families built on the surface at (u, u + v)");
    }

    auto m = candidate_modulus(S, 6, opt.constancy_samples, opt.seed, cfg);
    fam.N = m.N;
    auto ctx = variation_context(S, m.N, opt.witnesses);
    for (std::size_t i = 0; i < S.places.size(); ++i)
        if (ctx.exempt[i].exempt) fam.exempt_places.push_back(S.places[i].label() + ": " + ctx.exempt[i].reason);

    BinaryForm f, g;
    for (std::size_t i = 0; i < S.places.size(); ++i) {
        const Place& pl = S.places[i];
        if (ctx.exempt[i].exempt) continue;
        // twist mode sieves every non-exempt place at once; otherwise M against the rest
        BinaryForm& slot = (twist || pl.type.multiplicative()) ? f : g;
        slot = slot * pl.form;
    }

    // small primes below the total degree need p^2 | N
    Int Ns = m.N;
    int D = f.degree + g.degree;
    for (auto p : primes_up_to(D > 1 ? static_cast<std::uint32_t>(D - 1) : 0)) {
        unsigned e = valuation(Ns, Int(p));
        if (e < 2) Ns *= ipow(Int(p), 2 - e);
    }
    fam.sieve_N = Ns;
    auto seed = seed_class(S, Ns, ctx.R);

    SieveSpec base;
    base.f = f;
    base.g = g;
    base.R = seed.R;
    base.N = Ns;
    base.a = seed.a;
    base.b = seed.b;
    base.S = prime_divisors(Ns);
    base.t.assign(base.S.size(), 0);
    base.t2.assign(base.S.size(), 0);
    SieveOptions so;
    so.max_box = opt.max_box;

    std::vector<FamilyFiber> F1, F2;
    std::optional<Int> q0;
    if (!twist) {
        SieveSpec plus = base, minus = base;
        plus.eps = 1;
        minus.eps = -1;
        auto r1 = sfl_enumerate(plus, limit, so, cfg);
        auto r2 = sfl_enumerate(minus, limit, so, cfg);
        F1 = signed_fibers(S, r1.pairs, cfg);
        F2 = signed_fibers(S, r2.pairs, cfg);
        fam.density_plus = r1.density();
        fam.density_minus = r2.density();
        for (auto* r : {&r1, &r2}) fam.notes.insert(fam.notes.end(), r->notes.begin(), r->notes.end());
    } else {
        const Place& Q = S.places[*ctx.twist_place];
        BinaryForm Pnum = twist_cofactor(S, Q);
        auto choice = find_q0(Pnum.dehomogenize(), Q.form.dehomogenize(), base.S);
        q0 = choice.q0;
        fam.q0 = q0;
        SieveSpec plain = base, twisted = base;
        plain.S.push_back(*q0);
        plain.t.push_back(0);
        twisted.S.push_back(*q0);
        twisted.t.push_back(2);
        twisted.ratio = RatioClass{ipow(*q0, 3), q0_classes(Pnum.dehomogenize(), Q.form.dehomogenize(), *q0)};
        auto r1 = vasieve_enumerate(plain, limit, so, cfg);
        auto r2 = vasieve_enumerate(twisted, limit, so, cfg);
        F1 = signed_fibers(S, r1.pairs, cfg);
        F2 = signed_fibers(S, r2.pairs, cfg);
        fam.density_plus = r1.density();
        fam.density_minus = r2.density();
        for (auto* r : {&r1, &r2}) fam.notes.insert(fam.notes.end(), r->notes.begin(), r->notes.end());
    }
    Sign s1 = common_sign(F1, "one"), s2 = common_sign(F2, "two");

    // every cross pair: hypotheses hold, the prediction is -1 and direct computation agrees
    VariationMode vm = twist ? VariationMode::q0_twist : VariationMode::same_class;
    std::size_t n2 = F2.size();
    auto checks = map_ordered(F1.size() * n2, cfg, [&](std::size_t k) {
        auto& x = F1[k / n2];
        auto& y = F2[k % n2];
        auto w = predict_variation(S, ctx, {x.u, x.v}, {y.u, y.v}, vm, q0);
        return w.predicted_relation == -1 && w.direct_relation == -1;
    });
    for (std::size_t k = 0; k < checks.size(); ++k)
        if (!checks[k])
            throw Error("cross pair (" + std::to_string(F1[k / n2].u) + "," + std::to_string(F1[k / n2].v) + ") vs (" +
                        std::to_string(F2[k % n2].u) + "," + std::to_string(F2[k % n2].v) + ") is not opposite");
    fam.cross_pairs = static_cast<long>(checks.size());
    if (s1 == s2) throw Error("families share their away-from-delta sign");

    if (fam.change_of_variable) {
        // fiber of S at (u,v) is the fiber of S0 at (u, u + v)
        for (auto* F : {&F1, &F2})
            for (auto& x : *F) {
                long U = x.u, V = x.u + x.v;
                if (V < 0) U = -U, V = -V;
                x = {U, V, root_away_from_delta(fiber_at(S0, U, V), S0.delta)};
            }
    }
    if (s1 == 1) {
        fam.Wplus = std::move(F1);
        fam.Wminus = std::move(F2);
    } else {
        fam.Wplus = std::move(F2);
        fam.Wminus = std::move(F1);
        std::swap(fam.density_plus, fam.density_minus);
    }
    return fam;
}

}  // namespace ellroot
