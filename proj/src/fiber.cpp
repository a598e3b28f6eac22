#include "ellroot/fiber.hpp"

#include <set>

namespace ellroot {

namespace {

long val_or_inf(const Int& n, const Int& p) { return n == 0 ? kInfValuation : static_cast<long>(valuation(n, p)); }

void require_p_ge_5(const Int& p) {
    if (p < 5) throw DomainError("local data here needs p >= 5");
}

Int pow_int(const Int& p, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
    return r;
}

}  // namespace

FiberCurve FiberCurve::from_invariants(const Int& c4, const Int& c6) {
    Int num = c4 * c4 * c4 - c6 * c6;
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 1728)) throw DomainError("c4^3 - c6^2 not divisible by 1728");
    FiberCurve F;
    F.u = 0;
    F.v = 1;
    F.c4 = c4;
    F.c6 = c6;
    F.disc = num / 1728;
    if (F.disc == 0) throw DomainError("singular curve: discriminant zero");
    return F;
}

FiberCurve fiber_at(const EllipticSurface& S, const Int& u0, const Int& v0) {
    FiberCurve F;
    Int u = u0, v = v0, g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    if (g == 0) throw DomainError("(0,0) is not a point of the line");
    if (g != 1) {
        u /= g;
        v /= g;
        F.warnings.push_back("reduced (" + u0.get_str() + "," + v0.get_str() + ") by gcd " + g.get_str());
    }
    if (v < 0 || (v == 0 && u < 0)) {
        // forms of even degree take the same values at (-u,-v)
        u = -u;
        v = -v;
        F.warnings.push_back("negated to make v positive");
    }
    F.u = u;
    F.v = v;
    F.disc = S.disc_form(u, v);
    if (F.disc == 0) throw DomainError("singular fiber at (" + u.get_str() + "," + v.get_str() + ")");
    F.c4 = S.c4_form(u, v);
    F.c6 = S.c6_form(u, v);
    F.support_hint.push_back(S.disc_constant);
    for (auto& pl : S.places) F.support_hint.push_back(pl.form(u, v));
    return F;
}

FiberCurve minimalize_at(const FiberCurve& F0, const Int& p) {
    require_p_ge_5(p);
    FiberCurve F = F0;
    Int p4 = pow_int(p, 4), p6 = pow_int(p, 6), p12 = pow_int(p, 12);
    while (val_or_inf(F.c4, p) >= 4 && val_or_inf(F.c6, p) >= 6) {
        mpz_divexact(F.c4.get_mpz_t(), F.c4.get_mpz_t(), p4.get_mpz_t());
        mpz_divexact(F.c6.get_mpz_t(), F.c6.get_mpz_t(), p6.get_mpz_t());
        mpz_divexact(F.disc.get_mpz_t(), F.disc.get_mpz_t(), p12.get_mpz_t());
    }
    return F;
}

KodairaType kodaira_at_p(const FiberCurve& F, const Int& p) {
    require_p_ge_5(p);
    return kodaira_from_valuations(val_or_inf(F.c4, p), val_or_inf(F.c6, p), val_or_inf(F.disc, p));
}

Sign rohrlich_wp(const FiberCurve& F, const Int& p) {
    KodairaType t = kodaira_at_p(F, p);
    switch (t.tag) {
        case Kod::I0:
            return 1;
        case Kod::In:
            return -jacobi(-strip_prime(F.c6, p), p);
        case Kod::II:
        case Kod::IIs:
        case Kod::I0s:
        case Kod::Ins:
            return jacobi(-1, p);
        case Kod::III:
        case Kod::IIIs:
            return jacobi(-2, p);
        case Kod::IV:
        case Kod::IVs:
            return jacobi(-3, p);
    }
    return 1;
}

std::vector<Int> away_primes(const FiberCurve& F, const Int& delta, const FactorBudget& budget) {
    std::set<Int> ps;
    std::vector<Int> sources = F.support_hint.empty() ? std::vector<Int>{F.disc} : F.support_hint;
    for (auto& s : sources) {
        if (s == 0) continue;
        Int r = abs_int(delta_free_part(s, delta));
        if (r == 1) continue;
        for (auto& [p, e] : factorize(r, budget).factors)
            if (mpz_divisible_p(F.disc.get_mpz_t(), p.get_mpz_t())) ps.insert(p);
    }
    return {ps.begin(), ps.end()};
}

std::vector<LocalDatum> local_data(const FiberCurve& F, const Int& delta, const FactorBudget& budget) {
    std::vector<LocalDatum> out;
    for (auto& p : away_primes(F, delta, budget)) {
        FiberCurve M = minimalize_at(F, p);
        out.push_back({p, kodaira_at_p(M, p), rohrlich_wp(M, p)});
    }
    return out;
}

Sign root_away_from_delta(const FiberCurve& F, const Int& delta, const FactorBudget& budget) {
    Sign s = 1;
    for (auto& d : local_data(F, delta, budget)) s *= d.wp;
    return s;
}

FullRoot full_root_number(const FiberCurve& F, const FactorBudget& budget) {
    FullRoot r;
    if (mpz_divisible_ui_p(F.disc.get_mpz_t(), 2) || mpz_divisible_ui_p(F.disc.get_mpz_t(), 3)) return r;
    r.supported = true;
    // every prime of disc is >= 5 here; delta = 6 strips nothing
    r.value = -root_away_from_delta(F, 6, budget);
    return r;
}

std::vector<ScanRow> scan_fibers(const EllipticSurface& S, long box, const ExecConfig& cfg) {
    auto pairs = coprime_pairs(box);
    auto rows = map_ordered(pairs.size(), cfg, [&](std::size_t i) {
        ScanRow row;
        auto [u, v] = pairs[i];
        row.u = u;
        row.v = v;
        Int d = S.disc_form(u, v);
        if (d == 0) {
            row.v = 0;  // marker: singular, dropped below
            return row;
        }
        FiberCurve F = fiber_at(S, u, v);
        row.disc = F.disc;
        for (auto& pl : S.places) row.place_values.push_back(pl.form(u, v));
        row.away = root_away_from_delta(F, S.delta);
        row.full = full_root_number(F);
        return row;
    });
    std::vector<ScanRow> out;
    out.reserve(rows.size());
    for (auto& r : rows)
        if (r.v != 0) out.push_back(std::move(r));
    return out;
}

}  // namespace ellroot
