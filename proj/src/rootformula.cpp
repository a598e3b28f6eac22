#include "ellroot/rootformula.hpp"

#include <sstream>

namespace ellroot {

namespace {

// (a / b)_delta, with the empty symbol short-circuited so a = 0 is harmless there
Sign symbol_or_trivial(const Int& a, const Int& b, const Int& delta) {
    if (abs_int(delta_free_part(b, delta)) == 1) return 1;
    if (a == 0) throw DomainError("symbol numerator vanishes at a fiber where the place is bad");
    return modified_symbol(a, b, delta);
}

Int place_value(const Place& place, const Int& u, const Int& v) {
    Int b = place.form(u, v);
    if (b == 0) throw DomainError("fiber lies on the place " + place.label());
    return b;
}

}  // namespace

KodairaType monodromy_type(const KodairaType& g, long n) {
    if (n < 0) throw DomainError("monodromy_type: n must be nonnegative");
    if (n == 0) return KodairaType::I(0);
    using K = KodairaType;
    auto t = [](Kod k) { return K{k, 0}; };
    switch (g.tag) {
        case Kod::I0:
            return K::I(0);
        case Kod::In:
            return K::I(n * g.m);
        case Kod::Ins:
            return n % 2 ? K::Istar(n * g.m) : K::I(n * g.m);
        case Kod::I0s:
            return n % 2 ? K::Istar(0) : K::I(0);
        case Kod::II: {
            static const Kod row[6] = {Kod::I0, Kod::II, Kod::IV, Kod::I0s, Kod::IVs, Kod::IIs};
            return t(row[n % 6]);
        }
        case Kod::IIs: {
            static const Kod row[6] = {Kod::I0, Kod::IIs, Kod::IVs, Kod::I0s, Kod::IV, Kod::II};
            return t(row[n % 6]);
        }
        case Kod::III: {
            static const Kod row[4] = {Kod::I0, Kod::III, Kod::I0s, Kod::IIIs};
            return t(row[n % 4]);
        }
        case Kod::IIIs: {
            static const Kod row[4] = {Kod::I0, Kod::IIIs, Kod::I0s, Kod::III};
            return t(row[n % 4]);
        }
        case Kod::IV: {
            static const Kod row[3] = {Kod::I0, Kod::IV, Kod::IVs};
            return t(row[n % 3]);
        }
        case Kod::IVs: {
            static const Kod row[3] = {Kod::I0, Kod::IVs, Kod::IV};
            return t(row[n % 3]);
        }
    }
    return K::I(0);
}

int monodromy_period(const KodairaType& g) {
    switch (g.tag) {
        case Kod::I0:
            return 1;
        case Kod::I0s:
            return 2;
        case Kod::IV:
        case Kod::IVs:
            return 3;
        case Kod::III:
        case Kod::IIIs:
            return 4;
        case Kod::II:
        case Kod::IIs:
            return 6;
        default:
            return 0;
    }
}

Sign g_P(const EllipticSurface& S, const Place& place, const Int& u, const Int& v) {
    Int b = place_value(place, u, v);
    if (place.type.good()) return 1;
    if (place.type.additive()) return symbol_or_trivial(place.epsilon, b, S.delta);
    Sign s = symbol_or_trivial(-S.c6_form(u, v), b, S.delta);
    for (auto& p : S.delta_primes)
        if (valuation(b, p) % 2) s = -s;
    return s;
}

Sign h_P(const EllipticSurface& S, const Place& place, const Int& u, const Int& v) {
    Int b = place_value(place, u, v);
    Int r = abs_int(delta_free_part(b, S.delta));
    if (r == 1 || place.type.good() || place.type.tag == Kod::I0s) return 1;
    Int c6;
    bool have_c6 = false;
    Sign s = 1;
    for (auto& [p, e] : factorize(r).factors) {
        if (e < 2) continue;
        switch (place.type.tag) {
            case Kod::II:
            case Kod::IIs:
                if (e % 6 == 2 || e % 6 == 4) s *= jacobi(-3, p);
                break;
            case Kod::III:
            case Kod::IIIs:
                if (e % 4 == 2) s *= jacobi(-1, p);
                break;
            case Kod::IV:
            case Kod::IVs:
                if (e % 6 >= 2 && e % 6 <= 4) s *= jacobi(-3, p);
                break;
            case Kod::In:
            case Kod::Ins:
                if ((e - 1) % 2) {
                    if (!have_c6) {
                        c6 = S.c6_form(u, v);
                        have_c6 = true;
                    }
                    if (c6 == 0) throw DomainError("c6 vanishes where a multiplicative symbol is needed");
                    s *= -jacobi(-strip_prime(c6, p), p);
                }
                break;
            default:
                break;
        }
    }
    return s;
}

Sign RootDecomposition::formula_product() const {
    Sign s = lambda_M;
    for (auto x : g_values) s *= x;
    for (auto x : h_values) s *= x;
    return s;
}

RootDecomposition decompose(const EllipticSurface& S, const Int& u0, const Int& v0, Sign surface_sign) {
    FiberCurve F = fiber_at(S, u0, v0);
    RootDecomposition d;
    d.u = F.u;
    d.v = F.v;
    Int m = S.M_full(F.u, F.v);
    d.lambda_M = liouville(m);
    for (auto& pl : S.places) {
        d.g_values.push_back(g_P(S, pl, F.u, F.v));
        d.h_values.push_back(h_P(S, pl, F.u, F.v));
    }
    d.surface_sign = surface_sign;
    d.away_product_predicted = surface_sign * d.formula_product();
    d.away_product_direct = root_away_from_delta(F, S.delta);
    return d;
}

std::vector<MonodromyObservation> observe_monodromy(const EllipticSurface& S, const Int& u, const Int& v) {
    FiberCurve F = fiber_at(S, u, v);
    std::vector<Int> values;
    for (auto& pl : S.places) values.push_back(pl.form(F.u, F.v));
    std::vector<MonodromyObservation> out;
    for (auto& p : away_primes(F, S.delta)) {
        MonodromyObservation o;
        o.p = p;
        bool found = false;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!mpz_divisible_p(values[i].get_mpz_t(), p.get_mpz_t())) continue;
            if (found) throw Error("prime " + p.get_str() + " outside delta divides two place values");
            found = true;
            o.place = i;
            o.n = valuation(values[i], p);
        }
        if (!found) throw Error("prime " + p.get_str() + " of the discriminant meets no place");
        o.predicted = monodromy_type(S.places[o.place].type, o.n);
        o.observed = kodaira_at_p(minimalize_at(F, p), p);
        out.push_back(o);
    }
    return out;
}

DecompositionReport verify_decomposition(const EllipticSurface& S, long box, const PairFilter& filter,
                                         const ExecConfig& cfg) {
    std::vector<std::pair<long, long>> pairs;
    for (auto [u, v] : coprime_pairs(box)) {
        if (filter && !filter(u, v)) continue;
        if (S.disc_form(u, v) == 0) continue;
        pairs.emplace_back(u, v);
    }
    auto results = map_ordered(pairs.size(), cfg, [&](std::size_t i) {
        return decompose(S, pairs[i].first, pairs[i].second);
    });
    DecompositionReport rep;
    rep.tested = static_cast<long>(results.size());
    if (results.empty()) return rep;
    rep.surface_sign = results[0].away_product_direct * results[0].formula_product();
    for (std::size_t i = 0; i < results.size(); ++i) {
        auto& d = results[i];
        if (d.away_product_direct == rep.surface_sign * d.formula_product()) {
            ++rep.matched;
            continue;
        }
        std::ostringstream os;
        os << "direct " << d.away_product_direct << ", lambda(M) " << d.lambda_M << ", g";
        for (auto x : d.g_values) os << ' ' << x;
        os << ", h";
        for (auto x : d.h_values) os << ' ' << x;
        rep.mismatches.push_back({pairs[i].first, pairs[i].second, os.str()});
    }
    return rep;
}

}  // namespace ellroot
