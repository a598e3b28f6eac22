#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "ellroot/surface.hpp"
#include "oracles.hpp"

using namespace ellroot;

namespace {
RatPoly P(std::vector<long> c) { return RatPoly::from_ints(c); }

std::map<std::string, std::string> type_map(const EllipticSurface& S) {
    std::map<std::string, std::string> m;
    for (auto& p : S.places) m[p.label()] = p.type.name();
    return m;
}

std::multiset<std::string> type_multiset(const EllipticSurface& S) {
    std::multiset<std::string> m;
    for (auto& p : S.places) m.insert(p.type.name());
    return m;
}

void check_bookkeeping(const EllipticSurface& S) {
    // 1728 disc = c4^3 - c6^2 identically
    BinaryForm lhs = S.disc_form;
    for (auto& x : lhs.coef) x *= 1728;
    BinaryForm c43 = S.c4_form.pow(3), c62 = S.c6_form.pow(2);
    for (int i = 0; i <= lhs.degree; ++i) CHECK(lhs.coef[i] == c43.coef[i] - c62.coef[i]);
    long total = 0;
    for (auto& p : S.places) total += p.v_disc * p.form.degree;
    CHECK(total == 12 * S.k);
    CHECK(S.delta % 6 == 0);
    for (std::size_t i = 0; i < S.places.size(); ++i)
        for (std::size_t j = i + 1; j < S.places.size(); ++j) {
            Int r = form_resultant(S.places[i].form, S.places[j].form);
            for (auto& p : prime_divisors(abs_int(r))) CHECK(S.delta % p == 0);
        }
}
}  // namespace

TEST_CASE("Kodaira table") {
    CHECK(kodaira_from_valuations(0, 0, 0).name() == "I0");
    CHECK(kodaira_from_valuations(0, 0, 5).name() == "I5");
    CHECK(kodaira_from_valuations(1, 1, 2).name() == "II");
    CHECK(kodaira_from_valuations(1, 2, 3).name() == "III");
    CHECK(kodaira_from_valuations(2, 2, 4).name() == "IV");
    CHECK(kodaira_from_valuations(2, 3, 6).name() == "I0*");
    CHECK(kodaira_from_valuations(3, 3, 6).name() == "I0*");
    CHECK(kodaira_from_valuations(2, 3, 9).name() == "I3*");
    CHECK(kodaira_from_valuations(3, 4, 8).name() == "IV*");
    CHECK(kodaira_from_valuations(3, 5, 9).name() == "III*");
    CHECK(kodaira_from_valuations(4, 5, 10).name() == "II*");
    CHECK_THROWS_AS(kodaira_from_valuations(4, 6, 12), Error);
    CHECK_THROWS_AS(kodaira_from_valuations(1, 1, 1), Error);
    for (std::string s : {"I0", "I7", "II", "III", "IV", "I0*", "I4*", "IV*", "III*", "II*"})
        CHECK(KodairaType::parse(s).name() == s);
    CHECK_THROWS_AS(KodairaType::parse("V"), ParseError);
    CHECK(KodairaType::parse("III").epsilon() == -2);
    CHECK(KodairaType::parse("IV*").epsilon() == -3);
    CHECK(KodairaType::parse("I3*").epsilon() == -1);
    CHECK(KodairaType::parse("I3").epsilon() == 0);
}

TEST_CASE("running surface y^2 = x^3 + Tx + T") {
    auto S = new_surface(P({0, 1}), P({0, 1}));
    CHECK(S.k == 1);
    CHECK(S.disc == P({0, 0, -432, -64}));
    auto m = type_map(S);
    CHECK(m["U"] == "II");
    CHECK(m["4U + 27V"] == "I1");
    CHECK(m["inf"] == "III*");
    CHECK(S.places.back().infinity);
    CHECK(S.delta_primes == std::vector<Int>{2, 3});
    CHECK(S.B_form == BinaryForm::U() * BinaryForm(1, {27, 4}));
    CHECK(S.M_form == BinaryForm(1, {27, 4}));
    CHECK(S.M_full == S.M_form);
    CHECK(S.B_full == S.B_form * BinaryForm::V());
    CHECK(classify_place(S, BinaryForm::U()).name() == "II");
    CHECK(classify_place(S, BinaryForm(1, {1, 1})).name() == "I0");
    auto inf = S.infinity_place();
    REQUIRE(inf);
    CHECK(inf->v_c4 == 3);
    CHECK(inf->v_c6 == 5);
    CHECK(inf->v_disc == 9);
    check_bookkeeping(S);
}

TEST_CASE("surface construction errors and minimality") {
    CHECK_THROWS_AS(new_surface(P({0}), P({1})), ScopeError);
    CHECK_THROWS_AS(new_surface(P({-3}), P({2})), DomainError);
    CHECK_THROWS_AS(new_surface(RatPoly({Rat(1, 2)}), P({0, 1})), DomainError);
    SurfaceOptions iso;
    iso.allow_isotrivial = true;
    auto J = new_surface(P({0, 0, 1}), P({0, 0, 0, 1}), iso);  // A^3 and B^2 proportional
    CHECK(J.isotrivial);
    CHECK(*J.j_constant == Rat(1728 * 4, 31));

    auto S = new_surface(P({0, 1}), P({0, 1}));
    RatPoly pad = P({1, 1});
    auto S2 = new_surface(P({0, 1}) * pad.pow(4), P({0, 1}) * pad.pow(6));
    CHECK(S2.A == S.A);
    CHECK(S2.B == S.B);
    CHECK(type_map(S2) == type_map(S));
    auto S3 = new_surface(S2.A, S2.B);
    CHECK(S3.A == S2.A);
}

TEST_CASE("types are invariant under T -> T + c") {
    std::vector<std::pair<RatPoly, RatPoly>> surfaces = {
        {P({0, 1}), P({0, 1})}, {P({1, 0, 1}), P({0, 0, 0, 1})}, {P({-3, 0, 0, 1}), P({2, 1, 0, 0, 0, 1})}};
    for (auto& [A, B] : surfaces) {
        auto S = new_surface(A, B);
        check_bookkeeping(S);
        for (long c : {-3, 1, 2, 5}) {
            auto Sc = new_surface(A.shift(c), B.shift(c));
            CHECK(type_multiset(Sc) == type_multiset(S));
        }
    }
}

TEST_CASE("example family types") {
    RatPoly Q = P({1, 1});
    auto S1 = build_example_surface(Q, 1, 1, 1);
    CHECK(example_P(Q, 1, 1, 1) == P({3, 6, 4}));
    auto m1 = type_map(S1);
    CHECK(m1["4U^2 + 6UV + 3V^2"] == "II");
    CHECK(m1["U + V"] == "I2*");
    CHECK(m1.count("inf") == 0);
    CHECK(S1.M_form == BinaryForm());
    CHECK(!S1.has_multiplicative());
    CHECK(S1.delta_primes == std::vector<Int>{2, 3});
    check_bookkeeping(S1);

    auto S3 = build_example_surface(Q, 3, 1, 1);
    CHECK(S3.k == 2);
    CHECK(type_map(S3)["inf"] == "I4");
    CHECK(S3.M_form == BinaryForm());
    CHECK(S3.M_full == BinaryForm::V());
    check_bookkeeping(S3);

    auto S2 = build_example_surface(Q, 2, 1, 1);
    CHECK(type_map(S2)["inf"] == "I2*");
    check_bookkeeping(S2);

    CHECK_THROWS_AS(build_example_surface(P({0, 1}), 1, 1, 1), DomainError);
    CHECK_THROWS_AS(build_example_surface(Q, 1, 2, 4), DomainError);
    CHECK_THROWS_AS(build_example_surface(P({1, 2, 1}), 1, 1, 1), DomainError);
}

TEST_CASE("root of unity certificates") {
    auto c1 = mu_root_certificate(BinaryForm(2, {1, 0, 3}), 3);
    CHECK(c1.status == MuStatus::verified);
    auto c2 = mu_root_certificate(BinaryForm(2, {1, 0, 1}), 4, P({0, 1}));
    CHECK(c2.status == MuStatus::verified);
    auto c3 = mu_root_certificate(BinaryForm(1, {-2, 1}), 3);
    CHECK(c3.status == MuStatus::refuted);
    CHECK(mod_floor(c3.refuting_prime, 3) == 2);
    CHECK(c3.sample_u - 2 * c3.sample_v != 0);
    CHECK(mod_floor(Int(c3.sample_u - 2 * c3.sample_v), c3.refuting_prime) == 0);
    auto c4 = mu_root_certificate(BinaryForm(2, {1, 0, 1}), 3);
    CHECK(c4.status == MuStatus::refuted);
    CHECK_THROWS_AS(mu_root_certificate(BinaryForm(2, {-1, 0, 1}), 3), DomainError);
}

TEST_CASE("example family places carry mu3 certificates") {
    for (int N : {1, 2, 3}) {
        for (auto Q : {P({1, 1}), P({2, 0, 1}), P({-1, 3})}) {
            if (N < Q.degree()) continue;
            auto S = build_example_surface(Q, N, 1, 1);
            RatPoly Pp = example_P(Q, N, 1, 1);
            for (auto& [f, e] : factor_rational(Pp).factors) {
                RatPoly w = example_mu3_witness(f, Q, N, 1, 1);
                auto cert = mu_root_certificate(f, 3, w);
                CHECK(cert.status == MuStatus::verified);
            }
        }
    }
}

TEST_CASE("unimodular change of variables") {
    auto S = new_surface(P({0, 1}), P({0, 1}));
    auto T = transform(S, 2, 1, 1, 0);
    for (long u = -4; u <= 4; ++u)
        for (long v = -4; v <= 4; ++v) {
            CHECK(T.c4_form(u, v) == S.c4_form(2 * u + v, u));
            CHECK(T.disc_form(u, v) == S.disc_form(2 * u + v, u));
        }
    CHECK(type_multiset(T) == type_multiset(S));
    CHECK_THROWS_AS(transform(S, 2, 0, 0, 1), DomainError);
}
