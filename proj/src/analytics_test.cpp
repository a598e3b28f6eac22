#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ellroot/analytics.hpp"
#include "oracles.hpp"

using namespace ellroot;

namespace {
ArithPoly uni(std::vector<long> c) { return ArithPoly::univariate(c); }
ArithPoly bin(std::vector<long> c) {
    return ArithPoly::binary(BinaryForm(static_cast<int>(c.size()) - 1, std::vector<Int>(c.begin(), c.end())));
}
Progression prog(int h, long N, long a, long b = 0) { return {h, N, a, b}; }

long ev(const std::vector<long>& c, long x) {
    long r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}
long ev2(const std::vector<long>& c, long u, long v) {
    long r = 0, d = static_cast<long>(c.size()) - 1;
    for (long i = 0; i <= d; ++i) {
        long term = c[i];
        for (long k = 0; k < i; ++k) term *= u;
        for (long k = 0; k < d - i; ++k) term *= v;
        r += term;
    }
    return r;
}
long md(long a, long m) { return ((a % m) + m) % m; }

// plain enumeration of residues with m | f
long tf_brute(const std::vector<long>& c, int h, long m) {
    long n = 0;
    for (long x = 0; x < m; ++x) {
        if (h == 1) {
            if (md(ev(c, x), m) == 0) ++n;
            continue;
        }
        for (long y = 0; y < m; ++y)
            if (md(ev2(c, x, y), m) == 0) ++n;
    }
    return n;
}
}  // namespace

TEST_CASE("t_f small cases") {
    CHECK(t_f(uni({0, 1}), 5, 0) == 1);
    CHECK(t_f(uni({0, 0, 1}), 3, 0) == 3);
    CHECK(t_f(bin({0, 1, 0}), 2, 0) == 8);  // U V
    CHECK_THROWS_AS(t_f(uni({0, 1}), 4, 0), DomainError);
    TfBudget tiny;
    tiny.max_residues = 5;
    CHECK_THROWS_AS(t_f(uni({0, 0, 1}), 3, 0, tiny), BudgetExceeded);
}

TEST_CASE("t_f formula agrees with enumeration") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int d = 1 + static_cast<int>(rng() % 4);
        std::vector<long> c(d + 1);
        for (auto& x : c) x = static_cast<long>(rng() % 13) - 6;
        if (c.back() == 0) c.back() = 1;
        if (std::accumulate(c.begin(), c.end(), 0L, [](long g, long x) { return std::gcd(g, x); }) != 1) continue;
        for (long p : {2L, 3L, 5L, 7L}) {
            CHECK(t_f(uni(c), p, 0) == tf_brute(c, 1, p * p));
            if (p <= 5) CHECK(t_f(bin(c), p, 0) == tf_brute(c, 2, p * p));
        }
        CHECK(t_f(uni(c), 3, 1) == tf_brute(c, 1, 27));
    }
}

TEST_CASE("d_f") {
    auto a = d_f(uni({0, 1}));
    CHECK(a.delta == 1);
    CHECK(a.d == 1);
    auto b = d_f(uni({0, 1, 1}));
    CHECK(b.delta == 2);
    CHECK(b.d == 1);
    CHECK_THROWS_AS(d_f(uni({2, 4})), DomainError);
    auto c = d_f(uni({0, 6, 11, 6, 1}));  // t(t+1)(t+2)(t+3)
    CHECK(c.delta == 24);
    CHECK(c.d == 4);
    CHECK(c.nu.at(2) == 2);
    // on the even integers t(t+1) picks up only 2
    auto e = d_f(uni({0, 1, 1}), prog(1, 2, 0));
    CHECK(e.delta == 2);
    // u^2 + v^2 on the odd-odd class: every value is 2 mod 4
    auto g = d_f(bin({1, 0, 1}), prog(2, 2, 1, 1));
    CHECK(g.delta == 2);
    CHECK(g.d == 1);
}

TEST_CASE("Euler constants") {
    auto f = uni({0, 1});
    auto C = euler_constant(f, 100000);
    CHECK(std::abs(C.value - 6 / (M_PI * M_PI)) < 1e-3);
    CHECK(C.low <= C.value);
    auto C2 = euler_constant(f, 1000);
    CHECK(C2.value >= C.value);
    CHECK(C2.low <= C.value);
    CHECK(euler_constant(uni({1, 1, 1}), 2).value == doctest::Approx(1.0));
    auto odd = euler_constant(f, 100000, prog(1, 2, 1));
    CHECK(odd.value == doctest::Approx(0.5 * C.value / 0.75).epsilon(1e-9));
}

TEST_CASE("squarefree counts") {
    auto f = uni({0, 1});
    CHECK(count_sqf(f, Progression::all(1), 100).count == 61);
    // inclusion-exclusion over squares
    long X = 100000, ie = 0;
    for (long k = 1; k * k <= X; ++k) ie += moebius(Int(k)) * (X / (k * k));
    auto r = count_sqf(f, Progression::all(1), X);
    CHECK(r.count == ie);
    CHECK(std::abs(r.ratio - 1) < 0.01);

    std::vector<long> q = {1, 0, 1};  // t^2 + 1
    long want = 0;
    for (long t = 1; t <= 2000; ++t) want += oracle::is_squarefree(ev(q, t));
    CHECK(count_sqf(uni(q), Progression::all(1), 2000).count == want);

    // u^2 + v^2 on the odd-odd class, divided by its value gcd 2
    std::vector<long> s = {1, 0, 1};
    long w2 = 0;
    for (long u = -40; u <= 40; ++u)
        for (long v = -40; v <= 40; ++v)
            if (md(u, 2) == 1 && md(v, 2) == 1) w2 += oracle::is_squarefree(ev2(s, u, v) / 2);
    CHECK(count_sqf(bin(s), prog(2, 2, 1, 1), 40).count == w2);

    // projecting the even classes out of Z^2
    long all = count_sqf(bin({0, 1}), Progression::all(2), 30).count;  // V
    long want_all = 0;
    for (long v = -30; v <= 30; ++v) want_all += 61 * oracle::is_squarefree(v);
    CHECK(all == want_all);
}

TEST_CASE("Chowla sums") {
    CHECK(chowla_sum(uni({0, 1}), Progression::all(1), 10) == 0);
    CHECK(chowla_sum(uni({0, 1}), prog(1, 50, 20), 10) == 0);  // no member in range
    long want = 0;
    for (long t = 1; t <= 3000; ++t) want += oracle::liouville(t * t + 1);
    CHECK(chowla_sum(uni({1, 0, 1}), Progression::all(1), 3000) == want);
    CHECK_THROWS_AS(chowla_sum(uni({0, 1}), Progression::all(1), 10, {{1, 1}}), DomainError);

    // the line 2u = v misses the odd-odd class, so the two half-planes add up
    auto F = bin({1, 1, 1});  // u^2 + u v + v^2
    auto A = prog(2, 2, 1, 1);
    long total = chowla_sum(F, A, 60);
    long pos = chowla_sum(F, A, 60, {{2, -1}}), neg = chowla_sum(F, A, 60, {{-2, 1}});
    CHECK(pos + neg == total);
    long wp = 0;
    for (long u = -60; u <= 60; ++u)
        for (long v = -60; v <= 60; ++v)
            if (md(u, 2) == 1 && md(v, 2) == 1 && 2 * u - v > 0) wp += oracle::liouville(u * u + u * v + v * v);
    CHECK(pos == wp);
}

TEST_CASE("T counts") {
    BinaryForm f(1, {27, 4}), g = BinaryForm::U();  // 4U + 27V and U
    auto A = prog(2, 24, 1, 1);
    long X = 300;
    auto plus = count_T(f, g, A, 1, X), minus = count_T(f, g, A, -1, X), any = count_T(f, g, A, 0, X);
    CHECK(plus.count + minus.count == any.count);
    CHECK(plus.predicted == doctest::Approx(any.predicted / 2));
    long want_plus = 0;
    for (long u = -X; u <= X; ++u)
        for (long v = -X; v <= X; ++v) {
            if (md(u - 1, 24) || md(v - 1, 24)) continue;
            long a = 4 * u + 27 * v, b = u;
            if (a == 0 || b == 0) continue;
            long a1 = oracle::strip(oracle::strip(a, 2), 3), b1 = oracle::strip(oracle::strip(b, 2), 3);
            if (oracle::is_squarefree(a1) && oracle::is_squarefree(b1) && std::gcd(a1, b1) == 1 &&
                oracle::liouville(a) == 1)
                ++want_plus;
        }
    CHECK(plus.count == want_plus);
    CHECK(count_T(f, g, A, 1, 0).count == 0);
    CHECK_THROWS_AS(count_T(f, f * g, A, 1, 10), DomainError);
    CHECK_THROWS_AS(count_T(f, g, A, 2, 10), DomainError);
}

TEST_CASE("local divisibility counts") {
    std::vector<long> c = {1, 0, 1};
    long X = 200;
    auto r = square_divisor_counts(bin(c), {2, 3, 5, 13}, X);
    REQUIRE(r.rows.size() == 4);
    for (auto& row : r.rows) {
        long n = 0, m = row.p * row.p;
        for (long u = -X; u <= X; ++u)
            for (long v = -X; v <= X; ++v)
                if (md(ev2(c, u, v), m) == 0) ++n;
        CHECK(row.count == n);
    }
    auto r1 = square_divisor_counts(uni({1, 0, 1}), {5, 7}, 1000);
    long n5 = 0;
    for (long t = -1000; t <= 1000; ++t) n5 += md(t * t + 1, 25) == 0;
    CHECK(r1.rows[0].count == n5);
    CHECK(r1.rows[1].count == 0);
    CHECK(r.K_max >= r.K_min);
}

TEST_CASE("serial and parallel agree") {
    auto F = bin({1, 0, 2, 1});
    ExecConfig s{Exec::serial, 1}, p{Exec::parallel, 4};
    CHECK(count_sqf(F, Progression::all(2), 80, 1000, s).count == count_sqf(F, Progression::all(2), 80, 1000, p).count);
    CHECK(chowla_sum(F, Progression::all(2), 80, {}, s) == chowla_sum(F, Progression::all(2), 80, {}, p));
    CHECK(square_divisor_counts(F, {3, 7}, 100, s).rows[1].count == square_divisor_counts(F, {3, 7}, 100, p).rows[1].count);
}

TEST_CASE("arithmetic tables") {
    ArithTables t(5000);
    for (long n = 1; n <= 5000; ++n) {
        CHECK(t.mu(n) == moebius(Int(n)));
        CHECK(t.lambda(n) == oracle::liouville(n));
    }
}
