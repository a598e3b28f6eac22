#pragma once
// Polynomials over Q in one variable and integral binary forms in (U,V).
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ellroot/intmath.hpp"

namespace ellroot {

struct RatPoly {
    std::vector<Rat> c;  // c[i] = coefficient of T^i; no trailing zeros

    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs);
    static RatPoly from_ints(const std::vector<long>& coeffs);
    static RatPoly monomial(const Rat& a, int deg);
    static RatPoly constant(const Rat& a) { return monomial(a, 0); }
    static RatPoly T() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    bool is_constant() const { return c.size() <= 1; }
    const Rat& lead() const;
    Rat coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : Rat(0); }
    Rat operator()(const Rat& x) const;
    bool integral() const;  // all coefficients integers

    RatPoly derivative() const;
    RatPoly monic() const;
    RatPoly shift(const Rat& a) const;  // P(T + a)
    RatPoly pow(unsigned e) const;
    std::string to_string() const;

    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c == b.c; }
    friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const Rat& s, const RatPoly& a);
    RatPoly operator-() const;

   private:
    void normalize();
};

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly gcd_poly(const RatPoly& a, const RatPoly& b);  // monic; zero only if both zero
RatPoly squarefree_part(const RatPoly& p);            // monic
// Yun: p = lead * prod a_i^i with a_i monic squarefree, pairwise coprime
std::vector<std::pair<RatPoly, unsigned>> squarefree_decomposition(const RatPoly& p);
Rat resultant(const RatPoly& p, const RatPoly& q);  // Sylvester determinant, p rows first
Rat discriminant(const RatPoly& p);
int count_real_roots(const RatPoly& p);  // distinct real roots, Sturm

struct BinaryForm {
    int degree = 0;
    std::vector<Int> coef;  // coef[i] = coefficient of U^i V^(degree-i)

    BinaryForm() : coef{Int(1)} {}
    BinaryForm(int d, std::vector<Int> cs);
    static BinaryForm constant(const Int& a) { return BinaryForm(0, {a}); }
    static BinaryForm U() { return BinaryForm(1, {0, 1}); }
    static BinaryForm V() { return BinaryForm(1, {1, 0}); }

    Int operator()(const Int& u, const Int& v) const;
    Int content() const;
    bool is_zero() const;
    bool is_primitive() const;  // content 1 and first nonzero coefficient from the U^d end positive
    bool is_V() const { return degree == 1 && coef[0] == 1 && coef[1] == 0; }
    // multiplicity of V, i.e. degree minus degree of F(T,1)
    int v_multiplicity() const;
    RatPoly dehomogenize() const;
    // F(a U + b V, c U + d V)
    BinaryForm substitute(const Int& a, const Int& b, const Int& c, const Int& d) const;
    std::string to_string() const;

    friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
        return a.degree == b.degree && a.coef == b.coef;
    }
    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
    BinaryForm pow(unsigned e) const;
};

Int evaluate(const BinaryForm& f, const Int& u, const Int& v);

struct Homogenized {
    BinaryForm form;
    Int scale;  // form(u, 1) = scale * P(u); smallest positive such scale
};
Homogenized homogenize(const RatPoly& p, int d);

// Sylvester determinant of forms taken with their formal degrees
Int form_resultant(const BinaryForm& f, const BinaryForm& g);

struct FormFactorization {
    Rat constant;
    std::vector<std::pair<BinaryForm, unsigned>> factors;  // primitive irreducible
};

struct FactorOptions {
    int degree_cap = 24;
};

// Factors of P(T) as primitive integer forms of degree = polynomial degree
FormFactorization factor_rational(const RatPoly& p, const FactorOptions& opt = {});
// Factors of a binary form, with V appended when V divides it
FormFactorization factor_form(const BinaryForm& f, const FactorOptions& opt = {});
bool form_less(const BinaryForm& a, const BinaryForm& b);  // factor ordering

// Arithmetic modulo a prime p < 2^31, coefficient vectors low to high
namespace modp {
using u64 = std::uint64_t;
using Poly = std::vector<u64>;

u64 inv(u64 a, u64 p);
Poly reduce(const std::vector<Int>& f, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly rem(const Poly& a, const Poly& b, u64 p);
Poly quo(const Poly& a, const Poly& b, u64 p);
Poly gcd(const Poly& a, const Poly& b, u64 p);
Poly powmod(const Poly& base, const Int& e, const Poly& m, u64 p);
Poly derivative(const Poly& a, u64 p);
Poly monic(const Poly& a, u64 p);
// monic squarefree f, deg >= 1, p odd: monic irreducible factors
std::vector<Poly> factor_squarefree(const Poly& f, u64 p, std::uint64_t seed = 1);
// distinct roots of integer polynomial f mod p (f must not vanish identically mod p)
std::vector<u64> roots(const std::vector<Int>& f, u64 p);
std::size_t count_roots(const std::vector<Int>& f, u64 p);
}  // namespace modp

}  // namespace ellroot
