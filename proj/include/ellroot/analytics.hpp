#pragma once
// Local densities, Euler products and exact lattice counts for squarefree and
// Liouville statistics of polynomial values.
//
// Box conventions: one variable counts 1 <= t <= X (so f(t) = t at X = 100
// gives the classical 61); two variables count |u|, |v| <= X and predictions
// use (2X)^2. C_{f,A} carries the 1/N^h factor.
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellroot/parallel.hpp"
#include "ellroot/polyforms.hpp"

namespace ellroot {

// a polynomial in one variable (h = 1) or a binary form (h = 2)
struct ArithPoly {
    int h = 1;
    std::vector<Int> coef;  // h = 1, coef[i] of t^i
    BinaryForm form;        // h = 2

    static ArithPoly univariate(std::vector<Int> c);
    static ArithPoly univariate(const std::vector<long>& c);
    static ArithPoly binary(BinaryForm f);
    int degree() const;
    Int content() const;
    Int operator()(const Int& x, const Int& y = 0) const;
    // word-sized evaluation; exact while every partial sum stays below 2^127
    __int128 eval128(long x, long y = 0) const;
    std::string to_string() const;
};

struct Progression {
    int h = 1;
    Int N = 1;
    Int a = 0, b = 0;
    static Progression all(int h) { return {h, 1, 0, 0}; }
    void validate() const;  // h = 2 needs a, b coprime to N
    bool contains(const Int& x, const Int& y = 0) const;
};

struct ValueGcd {
    Int delta;                 // gcd of the values on the progression
    Int d;                     // smallest d with delta / d squarefree
    std::map<Int, unsigned> nu;  // exponents of d
};
// throws DomainError on non-primitive input
ValueGcd d_f(const ArithPoly& f, const std::optional<Progression>& A = {});

struct TfBudget {
    long max_residues = 100000000;  // largest p^{h(2+nu)} scanned exhaustively
};
// number of residues v mod p^{2+nu} (h-tuples) with f(v) = 0 mod p^{2+nu}
long t_f(const ArithPoly& f, long p, unsigned nu, const TfBudget& budget = {});

struct EulerConstant {
    double value = 1;  // truncated product
    double low = 1, high = 1;  // interval for the full product
    long prime_bound = 0;
};
EulerConstant euler_constant(const ArithPoly& f, long prime_bound, const std::optional<Progression>& A = {},
                             const TfBudget& budget = {});

struct CountReport {
    long X = 0;
    long count = 0;
    double predicted = 0, predicted_low = 0, predicted_high = 0;
    double ratio = 0;  // count / predicted, 0 when predicted is 0
    long prime_bound = 0;
    std::string convention;
};

// members of A in the box with f(v) / d_{f,A} squarefree
CountReport count_sqf(const ArithPoly& f, const Progression& A, long X, long prime_bound = 100000,
                      const ExecConfig& cfg = {});

// alpha u + beta v > 0
struct HalfPlane {
    long alpha = 0, beta = 0;
};
// sum of lambda(f(v)) over members of A in the box (and in every half-plane); zeros skipped
long chowla_sum(const ArithPoly& f, const Progression& A, long X, const std::vector<HalfPlane>& sectors = {},
                const ExecConfig& cfg = {});

// pairs in A(X) with f g / d_{fg} free of p^2 for p outside N and lambda(f) = eps;
// eps = 0 drops the sign condition
CountReport count_T(const BinaryForm& f, const BinaryForm& g, const Progression& A, int eps, long X,
                    long prime_bound = 100000, const ExecConfig& cfg = {});

struct SquareDivisorRow {
    long p = 0;
    long count = 0;  // |v| <= X with p^2 | f(v)
    double K = 0;    // count / ((2X)^h / p^2 + (2X)^(h-1))
};
struct SquareDivisorReport {
    long X = 0;
    std::vector<SquareDivisorRow> rows;
    double K_max = 0, K_min = 0;
    double spread() const { return K_min > 0 ? K_max / K_min : 0; }
};
// exact counts by residue classes mod p^2
SquareDivisorReport square_divisor_counts(const ArithPoly& f, const std::vector<long>& primes, long X,
                                          const ExecConfig& cfg = {});

// Moebius and Liouville up to a bound, sieved
class ArithTables {
   public:
    explicit ArithTables(long limit);
    long limit() const { return limit_; }
    int mu(long n) const { return mu_[n]; }
    int lambda(long n) const { return lam_[n]; }

   private:
    long limit_;
    std::vector<signed char> mu_, lam_;
};

}  // namespace ellroot
