#pragma once
// Exact integer kernel: factoring, multiplicative functions, quadratic and
// Hilbert symbols, the delta-stripped symbol, CRT.
#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "ellroot/errors.hpp"

namespace ellroot {

using Int = mpz_class;
using Rat = mpq_class;
using Sign = int;  // always +1 or -1

struct Factorization {
    Int value;
    int sign = 1;
    std::vector<std::pair<Int, unsigned>> factors;  // increasing primes

    unsigned long big_omega() const;
    unsigned long little_omega() const { return factors.size(); }
    unsigned exponent_of(const Int& p) const;
};

struct FactorBudget {
    std::size_t max_bits = 512;
    std::uint64_t rho_steps = 20'000'000;  // Brent iterations, whole call
    std::uint32_t trial_bound = 1u << 16;
};

Factorization factorize(const Int& n, const FactorBudget& budget = {});
bool is_probable_prime(const Int& n);

// primes below 2^22, computed once
const std::vector<std::uint32_t>& small_primes();
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

unsigned valuation(const Int& n, const Int& p);
Int strip_prime(const Int& n, const Int& p);
Int radical(const Int& n);
std::vector<Int> prime_divisors(const Int& n);

Sign liouville(const Int& n);
int moebius(const Int& n);
// n = c^2 * l, l squarefree, c > 0 maximal
std::pair<Int, Int> square_decompose(const Int& n);
Int delta_free_part(const Int& n, const Int& delta);

int jacobi(const Int& a, const Int& b);
Sign hilbert_p(const Int& a, const Int& b, const Int& p);
Sign hilbert_inf(const Int& a, const Int& b);
Sign hilbert_2(const Int& a, const Int& b);
Sign modified_symbol(const Int& a, const Int& b, const Int& delta);

std::pair<Int, Int> crt(const std::vector<std::pair<Int, Int>>& congruences);

inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}
inline bool fits_i64(const Int& a) { return mpz_fits_slong_p(a.get_mpz_t()) != 0; }
inline long to_i64(const Int& a) { return mpz_get_si(a.get_mpz_t()); }
inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

}  // namespace ellroot
