#pragma once
// Squarefree and squarefree-Liouville filters over congruence classes, the
// seed classes they run on, and the W+/W- family builder.
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellroot/constancy.hpp"

namespace ellroot {

// outcome of the sieve's own squarefree test
struct SqfParity {
    bool decided = true;  // false when the cofactor is too large to classify
    bool squarefree = false;
    unsigned omega = 0;  // with multiplicity; meaningful when squarefree
};
// trial division while p^3 <= cofactor, then the cofactor has at most two
// prime factors: prime, square of a prime, or product of two primes
SqfParity squarefree_parity(const Int& n);

// u = n v mod modulus for one of the listed n, with v a unit mod modulus
struct RatioClass {
    Int modulus;
    std::vector<Int> residues;
    bool contains(const Int& u, const Int& v) const;
};

struct SieveSpec {
    BinaryForm f;                    // squarefree, primitive
    BinaryForm g;                    // coprime to f; constant 1 when unused
    std::vector<BinaryForm> R;       // sign conditions R_i(u,v) > 0
    std::vector<Int> S;              // distinct primes
    std::vector<int> t, t2;          // prescribed valuations of f and g at S
    Int N = 1;
    Int a = 0, b = 1;
    std::optional<Sign> eps;         // prescribed lambda(f(u,v))
    std::optional<RatioClass> ratio;  // extra congruence on u/v

    // invariant failures, empty when consistent
    std::vector<std::string> check(bool use_g) const;
    // advisory notes (high-degree factors, primes imposed by the filter only)
    std::vector<std::string> notes() const;
};

struct SieveOptions {
    long max_box = 1000;  // |u| <= max_box, 1 <= v <= max_box
    long chunk = 32;      // v-stripes per parallel round
};

struct SieveRun {
    std::vector<std::pair<long, long>> pairs;  // (v,u) order
    long box = 0;
    long v_scanned = 0;    // stripes actually scanned
    long candidates = 0;   // class members examined
    long hits = 0;         // members passing, before truncation
    long undecided = 0;    // values the squarefree test could not classify
    double density() const { return candidates ? static_cast<double>(hits) / candidates : 0.0; }
    std::vector<std::string> notes;
};

// squarefree sieve: g and eps are ignored
SieveRun vasieve_enumerate(const SieveSpec& spec, long limit, const SieveOptions& opt = {}, const ExecConfig& cfg = {});
// squarefree-Liouville sieve: needs eps
SieveRun sfl_enumerate(const SieveSpec& spec, long limit, const SieveOptions& opt = {}, const ExecConfig& cfg = {});
// the same per-pair predicate the enumerators apply
bool sieve_accepts(const SieveSpec& spec, bool use_g, const Int& u, const Int& v);

// a congruence class mod N on which every bad-place value is a unit at every
// prime of N, with a representative in a sign region of R
struct SeedClass {
    Int N = 1;
    Int a = 0, b = 1;
    std::vector<BinaryForm> R;  // sign-adjusted so the chosen region is R_i > 0
    std::map<Int, std::pair<long, long>> per_prime;
};
// extra = (q0, n): additionally a = n, b = 1 mod q0^3
SeedClass seed_class(const EllipticSurface& S, const Int& N, const SignRegionForm& R,
                     const std::optional<std::pair<Int, Int>>& extra = {});

enum class FamilyMode { multiplicative, q0_twist };

struct FamilyFiber {
    long u = 0, v = 0;
    Sign away = 1;  // away-from-delta product of local root numbers
};

struct FamilyOptions {
    long max_box = 1000;
    std::uint64_t seed = 1;
    long constancy_samples = 200;
    std::map<std::string, RatPoly> witnesses;  // mu3/mu4 witnesses keyed by place label
};

struct Families {
    FamilyMode mode = FamilyMode::multiplicative;
    std::vector<FamilyFiber> Wplus, Wminus;  // labelled by the away-from-delta sign
    Int N = 1;           // certified modulus
    Int sieve_N = 1;     // modulus the sieve ran on
    std::optional<Int> q0;
    std::vector<std::string> exempt_places;
    // set when the families were built on the surface at (a u + b v, c u + d v);
    // fibers are reported in the original coordinates
    std::optional<std::array<long, 4>> change_of_variable;
    long cross_pairs = 0;     // predict_variation confirmations
    double density_plus = 0, density_minus = 0;
    std::vector<std::string> notes;
};

// throws HypothesisError naming the failed clause
Families wpm_families(const EllipticSurface& S, long limit, const FamilyOptions& opt = {}, const ExecConfig& cfg = {});

// the gate alone: empty when the family construction applies
std::vector<std::string> family_hypothesis_failures(const EllipticSurface& S,
                                                    const std::map<std::string, RatPoly>& witnesses = {});

}  // namespace ellroot
