#pragma once
// Empirical certification that the symbol part of the root number is
// constant on congruence classes intersected with sign regions, plus the
// variation predicates built on top of it.
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellroot/rootformula.hpp"

namespace ellroot {

struct SignRegionForm {
    BinaryForm R;                       // product of the factors kept for the key
    std::vector<BinaryForm> factors;    // primitive, sign-changing
    std::vector<BinaryForm> dropped;    // definite factors of even degree
    std::vector<int> key(const Int& u, const Int& v) const;  // signs, 0 on a factor
    bool all_positive(const Int& u, const Int& v) const;
};
SignRegionForm sign_region_form(const EllipticSurface& S);

// every bad-place value is a unit at every prime of N
bool admissible(const EllipticSurface& S, const Int& N, const Int& u, const Int& v);

struct ConstancyViolation {
    long u1 = 0, v1 = 0, u2 = 0, v2 = 0;
    std::string what;
};

struct ConstancyCertificate {
    Int N = 1;
    SignRegionForm R;
    std::uint64_t seed = 0;
    long samples_tested = 0;
    std::vector<std::pair<std::pair<long, long>, std::pair<long, long>>> samples;
    std::vector<ConstancyViolation> violations;
    bool passed() const { return samples_tested > 0 && violations.empty(); }
    bool untested() const { return samples_tested == 0; }
};

struct ConstancyOptions {
    std::uint64_t seed = 1;
    bool check_direct = true;  // also compare direct away products corrected by lambda(M) and h
    long window = 3;           // members a + N i, b + N j with |i|, j <= window
};

ConstancyCertificate verify_local_constancy(const EllipticSurface& S, const Int& N, const SignRegionForm& R,
                                            long sample_count, const ConstancyOptions& opt = {},
                                            const ExecConfig& cfg = {});

struct ModulusSearch {
    Int N;
    std::map<Int, int> alpha;  // exponent per prime of delta
};
// N = prod p^alpha_p over delta primes, alpha_2 >= 3, alpha_3 >= 1, each alpha <= cap
ModulusSearch candidate_modulus(const EllipticSurface& S, int cap = 6, long samples = 200, std::uint64_t seed = 1,
                                const ExecConfig& cfg = {});

// places whose h is identically +1: I0*, and additive places with a verified
// mu3 / mu4 certificate whose exceptional primes lie in delta
struct PlaceExemption {
    bool exempt = false;
    std::string reason;
};
std::vector<PlaceExemption> h_exemptions(const EllipticSurface& S,
                                         const std::map<std::string, RatPoly>& witnesses = {});

struct Q0Choice {
    Int q0, n;
};
// q0 outside excluded, q0^2 || Q(n), q0 does not divide Pnum(n), q0^-2 Pnum(n) Q(n) = 1 mod q0
Q0Choice find_q0(const RatPoly& Pnum, const RatPoly& Q, const std::vector<Int>& excluded, long prime_bound = 2000);
bool q0_conditions(const RatPoly& Pnum, const RatPoly& Q, const Int& q0, const Int& n);
// residues n mod q0^3 with q0^2 || Q(n) and q0^-2 Pnum(n) Q(n) a nonzero square mod q0
std::vector<Int> q0_classes(const RatPoly& Pnum, const RatPoly& Q, const Int& q0);

// -c6 / Q^3 for an I_m* place Q, as a form and dehomogenized
BinaryForm twist_cofactor(const EllipticSurface& S, const Place& Q);

enum class VariationMode { same_class, q0_twist };

struct HypothesisCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VariationWitness {
    std::pair<Int, Int> pair1, pair2;
    std::optional<Int> q0;
    VariationMode mode = VariationMode::same_class;
    std::vector<HypothesisCheck> hypotheses;
    Sign predicted_relation = 1;
    Sign direct_relation = 1;  // away1 * away2
    bool all_pass() const;
    bool confirmed() const { return all_pass() && predicted_relation == direct_relation; }
};

struct VariationContext {
    Int N = 1;
    SignRegionForm R;
    std::vector<PlaceExemption> exempt;
    std::optional<std::size_t> twist_place;  // index of Q0 for q0-twist mode
};
VariationContext variation_context(const EllipticSurface& S, const Int& N,
                                   const std::map<std::string, RatPoly>& witnesses = {});

// evaluates every hypothesis; never throws on failure
VariationWitness check_variation(const EllipticSurface& S, const VariationContext& ctx,
                                 std::pair<Int, Int> pair1, std::pair<Int, Int> pair2, VariationMode mode,
                                 std::optional<Int> q0 = {});
// throws HypothesisError naming the failed hypotheses
VariationWitness predict_variation(const EllipticSurface& S, const VariationContext& ctx,
                                   std::pair<Int, Int> pair1, std::pair<Int, Int> pair2, VariationMode mode,
                                   std::optional<Int> q0 = {});

}  // namespace ellroot
