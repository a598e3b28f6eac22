#pragma once
// Elliptic surfaces y^2 = x^3 + A(T) x + B(T) over Q(T): minimal model,
// invariants as binary forms, bad places with Kodaira types, delta.
#include <optional>
#include <string>
#include <vector>

#include "ellroot/polyforms.hpp"

namespace ellroot {

enum class Kod { I0, In, II, III, IV, I0s, Ins, IVs, IIIs, IIs };

struct KodairaType {
    Kod tag = Kod::I0;
    long m = 0;  // index for In and In*

    static KodairaType I(long m) { return m == 0 ? KodairaType{Kod::I0, 0} : KodairaType{Kod::In, m}; }
    static KodairaType Istar(long m) { return m == 0 ? KodairaType{Kod::I0s, 0} : KodairaType{Kod::Ins, m}; }
    static KodairaType parse(const std::string& s);

    bool good() const { return tag == Kod::I0; }
    bool multiplicative() const { return tag == Kod::In; }
    bool additive() const { return !good() && !multiplicative(); }
    // -1 for II, II*, I0*, In*; -2 for III, III*; -3 for IV, IV*; 0 otherwise
    int epsilon() const;
    std::string name() const;
    friend bool operator==(const KodairaType& a, const KodairaType& b) { return a.tag == b.tag && a.m == b.m; }
};

// valuation value for "vanishes identically"
constexpr long kInfValuation = 1L << 40;

// residue characteristic 0 (or p >= 5) table on (v(c4), v(c6), v(disc));
// throws Error on triples that a minimal model cannot produce
KodairaType kodaira_from_valuations(long vc4, long vc6, long vdisc);

struct Place {
    bool infinity = false;
    BinaryForm form;  // V for the place at infinity
    KodairaType type;
    long v_c4 = 0, v_c6 = 0, v_disc = 0;
    int epsilon = 0;
    std::string label() const { return infinity ? "inf" : form.to_string(); }
};

struct SurfaceOptions {
    bool allow_isotrivial = false;
    FactorOptions factor;
};

struct EllipticSurface {
    RatPoly A, B;         // minimal integral Weierstrass coefficients
    RatPoly c4, c6, disc;  // c4 = -A/27, c6 = -B/54, disc = -16(4A^3 + 27B^2)
    int k = 0;
    // integral forms of the fiber model y^2 = x^3 + a4(u,v) x + a6(u,v)
    BinaryForm a4_form, a6_form;             // degrees 4k, 6k
    BinaryForm c4_form, c6_form, disc_form;  // -48 a4, -864 a6, -16(4a4^3 + 27a6^2)
    Int disc_constant;                       // disc_form = disc_constant * prod of place forms^v
    std::vector<Place> places;               // finite places sorted, then infinity if bad
    Int delta;                               // squarefree, divisible by 6
    std::vector<Int> delta_primes;
    BinaryForm B_form, M_form;  // finite bad places, finite multiplicative places
    BinaryForm B_full, M_full;  // same with V when infinity is bad / multiplicative
    bool isotrivial = false;
    std::optional<Rat> j_constant;

    const Place* infinity_place() const;
    bool has_multiplicative() const;
};

EllipticSurface new_surface(const RatPoly& A, const RatPoly& B, const SurfaceOptions& opt = {});

// multiplicity of the place P (primitive irreducible form, V for infinity) in F
long place_valuation(const BinaryForm& F, const BinaryForm& P);
KodairaType classify_place(const EllipticSurface& S, const BinaryForm& P);
Int compute_delta(const EllipticSurface& S);
std::pair<BinaryForm, BinaryForm> bad_forms(const EllipticSurface& S);

// surface whose fiber at (u,v) is the fiber of S at (a u + b v, c u + d v); ad - bc = +-1
EllipticSurface transform(const EllipticSurface& S, const Int& a, const Int& b, const Int& c, const Int& d);

// y^2 = x^3 - 27 P Q^2 x - 54 beta P Q^3 T^N with P = 3 alpha^2 Q^2 + beta^2 T^(2N)
EllipticSurface build_example_surface(const RatPoly& Q, int N, const Int& alpha, const Int& beta);
RatPoly example_P(const RatPoly& Q, int N, const Int& alpha, const Int& beta);
// square root of -3 modulo each irreducible factor of P, from beta T^N / (alpha Q)
RatPoly example_mu3_witness(const BinaryForm& factor, const RatPoly& Q, int N, const Int& alpha, const Int& beta);

enum class MuStatus { verified, refuted, unknown };
struct MuCertificate {
    MuStatus status = MuStatus::unknown;
    // primes where the verified congruence says nothing (denominators, leading coefficient)
    std::vector<Int> exceptional_primes;
    Int refuting_prime = 0;
    Int sample_u = 0, sample_v = 0;
};
// which = 3: Q(mu_3) inside Q[T]/P; which = 4: Q(mu_4) inside Q[T]/P
MuCertificate mu_root_certificate(const BinaryForm& P, int which, const std::optional<RatPoly>& witness = {});

// inverse of a modulo m over Q (gcd must be 1)
RatPoly inverse_mod(const RatPoly& a, const RatPoly& m);

}  // namespace ellroot
