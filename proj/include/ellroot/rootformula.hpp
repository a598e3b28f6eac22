#pragma once
// Decomposition of the away-from-delta root number of a fiber into
// lambda(M), one symbol g_P per bad place and one corrective h_P per bad place.
#include <functional>
#include <string>
#include <vector>

#include "ellroot/fiber.hpp"

namespace ellroot {

// reduction type at p of the fiber when p | P(u,v) exactly n times, p outside delta
KodairaType monodromy_type(const KodairaType& generic, long n);
// length of the period of monodromy_type in n (1, 2, 3, 4 or 6; 0 for In, In*)
int monodromy_period(const KodairaType& generic);

Sign g_P(const EllipticSurface& S, const Place& place, const Int& u, const Int& v);
Sign h_P(const EllipticSurface& S, const Place& place, const Int& u, const Int& v);

struct RootDecomposition {
    Int u, v;
    Sign lambda_M = 1;
    std::vector<Sign> g_values, h_values;  // surface place order
    Sign away_product_predicted = 1;
    Sign away_product_direct = 1;
    Sign surface_sign = 1;
    Sign formula_product() const;  // lambda_M * prod g * prod h
};

// surface_sign is the constant applied to the formula product
RootDecomposition decompose(const EllipticSurface& S, const Int& u, const Int& v, Sign surface_sign = 1);

struct MonodromyObservation {
    Int p;
    std::size_t place = 0;
    long n = 0;
    KodairaType predicted, observed;
};
// every p outside delta dividing disc of the fiber, with its place, predicted and observed type
std::vector<MonodromyObservation> observe_monodromy(const EllipticSurface& S, const Int& u, const Int& v);

struct DecompositionMismatch {
    long u = 0, v = 0;
    std::string detail;
};
struct DecompositionReport {
    long tested = 0, matched = 0;
    Sign surface_sign = 1;
    std::vector<DecompositionMismatch> mismatches;  // sorted by (v, u)
};
using PairFilter = std::function<bool(long u, long v)>;
// all coprime (u,v), |u| <= box, 1 <= v <= box, nonsingular, passing the filter
DecompositionReport verify_decomposition(const EllipticSurface& S, long box, const PairFilter& filter = {},
                                         const ExecConfig& cfg = {});

}  // namespace ellroot
