#pragma once
// Integral fiber models E_{u,v}, local data at p >= 5 and Rohrlich's local
// root numbers.
#include <string>
#include <vector>

#include "ellroot/parallel.hpp"
#include "ellroot/surface.hpp"

namespace ellroot {

struct FiberCurve {
    Int u, v;
    Int c4, c6, disc;  // 1728 disc = c4^3 - c6^2
    // integers whose prime divisors cover those of disc; empty means factor disc itself
    std::vector<Int> support_hint;
    std::vector<std::string> warnings;

    // a curve given only by its invariants (no surface behind it)
    static FiberCurve from_invariants(const Int& c4, const Int& c6);
};

struct LocalDatum {
    Int p;
    KodairaType type;
    Sign wp = 1;
};

FiberCurve fiber_at(const EllipticSurface& S, const Int& u, const Int& v);
FiberCurve minimalize_at(const FiberCurve& F, const Int& p);
KodairaType kodaira_at_p(const FiberCurve& F, const Int& p);
Sign rohrlich_wp(const FiberCurve& F, const Int& p);

// primes p not dividing delta with p | disc, increasing
std::vector<Int> away_primes(const FiberCurve& F, const Int& delta, const FactorBudget& budget = {});
// minimalized local data at those primes
std::vector<LocalDatum> local_data(const FiberCurve& F, const Int& delta, const FactorBudget& budget = {});
Sign root_away_from_delta(const FiberCurve& F, const Int& delta, const FactorBudget& budget = {});

struct FullRoot {
    bool supported = false;
    Sign value = 1;
};
// needs 2 and 3 prime to disc; otherwise unsupported
FullRoot full_root_number(const FiberCurve& F, const FactorBudget& budget = {});

struct ScanRow {
    long u = 0, v = 0;
    Int disc;
    std::vector<Int> place_values;  // P(u,v) per place, surface order
    Sign away = 1;
    FullRoot full;
};
// all coprime (u,v) with |u| <= box, 1 <= v <= box and nonsingular fiber, (v,u) order
std::vector<ScanRow> scan_fibers(const EllipticSurface& S, long box, const ExecConfig& cfg = {});

}  // namespace ellroot
