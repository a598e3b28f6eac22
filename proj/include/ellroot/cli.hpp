#pragma once
// Command-line front end. run_cli is the whole program; main() only forwards
// to it, so tests can drive every command in-process.
//
// Exit codes: 0 ok, 1 other failure, 2 parse or domain error, 3 out of scope,
// 4 hypothesis failure, 5 budget exceeded.
#include <exception>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ellroot/surface.hpp"
#include "json.hpp"

namespace ellroot {

constexpr int kExitOk = 0, kExitFailure = 1, kExitParse = 2, kExitScope = 3, kExitHypothesis = 4, kExitBudget = 5;

int exit_code_for(const std::exception& e);

struct SurfaceInput {
    EllipticSurface surface;
    std::map<std::string, RatPoly> witnesses;  // mu3 / mu4 witnesses by place label
};

// {"A": [...], "B": [...]} with coefficients low to high; entries are integers,
// decimal strings "p" or "p/q", or [p, q]. Optional "witnesses": {label: [...]}.
// Alternatively {"example": {"Q": [...], "N": n, "alpha": a, "beta": b}}, which
// also attaches the mu3 witnesses of its additive places.
SurfaceInput parse_surface(const nlohmann::json& j);
SurfaceInput load_surface(const std::string& path);

nlohmann::json classify_json(const EllipticSurface& S);

// "27,4" -> {27, 4}
std::vector<Int> parse_int_list(const std::string& s);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ellroot
