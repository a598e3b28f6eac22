// Pins the output formats of the CLI byte for byte.
// ELLROOT_UPDATE_GOLDEN=1 rewrites the files instead of comparing.
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ellroot/cli.hpp"

using namespace ellroot;

namespace {
std::string data(const std::string& name) { return std::string(ELLROOT_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void golden(const std::string& name, const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    INFO(name << ": " << err.str());
    REQUIRE(code == 0);
    std::string path = std::string(ELLROOT_GOLDEN_DIR) + "/" + name;
    if (std::getenv("ELLROOT_UPDATE_GOLDEN")) {
        std::ofstream(path, std::ios::binary) << out.str();
        return;
    }
    CHECK(out.str() == slurp(path));
}
}  // namespace

TEST_CASE("golden: classify") {
    golden("classify_running.json", {"classify", data("running.json")});
    golden("classify_example1.json", {"classify", data("example1.json")});
}

TEST_CASE("golden: scan") { golden("scan_running_box6.csv", {"scan", data("running.json"), "--box", "6"}); }

TEST_CASE("golden: families") {
    golden("families_running.json", {"families", data("running.json"), "--limit", "3", "--box", "300"});
}

TEST_CASE("golden: sieve") {
    golden("sieve_sfl.csv", {"sieve", "--f", "27,4", "--g", "0,1", "--N", "24", "--a", "1", "--b", "1", "--primes",
                             "2,3", "--eps", "1", "--limit", "12", "--box", "300"});
}

TEST_CASE("golden: analytics") {
    golden("analytics_sqf.csv", {"analytics", "--kind", "sqf", "--f", "0,1", "--x-start", "10", "--x-stop", "160",
                                 "--prime-budget", "1000"});
    golden("analytics_constants.csv", {"analytics", "--kind", "constants", "--f", "0,1", "--prime-budget", "1000"});
    golden("analytics_chowla.csv", {"analytics", "--kind", "chowla", "--vars", "2", "--f", "27,4", "--x-start", "10",
                                    "--x-stop", "80"});
    golden("analytics_squarediv.csv",
           {"analytics", "--kind", "squarediv", "--f", "0,1", "--p-max", "11", "--x-start", "50", "--x-stop", "50"});
}

TEST_CASE("golden: constancy certificate") {
    golden("constancy_running.json",
           {"certify-constancy", data("running.json"), "--modulus", "24", "--samples", "8", "--seed", "3"});
}
