#include "ellroot/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ellroot/analytics.hpp"
#include "ellroot/sieve.hpp"

namespace ellroot {

using nlohmann::json;

namespace {

json jint(const Int& x) {
    if (fits_i64(x)) return to_i64(x);
    return x.get_str();
}

json jrat(const Rat& r) { return r.get_den() == 1 ? jint(r.get_num()) : json(r.get_str()); }

json jpoly(const RatPoly& p) {
    json a = json::array();
    for (auto& c : p.c) a.push_back(jrat(c));
    return a;
}

json jform(const BinaryForm& f) {
    return {{"text", f.to_string()}, {"degree", f.degree}, {"coefficients_by_U_power", [&] {
                 json a = json::array();
                 for (auto& c : f.coef) a.push_back(jint(c));
                 return a;
             }()}};
}

Rat parse_rat(const json& e) {
    try {
        if (e.is_number_integer()) return Rat(Int(e.get<long>()));
        if (e.is_string()) {
            Rat r(e.get<std::string>());
            r.canonicalize();
            return r;
        }
        if (e.is_array() && e.size() == 2 && !e[1].is_null()) {
            Rat r(parse_rat(e[0]) / parse_rat(e[1]));
            return r;
        }
    } catch (const std::invalid_argument&) {
    } catch (const json::exception&) {
    }
    throw ParseError("bad coefficient " + e.dump());
}

RatPoly parse_poly(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + " must be an array of coefficients");
    std::vector<Rat> c;
    for (auto& e : j) c.push_back(parse_rat(e));
    return RatPoly(c);
}

long parse_long(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ParseError(what + " must be an integer");
    return j.get<long>();
}

BinaryForm form_from(const std::vector<Int>& c) {
    if (c.empty()) throw DomainError("empty coefficient list");
    return BinaryForm(static_cast<int>(c.size()) - 1, c);
}

std::pair<Int, Int> parse_pair(const std::string& s) {
    auto v = parse_int_list(s);
    if (v.size() != 2) throw ParseError("expected u,v but got '" + s + "'");
    return {v[0], v[1]};
}

std::string ratio_text(long u, long v) {
    long g = std::gcd(u, v);
    if (g == 0) return "0";
    u /= g, v /= g;
    if (v < 0) u = -u, v = -v;
    return v == 1 ? std::to_string(u) : std::to_string(u) + "/" + std::to_string(v);
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

struct RunConfig {
    std::string surface_path;
    long box = 10;
    long limit = 10;
    long prime_budget = 100000;
    int threads = 0;
    std::uint64_t seed = 1;
    std::string out;
};

ExecConfig exec_of(const RunConfig& rc) {
    return rc.threads == 1 ? ExecConfig{Exec::serial, 1} : ExecConfig{Exec::parallel, rc.threads};
}

void emit(const RunConfig& rc, std::ostream& out, const std::string& text) {
    if (rc.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(rc.out, std::ios::binary);
    if (!f) throw ParseError("cannot write " + rc.out);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<long> ladder(long start, long stop, double factor) {
    if (start < 0 || stop < start) throw DomainError("bad X schedule");
    if (factor <= 1) throw DomainError("ladder factor must exceed 1");
    std::vector<long> xs;
    for (double x = static_cast<double>(start); x <= stop + 0.5; x *= factor) {
        long r = std::lround(x);
        if (xs.empty() || r != xs.back()) xs.push_back(r);
        if (start == 0) break;
    }
    return xs;
}

// --- commands ---

std::string cmd_classify(const RunConfig& rc) {
    auto in = load_surface(rc.surface_path);
    return dump(classify_json(in.surface));
}

std::string cmd_scan(const RunConfig& rc) {
    if (rc.box < 0) throw DomainError("box must be nonnegative");
    auto in = load_surface(rc.surface_path);
    std::ostringstream os;
    os << "# ellroot.scan v1\n";
    os << "u,v,t,disc,away_sign,full_root\n";
    if (rc.box == 0) return os.str();
    for (auto& r : scan_fibers(in.surface, rc.box, exec_of(rc))) {
        os << r.u << ',' << r.v << ',' << ratio_text(r.u, r.v) << ',' << r.disc.get_str() << ',' << r.away << ','
           << (r.full.supported ? std::to_string(r.full.value) : std::string("NA")) << '\n';
    }
    return os.str();
}

std::string cmd_families(const RunConfig& rc) {
    auto in = load_surface(rc.surface_path);
    FamilyOptions fo;
    fo.max_box = rc.box;
    fo.seed = rc.seed;
    fo.witnesses = in.witnesses;
    auto fam = wpm_families(in.surface, rc.limit, fo, exec_of(rc));
    const auto& S = in.surface;
    auto listing = [&](const std::vector<FamilyFiber>& xs, const char* label) {
        json a = json::array();
        for (auto& x : xs) {
            Sign direct = root_away_from_delta(fiber_at(S, x.u, x.v), S.delta);
            a.push_back({{"u", x.u},
                         {"v", x.v},
                         {"t", ratio_text(x.u, x.v)},
                         {"relative_sign", x.away},
                         {"certificates", {{"family", label}, {"direct_away_sign", direct}}}});
        }
        return a;
    };
    json j = {{"schema", "ellroot.families/1"},
              {"mode", fam.mode == FamilyMode::multiplicative ? "multiplicative" : "q0_twist"},
              {"certified_modulus", jint(fam.N)},
              {"sieve_modulus", jint(fam.sieve_N)},
              {"q0", fam.q0 ? jint(*fam.q0) : json(nullptr)},
              {"exempt_places", fam.exempt_places},
              {"change_of_variable", fam.change_of_variable ? json(*fam.change_of_variable) : json(nullptr)},
              {"cross_pairs_confirmed", fam.cross_pairs},
              {"density", {{"box", rc.box}, {"plus", fam.density_plus}, {"minus", fam.density_minus}}},
              {"notes", fam.notes},
              {"W_plus", listing(fam.Wplus, "+")},
              {"W_minus", listing(fam.Wminus, "-")}};
    return dump(j);
}

struct VariationArgs {
    std::string pair1, pair2, mode = "same";
    std::string q0, modulus;
};

int cmd_variation(const RunConfig& rc, const VariationArgs& va, std::ostream& out, std::ostream& err) {
    auto in = load_surface(rc.surface_path);
    const auto& S = in.surface;
    if (va.mode != "same" && va.mode != "twist") throw ParseError("mode must be same or twist");
    Int N = va.modulus.empty() ? candidate_modulus(S, 6, 200, rc.seed, exec_of(rc)).N : Int(va.modulus);
    auto ctx = variation_context(S, N, in.witnesses);
    std::optional<Int> q0;
    if (!va.q0.empty()) q0 = Int(va.q0);
    auto w = check_variation(S, ctx, parse_pair(va.pair1), parse_pair(va.pair2),
                             va.mode == "same" ? VariationMode::same_class : VariationMode::q0_twist, q0);
    json hyp = json::array();
    for (auto& h : w.hypotheses) hyp.push_back({{"name", h.name}, {"pass", h.pass}, {"detail", h.detail}});
    json j = {{"schema", "ellroot.variation/1"},
              {"modulus", jint(N)},
              {"pair1", {jint(w.pair1.first), jint(w.pair1.second)}},
              {"pair2", {jint(w.pair2.first), jint(w.pair2.second)}},
              {"mode", va.mode},
              {"q0", w.q0 ? jint(*w.q0) : json(nullptr)},
              {"hypotheses", hyp},
              {"predicted_relation", w.predicted_relation},
              {"direct_relation", w.direct_relation},
              {"confirmed", w.confirmed()}};
    emit(rc, out, dump(j));
    if (!w.all_pass()) {
        for (auto& h : w.hypotheses)
            if (!h.pass) err << "hypothesis failed: " << h.name << ": " << h.detail << "\n";
        return kExitHypothesis;
    }
    return w.confirmed() ? kExitOk : kExitFailure;
}

struct SieveArgs {
    std::string f, g;
    std::vector<std::string> R;
    std::string N = "1", a = "0", b = "1";
    std::string primes, t, t2;
    std::optional<int> eps;
};

std::string cmd_sieve(const RunConfig& rc, const SieveArgs& sa, std::ostream& err) {
    SieveSpec sp;
    sp.f = form_from(parse_int_list(sa.f));
    if (!sa.g.empty()) sp.g = form_from(parse_int_list(sa.g));
    for (auto& r : sa.R) sp.R.push_back(form_from(parse_int_list(r)));
    sp.N = Int(sa.N);
    sp.a = Int(sa.a);
    sp.b = Int(sa.b);
    if (!sa.primes.empty()) sp.S = parse_int_list(sa.primes);
    auto ints = [&](const std::string& s) {
        std::vector<int> v;
        if (!s.empty())
            for (auto& x : parse_int_list(s)) v.push_back(static_cast<int>(to_i64(x)));
        if (v.empty()) v.assign(sp.S.size(), 0);
        return v;
    };
    sp.t = ints(sa.t);
    sp.t2 = ints(sa.t2);
    if (sa.eps) sp.eps = *sa.eps;
    SieveOptions so;
    so.max_box = rc.box;
    auto run = sa.eps ? sfl_enumerate(sp, rc.limit, so, exec_of(rc)) : vasieve_enumerate(sp, rc.limit, so, exec_of(rc));
    for (auto& n : run.notes) err << "note: " << n << "\n";
    std::ostringstream os;
    os << "# ellroot.sieve v1 box=" << run.box << " candidates=" << run.candidates << " hits=" << run.hits
       << " undecided=" << run.undecided << "\n";
    os << "u,v\n";
    for (auto [u, v] : run.pairs) os << u << ',' << v << '\n';
    return os.str();
}

struct AnalyticsArgs {
    std::string kind, f, g;
    int h = 1;
    std::string N = "1", a = "0", b = "0";
    int eps = 0;
    long x_start = 100, x_stop = 1000;
    double x_factor = 2;
    long p_max = 97;
    std::vector<std::string> sectors;
};

ArithPoly arith_from(const AnalyticsArgs& aa, const std::string& coefs) {
    auto c = parse_int_list(coefs);
    if (aa.h == 1) return ArithPoly::univariate(c);
    if (aa.h == 2) return ArithPoly::binary(form_from(c));
    throw DomainError("h must be 1 or 2");
}

std::string cmd_analytics(const RunConfig& rc, const AnalyticsArgs& aa) {
    static const std::vector<std::string> kinds = {"sqf", "chowla", "T", "squarediv", "constants"};
    if (std::find(kinds.begin(), kinds.end(), aa.kind) == kinds.end())
        throw ParseError("unknown analytics kind '" + aa.kind + "' (sqf, chowla, T, squarediv, constants)");
    if (aa.f.empty()) throw ParseError("--f is required");
    auto f = arith_from(aa, aa.f);
    Progression A{aa.h, Int(aa.N), Int(aa.a), Int(aa.b)};
    auto cfg = exec_of(rc);
    std::ostringstream os;
    os << "# ellroot.analytics." << aa.kind << " v1 f=" << f.to_string() << " N=" << aa.N << " a=" << aa.a
       << " b=" << aa.b << "\n";
    if (aa.kind == "constants") {
        os << "prime_bound,C,low,high\n";
        for (long B = 10; B <= rc.prime_budget; B *= 10) {
            auto C = euler_constant(f, B, A);
            os << B << ',' << fmt(C.value) << ',' << fmt(C.low) << ',' << fmt(C.high) << '\n';
        }
        return os.str();
    }
    auto xs = ladder(aa.x_start, aa.x_stop, aa.x_factor);
    if (aa.kind == "squarediv") {
        std::vector<long> ps;
        for (auto p : primes_up_to(static_cast<std::uint32_t>(aa.p_max))) ps.push_back(p);
        os << "X,p,count,K\n";
        for (long X : xs)
            for (auto& row : square_divisor_counts(f, ps, X, cfg).rows)
                os << X << ',' << row.p << ',' << row.count << ',' << fmt(row.K) << '\n';
        return os.str();
    }
    if (aa.kind == "chowla") {
        std::vector<HalfPlane> hp;
        for (auto& s : aa.sectors) {
            auto ab = parse_pair(s);
            hp.push_back({to_i64(ab.first), to_i64(ab.second)});
        }
        os << "X,sum,normalized\n";
        for (long X : xs) {
            long s = chowla_sum(f, A, X, hp, cfg);
            double norm = X ? s / std::pow(static_cast<double>(X), aa.h) : 0;
            os << X << ',' << s << ',' << fmt(norm) << '\n';
        }
        return os.str();
    }
    os << "X,count,predicted_low,predicted_high,ratio\n";
    for (long X : xs) {
        CountReport r;
        if (aa.kind == "sqf") {
            r = count_sqf(f, A, X, rc.prime_budget, cfg);
        } else {
            if (aa.h != 2) throw DomainError("kind T needs h = 2");
            if (aa.g.empty()) throw ParseError("--g is required for kind T");
            r = count_T(f.form, form_from(parse_int_list(aa.g)), A, aa.eps, X, rc.prime_budget, cfg);
        }
        os << X << ',' << r.count << ',' << fmt(r.predicted_low) << ',' << fmt(r.predicted_high) << ','
           << fmt(r.ratio) << '\n';
    }
    return os.str();
}

struct ConstancyArgs {
    std::string modulus;
    long samples = 500;
};

int cmd_certify(const RunConfig& rc, const ConstancyArgs& ca, std::ostream& out) {
    auto in = load_surface(rc.surface_path);
    const auto& S = in.surface;
    auto cfg = exec_of(rc);
    Int N = ca.modulus.empty() ? candidate_modulus(S, 6, 200, rc.seed, cfg).N : Int(ca.modulus);
    ConstancyOptions co;
    co.seed = rc.seed;
    auto cert = verify_local_constancy(S, N, sign_region_form(S), ca.samples, co, cfg);
    json factors = json::array();
    for (auto& f : cert.R.factors) factors.push_back(f.to_string());
    json viol = json::array();
    for (auto& v : cert.violations)
        viol.push_back({{"pair1", {v.u1, v.v1}}, {"pair2", {v.u2, v.v2}}, {"what", v.what}});
    json samples = json::array();
    for (auto& [p, q] : cert.samples) samples.push_back({{p.first, p.second}, {q.first, q.second}});
    json ex = json::array();
    auto exempt = h_exemptions(S, in.witnesses);
    for (std::size_t i = 0; i < exempt.size(); ++i)
        if (exempt[i].exempt) ex.push_back({{"place", S.places[i].label()}, {"reason", exempt[i].reason}});
    json j = {{"schema", "ellroot.constancy/1"},
              {"modulus", jint(cert.N)},
              {"sign_factors", factors},
              {"seed", cert.seed},
              {"samples_tested", cert.samples_tested},
              {"violations", viol},
              {"passed", cert.passed()},
              {"h_exempt_places", ex},
              {"samples", samples}};
    emit(rc, out, dump(j));
    return cert.passed() ? kExitOk : kExitFailure;
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DomainError*>(&e)) return kExitParse;
    if (dynamic_cast<const ScopeError*>(&e)) return kExitScope;
    if (dynamic_cast<const HypothesisError*>(&e)) return kExitHypothesis;
    if (dynamic_cast<const BudgetExceeded*>(&e)) return kExitBudget;
    if (dynamic_cast<const json::exception*>(&e) || dynamic_cast<const std::invalid_argument*>(&e)) return kExitParse;
    return kExitFailure;
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw ParseError("empty entry in '" + s + "'");
        item = item.substr(b, e - b + 1);
        Int x;
        if (x.set_str(item, 10) != 0) throw ParseError("not an integer: '" + item + "'");
        out.push_back(x);
    }
    return out;
}

SurfaceInput parse_surface(const json& j) {
    if (!j.is_object()) throw ParseError("surface descriptor must be a JSON object");
    SurfaceInput in;
    if (j.contains("example")) {
        const auto& e = j.at("example");
        if (!e.is_object()) throw ParseError("example must be an object");
        RatPoly Q = parse_poly(e.at("Q"), "Q");
        int N = static_cast<int>(parse_long(e.at("N"), "N"));
        Int alpha = parse_long(e.value("alpha", json(1)), "alpha"), beta = parse_long(e.value("beta", json(1)), "beta");
        in.surface = build_example_surface(Q, N, alpha, beta);
        for (auto& pl : in.surface.places) {
            if (pl.infinity || !pl.type.additive()) continue;
            try {
                in.witnesses[pl.label()] = example_mu3_witness(pl.form, Q, N, alpha, beta);
            } catch (const Error&) {
                // not a factor of P; nothing to attach
            }
        }
    } else {
        if (!j.contains("A") || !j.contains("B")) throw ParseError("descriptor needs \"A\" and \"B\"");
        in.surface = new_surface(parse_poly(j.at("A"), "A"), parse_poly(j.at("B"), "B"));
    }
    if (j.contains("witnesses")) {
        if (!j.at("witnesses").is_object()) throw ParseError("witnesses must be an object");
        for (auto& [label, w] : j.at("witnesses").items()) in.witnesses[label] = parse_poly(w, "witness " + label);
    }
    return in;
}

SurfaceInput load_surface(const std::string& path) {
    if (path.empty()) throw ParseError("a surface descriptor path is required");
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": malformed JSON: " + e.what());
    }
    return parse_surface(j);
}

json classify_json(const EllipticSurface& S) {
    json places = json::array();
    for (auto& pl : S.places)
        places.push_back({{"label", pl.label()},
                          {"infinity", pl.infinity},
                          {"degree", pl.infinity ? 1 : pl.form.degree},
                          {"type", pl.type.name()},
                          {"v_c4", pl.v_c4 >= kInfValuation ? json("inf") : json(pl.v_c4)},
                          {"v_c6", pl.v_c6 >= kInfValuation ? json("inf") : json(pl.v_c6)},
                          {"v_disc", pl.v_disc},
                          {"epsilon", pl.epsilon}});
    json dp = json::array();
    for (auto& p : S.delta_primes) dp.push_back(jint(p));
    return {{"schema", "ellroot.classify/1"},
            {"A", jpoly(S.A)},
            {"B", jpoly(S.B)},
            {"k", S.k},
            {"isotrivial", S.isotrivial},
            {"places", places},
            {"delta", jint(S.delta)},
            {"delta_primes", dp},
            {"B_form", jform(S.B_form)},
            {"M_form", jform(S.M_form)},
            {"B_full", jform(S.B_full)},
            {"M_full", jform(S.M_full)}};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ellroot: root numbers in families of elliptic curves"};
    app.require_subcommand(1);
    RunConfig rc;
    VariationArgs va;
    SieveArgs sa;
    AnalyticsArgs aa;
    ConstancyArgs ca;
    std::optional<int> eps_opt;

    auto common = [&](CLI::App* sub, bool surface) {
        if (surface) sub->add_option("surface", rc.surface_path, "surface descriptor JSON")->required();
        sub->add_option("--box", rc.box, "box bound");
        sub->add_option("--limit", rc.limit, "number of results");
        sub->add_option("--prime-budget", rc.prime_budget, "prime bound for Euler products");
        sub->add_option("--threads", rc.threads, "worker threads (1 = serial)");
        sub->add_option("--seed", rc.seed, "sampling seed");
        sub->add_option("--out", rc.out, "output file (default stdout)");
    };
    auto* classify = app.add_subcommand("classify", "places, Kodaira types and delta");
    common(classify, true);
    auto* scan = app.add_subcommand("scan", "CSV of fibers over the box");
    common(scan, true);
    auto* families = app.add_subcommand("families", "W+ / W- families");
    common(families, true);
    auto* variation = app.add_subcommand("variation", "check a variation witness between two fibers");
    common(variation, true);
    variation->add_option("--pair1", va.pair1, "u,v")->required();
    variation->add_option("--pair2", va.pair2, "u,v")->required();
    variation->add_option("--mode", va.mode, "same or twist");
    variation->add_option("--q0", va.q0, "twist prime");
    variation->add_option("--modulus", va.modulus, "certified modulus (default: searched)");
    auto* sieve = app.add_subcommand("sieve", "squarefree / squarefree-Liouville enumeration");
    common(sieve, false);
    sieve->add_option("--f", sa.f, "form coefficients by U power")->required();
    sieve->add_option("--g", sa.g, "second form");
    sieve->add_option("--R", sa.R, "sign-condition forms R > 0");
    sieve->add_option("--N", sa.N, "modulus");
    sieve->add_option("--a", sa.a, "u residue");
    sieve->add_option("--b", sa.b, "v residue");
    sieve->add_option("--primes", sa.primes, "primes with prescribed valuations");
    sieve->add_option("--t", sa.t, "valuations of f");
    sieve->add_option("--t2", sa.t2, "valuations of g");
    sieve->add_option("--eps", eps_opt, "lambda(f) sign; switches to the Liouville sieve");
    auto* analytics = app.add_subcommand("analytics", "squarefree and Liouville statistics ladders");
    common(analytics, false);
    analytics->add_option("--kind", aa.kind, "sqf, chowla, T, squarediv or constants")->required();
    analytics->add_option("--f", aa.f, "coefficients (t powers, or U powers when h = 2)");
    analytics->add_option("--g", aa.g, "second form for kind T");
    analytics->add_option("--vars", aa.h, "number of variables");
    analytics->add_option("--N", aa.N, "progression modulus");
    analytics->add_option("--a", aa.a, "progression residue");
    analytics->add_option("--b", aa.b, "second residue");
    analytics->add_option("--eps", aa.eps, "lambda(f) sign for kind T, 0 for none");
    analytics->add_option("--x-start", aa.x_start, "first X");
    analytics->add_option("--x-stop", aa.x_stop, "last X");
    analytics->add_option("--x-factor", aa.x_factor, "geometric ladder factor");
    analytics->add_option("--p-max", aa.p_max, "largest prime for squarediv");
    analytics->add_option("--sector", aa.sectors, "half-plane alpha,beta (alpha u + beta v > 0)");
    auto* certify = app.add_subcommand("certify-constancy", "sample the local constancy certificate");
    common(certify, true);
    certify->add_option("--modulus", ca.modulus, "modulus (default: searched)");
    certify->add_option("--samples", ca.samples, "sample pairs");

    std::vector<const char*> argv{"ellroot"};
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    try {
        if (rc.limit < 0 || rc.box < 0 || rc.prime_budget < 2 || rc.threads < 0)
            throw DomainError("bounds must be positive");
        if (*classify) emit(rc, out, cmd_classify(rc));
        if (*scan) emit(rc, out, cmd_scan(rc));
        if (*families) emit(rc, out, cmd_families(rc));
        if (*variation) return cmd_variation(rc, va, out, err);
        if (*sieve) {
            sa.eps = eps_opt;
            emit(rc, out, cmd_sieve(rc, sa, err));
        }
        if (*analytics) emit(rc, out, cmd_analytics(rc, aa));
        if (*certify) return cmd_certify(rc, ca, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitOk;
}

}  // namespace ellroot
