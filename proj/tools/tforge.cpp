// tforge: command-line driver for the scheme / algebra / verify / decompose pipeline.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tforge/named_sets.hpp"
#include "tforge/scheme.hpp"
#include "tforge/structure.hpp"
#include "tforge/talgebra.hpp"
#include "tforge/verify.hpp"

using nlohmann::json;
using namespace tforge;

namespace {

struct RunConfig {
    std::string command;
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    std::string group;
    PointId basepoint = 0;
    std::string emit = "json";
    std::string dump;
    bool allow_large = false;
    std::uint64_t seed = 0x7f0e5eedULL;

    std::string check_axioms = "sampled";
    std::string suite = "all";
    std::string filter;
    std::size_t samples = 200;
    bool transposed = false;
    int corner = -1;
    bool claims = true;
    std::uint64_t nmax = 64;
    bool certify = false;
    std::vector<std::uint64_t> primes{2, 3, 5, 7};
    std::vector<std::uint64_t> ns{4, 8, 16};

    json to_json() const {
        json j{{"command", command}, {"emit", emit}, {"seed", seed}};
        if (command == "scheme") {
            j["group"] = group;
            j["check_axioms"] = check_axioms;
        } else if (command == "sweep") {
            j["primes"] = primes;
            j["ns"] = ns;
            j["allow_large"] = allow_large;
        } else if (command == "semisimple") {
            j["p"] = p;
            j["nmax"] = nmax;
            j["certify"] = certify;
        } else {
            j["p"] = p;
            j["n"] = n;
            j["basepoint"] = basepoint;
            j["allow_large"] = allow_large;
        }
        if (command == "verify") {
            j["suite"] = suite;
            j["filter"] = filter;
            j["samples"] = samples;
            j["transposed"] = transposed;
            if (!group.empty()) j["group"] = group;
        }
        if (command == "decompose") {
            j["corner"] = corner < 0 ? json(nullptr) : json(corner);
            j["claims"] = claims;
        }
        if (command == "algebra" && !dump.empty()) j["dump"] = dump;
        return j;
    }
};

struct Outcome {
    json result;
    bool pass = false;
    std::string text;  // human form, when emit = text or csv
};

int log2_of(std::uint64_t n) {
    if (n < 4 || (n & (n - 1)) != 0)
        throw Error(ErrorCode::Unsupported, "cli", "n must be a power of two >= 4, got " + std::to_string(n));
    int m = 0;
    while ((std::uint64_t{1} << m) < n) ++m;
    return m;
}

std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

// ------------------------------------------------------------- commands

Outcome cmd_scheme(const RunConfig& cfg) {
    if (cfg.group.empty()) throw Error(ErrorCode::Parse, "cli", "scheme needs --group ea2:<m> or table:<path>");
    const GroupSpec g = GroupSpec::parse(cfg.group);
    const TripleSpace ts(g);
    const SchemeDescriptor sd = build_scheme(ts, parse_axiom_check(cfg.check_axioms), cfg.seed);

    bool closed = true;
    json tensor = json::array();
    for (int a = 0; a <= 4; ++a) {
        json plane = json::array();
        for (int b = 0; b <= 4; ++b) {
            json row = json::array();
            for (int c = 0; c <= 4; ++c) {
                row.push_back(sd.p[a][b][c]);
                closed = closed && sd.p[a][b][c] == intersection_closed(a, b, c, sd.n);
            }
            plane.push_back(row);
        }
        tensor.push_back(plane);
    }
    const bool ea2 = is_elementary_abelian_2(g);
    Outcome o;
    o.result = {{"group", g.describe()},  {"n", sd.n},
                {"points", ts.size()},    {"elementary_abelian_2", ea2},
                {"k", sd.k},              {"intersection", tensor},
                {"matches_closed_form", closed}, {"axioms", to_string(sd.checked)},
                {"pairs_checked", sd.pairs_checked}};
    // Axiom violations throw; reaching here means the checks held.
    o.pass = true;
    std::ostringstream os;
    os << "group " << g.describe() << "  |X| = " << ts.size() << "\n";
    os << "k = [" << sd.k[0];
    for (int i = 1; i <= 4; ++i) os << "," << sd.k[i];
    os << "]\naxioms checked: " << to_string(sd.checked) << " (" << sd.pairs_checked << " pairs)\n";
    os << "closed-form intersection numbers: " << (closed ? "match" : "differ") << "\n";
    for (int i = 0; i <= 4; ++i) {
        os << "p^" << i << ":\n";
        for (int a = 0; a <= 4; ++a) {
            os << " ";
            for (int b = 0; b <= 4; ++b) os << " " << sd.p[a][b][i];
            os << "\n";
        }
    }
    o.text = os.str();
    return o;
}

Outcome cmd_algebra(const RunConfig& cfg) {
    const int m = log2_of(cfg.n);
    if (cfg.n >= 32 && !cfg.allow_large)
        throw Error(ErrorCode::Unsupported, "cli", "closure at n >= 32 needs --allow-large");
    auto ctx = TerwilligerContext::build(GroupSpec::elementary_abelian_2(m), cfg.p, cfg.basepoint);
    const std::size_t dim_t0 = t0_basis(*ctx).rank();
    const AlgebraHandle alg = closure_generate(ctx);

    const auto basis = paper_basis(*ctx);
    const BasisClaim claim = basis_claim(alg, "B", basis);
    const bool basis_ok = claim.spans_T && !claim.list_dependent;

    std::vector<std::size_t> corner_dims;
    for (int a = 0; a <= 4; ++a) corner_dims.push_back(corner_subalgebra(alg, ctx->E(a)).dim());

    if (!cfg.dump.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.dump);
        auto write = [&](const std::string& name, const GFMatrix& mtx) {
            std::ofstream f(fs::path(cfg.dump) / name);
            if (!f) throw Error(ErrorCode::Io, "cli", "cannot write " + name);
            write_matrix(f, mtx);
        };
        for (int i = 0; i <= 4; ++i) {
            write("A" + std::to_string(i) + ".txt", ctx->A(i));
            write("E" + std::to_string(i) + ".txt", ctx->E(i));
        }
        char buf[32];
        for (std::size_t i = 0; i < alg.dim(); ++i) {
            std::snprintf(buf, sizeof buf, "T%03zu.txt", i);
            write(buf, alg.element(i));
        }
    }

    Outcome o;
    o.result = {{"p", cfg.p},
                {"n", cfg.n},
                {"basepoint", cfg.basepoint},
                {"dim_T", alg.dim()},
                {"dim_T0", dim_t0},
                {"corner_dims", corner_dims},
                {"basis_ok", basis_ok},
                {"paper_basis_size", basis.size()},
                {"closure", {{"passes", alg.certificate.passes}, {"products", alg.certificate.products}}}};
    o.pass = basis_ok;
    std::ostringstream os;
    os << "T(x) over GF(" << cfg.p << "), n = " << cfg.n << ", x = " << cfg.basepoint << "\n"
       << "dim T = " << alg.dim() << "  dim T0 = " << dim_t0 << "\n"
       << "corner dims = [" << join(corner_dims) << "]\n"
       << "paper basis (" << basis.size() << " elements): " << (basis_ok ? "ok" : "MISMATCH") << "\n";
    o.text = os.str();
    return o;
}

Outcome cmd_verify(const RunConfig& cfg) {
    std::shared_ptr<const TerwilligerContext> ctx;
    if (!cfg.group.empty()) {
        ctx = TerwilligerContext::build(GroupSpec::parse(cfg.group), cfg.p, cfg.basepoint);
    } else {
        ctx = TerwilligerContext::build(GroupSpec::elementary_abelian_2(log2_of(cfg.n)), cfg.p, cfg.basepoint);
    }
    verify::RunOptions opt;
    opt.filter = cfg.filter;
    opt.seed = cfg.seed;
    opt.samples = cfg.samples;
    opt.transposed = cfg.transposed;
    verify::Report r;
    if (cfg.suite == "identities") {
        r = verify::run_identities(*ctx, opt);
    } else if (cfg.suite == "predicates") {
        r = verify::run_predicates(*ctx, opt);
    } else if (cfg.suite == "all") {
        r = verify::run_all(*ctx, opt);
    } else {
        throw Error(ErrorCode::Parse, "cli", "unknown suite '" + cfg.suite + "'");
    }
    Outcome o;
    o.result = r.to_json();
    o.pass = r.pass();
    std::ostringstream os;
    for (const auto& e : r.entries) {
        os << verify::to_string(e.status) << "\t" << e.id << "\t" << e.anchor << "\t" << e.checks << " checks\n";
        for (const auto& f : e.failures) os << "    " << f << "\n";
    }
    os << r.count(verify::Status::Pass) << " passed, " << r.count(verify::Status::Fail) << " failed, "
       << r.count(verify::Status::Skipped) << " skipped\n";
    o.text = os.str();
    return o;
}

std::string decompose_text(const DecompositionReport& r) {
    std::ostringstream os;
    os << "(p,n) = (" << r.p << "," << r.n << ")  " << r.label.name() << "\n"
       << "dim T = " << r.dim_T << "  dim Rad = " << r.dim_rad << " (" << r.certificate.candidate << ")\n"
       << "T/Rad T = M_" << join(r.blocks, " + M_") << "\n"
       << "certificate: ideal " << r.certificate.ideal.pass << " nilpotent " << r.certificate.nilpotent.pass
       << " units " << r.certificate.units.pass << " dims " << r.certificate.dims.pass
       << (r.partial ? "  (partial)" : "") << "\n"
       << "semisimple " << r.semisimple << "  closed form " << r.closed_form << "\n";
    for (const auto& c : r.corners)
        os << "E" << c.a << "* T E" << c.a << "*: dim " << c.dim << ", rad " << c.radical_dim << ", blocks ["
           << join(c.blocks) << "], certified " << c.certified << ", projection " << c.projection_matches << "\n";
    for (const auto& b : r.claims)
        os << "basis claim " << b.name << ": listed " << b.listed << ", distinct " << b.distinct << ", rank " << b.rank
           << (b.list_dependent ? ", list dependent" : "") << (b.set_dependent ? ", set dependent" : "")
           << (b.spans_T ? ", spans T" : ", does not span T") << (b.applicable ? "" : " (not applicable here)")
           << "\n";
    os << (r.pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

Outcome cmd_decompose(const RunConfig& cfg) {
    log2_of(cfg.n);
    DecomposeOptions opt;
    opt.allow_large = cfg.allow_large;
    opt.basis_claims = cfg.claims;
    if (cfg.corner >= 0) opt.corner_filter = {cfg.corner};
    const DecompositionReport r = decompose(cfg.p, cfg.n, cfg.basepoint, opt);
    Outcome o;
    o.result = r.to_json();
    o.pass = r.pass();
    o.text = decompose_text(r);
    return o;
}

Outcome cmd_semisimple(const RunConfig& cfg) {
    Outcome o;
    o.pass = true;
    json rows = json::array();
    std::ostringstream os;
    os << "n\tcase\tsemisimple" << (cfg.certify ? "\tcertified" : "") << "\n";
    for (std::uint64_t n = 4; n <= cfg.nmax; n *= 2) {
        const CaseLabel c = classify_case(cfg.p, n);
        const bool ss = semisimple_closed_form(cfg.p, n);
        json row{{"n", n}, {"case", c.name()}, {"semisimple", ss}};
        os << n << "\t" << c.name() << "\t" << (ss ? "yes" : "no");
        if (cfg.certify && n <= 16) {
            DecomposeOptions opt;
            opt.basis_claims = false;
            const auto r = decompose(cfg.p, n, 0, opt);
            const bool agree = r.pass() && r.semisimple == ss;
            row["certified"] = r.pass();
            row["dim_rad"] = r.dim_rad;
            o.pass = o.pass && agree;
            os << "\t" << (agree ? "agrees" : "DISAGREES") << " (dim Rad " << r.dim_rad << ")";
        }
        os << "\n";
        rows.push_back(std::move(row));
    }
    o.result = {{"p", cfg.p}, {"rows", rows}};
    o.text = os.str();
    return o;
}

Outcome cmd_sweep(const RunConfig& cfg) {
    Outcome o;
    o.pass = true;
    json rows = json::array();
    std::ostringstream csv;
    csv << "p,n,case,dim_T,dim_rad,blocks,semisimple,certified\n";
    for (auto p : cfg.primes)
        for (auto n : cfg.ns) {
            DecomposeOptions opt;
            opt.allow_large = cfg.allow_large;
            opt.basis_claims = false;
            const auto r = decompose(p, n, 0, opt);
            o.pass = o.pass && r.pass();
            rows.push_back({{"p", p},
                            {"n", n},
                            {"case", r.label.name()},
                            {"dim_T", r.dim_T},
                            {"dim_rad", r.dim_rad},
                            {"blocks", r.blocks},
                            {"semisimple", r.semisimple},
                            {"certified", r.pass()}});
            csv << p << "," << n << "," << r.label.name() << "," << r.dim_T << "," << r.dim_rad << ",\""
                << join(r.blocks) << "\"," << (r.semisimple ? "true" : "false") << ","
                << (r.pass() ? "true" : "false") << "\n";
        }
    o.result = {{"rows", rows}};
    o.text = csv.str();
    return o;
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) out.push_back(std::stoull(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terwilliger algebras of Cayley-table schemes over GF(p)"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string primes = "2,3,5,7", ns = "4,8,16";

    auto common = [&](CLI::App* sub, bool with_pn) {
        sub->add_option("--emit", cfg.emit, "json | text | csv")->check(CLI::IsMember({"json", "text", "csv"}));
        sub->add_option("--seed", cfg.seed, "seed for sampled checks");
        if (with_pn) {
            sub->add_option("--p", cfg.p, "prime")->required();
            sub->add_option("--n", cfg.n, "group order 2^m");
            sub->add_option("--basepoint", cfg.basepoint, "basepoint id");
        }
    };

    auto* scheme = app.add_subcommand("scheme", "build the scheme and print valencies and intersection numbers");
    common(scheme, false);
    scheme->add_option("--group", cfg.group, "ea2:<m> | table:<path>")->required();
    scheme->add_option("--check-axioms", cfg.check_axioms, "none | sampled | full");

    auto* algebra = app.add_subcommand("algebra", "generate T(x) by closure");
    common(algebra, true);
    algebra->add_flag("--allow-large", cfg.allow_large, "permit closure at n >= 32");
    algebra->add_option("--dump", cfg.dump, "write generator and basis matrices to this directory");

    auto* verify = app.add_subcommand("verify", "run the identity / predicate registry");
    common(verify, true);
    verify->add_option("--suite", cfg.suite, "identities | predicates | all");
    verify->add_option("--filter", cfg.filter, "id prefix");
    verify->add_option("--samples", cfg.samples, "sampled pairs per predicate at n > 4");
    verify->add_flag("--transposed", cfg.transposed, "check the transposed identities");
    verify->add_option("--group", cfg.group, "ea2:<m> | table:<path> instead of --n");

    auto* manifest = app.add_subcommand("manifest", "list the registry entries");
    common(manifest, false);

    auto* dec = app.add_subcommand("decompose", "certify Rad T and the Wedderburn blocks");
    common(dec, true);
    dec->add_flag("--allow-large", cfg.allow_large, "full closure at n >= 32");
    dec->add_option("--corner", cfg.corner, "only this corner E_a* T E_a*")->check(CLI::Range(0, 4));
    dec->add_flag("!--no-claims", cfg.claims, "skip the basis-claim ranks");

    auto* ss = app.add_subcommand("semisimple", "closed-form semisimplicity table");
    common(ss, false);
    ss->add_option("--p", cfg.p, "prime")->required();
    ss->add_option("--nmax", cfg.nmax, "largest n");
    ss->add_flag("--certify", cfg.certify, "also run decompose for n <= 16");

    auto* sweep = app.add_subcommand("sweep", "decompose over a grid");
    common(sweep, false);
    sweep->add_option("--primes", primes, "comma-separated primes");
    sweep->add_option("--ns", ns, "comma-separated n");
    sweep->add_flag("--allow-large", cfg.allow_large, "full closure at n >= 32");

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.primes = parse_list(primes);
    cfg.ns = parse_list(ns);
    if (cfg.command == "manifest") {
        if (cfg.emit != "json") {
            std::cout << verify::manifest_text();
            return 0;
        }
        json arr = json::array();
        for (const auto& e : verify::registry_manifest())
            arr.push_back({{"id", e.id}, {"kind", e.kind}, {"hypothesis", e.hypothesis}, {"quantifier", e.quantifier},
                           {"anchor", e.anchor}});
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    if (cfg.command != "scheme" && cfg.command != "semisimple" && cfg.command != "sweep" && cfg.n == 0 &&
        cfg.group.empty()) {
        std::cerr << "--n is required\n";
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };
    json env{{"command", cfg.command}, {"config", cfg.to_json()}};
    try {
        Outcome o;
        if (cfg.command == "scheme") o = cmd_scheme(cfg);
        else if (cfg.command == "algebra") o = cmd_algebra(cfg);
        else if (cfg.command == "verify") o = cmd_verify(cfg);
        else if (cfg.command == "decompose") o = cmd_decompose(cfg);
        else if (cfg.command == "semisimple") o = cmd_semisimple(cfg);
        else o = cmd_sweep(cfg);

        if (cfg.emit == "json") {
            env["result"] = std::move(o.result);
            env["duration_ms"] = elapsed();
            env["pass"] = o.pass;
            std::cout << env.dump(2) << "\n";
        } else {
            std::cout << o.text;
        }
        return o.pass ? 0 : 1;
    } catch (const Error& e) {
        env["error"] = {{"code", to_string(e.code())}, {"stage", e.stage()}, {"message", e.what()}};
        env["duration_ms"] = elapsed();
        env["pass"] = false;
        std::cout << env.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        env["error"] = {{"code", "Internal"}, {"stage", "cli"}, {"message", e.what()}};
        env["duration_ms"] = elapsed();
        env["pass"] = false;
        std::cout << env.dump(2) << "\n";
        return 2;
    }
}
