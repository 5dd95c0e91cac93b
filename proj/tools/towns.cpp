// towns: construct, check, bound, search and certify (a,b)-town families.
//
// Exit codes: 0 success, 1 property violation, 2 usage or parse error,
// 3 search budget exhausted.

#include "towns/algebra.hpp"
#include "towns/bounds.hpp"
#include "towns/cache.hpp"
#include "towns/constructions.hpp"
#include "towns/search.hpp"
#include "towns/setcore.hpp"
#include "towns/table.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace towns;
using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

auto read_family(const std::string& path) -> Family
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_family(buf.str());
    }
    catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

auto sets_json(const Family& f) -> json
{
    auto sets = json::array();
    for (const auto& s : f.members())
        sets.push_back(s.elements());
    return sets;
}

auto violation_json(const Violation& v) -> json
{
    json j;
    j["kind"] = v.kind == Violation::Kind::set_size ? "set_size" : "pair_intersection";
    j["first"] = v.first + 1;
    j["second"] = v.second + 1;
    j["observed"] = v.observed;
    j["residue"] = v.residue;
    return j;
}

// Shared flags.
struct Common {
    bool json = false;
};

struct ConstructArgs {
    std::string generator;
    int a = 0, b = 0, k = 3, n = 0, m = 0;
    std::string input;
    std::string out;
};

auto run_construct(const ConstructArgs& args, const Common& common) -> int
{
    Family family{TownSpec{}};
    std::string label = args.generator;
    if (args.generator == "block")
        family = block_construction(args.m, args.k, args.n);
    else if (args.generator == "star")
        family = star(args.a, args.b, args.k, args.n);
    else if (args.generator == "co-star")
        family = co_star(args.a, args.b, args.k, args.n);
    else if (args.generator == "fo")
        family = frankl_odlyzko(args.k, args.n);
    else if (args.generator == "augment")
        family = augment(read_family(args.input), args.m);
    else {
        auto best = best_lower_bound(args.a, args.b, args.k, args.n);
        family = std::move(best.family);
        label = best.generator;
    }

    auto report = check_town(family);
    if (!args.out.empty()) {
        std::ofstream out(args.out, std::ios::trunc);
        if (!out)
            throw UsageError("cannot write " + args.out);
        out << render_family(family);
    }

    if (common.json) {
        json j;
        j["generator"] = label;
        j["spec"] = to_string(family.spec());
        j["size"] = family.size();
        j["check"] = report.pass ? "pass" : "fail";
        if (!args.out.empty())
            j["file"] = args.out;
        else
            j["sets"] = sets_json(family);
        std::cout << j.dump() << '\n';
    }
    else if (!args.out.empty()) {
        std::cout << label << ": " << family.size() << " sets written to " << args.out
                  << ", check " << (report.pass ? "pass" : "fail") << '\n';
    }
    else {
        std::cout << render_family(family);
        std::cout << "# " << label << ": " << family.size() << " sets, check " << (report.pass ? "pass" : "fail")
                  << '\n';
    }
    return report.pass ? exit_ok : exit_violation;
}

auto run_check(const std::string& path, const Common& common) -> int
{
    auto family = read_family(path);
    auto report = check_town(family);
    if (common.json) {
        json j;
        j["spec"] = to_string(family.spec());
        j["size"] = family.size();
        j["pass"] = report.pass;
        auto v = json::array();
        for (const auto& x : report.violations)
            v.push_back(violation_json(x));
        j["violations"] = std::move(v);
        std::cout << j.dump() << '\n';
    }
    else {
        std::cout << (report.pass ? "pass" : "fail") << ": " << family.size() << " sets, "
                  << to_string(family.spec()) << '\n';
        for (const auto& v : report.violations)
            std::cout << "  " << describe(v, family.spec()) << '\n';
    }
    return report.pass ? exit_ok : exit_violation;
}

auto run_bound(int a, int b, int k, int n, const Common& common) -> int
{
    TownSpec::make(n, k, a, b);
    auto result = bound_oracle(a, b, k, n);
    if (common.json) {
        std::cout << to_json(result) << '\n';
        return exit_ok;
    }
    std::cout << "upper bound " << result.bound.expr.render() << " = " << to_decimal(result.bound.value)
              << (result.tight ? " (tight)" : "") << '\n';
    for (const auto& r : result.rules) {
        std::cout << "  " << rule_name(r.id);
        if (r.p)
            std::cout << " p=" << r.p;
        std::cout << ": " << r.bound.expr.render() << " = " << to_decimal(r.bound.value) << (r.tight ? " (tight)" : "")
                  << '\n';
    }
    return exit_ok;
}

struct SearchArgs {
    int a = 0, b = 0, k = 3, n = 0;
    std::string cache = "towns-cache.jsonl";
    bool no_cache = false;
    bool force = false;
    std::uint64_t max_nodes = SearchBudget{}.max_nodes;
    double max_time = 300.0;
    unsigned threads = 1;
    bool no_symmetry = false;
    std::string out;
};

auto options_from(const SearchArgs& args) -> SearchOptions
{
    SearchOptions opt;
    opt.budget.max_nodes = args.max_nodes;
    opt.budget.max_time = std::chrono::milliseconds(static_cast<long long>(args.max_time * 1000.0));
    opt.symmetry = !args.no_symmetry;
    opt.threads = std::max(1U, args.threads);
    return opt;
}

auto run_search(const SearchArgs& args, const Common& common) -> int
{
    auto spec = TownSpec::make(args.n, args.k, args.a, args.b);
    std::optional<ResultCache> cache;
    if (!args.no_cache)
        cache.emplace(args.cache);

    json j;
    j["a"] = spec.a;
    j["b"] = spec.b;
    j["k"] = spec.k;
    j["n"] = spec.n;

    std::optional<CacheEntry> hit;
    if (cache && !args.force)
        if (auto e = cache->lookup(spec); e && e->status == SearchStatus::optimal)
            hit = e;

    int code = exit_ok;
    if (hit) {
        j["size"] = hit->size;
        j["status"] = to_string(hit->status);
        j["cached"] = true;
        j["nodes"] = hit->nodes;
        j["elapsed_ms"] = hit->elapsed_ms;
        j["witness_file"] = hit->witness_file;
        if (!args.out.empty())
            std::filesystem::copy_file(hit->witness_file, args.out, std::filesystem::copy_options::overwrite_existing);
    }
    else {
        auto result = extremal_search(spec, options_from(args));
        j["size"] = result.size;
        j["status"] = to_string(result.status);
        j["cached"] = false;
        j["tripped"] = to_string(result.tripped);
        j["nodes"] = result.nodes_explored;
        j["elapsed_ms"] = result.elapsed.count();
        if (cache) {
            // Never let a weaker result shadow a stored optimum.
            auto prior = cache->lookup(spec);
            if (result.optimal() || !prior || prior->status != SearchStatus::optimal)
                j["witness_file"] = cache->record(result).witness_file;
        }
        if (!args.out.empty()) {
            std::ofstream out(args.out, std::ios::trunc);
            out << render_family(result.witness);
        }
        if (!result.optimal())
            code = exit_budget;
    }

    if (common.json)
        std::cout << j.dump() << '\n';
    else {
        std::cout << to_string(spec) << ": size " << j["size"].get<int>() << ", " << j["status"].get<std::string>();
        if (hit)
            std::cout << " (cached)";
        else if (j["tripped"] != "none")
            std::cout << ", " << j["tripped"].get<std::string>() << " budget exhausted";
        std::cout << ", " << j["nodes"].get<std::uint64_t>() << " nodes, " << j["elapsed_ms"].get<std::int64_t>()
                  << " ms\n";
        if (j.contains("witness_file"))
            std::cout << "witness: " << j["witness_file"].get<std::string>() << '\n';
    }
    return code;
}

auto run_certify(const std::string& path, int p, const Common& common) -> int
{
    auto family = read_family(path);
    const auto& spec = family.spec();
    if (p == 2)
        throw UsageError("certificates need an odd prime, got p = 2");
    if (!is_prime(p) || spec.k % p != 0)
        throw UsageError("p = " + std::to_string(p) + " is not a prime divisor of k = " + std::to_string(spec.k));
    if (!check_town(family).pass)
        throw UsageError(path + " is not a valid town; run check first");

    bool same = residue(spec.a - spec.b, p) == 0;
    auto cert = same ? isotropy_certificate(family, p) : independence_certificate(family, p);
    if (common.json)
        std::cout << to_json(cert) << '\n';
    else {
        std::cout << (same ? "isotropy" : "independence") << " certificate over GF(" << p << "²), r = " << cert.r
                  << ": rank " << cert.rank << ", |F| = " << cert.size;
        if (same)
            std::cout << ", dimension bound " << cert.dimension_bound;
        std::cout << ", Gram " << (same ? "0" : "(a−b)·I") << (cert.gram_matches ? " matches" : " differs") << ", "
                  << (cert.holds ? "holds" : "fails") << '\n';
    }
    return cert.holds ? exit_ok : exit_violation;
}

auto run_table(int k, int n, bool eval, bool csv, const std::string& cache_path, const Common& common) -> int
{
    TownSpec::make(n, k, 0, 0);
    std::optional<ResultCache> cache;
    if (!cache_path.empty() && std::filesystem::exists(cache_path))
        cache.emplace(cache_path);
    auto cells = table_cells(k, n, cache ? &*cache : nullptr);
    if (common.json)
        std::cout << to_json(cells) << '\n';
    else if (csv)
        std::cout << render_table_csv(cells, eval);
    else
        std::cout << render_table_markdown(cells, eval);
    return exit_ok;
}

auto run_probe(int k, int n_max, const SearchArgs& args, const Common& common) -> int
{
    auto report = probe_conjectures(k, n_max, options_from(args));
    if (common.json) {
        json j;
        j["k"] = k;
        j["n_max"] = n_max;
        j["cells_computed"] = report.cells_computed;
        j["cells_optimal"] = report.cells_optimal;
        j["monotone_checks"] = report.monotone_checks;
        j["linear_checks"] = report.linear_checks;
        auto findings = json::array();
        for (const auto& f : report.counterexamples)
            findings.push_back({{"conjecture", f.conjecture}, {"detail", f.detail}, {"witness", sets_json(f.witness)}});
        j["counterexamples"] = std::move(findings);
        std::cout << j.dump() << '\n';
    }
    else {
        std::cout << report.cells_optimal << "/" << report.cells_computed << " cells optimal, "
                  << report.monotone_checks << " monotone checks, " << report.linear_checks << " linear checks, "
                  << report.counterexamples.size() << " counterexamples\n";
        for (const auto& f : report.counterexamples)
            std::cout << "  " << f.conjecture << ": " << f.detail << '\n' << render_family(f.witness);
    }
    return exit_ok;
}

void add_spec_positionals(CLI::App* cmd, int& a, int& b, int& k, int& n)
{
    cmd->add_option("a", a, "set size residue")->required();
    cmd->add_option("b", b, "intersection residue")->required();
    cmd->add_option("k", k, "modulus")->required()->check(CLI::PositiveNumber);
    cmd->add_option("n", n, "ground set size")->required()->check(CLI::NonNegativeNumber);
}

void add_budget_flags(CLI::App* cmd, SearchArgs& args)
{
    cmd->add_option("--max-nodes", args.max_nodes, "node budget");
    cmd->add_option("--max-time", args.max_time, "time budget in seconds");
    cmd->add_option("--threads", args.threads, "worker threads for seeded stages");
    cmd->add_flag("--no-symmetry", args.no_symmetry, "disable cardinality-class seeding");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact engine for (a,b)-town mod k families"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_flag("--json", common.json, "structured JSON output");

    ConstructArgs cons;
    auto* construct = app.add_subcommand("construct", "generate a family");
    construct->require_subcommand(1);
    construct->fallthrough();
    auto* c_block = construct->add_subcommand("block", "block construction");
    c_block->add_option("m", cons.m)->required();
    c_block->add_option("k", cons.k)->required();
    c_block->add_option("n", cons.n)->required();
    auto* c_star = construct->add_subcommand("star", "star family");
    add_spec_positionals(c_star, cons.a, cons.b, cons.k, cons.n);
    auto* c_costar = construct->add_subcommand("co-star", "complemented star family");
    add_spec_positionals(c_costar, cons.a, cons.b, cons.k, cons.n);
    auto* c_fo = construct->add_subcommand("fo", "Hadamard block family for a = b = 0");
    c_fo->add_option("k", cons.k)->required();
    c_fo->add_option("n", cons.n)->required();
    auto* c_aug = construct->add_subcommand("augment", "shift a (0,0) family to (m,m)");
    c_aug->add_option("m", cons.m)->required();
    c_aug->add_option("file", cons.input)->required();
    auto* c_best = construct->add_subcommand("best", "largest applicable construction");
    add_spec_positionals(c_best, cons.a, cons.b, cons.k, cons.n);
    for (auto* sub : {c_block, c_star, c_costar, c_fo, c_aug, c_best}) {
        sub->add_option("-o,--out", cons.out, "write the family file here");
        sub->fallthrough();
        sub->callback([&cons, sub] { cons.generator = sub->get_name(); });
    }

    std::string check_file;
    auto* check = app.add_subcommand("check", "verify the town property of a family file");
    check->add_option("file", check_file)->required();

    int ba = 0, bb = 0, bk = 3, bn = 0;
    auto* bound = app.add_subcommand("bound", "best proven upper bound");
    add_spec_positionals(bound, ba, bb, bk, bn);

    SearchArgs search_args;
    auto* search = app.add_subcommand("search", "exact extremal size by maximum clique");
    add_spec_positionals(search, search_args.a, search_args.b, search_args.k, search_args.n);
    search->add_option("--cache", search_args.cache, "JSONL result cache");
    search->add_flag("--no-cache", search_args.no_cache, "neither read nor write the cache");
    search->add_flag("--force", search_args.force, "ignore cached optimal results");
    search->add_option("-o,--out", search_args.out, "write the witness family here");
    add_budget_flags(search, search_args);

    std::string cert_file;
    int cert_p = 0;
    auto* certify = app.add_subcommand("certify", "finite-field certificate for a family file");
    certify->add_option("file", cert_file)->required();
    certify->add_option("p", cert_p, "odd prime dividing k")->required();

    int tk = 3, tn = 0;
    bool t_eval = false, t_csv = false;
    std::string t_cache = "towns-cache.jsonl";
    auto* table = app.add_subcommand("table", "bounds for every (a,b) at one n");
    table->add_option("k", tk)->required()->check(CLI::PositiveNumber);
    table->add_option("n", tn)->required()->check(CLI::NonNegativeNumber);
    table->add_flag("--eval", t_eval, "numeric values instead of expressions");
    table->add_flag("--csv", t_csv, "CSV instead of markdown");
    table->add_option("--cache", t_cache, "JSONL result cache for exact values");

    int pk = 3, pn = 0;
    SearchArgs probe_args;
    auto* probe = app.add_subcommand("probe-conjectures", "test conjectures on computed extremal values");
    probe->add_option("k", pk)->required()->check(CLI::PositiveNumber);
    probe->add_option("n_max", pn)->required()->check(CLI::NonNegativeNumber);
    add_budget_flags(probe, probe_args);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*construct)
            return run_construct(cons, common);
        if (*check)
            return run_check(check_file, common);
        if (*bound)
            return run_bound(ba, bb, bk, bn, common);
        if (*search)
            return run_search(search_args, common);
        if (*certify)
            return run_certify(cert_file, cert_p, common);
        if (*table)
            return run_table(tk, tn, t_eval, t_csv, t_cache, common);
        if (*probe)
            return run_probe(pk, pn, probe_args, common);
    }
    catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_budget;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
