// fgx: generate Fibonacci-graph expressions, predict and verify their
// complexity, and run the optimality oracles.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fgx/analytics.hpp"
#include "fgx/graph.hpp"
#include "fgx/methods.hpp"
#include "fgx/prng.hpp"
#include "fgx/reduction.hpp"

using json = nlohmann::ordered_json;
using namespace fgx;

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSizeGuard = 3;

enum class CliMethod { seq, dfs, dls, reduction, redopt, deco, gd };

const std::vector<std::pair<CliMethod, const char*>> kMethodOrder = {
    {CliMethod::seq, "seq"},   {CliMethod::dfs, "dfs"},   {CliMethod::dls, "dls"},
    {CliMethod::reduction, "reduction"}, {CliMethod::redopt, "redopt"}, {CliMethod::deco, "deco"},
    {CliMethod::gd, "gd"},
};

std::string method_token(CliMethod m) {
    for (const auto& [id, name] : kMethodOrder)
        if (id == m) return name;
    return "?";
}

CliMethod parse_method(const std::string& s) {
    static const std::map<std::string, CliMethod> aliases = {
        {"seq", CliMethod::seq},        {"sequential", CliMethod::seq},
        {"dfs", CliMethod::dfs},        {"dls", CliMethod::dls},
        {"reduction", CliMethod::reduction}, {"red", CliMethod::reduction},
        {"redopt", CliMethod::redopt},  {"reduction-optimal", CliMethod::redopt},
        {"deco", CliMethod::deco},      {"decomposition", CliMethod::deco},
        {"decomposition-optimal", CliMethod::deco},
        {"gd", CliMethod::gd},
    };
    auto it = aliases.find(s);
    if (it == aliases.end()) throw CLI::ValidationError("--method", "unknown method '" + s + "'");
    return it->second;
}

std::optional<MethodId> recurrence_id(CliMethod m) {
    switch (m) {
        case CliMethod::seq: return MethodId::sequential;
        case CliMethod::dfs: return MethodId::dfs;
        case CliMethod::dls: return MethodId::dls;
        case CliMethod::reduction: return MethodId::reduction_optimal;  // balanced schedules
        case CliMethod::redopt: return MethodId::reduction_optimal;
        case CliMethod::deco: return MethodId::decomposition_optimal;
        case CliMethod::gd: return std::nullopt;
    }
    return std::nullopt;
}

bool is_exponential(CliMethod m) {
    return m == CliMethod::seq || m == CliMethod::dfs || m == CliMethod::dls ||
           m == CliMethod::reduction || m == CliMethod::redopt;
}

struct Range {
    int lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(text);
            return {v, v};
        }
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        if (lo > hi || lo < 1) throw std::invalid_argument("empty range");
        return {lo, hi};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--n", "malformed size or range '" + text + "' (want N or A..B)");
    }
}

struct GenConfig {
    CliMethod method;
    int n = 0;
    int m = 2;
    std::uint64_t seed = 0;
    Direction direction = Direction::direct;
    std::string strategy = "middle-floor";
    Heavier heavier = Heavier::joint;
    std::optional<int> cap;
    bool force = false;
};

ChoiceFn strategy_from_name(const std::string& name) {
    if (name == "middle-floor") return middle_floor_strategy();
    if (name == "middle-ceil") return middle_ceil_strategy();
    if (name.rfind("fixed:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(name.substr(6));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--strategy", "bad fixed offset in '" + name + "'");
        }
        if (k < 1) throw CLI::ValidationError("--strategy", "fixed offset must be >= 1");
        return fixed_offset_strategy(k);
    }
    throw CLI::ValidationError("--strategy", "unknown strategy '" + name + "'");
}

Expr generate(const GenConfig& cfg) {
    GenOptions opts;
    opts.cap = cfg.cap.value_or(is_exponential(cfg.method) ? 28 : kPolyCap);
    opts.force = cfg.force;
    switch (cfg.method) {
        case CliMethod::seq: return gen_sequential(cfg.n, opts);
        case CliMethod::dfs: return gen_dfs(cfg.n, cfg.direction, opts);
        case CliMethod::dls: return gen_dls(cfg.n, cfg.direction, opts);
        case CliMethod::reduction: {
            if (cfg.n > opts.cap && !opts.force)
                throw SizeGuardError("gen_reduction: n = " + std::to_string(cfg.n) + " exceeds the size cap " +
                                     std::to_string(opts.cap) + "; force to override");
            if (cfg.n < 4) return gen_reduction(cfg.n, Schedule{});
            return gen_reduction(cfg.n, make_schedule(cfg.n, cfg.seed));
        }
        case CliMethod::redopt: return gen_reduction_optimal(cfg.n, cfg.heavier, opts);
        case CliMethod::deco: return gen_decomposition(cfg.n, strategy_from_name(cfg.strategy), opts);
        case CliMethod::gd: return gen_gd(cfg.n, {.m = cfg.m}, opts);
    }
    throw std::logic_error("unreachable");
}

std::string json_count(Count c) { return c.str(); }

void put_count(json& j, const char* key, Count c) {
    if (c.fits_u64() && c.as_u64() <= (std::uint64_t{1} << 53))
        j[key] = c.as_u64();
    else
        j[key] = json_count(c);
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const GenConfig& cfg, const std::string& format, bool verify, bool timing) {
    auto start = std::chrono::steady_clock::now();
    Expr e = generate(cfg);
    ComplexityReport r = complexity(e);
    Count products = product_count(e);

    // cross-check against the recurrence whenever one applies; a custom
    // decomposition strategy need not attain the optimal counts
    bool middle = cfg.strategy == "middle-floor" || cfg.strategy == "middle-ceil";
    if (auto mid = recurrence_id(cfg.method); mid && (cfg.method != CliMethod::deco || middle)) {
        auto [t, p] = predicted_counts(*mid, cfg.n);
        if (t != r.terms || p != r.plus_ops) {
            std::cerr << "verification failure: measured (" << r.terms << ", " << r.plus_ops
                      << ") differs from predicted (" << t << ", " << p << ")\n";
            return kExitVerifyFailure;
        }
    }

    std::string verified = "skipped";
    if (verify) {
        if (cfg.n <= 15) {
            verified = expand(e) == enumerate_paths(fib_graph(cfg.n)) ? "pass" : "fail";
        } else {
            std::cerr << "note: --verify skipped, expansion check is limited to n <= 15\n";
        }
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (format == "json") {
        json j;
        j["method"] = method_token(cfg.method);
        j["n"] = cfg.n;
        if (cfg.method == CliMethod::gd) j["m"] = cfg.m;
        if (cfg.method == CliMethod::reduction) j["seed"] = cfg.seed;
        put_count(j, "terms", r.terms);
        put_count(j, "plus_ops", r.plus_ops);
        put_count(j, "products", products);
        j["expr"] = render(e);
        j["verified"] = verified;
        if (timing) j["wall_time"] = wall;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << render(e) << "\n";
        std::cerr << "T=" << r.terms << " P=" << r.plus_ops << " products=" << products
                  << " verified=" << verified << "\n";
        if (timing) std::cerr << "wall_time=" << wall << "s\n";
    }
    if (verified == "fail") return kExitVerifyFailure;
    return 0;
}

// ---------------------------------------------------------------------------
// table

int cmd_table(const Range& range, const std::vector<CliMethod>& methods, const std::string& format) {
    struct Row {
        std::string method;
        int n;
        Count t, p;
    };
    std::vector<Row> rows;
    for (CliMethod m : methods) {
        auto mid = recurrence_id(m);
        if (!mid || m == CliMethod::reduction) continue;  // only the five recurrence-backed methods
        for (int n = range.lo; n <= range.hi; ++n) {
            auto [t, p] = predicted_counts(*mid, n);
            rows.push_back({method_token(m), n, t, p});
        }
    }

    if (format == "csv") {
        std::cout << "method,n,terms,plus_ops\n";
        for (const Row& r : rows)
            std::cout << r.method << ',' << r.n << ',' << r.t << ',' << r.p << "\n";
    } else if (format == "json") {
        json arr = json::array();
        for (const Row& r : rows) {
            json j;
            j["method"] = r.method;
            j["n"] = r.n;
            put_count(j, "terms", r.t);
            put_count(j, "plus_ops", r.p);
            arr.push_back(j);
        }
        std::cout << arr.dump() << "\n";
    } else {
        std::cout << "| method | n | T | P |\n|---|---|---|---|\n";
        for (const Row& r : rows)
            std::cout << "| " << r.method << " | " << r.n << " | " << r.t << " | " << r.p << " |\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOutcome {
    int pass = 0, fail = 0, skip = 0;
    std::string first_counterexample;

    void record(const std::string& cell, bool ok, const std::string& detail) {
        if (ok) {
            ++pass;
        } else {
            ++fail;
            if (first_counterexample.empty()) first_counterexample = cell + ": " + detail;
        }
    }
};

int cmd_verify(const Range& range, const std::vector<CliMethod>& methods, std::set<std::string> checks,
               std::uint64_t seed, int gd_m, bool inject_fault) {
    VerifyOutcome out;
    std::cout << "method n expand counts eval roundtrip\n";
    bool injected = false;
    for (CliMethod m : methods) {
        for (int n = range.lo; n <= range.hi; ++n) {
            std::vector<std::pair<std::string, GenConfig>> variants;
            if (m == CliMethod::gd) {
                std::set<int> parts;
                for (int mm : {2, 3, 4, n - 1})
                    if (mm >= 2 && mm <= n - 1) parts.insert(mm);
                if (gd_m >= 2 && gd_m <= n - 1) parts.insert(gd_m);
                for (int mm : parts) {
                    GenConfig c;
                    c.method = m;
                    c.n = n;
                    c.m = mm;
                    c.seed = seed;
                    variants.emplace_back(method_token(m) + "(m=" + std::to_string(mm) + ")", c);
                }
            } else {
                GenConfig c;
                c.method = m;
                c.n = n;
                c.seed = seed;
                variants.emplace_back(method_token(m), c);
            }

            for (const auto& [label, cfg] : variants) {
                std::string cell = label + " n=" + std::to_string(n);
                if (is_exponential(m) && n > 28) {
                    std::cout << label << ' ' << n << " skip skip skip skip\n";
                    out.skip += 4;
                    continue;
                }
                Expr e = generate(cfg);
                if (inject_fault && !injected) {
                    // test hook: corrupt the first expression so failures surface
                    e = Expr::sum({e, Expr::term(TermKind::a, 1)});
                    injected = true;
                }
                std::string row = label + ' ' + std::to_string(n);

                auto run_check = [&](const char* name, bool applicable, auto&& fn) {
                    if (!checks.contains(name)) {
                        row += " -";
                        return;
                    }
                    if (!applicable) {
                        row += " skip";
                        ++out.skip;
                        return;
                    }
                    bool ok = false;
                    std::string detail;
                    try {
                        detail = fn();
                        ok = detail.empty();
                    } catch (const std::exception& ex) {
                        detail = ex.what();
                    }
                    row += ok ? " pass" : " FAIL";
                    out.record(cell + " " + name, ok, detail);
                };

                run_check("expand", n <= 15, [&]() -> std::string {
                    if (expand(e) == enumerate_paths(fib_graph(n))) return "";
                    return "expansion differs from the path oracle; expression: " + render(e);
                });
                run_check("counts", recurrence_id(m).has_value(), [&]() -> std::string {
                    auto [t, p] = predicted_counts(*recurrence_id(m), n);
                    ComplexityReport r = complexity(e);
                    if (r.terms == t && r.plus_ops == p) return "";
                    return "measured (" + r.terms.str() + ", " + r.plus_ops.str() + ") vs predicted (" + t.str() +
                           ", " + p.str() + "); expression: " + render(e);
                });
                run_check("eval", n <= 20, [&]() -> std::string {
                    PathSet paths = enumerate_paths(fib_graph(n));
                    SplitMix64 rng(seed ^ (static_cast<std::uint64_t>(n) << 32));
                    for (int trial = 0; trial < 10; ++trial) {
                        TermMap<std::uint64_t> asg;
                        for (int i = 1; i < n; ++i) asg[{TermKind::a, i}] = rng.below(kDefaultPrime);
                        for (int i = 1; i + 1 < n; ++i) asg[{TermKind::b, i}] = rng.below(kDefaultPrime);
                        std::uint64_t want = 0;
                        for (const Monomial& mono : paths.monomials()) {
                            unsigned __int128 prod = 1;
                            for (const Term& t : mono) prod = prod * asg.at(t) % kDefaultPrime;
                            want = (want + static_cast<std::uint64_t>(prod)) % kDefaultPrime;
                        }
                        if (eval_mod(e, asg, kDefaultPrime) != want)
                            return "prime-field value differs on draw " + std::to_string(trial) +
                                   "; expression: " + render(e);
                    }
                    return "";
                });
                run_check("roundtrip", n <= 20, [&]() -> std::string {
                    if (parse(render(e)) == e) return "";
                    return "parse(render(e)) != e; text: " + render(e);
                });
                std::cout << row << "\n";
            }
        }
    }
    std::cout << "pass=" << out.pass << " fail=" << out.fail << " skip=" << out.skip << "\n";
    if (out.fail > 0) {
        std::cerr << "first counterexample: " << out.first_counterexample << "\n";
        return kExitVerifyFailure;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// oracle

int cmd_oracle_dp(int n, const std::string& objective_name) {
    Objective obj = objective_name == "P" || objective_name == "plus" ? Objective::plus_ops : Objective::terms;
    DpTable t = min_counts_dp(n, obj);
    std::cout << "Tmin(1," << n << ") = " << t.tmin(1, n) << "\n";
    std::cout << "Pmin(1," << n << ") = " << t.pmin(1, n) << "\n";
    std::cout << "argmin(" << (obj == Objective::terms ? "T" : "P") << ") = {";
    bool first = true;
    for (int v : t.top_argmin(obj)) {
        std::cout << (first ? "" : ", ") << v;
        first = false;
    }
    std::cout << "}\n";
    std::cout << "middle = {";
    first = true;
    for (int v : middle_vertices(1, n)) {
        std::cout << (first ? "" : ", ") << v;
        first = false;
    }
    std::cout << "}\n";
    return 0;
}

int cmd_oracle_schedules(int n) {
    int y = std::max(n - 3, 0);
    struct Extreme {
        Count t, p;
        std::set<std::pair<int, int>> t_tallies, p_tallies;
    };
    std::optional<Extreme> mn, mx;
    for (unsigned mask = 0; mask < (1u << y); ++mask) {
        std::vector<Step> steps(y);
        int forks = 0;
        for (int i = 0; i < y; ++i) {
            steps[i] = (mask >> i) & 1u ? Step::fork : Step::joint;
            forks += steps[i] == Step::fork;
        }
        ComplexityReport r = complexity(gen_reduction(n, Schedule::from_steps(steps)));
        std::pair<int, int> tally{forks, y - forks};
        auto fold = [&](std::optional<Extreme>& e, auto better) {
            if (!e) {
                e = Extreme{r.terms, r.plus_ops, {tally}, {tally}};
                return;
            }
            if (better(r.terms, e->t)) {
                e->t = r.terms;
                e->t_tallies = {tally};
            } else if (r.terms == e->t) {
                e->t_tallies.insert(tally);
            }
            if (better(r.plus_ops, e->p)) {
                e->p = r.plus_ops;
                e->p_tallies = {tally};
            } else if (r.plus_ops == e->p) {
                e->p_tallies.insert(tally);
            }
        };
        fold(mn, [](Count a, Count b) { return a < b; });
        fold(mx, [](Count a, Count b) { return a > b; });
    }
    auto tallies_str = [](const std::set<std::pair<int, int>>& ts) {
        std::ostringstream os;
        bool first = true;
        for (auto [f, j] : ts) {
            os << (first ? "" : " ") << "(" << f << "," << j << ")";
            first = false;
        }
        return os.str();
    };
    std::cout << "schedules enumerated: " << (1u << y) << "\n";
    std::cout << "min T = " << mn->t << " at tallies " << tallies_str(mn->t_tallies) << "\n";
    std::cout << "min P = " << mn->p << " at tallies " << tallies_str(mn->p_tallies) << "\n";
    std::cout << "max T = " << mx->t << " at tallies " << tallies_str(mx->t_tallies) << "\n";
    std::cout << "max P = " << mx->p << " at tallies " << tallies_str(mx->p_tallies) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fibonacci graph expression generators, complexity analytics, and oracles"};
    app.require_subcommand(1);

    // gen ------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate one expression and print it");
    std::string gen_method, gen_direction = "direct", gen_strategy = "middle-floor", gen_heavier = "joint";
    std::string gen_format = "text";
    GenConfig cfg;
    bool gen_verify = false, gen_timing = false;
    int gen_cap = -1;
    gen->add_option("--method", gen_method, "seq|dfs|dls|reduction|redopt|deco|gd")->required();
    gen->add_option("--n", cfg.n, "graph size (vertices)")->required();
    gen->add_option("--m", cfg.m, "GD part count");
    gen->add_option("--seed", cfg.seed, "schedule seed (reduction method)");
    gen->add_option("--direction", gen_direction, "direct|opposite (dfs, dls)");
    gen->add_option("--strategy", gen_strategy, "middle-floor|middle-ceil|fixed:K (deco)");
    gen->add_option("--heavier", gen_heavier, "fork|joint (redopt, even n)");
    gen->add_option("--format", gen_format, "text|json");
    gen->add_option("--cap", gen_cap, "override the generation size cap");
    gen->add_flag("--force", cfg.force, "generate past the size cap");
    gen->add_flag("--verify", gen_verify, "check the expansion against the path oracle (n <= 15)");
    gen->add_flag("--timing", gen_timing, "include wall time in the report");

    // table ----------------------------------------------------------------
    auto* table = app.add_subcommand("table", "predicted T/P per method and size");
    std::string table_n, table_methods = "seq,dfs,dls,redopt,deco", table_format = "markdown";
    table->add_option("--n,--n-range", table_n, "size N or range A..B")->required();
    table->add_option("--methods", table_methods, "comma list of methods");
    table->add_option("--format", table_format, "markdown|csv|json");

    // verify ---------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run the oracle checks over a size range");
    std::string verify_n, verify_methods = "seq,dfs,dls,redopt,deco,gd", verify_checks;
    bool verify_all = false, inject_fault = false;
    std::uint64_t verify_seed = 0;
    int verify_m = 0;
    verify->add_option("--n,--n-range", verify_n, "size N or range A..B")->required();
    verify->add_option("--methods,--method", verify_methods, "comma list of methods");
    verify->add_option("--checks", verify_checks, "comma subset of expand,counts,eval,roundtrip");
    verify->add_flag("--all", verify_all, "run every check");
    verify->add_option("--seed", verify_seed, "seed for schedules and assignments");
    verify->add_option("--m", verify_m, "extra GD part count to include");
    verify->add_flag("--inject-fault", inject_fault, "corrupt the first expression (test hook)");

    // oracle ---------------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "optimality oracles");
    oracle->require_subcommand(1);
    auto* dp = oracle->add_subcommand("dp", "interval DP minima and argmin");
    int dp_n = 0;
    std::string dp_objective = "T";
    dp->add_option("--n", dp_n, "size (2..1000)")->required();
    dp->add_option("--objective", dp_objective, "T|P");
    auto* sched = oracle->add_subcommand("schedules", "exhaustive schedule enumeration");
    int sched_n = 0;
    sched->add_option("--n", sched_n, "size (2..16)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            cfg.method = parse_method(gen_method);
            cfg.direction = gen_direction == "opposite" ? Direction::opposite : Direction::direct;
            cfg.strategy = gen_strategy;
            cfg.heavier = gen_heavier == "fork" ? Heavier::fork : Heavier::joint;
            if (gen_cap >= 0) cfg.cap = gen_cap;
            if (cfg.n < 2) {
                std::cerr << "error: --n must be >= 2\n";
                return kExitUsage;
            }
            return cmd_gen(cfg, gen_format, gen_verify, gen_timing);
        }
        if (table->parsed()) {
            Range r = parse_range(table_n);
            std::vector<CliMethod> ms;
            std::stringstream ss(table_methods);
            for (std::string tok; std::getline(ss, tok, ',');) ms.push_back(parse_method(tok));
            return cmd_table(r, ms, table_format);
        }
        if (verify->parsed()) {
            Range r = parse_range(verify_n);
            std::vector<CliMethod> ms;
            std::stringstream ss(verify_methods);
            for (std::string tok; std::getline(ss, tok, ',');) ms.push_back(parse_method(tok));
            std::set<std::string> checks;
            if (verify_all || verify_checks.empty()) {
                checks = {"expand", "counts", "eval", "roundtrip"};
            } else {
                std::stringstream cs(verify_checks);
                for (std::string tok; std::getline(cs, tok, ',');) {
                    if (tok != "expand" && tok != "counts" && tok != "eval" && tok != "roundtrip") {
                        std::cerr << "error: unknown check '" << tok << "'\n";
                        return kExitUsage;
                    }
                    checks.insert(tok);
                }
            }
            return cmd_verify(r, ms, checks, verify_seed, verify_m, inject_fault);
        }
        if (dp->parsed()) {
            if (dp_n < 2 || dp_n > 1000) {
                std::cerr << "error: oracle dp requires 2 <= n <= 1000\n";
                return kExitUsage;
            }
            return cmd_oracle_dp(dp_n, dp_objective);
        }
        if (sched->parsed()) {
            if (sched_n < 2 || sched_n > 16) {
                std::cerr << "error: oracle schedules requires 2 <= n <= 16\n";
                return kExitUsage;
            }
            return cmd_oracle_schedules(sched_n);
        }
    } catch (const SizeGuardError& e) {
        std::cerr << "error: " << e.what() << " (pass --force to generate anyway)\n";
        return kExitSizeGuard;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
