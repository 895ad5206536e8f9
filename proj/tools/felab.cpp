// Command-line front end: set/base expression parsing, operation dispatch,
// JSON/CSV reports with a uniform envelope, three-valued exit codes.
//
// Exit codes: 0 = holds/Embeds, 1 = fails/Refuted, 2 = Unknown,
// 64 = usage/parse/tier error, 65 = filter base violation, 70 = internal.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "felab/embed.hpp"
#include "felab/filters.hpp"
#include "felab/json_io.hpp"
#include "felab/parser.hpp"
#include "felab/structure.hpp"
#include "felab/version.hpp"

using namespace felab;

namespace {

struct RunConfig {
    u64 horizon = kDefaultSubsetHorizon;
    u64 nmax = 32;
    u64 kmax = u64{1} << 20;   // bounded runtime on thick generator sets
    u64 indexcap = u64{1} << 20;
    u64 seed = 0;
    u64 count = 100;
    bool json_out = true;
    bool csv_out = false;
    bool dump = false;
    std::string corpus_path;
    std::string samples;
    u64 mmax = 20;
    u64 colors = 2;
    u64 block_len = 0;  // 0: residue coloring, else block length
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--horizon", cfg.horizon, "scan horizon")->check(CLI::PositiveNumber);
    cmd->add_option("--nmax", cfg.nmax, "prefix depth for bounded searches");
    cmd->add_option("--kmax", cfg.kmax, "shift cap for bounded searches");
    cmd->add_option("--indexcap", cfg.indexcap, "parametric base index cap");
    cmd->add_option("--seed", cfg.seed, "RNG seed, recorded in the report");
    cmd->add_option("--count", cfg.count, "number of randomized cases");
    cmd->add_flag("--json", cfg.json_out, "JSON output (default)");
    cmd->add_flag("--csv", cfg.csv_out, "CSV output where supported");
    cmd->add_option("--corpus", cfg.corpus_path, "corpus file with name = expr lines");
}

Corpus load_corpus(const RunConfig& cfg) {
    Corpus corpus;
    std::string path = cfg.corpus_path;
    if (path.empty())
        if (const char* env = std::getenv("FE_LAB_CORPUS")) path = env;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw EvalError("cannot open corpus file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        corpus.load(ss.str());
    }
    return corpus;
}

json flags_json(const RunConfig& cfg) {
    return json{{"horizon", cfg.horizon}, {"nmax", cfg.nmax},     {"kmax", cfg.kmax},
                {"indexcap", cfg.indexcap}, {"count", cfg.count}, {"csv", cfg.csv_out},
                {"corpus", cfg.corpus_path}};
}

void emit(const RunConfig& cfg, const std::string& command, json result) {
    json envelope{{"tool", "felab"},
                  {"version", kVersion},
                  {"command", command},
                  {"seed", cfg.seed},
                  {"flags", flags_json(cfg)},
                  {"result", std::move(result)}};
    std::cout << envelope.dump(2) << std::endl;
}

int verdict_exit(const Verdict3& v) {
    if (v.is_true()) return 0;
    if (v.is_false()) return 1;
    return 2;
}

int fe_exit(const FeVerdict& v) {
    if (v.embeds_p()) return 0;
    if (v.refuted_p()) return 1;
    return 2;
}

// ---------------------------------------------------------------------------
// Base descriptions: base{expr,...} | tails(expr, cap) | shiftsdown(expr, cap)

std::string trim(std::string s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

AnyBase parse_base(const std::string& text, const Corpus& corpus, const RunConfig& cfg) {
    std::string t = trim(text);
    if (t.rfind("base{", 0) == 0 && t.back() == '}') {
        std::vector<NatSet> gens;
        for (const std::string& part : split_top(t.substr(5, t.size() - 6)))
            gens.push_back(parse_expr(part, corpus));
        return FilterBase::make(std::move(gens), cfg.horizon);
    }
    auto parametric = [&](const std::string& head, ParametricBase::Kind kind)
        -> std::optional<AnyBase> {
        if (t.rfind(head + "(", 0) != 0 || t.back() != ')') return std::nullopt;
        std::vector<std::string> parts =
            split_top(t.substr(head.size() + 1, t.size() - head.size() - 2));
        if (parts.empty() || parts.size() > 2)
            throw EvalError(head + "() takes an expression and an optional index cap");
        u64 cap = parts.size() == 2 ? std::stoull(parts[1]) : cfg.indexcap;
        return AnyBase{ParametricBase::make(kind, parse_expr(parts[0], corpus), cap)};
    };
    if (auto b = parametric("tails", ParametricBase::Kind::TailsOf)) return *b;
    if (auto b = parametric("shiftsdown", ParametricBase::Kind::ShiftsDown)) return *b;
    throw EvalError("base description must be base{...}, tails(...), or shiftsdown(...)");
}

// ---------------------------------------------------------------------------
// Randomized suite (shared by `suite` and the library acceptance run)

NatSet random_ep_set(std::mt19937_64& rng, u64 t_max, u64 p_max) {
    u64 t = rng() % (t_max + 1), p = 1 + rng() % p_max;
    BitVec tr(t), mask(p);
    for (u64 i = 0; i < t; ++i) tr.set(i, rng() & 1);
    for (u64 j = 0; j < p; ++j) mask.set(j, rng() & 1);
    if (!mask.any()) mask.set(rng() % p, true);
    return NatSet::periodic(tr, mask);
}

std::pair<NatSet, NatSet> random_embeds_pair(std::mt19937_64& rng) {
    for (;;) {
        NatSet b = random_ep_set(rng, 16, 12);
        u64 k = rng() % (b.threshold() + b.period());
        NatSet sh = shift_left(b, k);
        u64 t = sh.threshold() + 4, p = sh.period();
        BitVec tr(t), mask(p);
        for (u64 i = 0; i < t; ++i) tr.set(i, sh.contains(i) && (rng() % 10 < 6));
        for (u64 j = 0; j < p; ++j) mask.set(j, sh.contains(t + j) && (rng() % 10 < 6));
        NatSet a = NatSet::periodic(tr, mask);
        if (!a.is_empty()) return {std::move(a), std::move(b)};
    }
}

int cmd_suite(const RunConfig& cfg) {
    struct Case {
        NatSet a, b;
        SuiteReport rep;
    };
    std::vector<Case> cases(cfg.count);
    // bounded worker pool; per-case RNG keyed by index keeps results
    // independent of scheduling
    unsigned workers = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    std::atomic<u64> next{0};
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (u64 i = next.fetch_add(1); i < cases.size(); i = next.fetch_add(1)) {
                std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ull + i);
                auto [a, b] = random_embeds_pair(rng);
                cases[i] = Case{a, b, property_suite(a, b)};
            }
        });
    for (auto& th : pool) th.join();

    u64 violations = 0;
    json failed = json::array();
    json dumped = json::array();
    for (u64 i = 0; i < cases.size(); ++i) {
        const Case& c = cases[i];
        if (c.rep.vacuous || !c.rep.all_passed()) {
            ++violations;
            failed.push_back(json{{"case", i},
                                  {"a", c.a.describe()},
                                  {"b", c.b.describe()},
                                  {"report", to_json(c.rep)}});
        }
        if (cfg.dump)
            dumped.push_back(json{{"case", i},
                                  {"a", c.a.describe()},
                                  {"b", c.b.describe()},
                                  {"report", to_json(c.rep)}});
    }
    json result{{"cases", cfg.count}, {"violations", violations}, {"failed", failed}};
    if (cfg.dump) result["dump"] = dumped;
    emit(cfg, "suite", result);
    return violations == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_density(const RunConfig& cfg, const std::string& expr, const Corpus& corpus) {
    NatSet s = parse_expr(expr, corpus);
    std::vector<u64> points;
    if (cfg.samples == "peaks")
        for (u64 m = 2; m <= cfg.mmax; ++m) points.push_back((u64{1} << m) + m);
    else if (!cfg.samples.empty())
        for (const std::string& part : split_top(cfg.samples)) points.push_back(std::stoull(part));
    DensityReport r = density_report(s, cfg.horizon, {16, 64, 256}, points);
    if (cfg.csv_out) {
        std::cout << "kind,param,num,den\n";
        for (const auto& [n, q] : r.density_samples)
            std::cout << "density," << n << "," << q.num << "," << q.den << "\n";
        for (const auto& [len, q] : r.banach_samples)
            std::cout << "banach," << len << "," << q.num << "," << q.den << "\n";
        return 0;
    }
    emit(cfg, "density", to_json(r));
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"finite-embeddability laboratory"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string a_expr, b_expr, s_expr, base1, base2, x_expr;
    std::vector<std::string> targets;

    CLI::App* check = app.add_subcommand("check", "decide A <=fe B");
    check->add_option("A", a_expr)->required();
    check->add_option("B", b_expr)->required();
    bool proper = false;
    check->add_flag("--proper", proper, "also decide proper embeddability");
    add_common(check, cfg);

    CLI::App* classify_cmd = app.add_subcommand("classify", "thick/syndetic structure report");
    classify_cmd->add_option("S", s_expr)->required();
    add_common(classify_cmd, cfg);

    CLI::App* density_cmd = app.add_subcommand("density", "density and window samples");
    density_cmd->add_option("S", s_expr)->required();
    density_cmd->add_option("--samples", cfg.samples, "'peaks' or explicit points n1,n2,...");
    density_cmd->add_option("--mmax", cfg.mmax, "largest exponent for --samples peaks");
    add_common(density_cmd, cfg);

    CLI::App* bprime = app.add_subcommand("bprime", "construct shift-spaced prefix copies");
    bprime->add_option("A", a_expr)->required();
    bprime->add_option("B", b_expr)->required();
    add_common(bprime, cfg);

    CLI::App* filter = app.add_subcommand("filter", "filter-level operations");
    CLI::App* fmember = filter->add_subcommand("member", "X in the generated filter");
    fmember->add_option("BASE", base1)->required();
    fmember->add_option("X", x_expr)->required();
    add_common(fmember, cfg);
    CLI::App* fsum = filter->add_subcommand("sum", "X in U + V");
    fsum->add_option("X", x_expr)->required();
    fsum->add_option("U", base1)->required();
    fsum->add_option("V", base2)->required();
    add_common(fsum, cfg);
    CLI::App* frich = filter->add_subcommand("rich", "B is U-rich");
    frich->add_option("U", base1)->required();
    frich->add_option("B", b_expr)->required();
    add_common(frich, cfg);
    CLI::App* ffe = filter->add_subcommand("fe", "U <=fe V at the filter level");
    ffe->add_option("U", base1)->required();
    ffe->add_option("V", base2)->required();
    add_common(ffe, cfg);
    CLI::App* fleft = filter->add_subcommand("leftsum", "whole-set translate property");
    fleft->add_option("V", base1)->required();
    fleft->add_option("TARGETS", targets)->required();
    add_common(fleft, cfg);
    CLI::App* freg = filter->add_subcommand("regularity", "partition regularity experiment");
    freg->add_option("U", base1)->required();
    freg->add_option("B", b_expr)->required();
    freg->add_option("--colors", cfg.colors, "number of colors (2..4)");
    freg->add_option("--blocklen", cfg.block_len, "block length; 0 = residue coloring");
    add_common(freg, cfg);

    CLI::App* suite = app.add_subcommand("suite", "randomized embeddable-pair property suite");
    suite->add_flag("--dump", cfg.dump, "emit every generated case");
    add_common(suite, cfg);

    CLI11_PARSE(app, argc, argv);

    Corpus corpus = load_corpus(cfg);

    if (check->parsed()) {
        NatSet a = parse_expr(a_expr, corpus), b = parse_expr(b_expr, corpus);
        if (proper && a.decidable() && b.decidable()) {
            ProperFeReport r = proper_fe(a, b);
            emit(cfg, "check", to_json(r));
            return fe_exit(r.fe);
        }
        FeVerdict v = a.decidable() && b.decidable() ? fe_decide(a, b)
                                                     : fe_bounded(a, b, cfg.nmax, cfg.kmax);
        emit(cfg, "check", to_json(v));
        return fe_exit(v);
    }
    if (classify_cmd->parsed()) {
        emit(cfg, "classify", to_json(classify(parse_expr(s_expr, corpus), cfg.horizon)));
        return 0;
    }
    if (density_cmd->parsed()) return cmd_density(cfg, s_expr, corpus);
    if (bprime->parsed()) {
        BPrimeResult r = construct_bprime(parse_expr(a_expr, corpus),
                                          parse_expr(b_expr, corpus), cfg.nmax, cfg.kmax);
        emit(cfg, "bprime", to_json(r));
        return r.exhausted ? 2 : 0;
    }
    if (fmember->parsed()) {
        Verdict3 v = filter_member(parse_base(base1, corpus, cfg),
                                   parse_expr(x_expr, corpus), cfg.horizon);
        emit(cfg, "filter member", to_json(v));
        return verdict_exit(v);
    }
    if (fsum->parsed()) {
        SumMemberReport r = filter_sum_member(parse_expr(x_expr, corpus),
                                              parse_base(base1, corpus, cfg),
                                              parse_base(base2, corpus, cfg), cfg.horizon);
        emit(cfg, "filter sum", to_json(r));
        return verdict_exit(r.verdict);
    }
    if (frich->parsed()) {
        RichnessVerdict r = urich_check(parse_base(base1, corpus, cfg),
                                        parse_expr(b_expr, corpus), cfg.horizon);
        emit(cfg, "filter rich", to_json(r));
        return verdict_exit(r.status);
    }
    if (ffe->parsed()) {
        Verdict3 v = filter_fe(parse_base(base1, corpus, cfg),
                               parse_base(base2, corpus, cfg), cfg.horizon);
        emit(cfg, "filter fe", to_json(v));
        return verdict_exit(v);
    }
    if (fleft->parsed()) {
        std::vector<NatSet> ws;
        for (const std::string& t : targets) ws.push_back(parse_expr(t, corpus));
        LeftSumReport r = left_sum_property(parse_base(base1, corpus, cfg), ws, cfg.horizon);
        emit(cfg, "filter leftsum", to_json(r));
        return r.all_hold() ? 0 : 1;
    }
    if (freg->parsed()) {
        Coloring coloring;
        coloring.colors = cfg.colors;
        if (cfg.block_len > 0) {
            coloring.kind = Coloring::Kind::Blocks;
            coloring.block_len = cfg.block_len;
        }
        RegularityReport r = regularity_experiment(parse_base(base1, corpus, cfg),
                                                   parse_expr(b_expr, corpus), coloring,
                                                   cfg.horizon);
        emit(cfg, "filter regularity", to_json(r));
        return 0;
    }
    if (suite->parsed()) return cmd_suite(cfg);
    return 64;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << std::endl;
        return 64;
    } catch (const EvalError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 64;
    } catch (const TierError& e) {
        std::cerr << "tier error: " << e.what() << std::endl;
        return 64;
    } catch (const FipViolation& e) {
        std::cerr << "filter base error: " << e.what() << std::endl;
        return 65;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 70;
    }
}
