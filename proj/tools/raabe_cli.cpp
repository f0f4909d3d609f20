#include "raabe/errors.hpp"
#include "raabe/fixtures.hpp"
#include "raabe/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

using namespace raabe;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUndefined = 2;

struct Flags {
    std::string expr;
    bool json = false;
    bool numeric_only = false;
    bool symbolic_only = false;
    std::string max_n;
    int precision_bits = EstimatorConfig{}.precision_bits;
    bool strict = false;
    bool oracle = false;
    bool trace = false;
};

// Accepts "2^k" or a plain power of two; returns k.
int parse_max_n(const std::string& text)
{
    if (text.rfind("2^", 0) == 0) {
        std::size_t used = 0;
        const int k = std::stoi(text.substr(2), &used);
        if (used != text.size() - 2) {
            throw Error("--max-n: expected 2^k, got " + text);
        }
        return k;
    }
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size() || v == 0 || (v & (v - 1)) != 0) {
        throw Error("--max-n must be a power of two, got " + text);
    }
    int k = 0;
    while ((1ULL << k) < v) {
        ++k;
    }
    return k;
}

AnalysisOptions options_from(const Flags& f)
{
    AnalysisOptions o;
    o.numeric_only = f.numeric_only;
    o.symbolic_only = f.symbolic_only;
    o.with_oracle = f.oracle;
    o.estimator.precision_bits = f.precision_bits;
    if (!f.max_n.empty()) {
        try {
            o.estimator.max_exponent = parse_max_n(f.max_n);
        } catch (const std::logic_error&) {
            throw Error("--max-n: cannot parse " + f.max_n);
        }
        if (o.estimator.max_exponent > 62) {
            throw Error("--max-n is too large");
        }
    }
    o.estimator.validate();
    return o;
}

void print_json(const nlohmann::ordered_json& j)
{
    std::cout << j.dump(2) << '\n';
}

int exit_for(const RaabeValue& v, const Flags& f)
{
    return f.strict && !is_defined(v) ? kExitUndefined : 0;
}

int run_analyze(const Flags& f)
{
    const AnalysisReport r = analyze(f.expr, options_from(f));
    if (f.json) {
        print_json(to_json(r));
    } else {
        std::cout << render_text(r, f.trace);
    }
    return exit_for(r.raabe, f);
}

int run_value(const Flags& f)
{
    AnalysisOptions o = options_from(f);
    o.cross_check = false;
    const AnalysisReport r = analyze(f.expr, o);
    if (f.json) {
        print_json(to_json(r.raabe));
    } else {
        std::cout << to_string(r.raabe) << '\n';
        if (f.trace && r.trace) {
            std::cout << render_trace(*r.trace);
        }
    }
    return exit_for(r.raabe, f);
}

int run_table(const Flags& f)
{
    const AnalysisOptions o = options_from(f);
    const Term term = parse(f.expr);
    const auto rows = numeric_table(term, o.estimator);
    if (f.json) {
        print_json(to_json(rows));
        return 0;
    }
    std::printf("%12s  %24s  %24s\n", "n", "r_n", "schlomilch");
    for (const auto& row : rows) {
        std::printf("%12lld  %24.17g  %24.17g\n", static_cast<long long>(row.n), row.raabe, row.schlomilch);
    }
    return 0;
}

int run_oracle(const Flags& f)
{
    const Term term = parse(f.expr);
    const OracleReport o = empirical_classify(term);
    if (f.json) {
        print_json(to_json(o));
        return 0;
    }
    std::cout << "verdict  " << to_string(o.empirical.verdict) << " (empirical: " << o.empirical.reason << ")\n";
    std::cout << "term slope  " << o.term_slope << '\n';
    if (o.abs_growth) {
        std::cout << "growth slope  " << o.abs_growth->slope << "  decade ratio " << o.abs_growth->decade_ratio
                  << '\n';
    }
    if (o.bracket) {
        std::cout.precision(15);
        std::cout << "bracket at m = " << o.bracket->m << "  [" << o.bracket->lower << ", " << o.bracket->upper
                  << "]\n";
    }
    for (const auto& [m, s] : o.partial_sum_samples) {
        std::cout << "S(" << m << ") = " << s << '\n';
    }
    return 0;
}

int run_selftest(const Flags& f)
{
    AnalysisOptions o = options_from(f);
    o.cross_check = false;
    int failed = 0;
    for (const auto& r : run_fixtures(o)) {
        std::cout << (r.passed ? "ok    " : "FAIL  ") << r.fixture->expr << "  ->  " << r.detail << '\n';
        failed += r.passed ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all fixtures passed" : std::to_string(failed) + " fixture(s) failed") << '\n';
    return failed == 0 ? 0 : kExitError;
}

bool is_subcommand(const std::string& s)
{
    return s == "analyze" || s == "value" || s == "table" || s == "oracle" || s == "selftest";
}

}  // namespace

int main(int argc, char** argv)
{
    // `raabe EXPR ...` means `raabe analyze EXPR ...`.
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && !is_subcommand(args[0]) && args[0] != "-h" && args[0] != "--help" &&
        args[0] != "--version") {
        args.insert(args.begin(), "analyze");
    }
    std::reverse(args.begin(), args.end());

    CLI::App app{"Raabe value analyzer and series convergence classifier", "raabe"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Flags flags;
    const auto add_common = [&](CLI::App* sub, bool needs_expr) {
        if (needs_expr) {
            sub->add_option("expr", flags.expr, "general term a_n, e.g. \"alt*(2n)!/(4^n*(n!)^2)\"")->required();
        }
        sub->add_flag("--json", flags.json, "machine-readable output");
        sub->add_flag("--numeric-only", flags.numeric_only, "skip the symbolic rules");
        sub->add_flag("--symbolic-only", flags.symbolic_only, "never fall back to numeric estimation");
        sub->add_option("--max-n", flags.max_n, "largest sample index, 2^k");
        sub->add_option("--precision-bits", flags.precision_bits, "working precision in bits");
        sub->add_flag("--strict", flags.strict, "exit 2 when the Raabe value is undefined");
        sub->add_flag("--oracle", flags.oracle, "attach the brute-force oracle report");
        sub->add_flag("--trace", flags.trace, "print the rule derivation");
    };
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "full pipeline (default)");
    CLI::App* value_cmd = app.add_subcommand("value", "Raabe value only");
    CLI::App* table_cmd = app.add_subcommand("table", "r_n and Schlomilch sequences on the sample grid");
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "empirical evidence only");
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the reference fixtures");
    add_common(analyze_cmd, true);
    add_common(value_cmd, true);
    add_common(table_cmd, true);
    add_common(oracle_cmd, true);
    add_common(selftest_cmd, false);

    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (flags.numeric_only && flags.symbolic_only) {
            throw Error("--numeric-only and --symbolic-only are mutually exclusive");
        }
        if (*analyze_cmd) {
            return run_analyze(flags);
        }
        if (*value_cmd) {
            return run_value(flags);
        }
        if (*table_cmd) {
            return run_table(flags);
        }
        if (*oracle_cmd) {
            return run_oracle(flags);
        }
        return run_selftest(flags);
    } catch (const ParseError& e) {
        std::cerr << "parse error at offset " << e.offset() << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return kExitError;
}
