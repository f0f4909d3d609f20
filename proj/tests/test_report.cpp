#include "raabe/errors.hpp"
#include "raabe/fixtures.hpp"
#include "raabe/report.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace raabe;
using nlohmann::ordered_json;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args)
{
    Run r;
    const std::string cmd = std::string(RAABE_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.out.append(buf, got);
    }
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slug(const std::string& name)
{
    std::string s;
    for (char c : name) {
        s += std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(c)) : '_';
    }
    return s;
}

AnalysisOptions quick()
{
    AnalysisOptions o;
    o.cross_check = false;
    return o;
}

}  // namespace

TEST_CASE("json round trip is lossless")
{
    AnalysisOptions full;
    full.with_table = true;
    full.with_oracle = true;
    full.oracle.slope_lo = 100;
    full.oracle.slope_hi = 10000;
    full.oracle.bracket_m = 1000;
    for (const char* text : {"alt*(2n)!/(4^n*(n!)^2)", "1/2^n", "1+alt/n", "1/(n+log(n+1))-1/(2*n)",
                             "alt*sqrt((n^2-2*n+3)/(5*n^3-7*n^2+11*n+13))"}) {
        const ordered_json j = to_json(analyze(text, full));
        const ordered_json k = to_json(report_from_json(j));
        CHECK_MESSAGE(j == k, text);
        CHECK(ordered_json::parse(j.dump()) == j);
    }
}

TEST_CASE("reports are deterministic")
{
    const std::string a = to_json(analyze("1/((n+1)*log(n+1)^2)")).dump();
    const std::string b = to_json(analyze("1/((n+1)*log(n+1)^2)")).dump();
    CHECK(a == b);
}

TEST_CASE("classification follows the value and sign")
{
    for (const auto& f : reference_fixtures()) {
        const AnalysisReport r = analyze(f.expr, quick());
        CHECK_MESSAGE(r.classification == classify(r.raabe, r.sign), f.name);
    }
}

TEST_CASE("reference fixtures")
{
    for (const auto& res : run_fixtures(quick())) {
        CHECK_MESSAGE(res.passed, res.fixture->name << ": " << res.detail);
    }
}

TEST_CASE("option conflicts")
{
    AnalysisOptions o;
    o.numeric_only = true;
    o.symbolic_only = true;
    CHECK_THROWS_AS(analyze("1/n^2", o), Error);

    AnalysisOptions numeric;
    numeric.numeric_only = true;
    const AnalysisReport r = analyze("1/n^2", numeric);
    REQUIRE(r.trace);
    CHECK(r.trace->rule == Rule::NumericFallback);
    CHECK(std::holds_alternative<NumericValue>(r.raabe));

    AnalysisOptions symbolic;
    symbolic.symbolic_only = true;
    const AnalysisReport s = analyze("1+alt/n", symbolic);
    CHECK(std::holds_alternative<UndefinedValue>(s.raabe));
    CHECK_FALSE(s.cross_check);
}

TEST_CASE("golden reports")
{
    const bool update = std::getenv("RAABE_UPDATE_GOLDEN") != nullptr;
    const std::filesystem::path dir = RAABE_GOLDEN_DIR;
    for (const auto& f : reference_fixtures()) {
        const std::filesystem::path file = dir / (slug(f.name) + ".json");
        const std::string got = to_json(analyze(f.expr, quick())).dump(2) + "\n";
        if (update) {
            std::ofstream(file) << got;
            continue;
        }
        std::ifstream in(file);
        REQUIRE_MESSAGE(in, "missing golden file " << file << " (set RAABE_UPDATE_GOLDEN=1)");
        std::stringstream want;
        want << in.rdbuf();
        CHECK_MESSAGE(got == want.str(), f.name);
    }
}

TEST_CASE("text rendering")
{
    const AnalysisReport r = analyze("alt*(2n)!/(4^n*(n!)^2)", quick());
    const std::string text = render_text(r, true);
    CHECK(text.find("ConditionallyConvergent") != std::string::npos);
    CHECK(text.find("Hypergeometric") != std::string::npos);
    CHECK(render_trace(*r.trace).find("(2*n + 2)/(2*n + 1)") != std::string::npos);
}

TEST_CASE("command line exit codes")
{
    CHECK(run_cli("value 'alt*(2n)!/(4^n*(n!)^2)'").status == 0);
    CHECK(run_cli("value 'alt*(2n)!/(4^n*(n!)^2)'").out.find("1/2") != std::string::npos);
    CHECK(run_cli("'1/n^2' --json").status == 0);
    CHECK(run_cli("value '1+alt/n' --strict").status == 2);
    CHECK(run_cli("value '1+alt/n'").status == 0);
    const Run bad = run_cli("'n+'");
    CHECK(bad.status == 1);
    CHECK(bad.out.find("offset 2") != std::string::npos);
    CHECK(run_cli("'n^n'").status == 1);
    CHECK(run_cli("'1/n' --numeric-only --symbolic-only").status == 1);
    CHECK(run_cli("'1/n' --max-n 1000").status == 1);

    const Run json = run_cli("analyze 'alt/n^(1/2)' --json");
    REQUIRE(json.status == 0);
    const ordered_json j = ordered_json::parse(json.out);
    CHECK(j["classification"]["verdict"] == "ConditionallyConvergent");
    CHECK(j["raabe"]["kind"] == "Exact");
}
