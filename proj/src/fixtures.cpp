#include "raabe/fixtures.hpp"

#include "raabe/errors.hpp"

namespace raabe {

const std::vector<Fixture>& reference_fixtures()
{
    static const std::vector<Fixture> fixtures{
        {"central binomial, odd numerator", "alt*(2n-1)!/(4^n*(n!)^2)", "3/2", Verdict::AbsolutelyConvergent},
        {"central binomial", "alt*(2n)!/(4^n*(n!)^2)", "1/2", Verdict::ConditionallyConvergent},
        {"central binomial, shifted numerator", "alt*(2n+1)!/(4^n*(n!)^2)", "-1/2", Verdict::Divergent},
        {"quartic polynomial", "6*n^4-11*n^3-3*n^2+7*n+5", "-4", Verdict::Divergent},
        {"alternating radical", "alt*sqrt((n^2-2*n+3)/(5*n^3-7*n^2+11*n+13))", "1/2",
         Verdict::ConditionallyConvergent},
        {"log-squared denominator", "1/((n+1)*log(n+1)^2)", "1", Verdict::Inconclusive},
        {"alternating quarter power", "alt/n^(1/4)", "1/4", Verdict::ConditionallyConvergent},
        {"alternating square root", "alt/n^(1/2)", "1/2", Verdict::ConditionallyConvergent},
        {"alternating three-quarter power", "alt/n^(3/4)", "3/4", Verdict::ConditionallyConvergent},
        {"quarter power", "1/n^(1/4)", "1/4", Verdict::ConditionallyConvergentOrDivergent},
        {"square root", "1/n^(1/2)", "1/2", Verdict::ConditionallyConvergentOrDivergent},
        {"three-quarter power", "1/n^(3/4)", "3/4", Verdict::ConditionallyConvergentOrDivergent},
        {"harmonic", "1/n", "1", Verdict::Inconclusive},
        {"geometric", "1/2^n", "", Verdict::AbsolutelyConvergent},
        {"factorial", "n!", "", Verdict::Divergent},
    };
    return fixtures;
}

std::vector<FixtureResult> run_fixtures(const AnalysisOptions& options)
{
    std::vector<FixtureResult> out;
    for (const auto& f : reference_fixtures()) {
        FixtureResult r{&f, false, {}};
        try {
            const AnalysisReport report = analyze(f.expr, options);
            const bool verdict_ok = report.classification.verdict == f.verdict;
            bool value_ok = true;
            if (!f.exact.empty()) {
                const auto* e = std::get_if<ExactValue>(&report.raabe);
                value_ok = e != nullptr && e->p == parse_rational(f.exact);
            }
            r.passed = verdict_ok && value_ok;
            r.detail = to_string(report.raabe) + ", " + to_string(report.classification.verdict);
        } catch (const Error& e) {
            r.detail = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace raabe
