#include "raabe/report.hpp"

#include "raabe/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace raabe {

using json = nlohmann::ordered_json;

namespace {

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const json& j)
{
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw Error("malformed number in report: " + s);
    }
    return v;
}

json rational_json(const Rational& q)
{
    return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from(const json& j)
{
    return make_rational(Integer(j.at("num").get<std::string>(), 10), Integer(j.at("den").get<std::string>(), 10));
}

json poly_json(const Polynomial& p)
{
    json arr = json::array();
    for (const auto& c : p.coeffs()) {
        arr.push_back(rational_json(c));
    }
    return arr;
}

Polynomial poly_from(const json& j)
{
    std::vector<Rational> c;
    for (const auto& x : j) {
        c.push_back(rational_from(x));
    }
    return Polynomial(std::move(c));
}

json limit_json(const RatioLimit& l)
{
    json j{{"infinite", l.infinite}};
    j["exact"] = l.exact ? rational_json(*l.exact) : json(nullptr);
    j["approx"] = fmt(l.approx);
    j["errorBound"] = fmt(l.error_bound);
    return j;
}

RatioLimit limit_from(const json& j)
{
    RatioLimit l;
    l.infinite = j.at("infinite").get<bool>();
    if (!j.at("exact").is_null()) {
        l.exact = rational_from(j.at("exact"));
    }
    l.approx = parse_double(j.at("approx"));
    l.error_bound = parse_double(j.at("errorBound"));
    return l;
}

json classification_json(const Classification& c)
{
    return json{{"verdict", to_string(c.verdict)},   {"theorem", to_string(c.theorem)},
                {"pKind", to_string(c.p_kind)},      {"boundary", c.boundary},
                {"reason", c.reason},                {"confidence", to_string(c.confidence)}};
}

Classification classification_from(const json& j)
{
    Classification c;
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.theorem = theorem_from_string(j.at("theorem").get<std::string>());
    c.p_kind = p_kind_from_string(j.at("pKind").get<std::string>());
    c.boundary = j.at("boundary").get<bool>();
    c.reason = j.at("reason").get<std::string>();
    c.confidence = confidence_from_string(j.at("confidence").get<std::string>());
    return c;
}

std::string sum_form_name(SumForm f)
{
    return f == SumForm::Sum ? "Sum" : "Difference";
}

// Preorder flattening; children refer to entries by id.
void flatten(const TraceNode& node, json& out)
{
    const std::size_t id = out.size();
    out.push_back(json::object());
    json entry{{"id", id}, {"rule", to_string(node.rule)}, {"input", node.input}, {"value", to_json(node.value)}};
    json children = json::array();
    for (const auto& c : node.children) {
        children.push_back(out.size());
        flatten(c, out);
    }
    entry["children"] = children;
    if (!node.weights.empty()) {
        entry["weights"] = node.weights;
    }
    if (node.exponent) {
        entry["exponent"] = rational_json(*node.exponent);
    }
    if (node.ratio) {
        entry["ratio"] = json{{"num", poly_json(node.ratio->num)},
                              {"den", poly_json(node.ratio->den)},
                              {"validFrom", node.ratio->valid_from},
                              {"text", node.ratio->to_string()}};
    }
    if (node.sum_form) {
        entry["sumForm"] = sum_form_name(*node.sum_form);
    }
    if (!node.note.empty()) {
        entry["note"] = node.note;
    }
    out[id] = std::move(entry);
}

TraceNode unflatten(const json& arr, std::size_t id)
{
    const json& e = arr.at(id);
    TraceNode t;
    t.rule = rule_from_string(e.at("rule").get<std::string>());
    t.input = e.at("input").get<std::string>();
    t.value = raabe_value_from_json(e.at("value"));
    for (const auto& c : e.at("children")) {
        t.children.push_back(unflatten(arr, c.get<std::size_t>()));
    }
    if (e.contains("weights")) {
        t.weights = e.at("weights").get<std::vector<int>>();
    }
    if (e.contains("exponent")) {
        t.exponent = rational_from(e.at("exponent"));
    }
    if (e.contains("ratio")) {
        const json& r = e.at("ratio");
        t.ratio = RationalFn{poly_from(r.at("num")), poly_from(r.at("den")), r.at("validFrom").get<std::int64_t>()};
    }
    if (e.contains("sumForm")) {
        t.sum_form = e.at("sumForm").get<std::string>() == "Sum" ? SumForm::Sum : SumForm::Difference;
    }
    if (e.contains("note")) {
        t.note = e.at("note").get<std::string>();
    }
    return t;
}

json precheck_json(const RatioPrecheck& p)
{
    json j;
    j["outcome"] = p.outcome == RatioPrecheck::Outcome::Proceed ? "Proceed" : "DecidedByRatioTest";
    j["limit"] = p.limit ? limit_json(*p.limit) : json(nullptr);
    j["verdict"] = p.verdict ? json(to_string(*p.verdict)) : json(nullptr);
    j["warning"] = p.warning;
    j["note"] = p.note;
    return j;
}

RatioPrecheck precheck_from(const json& j)
{
    RatioPrecheck p;
    p.outcome = j.at("outcome").get<std::string>() == "Proceed" ? RatioPrecheck::Outcome::Proceed
                                                                 : RatioPrecheck::Outcome::DecidedByRatioTest;
    if (!j.at("limit").is_null()) {
        p.limit = limit_from(j.at("limit"));
    }
    if (!j.at("verdict").is_null()) {
        p.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    }
    p.warning = j.at("warning").get<bool>();
    p.note = j.at("note").get<std::string>();
    return p;
}

std::vector<TableRow> table_from(const json& j)
{
    std::vector<TableRow> rows;
    for (const auto& r : j) {
        rows.push_back({r.at("n").get<std::int64_t>(), parse_double(r.at("raabe")), parse_double(r.at("schlomilch"))});
    }
    return rows;
}

OracleReport oracle_from(const json& j)
{
    OracleReport o;
    for (const auto& s : j.at("partialSums")) {
        o.partial_sum_samples.emplace_back(s.at(0).get<std::int64_t>(), parse_double(s.at(1)));
    }
    if (!j.at("bracket").is_null()) {
        const json& b = j.at("bracket");
        o.bracket = Bracket{b.at("m").get<std::int64_t>(), parse_double(b.at("lower")), parse_double(b.at("upper")),
                            parse_double(b.at("width"))};
    }
    if (!j.at("absGrowthSlope").is_null()) {
        const json& g = j.at("absGrowthSlope");
        o.abs_growth = SlopeFit{parse_double(g.at("slope")), parse_double(g.at("residual")),
                                parse_double(g.at("decadeRatio")), g.at("logGrowth").get<bool>()};
    }
    o.term_slope = parse_double(j.at("termSlope"));
    o.empirical = classification_from(j.at("empiricalVerdict"));
    return o;
}

std::string value_text(const RaabeValue& v)
{
    if (const auto* e = std::get_if<ExactValue>(&v)) {
        return to_string(e->p) + " (exact)";
    }
    if (const auto* n = std::get_if<NumericValue>(&v)) {
        std::ostringstream out;
        out.precision(12);
        out << n->estimate << " +/- " << n->error_bound << " (numeric" << (n->extrapolated ? "" : ", not extrapolated")
            << ")";
        return out.str();
    }
    const auto& u = std::get<UndefinedValue>(v);
    return "undefined: " + to_string(u.reason) + (u.detail.empty() ? "" : " (" + u.detail + ")");
}

}  // namespace

json to_json(const RaabeValue& v)
{
    if (const auto* e = std::get_if<ExactValue>(&v)) {
        return json{{"kind", "Exact"}, {"value", rational_json(e->p)}};
    }
    if (const auto* n = std::get_if<NumericValue>(&v)) {
        return json{{"kind", "Numeric"},
                    {"estimate", fmt(n->estimate)},
                    {"errorBound", fmt(n->error_bound)},
                    {"extrapolated", n->extrapolated}};
    }
    const auto& u = std::get<UndefinedValue>(v);
    json j{{"kind", "Undefined"}, {"reason", to_string(u.reason)}, {"detail", u.detail}};
    j["ratioLimit"] = u.ratio_limit ? limit_json(*u.ratio_limit) : json(nullptr);
    return j;
}

RaabeValue raabe_value_from_json(const json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Exact") {
        return exact_value(rational_from(j.at("value")));
    }
    if (kind == "Numeric") {
        return numeric_value(parse_double(j.at("estimate")), parse_double(j.at("errorBound")),
                             j.at("extrapolated").get<bool>());
    }
    if (kind != "Undefined") {
        throw Error("unknown value kind: " + kind);
    }
    std::optional<RatioLimit> limit;
    if (!j.at("ratioLimit").is_null()) {
        limit = limit_from(j.at("ratioLimit"));
    }
    return undefined_value(undefined_reason_from_string(j.at("reason").get<std::string>()),
                           j.at("detail").get<std::string>(), limit);
}

json to_json(const Classification& c)
{
    return classification_json(c);
}

json to_json(const std::vector<TableRow>& rows)
{
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back(json{{"n", r.n}, {"raabe", fmt(r.raabe)}, {"schlomilch", fmt(r.schlomilch)}});
    }
    return arr;
}

json to_json(const OracleReport& o)
{
    json j;
    json sums = json::array();
    for (const auto& [m, s] : o.partial_sum_samples) {
        sums.push_back(json::array({m, fmt(s)}));
    }
    j["partialSums"] = sums;
    if (o.bracket) {
        j["bracket"] = json{{"m", o.bracket->m},
                            {"lower", fmt(o.bracket->lower)},
                            {"upper", fmt(o.bracket->upper)},
                            {"width", fmt(o.bracket->width)}};
    } else {
        j["bracket"] = nullptr;
    }
    if (o.abs_growth) {
        j["absGrowthSlope"] = json{{"slope", fmt(o.abs_growth->slope)},
                                   {"residual", fmt(o.abs_growth->residual)},
                                   {"decadeRatio", fmt(o.abs_growth->decade_ratio)},
                                   {"logGrowth", o.abs_growth->log_growth}};
    } else {
        j["absGrowthSlope"] = nullptr;
    }
    j["termSlope"] = fmt(o.term_slope);
    j["empiricalVerdict"] = classification_json(o.empirical);
    return j;
}

AnalysisReport analyze(const std::string& text, const AnalysisOptions& options)
{
    if (options.numeric_only && options.symbolic_only) {
        throw Error("--numeric-only and --symbolic-only are mutually exclusive");
    }
    AnalysisReport r;
    const Term term = parse(text);
    r.input = text;
    r.normalized = to_string(term.expr);
    r.start_index = term.start_index;
    r.start_certified = term.start_certified;
    r.sign = sign_split(term).pattern;
    r.precheck = ratio_precheck(term, options.estimator);

    if (r.precheck.outcome == RatioPrecheck::Outcome::DecidedByRatioTest) {
        const RatioLimit backward = r.precheck.limit->reciprocal();
        r.raabe = undefined_value(UndefinedReason::RatioLimitNotOne,
                                  "decided by the Ratio Test; lim |a_(n+1)/a_n| = " + r.precheck.limit->to_string(),
                                  backward);
    } else if (options.numeric_only) {
        TraceNode t;
        t.rule = Rule::NumericFallback;
        t.input = r.normalized;
        try {
            t.value = estimate_raabe(term, options.estimator);
        } catch (const Error& e) {
            t.value = undefined_value(UndefinedReason::NotApplicable, e.what());
        }
        t.note = "numeric only";
        r.raabe = t.value;
        r.trace = std::move(t);
    } else {
        DeriveOptions d;
        d.numeric_fallback = !options.symbolic_only;
        d.config = options.estimator;
        Derivation der = derive_value(term, d);
        r.raabe = der.value;
        r.trace = std::move(der.trace);
        if (options.cross_check && !options.symbolic_only && is_exact(r.raabe)) {
            try {
                r.cross_check = estimate_raabe(term, options.estimator);
            } catch (const Error& e) {
                r.cross_check = undefined_value(UndefinedReason::NotApplicable, e.what());
            }
        }
    }

    r.classification = classify(r.raabe, r.sign);
    r.diagnosis = term_limit_diagnosis(r.raabe);
    if (options.with_table) {
        r.table = numeric_table(term, options.estimator);
    }
    if (options.with_oracle) {
        r.oracle = empirical_classify(term, options.oracle);
    }
    return r;
}

json to_json(const AnalysisReport& r)
{
    json j;
    j["input"] = r.input;
    j["normalized"] = r.normalized;
    j["startIndex"] = r.start_index;
    j["startIndexCertified"] = r.start_certified;
    j["ratioPrecheck"] = precheck_json(r.precheck);
    json raabe = to_json(r.raabe);
    raabe["crossCheck"] = r.cross_check ? to_json(*r.cross_check) : json(nullptr);
    j["raabe"] = raabe;
    json trace = json::array();
    if (r.trace) {
        flatten(*r.trace, trace);
    }
    j["trace"] = trace;
    j["signPattern"] = to_string(r.sign);
    j["classification"] = classification_json(r.classification);
    j["termDiagnosis"] = to_string(r.diagnosis);
    if (r.table) {
        j["numericTable"] = to_json(*r.table);
    }
    if (r.oracle) {
        j["oracle"] = to_json(*r.oracle);
    }
    j["version"] = r.version;
    return j;
}

AnalysisReport report_from_json(const json& j)
{
    AnalysisReport r;
    r.input = j.at("input").get<std::string>();
    r.normalized = j.at("normalized").get<std::string>();
    r.start_index = j.at("startIndex").get<std::int64_t>();
    r.start_certified = j.at("startIndexCertified").get<bool>();
    r.precheck = precheck_from(j.at("ratioPrecheck"));
    r.raabe = raabe_value_from_json(j.at("raabe"));
    if (!j.at("raabe").at("crossCheck").is_null()) {
        r.cross_check = raabe_value_from_json(j.at("raabe").at("crossCheck"));
    }
    if (!j.at("trace").empty()) {
        r.trace = unflatten(j.at("trace"), 0);
    }
    r.sign = sign_pattern_from_string(j.at("signPattern").get<std::string>());
    r.classification = classification_from(j.at("classification"));
    r.diagnosis = term_diagnosis_from_string(j.at("termDiagnosis").get<std::string>());
    if (j.contains("numericTable")) {
        r.table = table_from(j.at("numericTable"));
    }
    if (j.contains("oracle")) {
        r.oracle = oracle_from(j.at("oracle"));
    }
    r.version = j.at("version").get<std::string>();
    return r;
}

std::string render_trace(const TraceNode& trace)
{
    std::ostringstream out;
    std::function<void(const TraceNode&, int)> walk = [&](const TraceNode& t, int depth) {
        out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << to_string(t.rule) << "  " << t.input
            << "  =>  " << value_text(t.value);
        if (t.exponent && t.rule == Rule::Power) {
            out << "  [k = " << to_string(*t.exponent) << "]";
        }
        if (t.ratio) {
            out << "  [ratio " << t.ratio->to_string() << "]";
        }
        if (!t.note.empty()) {
            out << "  (" << t.note << ")";
        }
        out << '\n';
        for (const auto& c : t.children) {
            walk(c, depth + 1);
        }
    };
    walk(trace, 1);
    return out.str();
}

std::string render_text(const AnalysisReport& r, bool show_trace)
{
    std::ostringstream out;
    out << "term         " << r.normalized << '\n';
    out << "start index  " << r.start_index << (r.start_certified ? "" : " (observed, not certified)") << '\n';
    out << "ratio test   ";
    if (r.precheck.limit) {
        out << "lim |a(n+1)/a(n)| = " << r.precheck.limit->to_string();
    } else {
        out << "limit unknown";
    }
    out << (r.precheck.verdict ? " -> " + to_string(*r.precheck.verdict) : std::string(" -> inconclusive, proceed"));
    if (r.precheck.warning) {
        out << " [warning: " << r.precheck.note << "]";
    }
    out << '\n';
    out << "raabe value  " << value_text(r.raabe) << '\n';
    if (r.cross_check) {
        out << "cross-check  " << value_text(*r.cross_check) << '\n';
    }
    out << "sign         " << to_string(r.sign) << '\n';
    out << "verdict      " << to_string(r.classification.verdict) << "  (" << to_string(r.classification.theorem)
        << ": " << r.classification.reason << ")\n";
    out << "terms        " << to_string(r.diagnosis) << '\n';
    if (show_trace && r.trace) {
        out << "derivation\n" << render_trace(*r.trace);
    }
    if (r.table) {
        out << "numeric table\n";
        char line[128];
        for (const auto& row : *r.table) {
            std::snprintf(line, sizeof line, "  %10lld  %22.15g  %22.15g\n", static_cast<long long>(row.n), row.raabe,
                          row.schlomilch);
            out << line;
        }
    }
    if (r.oracle) {
        const auto& o = *r.oracle;
        out << "oracle       " << to_string(o.empirical.verdict) << " (empirical: " << o.empirical.reason << ")\n";
        if (o.abs_growth) {
            out << "  growth slope " << o.abs_growth->slope << " (residual " << o.abs_growth->residual << ")"
                << (o.abs_growth->log_growth ? " log growth" : "") << '\n';
        }
        if (o.bracket) {
            out.precision(15);
            out << "  bracket at m = " << o.bracket->m << ": [" << o.bracket->lower << ", " << o.bracket->upper << "]\n";
        }
    }
    return out.str();
}

}  // namespace raabe
