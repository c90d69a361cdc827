#include "workbench/cli.hpp"

#include "workbench/ainf.hpp"
#include "workbench/budget.hpp"
#include "workbench/strata.hpp"
#include "workbench/trees.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace wb {

std::string to_string(Report::Status s) {
    switch (s) {
        case Report::Status::pass: return "pass";
        case Report::Status::fail: return "fail";
        case Report::Status::info: return "info";
    }
    return "?";
}

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Errors while parsing a named file are prefixed with the file name.
template <class F>
auto from_file(const std::string& path, F&& parse) {
    std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw ParseError(path + ":" + e.what(), e.line(), e.column());
    }
}

const std::string* flag(const Command& c, const std::string& name) {
    auto it = c.flags.find(name);
    return it == c.flags.end() ? nullptr : &it->second;
}

Rational rational_flag(const Command& c, const std::string& name) {
    const std::string* v = flag(c, name);
    if (!v) throw UsageError("missing --" + name);
    return parse_rational(*v);
}

std::optional<int> int_flag(const Command& c, const std::string& name) {
    const std::string* v = flag(c, name);
    if (!v) return std::nullopt;
    try {
        size_t used = 0;
        int x = std::stoi(*v, &used);
        if (used != v->size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw UsageError("--" + name + " expects an integer, got '" + *v + "'");
    }
}

int int_flag_or(const Command& c, const std::string& name, int fallback) {
    auto v = int_flag(c, name);
    return v ? *v : fallback;
}

void need_inputs(const Command& c, size_t n, const std::string& usage) {
    if (c.inputs.size() != n) throw UsageError(c.verb + " expects " + usage);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string join_ints(const std::vector<int>& v) {
    std::vector<std::string> s;
    for (int x : v) s.push_back(std::to_string(x));
    return join(s, ",");
}

json element_json(const Element& e) {
    json j = json::object();
    for (const auto& [g, c] : e) j[g] = to_string(c);
    return j;
}

Report verb_reduce(const Command& c) {
    need_inputs(c, 1, "one label tuple");
    auto t = parse_lag_tuple(c.inputs[0]);
    auto r = reduce_tuple(t);
    Report rep;
    rep.findings.push_back("red=" + format_reduced(r) + " F=" + format_fundamental(r));
    std::string detail = "d_R=" + std::to_string(r.d_red()) + " m0_begin=" + std::to_string(r.m0_begin) +
                         " m0_end=" + std::to_string(r.m0_end);
    if (r.degenerate) detail += " degenerate=constant-tuple";
    rep.findings.push_back(detail);
    rep.machine = {{"reduced", format_reduced(r)}, {"fundamental", format_fundamental(r)}, {"d_R", r.d_red()},
                   {"m0_begin", r.m0_begin}, {"m0_end", r.m0_end}, {"degenerate", r.degenerate}};
    return rep;
}

Report verb_classify(const Command& c) {
    need_inputs(c, 1, "one label tuple");
    auto cls = classify_tuple(parse_lag_tuple(c.inputs[0]));
    Report rep;
    rep.findings.push_back("class=" + to_string(cls));
    rep.machine = {{"class", to_string(cls)}};
    return rep;
}

Report verb_trees(const Command& c) {
    Report rep;
    if (c.inputs.empty()) {
        int d = int_flag_or(c, "d", 0);
        if (d < 2) throw UsageError("trees needs --d N with N >= 2, or a tree file");
        auto trees = enumerate_stable_trees(d, c.parallel);
        int binary = 0;
        json list = json::array();
        for (const auto& t : trees) {
            rep.findings.push_back(serialize(t));
            list.push_back(serialize(t));
            binary += t.is_binary() ? 1 : 0;
        }
        rep.findings.push_back("count=" + std::to_string(trees.size()) + " binary=" + std::to_string(binary));
        rep.machine = {{"d", d}, {"count", trees.size()}, {"binary", binary}, {"trees", list}};
        return rep;
    }
    need_inputs(c, 1, "a tree file or --d N");
    auto t = from_file(c.inputs[0], [](const std::string& s) { return parse_labelled_tree(s); });
    auto dec = fundamental_decomposition(t);
    auto edges = [](const TreeComponent& comp) {
        std::vector<std::string> s;
        for (int e : comp.edges) s.push_back("e" + std::to_string(e));
        return join(s, ",");
    };
    json red = json::array(), uni = json::array(), ext = json::array();
    for (const auto& comp : dec.reduced_components) {
        rep.findings.push_back("reduced edges={" + edges(comp) + "} vertices={" + join_ints(comp.vertices) + "}");
        red.push_back(edges(comp));
    }
    for (size_t j = 0; j < dec.uni_components.size(); ++j)
        for (const auto& comp : dec.uni_components[j]) {
            rep.findings.push_back("uni label=" + comp.label->name() + " F_index=" + std::to_string(j) + " edges={" +
                                   edges(comp) + "} vertices={" + join_ints(comp.vertices) + "}");
            uni.push_back({{"label", comp.label->name()}, {"edges", edges(comp)}});
        }
    for (const auto& [ij, leaf] : dec.exterior_numbering) {
        rep.findings.push_back("exterior (" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ") -> e" +
                               std::to_string(leaf));
        ext.push_back({ij.first, ij.second, leaf});
    }
    rep.findings.push_back("root_unilabelled=" + std::string(dec.root_unilabelled ? "yes" : "no"));
    rep.machine = {{"reduced", red}, {"uni", uni}, {"exterior", ext}, {"root_unilabelled", dec.root_unilabelled}};
    return rep;
}

Report strata_report(const std::vector<Stratum>& strata) {
    Report rep;
    json rows = json::array();
    int corners = 0;
    for (const auto& s : strata) {
        rep.findings.push_back(format_stratum(s));
        rows.push_back({{"dim", s.dim}, {"codim", s.codim}, {"tree", serialize(s.tree.shape)},
                        {"broken", s.broken_count}, {"colored", s.colored}, {"generalized_corner", s.generalized_corner}});
        corners += s.generalized_corner ? 1 : 0;
    }
    auto f = f_vector(strata);
    rep.findings.push_back("f-vector=" + format_f_vector(f) + " generalized_corners=" + std::to_string(corners));
    rep.machine = {{"strata", rows}, {"f_vector", f}, {"generalized_corners", corners}};
    return rep;
}

Report verb_strata(const Command& c) {
    need_inputs(c, 1, "one label tuple");
    return strata_report(enumerate_cluster_strata(parse_lag_tuple(c.inputs[0]), c.parallel));
}

Report verb_stacked(const Command& c) {
    need_inputs(c, 1, "one label tuple");
    return strata_report(enumerate_stacked_strata(parse_lag_tuple(c.inputs[0]), c.parallel));
}

Report verb_coloring(const Command& c) {
    need_inputs(c, 1, "one colored tree file");
    auto text = read_file(c.inputs[0]);
    ColoredTree ct;
    try {
        if (text.find("len") != std::string::npos) {
            auto m = parse_metric_tree(text);
            ct.tree = m.tree;
            std::map<int, Rational> w;
            for (const auto& [e, len] : m.lengths) {
                if (len.infinite) throw ParseError("colored-tree witness lengths must be finite");
                w[e] = len.value;
            }
            ct.witness_metric = w;
        } else {
            ct.tree = parse_labelled_tree(text);
        }
    } catch (const ParseError& e) {
        throw ParseError(c.inputs[0] + ":" + e.what(), e.line(), e.column());
    }
    auto cert = validate_coloring(ct);
    Report rep;
    if (!cert.valid) {
        rep.status = Report::Status::fail;
        rep.findings.push_back("violation: " + cert.violation);
        rep.machine = {{"valid", false}, {"violation", cert.violation}};
        return rep;
    }
    rep.status = Report::Status::pass;
    json w = json::object();
    for (const auto& [e, len] : cert.witness) {
        rep.findings.push_back("len e" + std::to_string(e) + " = " + to_string(len));
        w["e" + std::to_string(e)] = to_string(len);
    }
    int dim = coloring_cone_dim(ct);
    rep.findings.push_back("cone_dim=" + std::to_string(dim) + " rank=" + std::to_string(cert.rank) +
                           " unknowns=" + std::to_string(cert.unknowns));
    rep.machine = {{"valid", true}, {"witness", w}, {"cone_dim", dim}, {"rank", cert.rank}, {"unknowns", cert.unknowns}};
    return rep;
}

Report verb_width(const Command& c) {
    need_inputs(c, 1, "one gluing expression");
    auto e = parse_width_expr(c.inputs[0]);
    auto w = intrinsic_width(*e);
    std::vector<std::string> s;
    for (const auto& x : w.widths) s.push_back(to_string(x));
    Report rep;
    rep.findings.push_back("widths=(" + join(s, ",") + ")");
    rep.machine = {{"widths", s}};
    return rep;
}

Report verb_check_ainf(const Command& c) {
    need_inputs(c, 1, "one category file");
    auto cat = from_file(c.inputs[0], [](const std::string& s) { return parse_category(s); });
    int max_d = int_flag_or(c, "max-d", 5);
    Report rep;
    auto v = find_ainf_violation(cat, max_d);
    if (v) {
        rep.status = Report::Status::fail;
        rep.findings.push_back("defect at (" + join(v->inputs, ",") + ") = " + to_string(v->defect));
        rep.machine = {{"holds", false}, {"inputs", v->inputs}, {"defect", element_json(v->defect)}};
    } else {
        rep.status = Report::Status::pass;
        rep.findings.push_back("A-infinity relations hold on all composable tuples with d <= " + std::to_string(max_d));
        rep.machine = {{"holds", true}, {"max_d", max_d}};
    }
    return rep;
}

Report verb_check_linf(const Command& c) {
    need_inputs(c, 1, "one L-infinity file");
    auto s = from_file(c.inputs[0], [](const std::string& t) { return parse_ocha(t); });
    int max_n = int_flag_or(c, "max-d", 4);
    Report rep;
    auto v = find_linf_violation(s.closed_part(), max_n);
    if (v) {
        rep.status = Report::Status::fail;
        rep.findings.push_back("defect at (" + join(v->inputs, ",") + ") = " + to_string(v->defect));
        rep.machine = {{"holds", false}, {"inputs", v->inputs}, {"defect", element_json(v->defect)}};
    } else {
        rep.status = Report::Status::pass;
        rep.findings.push_back("L-infinity relations hold on all input multisets with n <= " + std::to_string(max_n));
        rep.machine = {{"holds", true}, {"max_n", max_n}};
    }
    return rep;
}

Report verb_check_ocha(const Command& c) {
    need_inputs(c, 1, "one OCHA file");
    auto s = from_file(c.inputs[0], [](const std::string& t) { return parse_ocha(t); });
    int max_d = int_flag_or(c, "max-d", 3), max_k = int_flag_or(c, "max-k", 3);
    Report rep;
    auto v = find_ocha_violation(s, max_k, max_d);
    if (v) {
        rep.status = Report::Status::fail;
        rep.findings.push_back(v->relation + " defect at closed=(" + join(v->closed_in, ",") + ") open=(" +
                               join(v->open_in, ",") + ") = " + to_string(v->defect));
        rep.machine = {{"holds", false}, {"relation", v->relation}, {"closed", v->closed_in}, {"open", v->open_in},
                       {"defect", element_json(v->defect)}};
    } else {
        rep.status = Report::Status::pass;
        rep.findings.push_back("OCHA identity and both specialisations hold with k <= " + std::to_string(max_k) +
                               ", d <= " + std::to_string(max_d));
        rep.machine = {{"holds", true}, {"max_k", max_k}, {"max_d", max_d}};
    }
    return rep;
}

Report verb_measure(const Command& c) {
    need_inputs(c, 1, "one category file");
    auto cat = from_file(c.inputs[0], [](const std::string& s) { return parse_category(s); });
    auto r = measure_discrepancies(cat, cat.units());
    Report rep;
    json eps = json::object(), units = json::object();
    for (const auto& [d, e] : r.eps) {
        rep.findings.push_back("d=" + std::to_string(d) + " raw=" + to_string(r.raw.at(d)) + " eps=" + to_string(e));
        eps[std::to_string(d)] = {{"raw", to_string(r.raw.at(d))}, {"eps", to_string(e)}};
    }
    for (const auto& [x, u] : r.unit_level) {
        rep.findings.push_back("unit_level(" + x + ")=" + to_string(u));
        units[x] = to_string(u);
    }
    rep.findings.push_back(std::string("filtered=") + (r.is_filtered ? "yes" : "no"));
    rep.status = r.is_filtered ? Report::Status::pass : Report::Status::info;
    rep.machine = {{"eps", eps}, {"unit_level", units}, {"filtered", r.is_filtered}};
    return rep;
}

Report verb_unit(const Command& c) {
    need_inputs(c, 1, "one category file");
    auto cat = from_file(c.inputs[0], [](const std::string& s) { return parse_category(s); });
    if (cat.units().empty()) throw UsageError("the category file declares no units");
    Report rep;
    rep.status = Report::Status::pass;
    json rows = json::array();
    for (const auto& [x, e] : cat.units()) {
        if (const std::string* only = flag(c, "object"); only && *only != x) continue;
        auto v = check_strict_unit(cat, x, e);
        if (v.ok) {
            rep.findings.push_back("unit of " + x + ": strict");
            rows.push_back({{"object", x}, {"ok", true}});
        } else {
            rep.status = Report::Status::fail;
            rep.findings.push_back("unit of " + x + ": fails at d=" + std::to_string(v.d) + " slot=" +
                                   std::to_string(v.slot) + ": " + v.message);
            rows.push_back({{"object", x}, {"ok", false}, {"d", v.d}, {"slot", v.slot}, {"inputs", v.inputs}});
        }
    }
    rep.machine = {{"units", rows}};
    return rep;
}

Report verb_functor(const Command& c) {
    need_inputs(c, 3, "source category, target category and functor files");
    auto A = from_file(c.inputs[0], [](const std::string& s) { return parse_category(s); });
    auto B = from_file(c.inputs[1], [](const std::string& s) { return parse_category(s); });
    auto F = from_file(c.inputs[2], [&](const std::string& s) { return parse_functor(s, A, B); });
    auto shift = functor_shift(A, B, F);
    Report rep;
    json raw = json::object();
    for (const auto& [d, r] : shift.raw) {
        rep.findings.push_back("d=" + std::to_string(d) + " raw_shift=" + to_string(r));
        raw[std::to_string(d)] = to_string(r);
    }
    rep.findings.push_back("rho*=" + to_string(shift.rho_star));
    int max_d = int_flag_or(c, "max-d", 4);
    auto v = find_functor_violation(A, B, F, max_d);
    if (v) {
        rep.status = Report::Status::fail;
        rep.findings.push_back("functor relation fails at (" + join(v->inputs, ",") + ") = " + to_string(v->defect));
    } else {
        rep.status = Report::Status::pass;
        rep.findings.push_back("functor relations hold on all composable tuples with d <= " + std::to_string(max_d));
    }
    rep.machine = {{"raw", raw}, {"rho_star", to_string(shift.rho_star)}, {"relations_hold", !v.has_value()}};
    return rep;
}

std::string verdict(const Rational& bound) { return bound <= 0 ? "non-positive" : "positive"; }

Report verb_budget(const Command& c) {
    const std::string* kase = flag(c, "case");
    if (!kase) throw UsageError("budget needs --case");
    Report rep;
    std::string table = "case d eps delta bound verdict";
    if (*kase == "continuation") {
        int d = int_flag_or(c, "d", 1);
        auto s = continuation_shift(rational_flag(c, "eps1"), rational_flag(c, "delta1"), rational_flag(c, "eps2"),
                                    rational_flag(c, "delta2"), d);
        rep.findings.push_back("case=continuation d=" + std::to_string(d) + " per_d=" + to_string(s.per_d) +
                               " overall=" + to_string(s.overall) + " theorem_b=" + to_string(s.theorem_b) +
                               " verdict=" + (s.filtered ? "filtered" : "not-filtered"));
        rep.status = s.filtered ? Report::Status::pass : Report::Status::fail;
        rep.machine = {{"case", "continuation"}, {"d", d}, {"per_d", to_string(s.per_d)}, {"overall", to_string(s.overall)},
                       {"theorem_b", to_string(s.theorem_b)}, {"filtered", s.filtered}};
        return rep;
    }
    if (*kase == "window") {
        BudgetParams p{rational_flag(c, "eps"), std::nullopt, 2, TupleClass::cyclically_different};
        if (flag(c, "delta")) p.delta = rational_flag(c, "delta");
        HamiltonianWindow w{rational_flag(c, "lo"), rational_flag(c, "hi")};
        bool ok = validate_floer_window(w, p);
        rep.findings.push_back("case=window lo=" + to_string(w.lo) + " hi=" + to_string(w.hi) + " verdict=" + (ok ? "accept" : "reject"));
        rep.status = ok ? Report::Status::pass : Report::Status::fail;
        rep.machine = {{"case", "window"}, {"accepted", ok}};
        return rep;
    }
    if (*kase == "eps-delta" && flag(c, "random")) {
        int n = *int_flag(c, "random");
        const char* seed_env = std::getenv("WORKBENCH_SEED");
        unsigned seed = seed_env ? static_cast<unsigned>(std::strtoul(seed_env, nullptr, 10)) : 1u;
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> num(1, 1000);
        int bad = 0;
        for (int i = 0; i < n; ++i) {
            Rational eps(num(rng), num(rng));
            Rational delta = Rational(1, 2) + Rational(num(rng), 2 * 1001);
            auto b = eps_delta_budget({eps, delta, 2, TupleClass::cyclically_different});
            if (b.worst_case != 0 || b.interior_cap != eps * (2 * delta - 1)) ++bad;
        }
        rep.findings.push_back("case=eps-delta random=" + std::to_string(n) + " seed=" + std::to_string(seed) +
                               " mismatches=" + std::to_string(bad));
        rep.status = bad == 0 ? Report::Status::pass : Report::Status::fail;
        rep.machine = {{"case", "eps-delta"}, {"random", n}, {"seed", seed}, {"mismatches", bad}};
        return rep;
    }
    BudgetParams p;
    p.epsilon = rational_flag(c, "eps");
    p.d = int_flag_or(c, "d", 2);
    if (flag(c, "delta")) p.delta = rational_flag(c, "delta");
    Rational bound;
    std::string extra;
    if (*kase == "open") {
        p.tuple_class = TupleClass::cyclically_different;
        bound = vertex_curvature_budget(p);
    } else if (*kase == "closed") {
        p.tuple_class = TupleClass::almost_cyclically_different;
        const std::string* conv = flag(c, "convention");
        bound = vertex_curvature_budget(p, conv && *conv == "draft" ? Convention::draft : Convention::main);
    } else if (*kase == "eps-delta") {
        auto b = eps_delta_budget(p);
        bound = b.worst_case;
        extra = " cap=" + to_string(b.interior_cap);
    } else {
        throw UsageError("unknown budget case '" + *kase + "' (open, closed, eps-delta, continuation, window)");
    }
    rep.findings.push_back(table);
    rep.findings.push_back("case=" + *kase + " d=" + std::to_string(p.d) + " eps=" + to_string(p.epsilon) +
                           " delta=" + (p.delta ? to_string(*p.delta) : "-") + " bound=" + to_string(bound) +
                           " verdict=" + verdict(bound) + extra);
    rep.status = bound <= 0 ? Report::Status::pass : Report::Status::fail;
    rep.machine = {{"case", *kase}, {"d", p.d}, {"eps", to_string(p.epsilon)},
                   {"delta", p.delta ? to_string(*p.delta) : ""}, {"bound", to_string(bound)}, {"verdict", verdict(bound)}};
    return rep;
}

Report verb_dim(const Command& c) {
    const std::string* kase = flag(c, "case");
    if (!kase) throw UsageError("dim needs --case");
    IndexInput in;
    in.n = int_flag(c, "n");
    in.d = int_flag(c, "d");
    in.d_R = int_flag(c, "dR");
    in.maslov = int_flag(c, "maslov");
    in.out_index = int_flag(c, "out");
    in.a_index = int_flag(c, "a");
    in.b_index = int_flag(c, "b");
    in.boundary_marked = int_flag(c, "l");
    in.interior_marked = int_flag(c, "k");
    if (const std::string* m = flag(c, "morse")) {
        std::stringstream ss(*m);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                in.morse_indices.push_back(std::stoi(item));
            } catch (...) {
                throw UsageError("--morse expects a comma-separated list of integers");
            }
        }
    }
    int v = virtual_dimension(in, parse_dim_case(*kase));
    Report rep;
    rep.findings.push_back("case=" + *kase + " dim=" + std::to_string(v));
    rep.machine = {{"case", *kase}, {"dim", v}};
    return rep;
}

}  // namespace

Report run(const Command& cmd) {
    static const std::map<std::string, Report (*)(const Command&)> verbs = {
        {"reduce", verb_reduce},         {"classify", verb_classify},     {"trees", verb_trees},
        {"strata", verb_strata},         {"stacked", verb_stacked},       {"coloring", verb_coloring},
        {"width", verb_width},           {"check-ainf", verb_check_ainf}, {"check-linf", verb_check_linf},
        {"check-ocha", verb_check_ocha}, {"measure", verb_measure},       {"unit", verb_unit},
        {"functor", verb_functor},       {"budget", verb_budget},         {"dim", verb_dim},
    };
    auto it = verbs.find(cmd.verb);
    if (it == verbs.end()) throw UsageError("unknown verb '" + cmd.verb + "'");
    Report r = it->second(cmd);
    r.machine = json{{"verb", cmd.verb}, {"status", to_string(r.status)}, {"findings", r.findings}, {"data", r.machine}};
    return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Filtered Fukaya-category workbench"};
    Command cmd;
    std::string format = "text";
    app.add_option("verb", cmd.verb, "reduce, classify, trees, strata, stacked, coloring, width, check-ainf, "
                                     "check-linf, check-ocha, measure, unit, functor, budget, dim")
        ->required();
    app.add_option("inputs", cmd.inputs, "tuple, expression or file arguments");
    app.add_flag("--parallel", cmd.parallel, "enumerate in parallel");
    app.add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));
    static const char* names[] = {"d", "eps", "delta", "eps1", "delta1", "eps2", "delta2", "case", "convention",
                                  "n", "dR", "maslov", "morse", "out", "a", "b", "l", "k", "lo", "hi",
                                  "max-d", "max-k", "random", "object"};
    std::map<std::string, std::string> values;
    for (const char* n : names) {
        auto* opt = app.add_option(std::string("--") + n, values[n]);
        if (std::string(n) == "convention") opt->check(CLI::IsMember({"main", "draft"}));
    }
    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    for (const char* n : names)
        if (app.count(std::string("--") + n)) cmd.flags[n] = values[n];

    try {
        Report r = run(cmd);
        if (format == "machine") {
            out << r.machine.dump(2) << "\n";
        } else {
            for (const auto& f : r.findings) out << f << "\n";
            out << "status=" << to_string(r.status) << "\n";
        }
        return r.status == Report::Status::fail ? 1 : 0;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const TreeError& e) {
        err << "input error: " << e.what() << "\n";
    } catch (const TypeError& e) {
        err << "input error: " << e.what() << "\n";
    }
    return 2;
}

}  // namespace wb
