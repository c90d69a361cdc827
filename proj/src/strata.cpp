#include "workbench/strata.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <future>
#include <set>

namespace wb {

std::string format_stratum(const Stratum& s) {
    std::string col = "{";
    for (size_t i = 0; i < s.colored.size(); ++i) col += (i ? "," : "") + std::to_string(s.colored[i]);
    col += "}";
    std::string out = "dim=" + std::to_string(s.dim) + " codim=" + std::to_string(s.codim) +
                      " tree=" + serialize(s.tree.shape) + " broken=" + std::to_string(s.broken_count) +
                      " colored=" + col;
    if (s.generalized_corner) out += " corner=generalized";
    return out;
}

std::vector<int> f_vector(const std::vector<Stratum>& strata) {
    std::vector<int> f;
    for (const auto& s : strata) {
        if (s.dim < 0) continue;
        if (static_cast<int>(f.size()) <= s.dim) f.resize(static_cast<size_t>(s.dim) + 1, 0);
        ++f[s.dim];
    }
    return f;
}

std::string format_f_vector(const std::vector<int>& f) {
    std::string s = "[";
    for (size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
    return s + "]";
}

namespace {

void sort_strata(std::vector<Stratum>& v) {
    std::vector<std::pair<std::tuple<int, std::string, int>, size_t>> keys;
    for (size_t i = 0; i < v.size(); ++i) keys.push_back({{v[i].dim, serialize(v[i].tree.shape), v[i].broken_count}, i});
    std::sort(keys.begin(), keys.end());
    std::vector<Stratum> out;
    for (const auto& k : keys) out.push_back(std::move(v[k.second]));
    v = std::move(out);
}

int rank_of(std::vector<std::vector<Rational>> a) {
    int rank = 0;
    size_t cols = a.empty() ? 0 : a[0].size();
    for (size_t c = 0; c < cols && rank < static_cast<int>(a.size()); ++c) {
        size_t piv = static_cast<size_t>(rank);
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[static_cast<size_t>(rank)]);
        auto& p = a[static_cast<size_t>(rank)];
        for (size_t r = 0; r < a.size(); ++r) {
            if (r == static_cast<size_t>(rank) || a[r][c] == 0) continue;
            Rational f = a[r][c] / p[c];
            for (size_t k = c; k < cols; ++k) a[r][k] -= f * p[k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::vector<Stratum> enumerate_cluster_strata(const LagTuple& labels, bool parallel) {
    int d = static_cast<int>(labels.size()) - 1;
    if (d < 2) throw TreeError("cluster strata need d >= 2");
    std::vector<Stratum> out;
    for (auto& shape : enumerate_stable_trees(d, parallel)) {
        LabelledTree t = make_labelled(std::move(shape), labels);
        auto flat = flatten(t.shape);
        int uni = 0, nonuni = 0;
        for (size_t n = 1; n < flat.size(); ++n) {
            if (flat[n].leaf) continue;
            (is_unilabelled(t, flat[n]) ? uni : nonuni)++;
        }
        for (int k = 0; k <= uni; ++k) {
            Stratum s;
            s.tree = t;
            s.broken_count = k;
            s.codim = nonuni + k;
            s.dim = d - 2 - s.codim;
            out.push_back(s);
        }
    }
    sort_strata(out);
    return out;
}

std::vector<FacetTerm> facet_term_bijection(const LagTuple& labels) {
    int d = static_cast<int>(labels.size()) - 1;
    std::vector<FacetTerm> out;
    for (const auto& s : enumerate_cluster_strata(labels)) {
        if (s.codim != 1 || s.tree.shape.vertex_count() != 2) continue;
        auto flat = flatten(s.tree.shape);
        for (int c : flat[0].children) {
            if (flat[c].leaf) continue;
            out.push_back({s, flat[c].first_leaf - 1, flat[c].last_leaf - flat[c].first_leaf + 1, d - flat[c].last_leaf});
        }
    }
    return out;
}

namespace {

std::vector<int> colored_vertices(const std::vector<FlatNode>& flat) {
    std::vector<int> c;
    for (size_t n = 0; n < flat.size(); ++n)
        if (!flat[n].leaf && flat[n].colored) c.push_back(static_cast<int>(n));
    return c;
}

// path from v up to (not including) the root vertex, as edge ids
std::vector<int> edges_above(const std::vector<FlatNode>& flat, int v) {
    std::vector<int> e;
    for (int x = v; x > 0; x = flat[x].parent) e.push_back(x);
    return e;
}

}  // namespace

ColoringCertificate validate_coloring(const ColoredTree& ct) {
    ColoringCertificate cert;
    auto flat = flatten(ct.tree.shape);
    for (const auto& n : flat) {
        if (!n.leaf) continue;
        int met = 0;
        for (int x = n.parent; x >= 0; x = flat[x].parent) met += flat[x].colored ? 1 : 0;
        if (met != 1) {
            cert.violation = "leaf " + std::to_string(n.leaf_index) + " meets " + std::to_string(met) +
                             " colored vertices on its path to the root (exactly one required)";
            return cert;
        }
    }
    for (size_t v = 0; v < flat.size(); ++v)
        if (!flat[v].leaf && flat[v].children.size() == 1 && !flat[v].colored) {
            cert.violation = "vertex " + std::to_string(v) + " has valency 2 but is not colored";
            return cert;
        }

    std::vector<int> interior;
    std::map<int, size_t> column;
    for (size_t n = 1; n < flat.size(); ++n)
        if (!flat[n].leaf) {
            column[static_cast<int>(n)] = interior.size();
            interior.push_back(static_cast<int>(n));
        }
    auto colored = colored_vertices(flat);
    std::vector<std::vector<Rational>> rows;
    for (size_t j = 1; j < colored.size(); ++j) {
        std::vector<Rational> row(interior.size(), 0);
        for (int e : edges_above(flat, colored[0])) row[column[e]] += 1;
        for (int e : edges_above(flat, colored[j])) row[column[e]] -= 1;
        rows.push_back(row);
    }
    cert.unknowns = static_cast<int>(interior.size());
    cert.rank = rank_of(rows);

    std::map<int, Rational> w;
    if (ct.witness_metric) {
        w = *ct.witness_metric;
        for (int e : interior)
            if (!w.count(e)) {
                cert.violation = "witness metric has no length for interior edge e" + std::to_string(e);
                return cert;
            }
        for (const auto& [e, len] : w) {
            if (!column.count(e)) {
                cert.violation = "witness metric names e" + std::to_string(e) + ", which is not an interior edge";
                return cert;
            }
            if (len < 0) {
                cert.violation = "witness metric has negative length on e" + std::to_string(e);
                return cert;
            }
        }
    } else {
        int depth = 0;
        for (int c : colored) depth = std::max(depth, flat[c].depth);
        for (int e : interior) w[e] = 1;
        for (int c : colored)
            if (c > 0) w[c] = depth - flat[c].depth + 1;
    }
    auto dist = [&](int v) {
        Rational s = 0;
        for (int e : edges_above(flat, v)) s += w[e];
        return s;
    };
    for (size_t j = 1; j < colored.size(); ++j) {
        Rational a = dist(colored[0]), b = dist(colored[j]);
        if (a != b) {
            cert.violation = "colored vertices " + std::to_string(colored[0]) + " and " + std::to_string(colored[j]) +
                             " lie at distances " + to_string(a) + " and " + to_string(b) + " from the root";
            return cert;
        }
    }
    cert.witness = w;
    cert.valid = true;
    return cert;
}

int coloring_cone_dim(const ColoredTree& ct) {
    ColoredTree plain{ct.tree, std::nullopt};
    auto cert = validate_coloring(plain);
    if (!cert.valid) throw TreeError("invalid coloring: " + cert.violation);
    auto flat = flatten(ct.tree.shape);
    int dim = cert.unknowns + 1 - static_cast<int>(colored_vertices(flat).size());
    if (dim != cert.corank())
        throw std::logic_error("cone dimension " + std::to_string(dim) + " disagrees with corank " +
                               std::to_string(cert.corank()));
    return dim;
}

int colored_tree_dim(const PlanarTree& t) {
    if (t.is_leaf()) return 0;
    int k = static_cast<int>(t.children.size());
    int dim = t.colored ? k - 1 : k - 2;
    for (const auto& c : t.children) dim += colored_tree_dim(c);
    return dim;
}

namespace {

PlanarTree splice(const PlanarTree& p, size_t i) {
    PlanarTree out;
    out.colored = p.colored;
    for (size_t k = 0; k < p.children.size(); ++k) {
        if (k == i)
            out.children.insert(out.children.end(), p.children[k].children.begin(), p.children[k].children.end());
        else
            out.children.push_back(p.children[k]);
    }
    return out;
}

}  // namespace

std::vector<PlanarTree> colored_collapses(const PlanarTree& t) {
    std::vector<PlanarTree> out;
    if (t.is_leaf()) return out;
    for (size_t i = 0; i < t.children.size(); ++i) {
        const auto& c = t.children[i];
        if (!c.is_leaf() && !c.colored) out.push_back(splice(t, i));
    }
    if (!t.colored && std::all_of(t.children.begin(), t.children.end(), [](const auto& c) { return !c.is_leaf() && c.colored; })) {
        PlanarTree merged;
        merged.colored = true;
        for (const auto& c : t.children) merged.children.insert(merged.children.end(), c.children.begin(), c.children.end());
        out.push_back(merged);
    }
    for (size_t i = 0; i < t.children.size(); ++i)
        for (auto& sub : colored_collapses(t.children[i])) {
            PlanarTree copy = t;
            copy.children[i] = std::move(sub);
            out.push_back(std::move(copy));
        }
    return out;
}

namespace {

using Forest = std::vector<PlanarTree>;

void compositions(int n, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (n == 0) out.push_back(cur);
        return;
    }
    for (int p = 1; p <= n - (parts - 1); ++p) {
        cur.push_back(p);
        compositions(n - p, parts - 1, cur, out);
        cur.pop_back();
    }
}

void products(const std::vector<const Forest*>& choices, size_t k, std::vector<PlanarTree>& cur, bool colored, Forest& out) {
    if (k == choices.size()) {
        out.push_back(PlanarTree::vertex(cur, colored));
        return;
    }
    for (const auto& t : *choices[k]) {
        cur.push_back(t);
        products(choices, k + 1, cur, colored, out);
        cur.pop_back();
    }
}

Forest build(int n, int min_arity, bool colored, const std::vector<Forest>& child_pool) {
    Forest out;
    for (int k = min_arity; k <= n; ++k) {
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(n, k, cur, comps);
        for (const auto& c : comps) {
            std::vector<const Forest*> choices;
            for (int p : c) choices.push_back(&child_pool[p]);
            std::vector<PlanarTree> kids;
            products(choices, 0, kids, colored, out);
        }
    }
    return out;
}

}  // namespace

std::vector<Stratum> enumerate_stacked_strata(const LagTuple& labels, bool parallel) {
    int d = static_cast<int>(labels.size()) - 1;
    if (d < 1) throw TreeError("stacked strata need d >= 1");
    // below[n]: leaf or uncolored stable tree; painted[n]: trees containing the colored level
    std::vector<Forest> below(static_cast<size_t>(d) + 1), painted(static_cast<size_t>(d) + 1);
    below[1] = {PlanarTree::leaf()};
    for (int n = 2; n <= d; ++n) below[n] = enumerate_stable_trees(n);
    for (int n = 1; n <= d; ++n) {
        Forest f = build(n, 1, true, below);
        Forest g = n >= 2 ? build(n, 2, false, painted) : Forest{};
        painted[n] = std::move(f);
        painted[n].insert(painted[n].end(), g.begin(), g.end());
    }

    const Forest& all = painted[d];
    std::set<std::string> keys;
    for (const auto& t : all) keys.insert(serialize(t));

    auto make = [&](const PlanarTree& t) {
        Stratum s;
        s.tree = make_labelled(t, labels);
        s.dim = colored_tree_dim(t);
        s.codim = (d - 1) - s.dim;
        s.colored = colored_vertices(flatten(t));
        if (s.codim >= 2) {
            std::set<std::string> seen{serialize(t)};
            std::vector<PlanarTree> frontier{t};
            int facets = 0;
            while (!frontier.empty()) {
                std::vector<PlanarTree> next;
                for (const auto& x : frontier)
                    for (auto& y : colored_collapses(x)) {
                        if (!seen.insert(serialize(y)).second) continue;
                        if (colored_tree_dim(y) == d - 2) ++facets;
                        next.push_back(std::move(y));
                    }
                frontier = std::move(next);
            }
            s.generalized_corner = facets > s.codim;
        }
        return s;
    };

    std::vector<Stratum> out;
    if (parallel) {
        std::vector<std::future<Stratum>> jobs;
        for (const auto& t : all) jobs.push_back(std::async(std::launch::async, make, std::cref(t)));
        for (auto& j : jobs) out.push_back(j.get());
    } else {
        for (const auto& t : all) out.push_back(make(t));
    }
    sort_strata(out);
    return out;
}

int WidthExpr::inputs() const { return is_base() ? 2 : outer->inputs() + inner->inputs() - 1; }

WidthExprPtr width_base() { return std::make_shared<WidthExpr>(); }

WidthExprPtr width_glue(WidthExprPtr outer, int n, WidthExprPtr inner, Rational length) {
    if (!outer || !inner) throw TreeError("gluing needs two surfaces");
    if (n < 1 || n > outer->inputs())
        throw TreeError("gluing input " + std::to_string(n) + " out of range 1.." + std::to_string(outer->inputs()));
    if (length < 0) throw TreeError("gluing length must be non-negative");
    auto e = std::make_shared<WidthExpr>();
    e->n = n;
    e->length = std::move(length);
    e->outer = std::move(outer);
    e->inner = std::move(inner);
    return e;
}

namespace {

struct ExprParser {
    std::string s;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, 1, static_cast<int>(pos) + 1); }

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    std::string word() {
        skip();
        size_t b = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' && s[pos] != ')') ++pos;
        if (b == pos) fail("expected a word");
        return s.substr(b, pos - b);
    }
    void expect(char c) {
        skip();
        if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    WidthExprPtr expr() {
        expect('(');
        size_t at = pos;
        std::string head = word();
        if (head == "strip") {
            expect(')');
            return width_base();
        }
        if (head != "glue") {
            pos = at;
            fail("expected 'strip' or 'glue'");
        }
        std::string n = word();
        std::string len = word();
        auto outer = expr();
        auto inner = expr();
        expect(')');
        int idx = 0;
        try {
            idx = std::stoi(n);
        } catch (...) {
            fail("bad input index '" + n + "'");
        }
        try {
            return width_glue(outer, idx, inner, parse_rational(len));
        } catch (const TreeError& e) {
            fail(e.what());
        }
    }
};

}  // namespace

WidthExprPtr parse_width_expr(std::string_view text) {
    ExprParser p{std::string(text)};
    auto e = p.expr();
    p.skip();
    if (p.pos != p.s.size()) p.fail("trailing input after expression");
    return e;
}

std::string serialize(const WidthExpr& e) {
    if (e.is_base()) return "(strip)";
    return "(glue " + std::to_string(e.n) + " " + to_string(e.length) + " " + serialize(*e.outer) + " " +
           serialize(*e.inner) + ")";
}

WidthProfile intrinsic_width(const WidthExpr& e) {
    if (e.is_base()) return {{0, 0}};
    auto outer = intrinsic_width(*e.outer).widths;
    auto inner = intrinsic_width(*e.inner).widths;
    int k = static_cast<int>(outer.size()), l = static_cast<int>(inner.size()), n = e.n;
    // the glued input's own width carries over to every input of the inner surface
    Rational base = outer[n - 1] + e.length;
    WidthProfile w;
    for (int i = 1; i <= k + l - 1; ++i) {
        if (i < n)
            w.widths.push_back(outer[i - 1]);
        else if (i < n + l)
            w.widths.push_back(inner[i - n] + base);
        else
            w.widths.push_back(outer[i - l]);
    }
    return w;
}

std::vector<double> stacked_gluing_lengths_at(double W, const std::vector<double>& child_widths,
                                              const std::vector<double>& root_widths) {
    if (child_widths.size() != root_widths.size())
        throw std::invalid_argument("one child width per input of the root surface is required");
    std::vector<double> l;
    for (size_t i = 0; i < root_widths.size(); ++i) {
        double li = W - child_widths[i] - root_widths[i];
        if (li < 0)
            throw std::domain_error("gluing length at input " + std::to_string(i + 1) +
                                    " would be negative: exp(-1/rho) is smaller than the widths it must cover");
        l.push_back(li);
    }
    return l;
}

std::vector<double> stacked_gluing_lengths(double rho, const std::vector<double>& child_widths,
                                           const std::vector<double>& root_widths) {
    if (!(rho > -1.0 && rho < 0.0)) throw std::domain_error("rho must lie in (-1, 0)");
    return stacked_gluing_lengths_at(std::exp(-1.0 / rho), child_widths, root_widths);
}

}  // namespace wb
