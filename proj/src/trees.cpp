#include "workbench/trees.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>

namespace wb {

PlanarTree PlanarTree::vertex(std::vector<PlanarTree> children, bool colored) {
    PlanarTree t;
    t.colored = colored;
    t.children = std::move(children);
    return t;
}

PlanarTree PlanarTree::corolla(int leaves, bool colored) {
    return vertex(std::vector<PlanarTree>(static_cast<size_t>(leaves), leaf()), colored);
}

int PlanarTree::leaf_count() const {
    if (is_leaf()) return 1;
    int n = 0;
    for (const auto& c : children) n += c.leaf_count();
    return n;
}

int PlanarTree::vertex_count() const {
    if (is_leaf()) return 0;
    int n = 1;
    for (const auto& c : children) n += c.vertex_count();
    return n;
}

bool PlanarTree::is_stable() const {
    if (is_leaf()) return true;
    if (children.size() < 2) return false;
    return std::all_of(children.begin(), children.end(), [](const auto& c) { return c.is_stable(); });
}

bool PlanarTree::is_binary() const {
    if (is_leaf()) return true;
    if (children.size() != 2) return false;
    return std::all_of(children.begin(), children.end(), [](const auto& c) { return c.is_binary(); });
}

namespace {

void serialize_into(const PlanarTree& t, int& next_leaf, std::string& out) {
    if (t.is_leaf()) {
        out += "(leaf " + std::to_string(next_leaf++) + ")";
        return;
    }
    out += t.colored ? "(c" : "(v";
    for (const auto& c : t.children) {
        out += " ";
        serialize_into(c, next_leaf, out);
    }
    out += ")";
}

struct Token {
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view s, int first_line) {
    std::vector<Token> out;
    int line = first_line, col = 1;
    for (size_t i = 0; i < s.size();) {
        char c = s[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
        } else if (c == '(' || c == ')') {
            out.push_back({std::string(1, c), line, col});
            ++col;
            ++i;
        } else {
            Token tok{"", line, col};
            while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')') {
                tok.text += s[i++];
                ++col;
            }
            out.push_back(tok);
        }
    }
    return out;
}

class TreeParser {
public:
    TreeParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    PlanarTree parse() {
        PlanarTree t = node();
        if (pos_ != toks_.size()) fail(toks_[pos_], "trailing input after tree");
        return t;
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }

    const Token& next() {
        if (pos_ >= toks_.size()) {
            Token end{"", toks_.empty() ? 1 : toks_.back().line, toks_.empty() ? 1 : toks_.back().column + 1};
            throw ParseError("unexpected end of tree", end.line, end.column);
        }
        return toks_[pos_++];
    }

    PlanarTree node() {
        const Token& open = next();
        if (open.text != "(") fail(open, "expected '('");
        const Token& head = next();
        if (head.text == "leaf") {
            const Token& num = next();
            int k = 0;
            try {
                k = std::stoi(num.text);
            } catch (...) {
                fail(num, "expected leaf number");
            }
            if (k != next_leaf_) fail(num, "leaf numbers must run 1..d from left to right; expected " + std::to_string(next_leaf_));
            ++next_leaf_;
            if (next().text != ")") fail(toks_[pos_ - 1], "expected ')' after leaf");
            return PlanarTree::leaf();
        }
        if (head.text != "v" && head.text != "c") fail(head, "expected 'v', 'c' or 'leaf'");
        PlanarTree t;
        t.colored = head.text == "c";
        while (true) {
            if (pos_ >= toks_.size()) next();
            if (toks_[pos_].text == ")") {
                ++pos_;
                break;
            }
            t.children.push_back(node());
        }
        if (t.children.empty()) fail(head, "vertex without children");
        return t;
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    int next_leaf_ = 1;
};

void flatten_into(const PlanarTree& t, int parent, int depth, int& next_leaf, std::vector<FlatNode>& out) {
    int id = static_cast<int>(out.size());
    out.push_back({});
    out[id].parent = parent;
    out[id].depth = depth;
    out[id].colored = t.colored;
    out[id].leaf = t.is_leaf();
    if (t.is_leaf()) {
        out[id].leaf_index = out[id].first_leaf = out[id].last_leaf = next_leaf++;
        return;
    }
    out[id].first_leaf = next_leaf;
    for (const auto& c : t.children) {
        out[id].children.push_back(static_cast<int>(out.size()));
        flatten_into(c, id, depth + 1, next_leaf, out);
    }
    out[id].last_leaf = next_leaf - 1;
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string serialize(const PlanarTree& t) {
    std::string out;
    int next = 1;
    serialize_into(t, next, out);
    return out;
}

PlanarTree parse_planar_tree(std::string_view text) { return TreeParser(tokenize(text, 1)).parse(); }

std::vector<FlatNode> flatten(const PlanarTree& t) {
    std::vector<FlatNode> out;
    int next = 1;
    flatten_into(t, -1, 0, next, out);
    return out;
}

LabelledTree make_labelled(PlanarTree shape, LagTuple labels) {
    if (shape.is_leaf()) throw TreeError("a labelled tree needs a root vertex");
    int d = shape.leaf_count();
    if (static_cast<int>(labels.size()) != d + 1)
        throw TreeError("tree has " + std::to_string(d) + " leaves but " + std::to_string(labels.size()) +
                        " labels were given (expected d+1)");
    return {std::move(shape), std::move(labels)};
}

std::pair<int, int> edge_regions(const FlatNode& n) { return {n.first_leaf - 1, n.last_leaf}; }

std::pair<Symbol, Symbol> edge_labels(const LabelledTree& t, const FlatNode& n) {
    auto [a, b] = edge_regions(n);
    return {t.labels.at(a), t.labels.at(b)};
}

bool is_unilabelled(const LabelledTree& t, const FlatNode& n) {
    auto [a, b] = edge_labels(t, n);
    return a == b;
}

std::string serialize(const LabelledTree& t) { return "labels: " + to_string(t.labels) + "\n" + serialize(t.shape) + "\n"; }

namespace {

struct TreeSections {
    LagTuple labels;
    PlanarTree shape;
    std::vector<std::pair<int, std::string>> rest;  // (line number, text)
};

TreeSections parse_sections(std::string_view text) {
    auto lines = split_lines(text);
    size_t i = 0;
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
    if (i == lines.size()) throw ParseError("empty tree file", 1, 1);
    std::string head = trim(lines[i]);
    if (head.rfind("labels:", 0) != 0) throw ParseError("expected 'labels:' header", static_cast<int>(i) + 1, 1);
    TreeSections s;
    try {
        s.labels = parse_lag_tuple(head.substr(7));
    } catch (const ParseError& e) {
        throw ParseError(e.what(), static_cast<int>(i) + 1, 8);
    }
    size_t tree_start = ++i;
    std::string body;
    while (i < lines.size() && trim(lines[i]).rfind("len", 0) != 0) body += lines[i++] + "\n";
    s.shape = TreeParser(tokenize(body, static_cast<int>(tree_start) + 1)).parse();
    for (; i < lines.size(); ++i)
        if (!trim(lines[i]).empty()) s.rest.emplace_back(static_cast<int>(i) + 1, trim(lines[i]));
    return s;
}

}  // namespace

LabelledTree parse_labelled_tree(std::string_view text) {
    auto s = parse_sections(text);
    if (!s.rest.empty()) throw ParseError("unexpected metric lines in a plain tree", s.rest[0].first, 1);
    try {
        return make_labelled(std::move(s.shape), std::move(s.labels));
    } catch (const TreeError& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

std::string to_string(const Length& l) { return l.infinite ? "inf" : to_string(l.value); }

int MetricTree::broken_count() const {
    return static_cast<int>(std::count_if(lengths.begin(), lengths.end(), [](const auto& kv) { return kv.second.infinite; }));
}

bool MetricTree::is_unilabelled_metric() const {
    auto flat = flatten(tree.shape);
    for (const auto& [e, len] : lengths)
        if (!is_unilabelled(tree, flat[e]) && (len.infinite || len.value != 0)) return false;
    return true;
}

void validate_metric(const MetricTree& m) {
    auto flat = flatten(m.tree.shape);
    for (size_t n = 1; n < flat.size(); ++n)
        if (!flat[n].leaf && !m.lengths.count(static_cast<int>(n)))
            throw TreeError("interior edge e" + std::to_string(n) + " has no length");
    for (const auto& [e, len] : m.lengths) {
        if (e <= 0 || e >= static_cast<int>(flat.size()) || flat[e].leaf)
            throw TreeError("e" + std::to_string(e) + " is not an interior edge");
        if (!len.infinite && len.value < 0) throw TreeError("negative length on e" + std::to_string(e));
    }
}

std::string serialize(const MetricTree& m) {
    std::string out = serialize(m.tree);
    for (const auto& [e, len] : m.lengths) out += "len e" + std::to_string(e) + " = " + to_string(len) + "\n";
    return out;
}

MetricTree parse_metric_tree(std::string_view text) {
    auto s = parse_sections(text);
    MetricTree m;
    try {
        m.tree = make_labelled(std::move(s.shape), std::move(s.labels));
    } catch (const TreeError& e) {
        throw ParseError(e.what(), 1, 1);
    }
    for (const auto& [line, l] : s.rest) {
        auto eq = l.find('=');
        std::string lhs = trim(l.substr(3, eq == std::string::npos ? std::string::npos : eq - 3));
        if (eq == std::string::npos || lhs.size() < 2 || lhs[0] != 'e')
            throw ParseError("expected 'len e<id> = <length>|inf'", line, 1);
        int id = 0;
        try {
            id = std::stoi(lhs.substr(1));
        } catch (...) {
            throw ParseError("bad edge id '" + lhs + "'", line, 5);
        }
        std::string rhs = trim(l.substr(eq + 1));
        Length len;
        try {
            len = rhs == "inf" ? Length::inf() : Length::finite(parse_rational(rhs));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line, static_cast<int>(eq) + 2);
        }
        if (!m.lengths.emplace(id, len).second) throw ParseError("duplicate length for " + lhs, line, 5);
    }
    try {
        validate_metric(m);
    } catch (const TreeError& e) {
        throw ParseError(e.what(), s.rest.empty() ? 1 : s.rest.front().first, 1);
    }
    return m;
}

namespace {

PlanarTree graft(const PlanarTree& host, const PlanarTree& scion, int leaf, int& next_leaf) {
    if (host.is_leaf()) return next_leaf++ == leaf ? scion : host;
    PlanarTree out;
    out.colored = host.colored;
    for (const auto& c : host.children) out.children.push_back(graft(c, scion, leaf, next_leaf));
    return out;
}

}  // namespace

GlueResult glue_trees(const LabelledTree& t1, int leaf, const LabelledTree& t2) {
    int d1 = t1.d(), d2 = t2.d();
    if (leaf < 1 || leaf > d2) throw TreeError("leaf index " + std::to_string(leaf) + " out of range 1.." + std::to_string(d2));
    const LagTuple& L1 = t1.labels;
    const LagTuple& L2 = t2.labels;
    bool ok = L2[leaf - 1] == L1.front() && L2[leaf] == L1[d1];
    // a root carrying L0 on both sides needs the host leaf to do the same
    if (reduce_tuple(L1).m0_end > 0) ok = ok && L2[leaf - 1] == L2[leaf];
    if (!ok)
        throw TreeError("inadmissible gluing: leaf " + std::to_string(leaf) + " of " + to_string(L2) +
                        " separates " + L2[leaf - 1].name() + "|" + L2[leaf].name() + " but the root of " +
                        to_string(L1) + " separates " + L1.front().name() + "|" + L1.back().name());

    GlueResult r;
    int next = 1;
    r.tree.shape = graft(t2.shape, t1.shape, leaf, next);
    r.tree.labels.assign(L2.begin(), L2.begin() + leaf);
    r.tree.labels.insert(r.tree.labels.end(), L1.begin() + 1, L1.end() - 1);
    r.tree.labels.insert(r.tree.labels.end(), L2.begin() + leaf, L2.end());

    auto f1 = flatten(t1.shape), f2 = flatten(t2.shape);
    int p = 0;
    while (f2[p].leaf_index != leaf) ++p;
    int n1 = static_cast<int>(f1.size());
    r.glued_edge = p;
    for (int k = 0; k < n1; ++k) r.from_first.push_back(p + k);
    for (int k = 0; k < static_cast<int>(f2.size()); ++k) r.from_second.push_back(k <= p ? k : k + n1 - 1);
    return r;
}

MetricTree glue_metrics(const Length& glued_length, int leaf, const MetricTree& m1, const MetricTree& m2) {
    if (!glued_length.infinite && glued_length.value < 0) throw TreeError("glued length must be non-negative");
    GlueResult g = glue_trees(m1.tree, leaf, m2.tree);
    MetricTree out;
    out.tree = g.tree;
    for (const auto& [e, len] : m1.lengths) out.lengths[g.from_first[e]] = len;
    for (const auto& [e, len] : m2.lengths) out.lengths[g.from_second[e]] = len;
    out.lengths[g.glued_edge] = glued_length;
    return out;
}

double log_chart_length(double rho) {
    if (!(rho >= -1.0 && rho <= 0.0)) throw std::domain_error("gluing parameter must lie in [-1, 0]");
    if (rho == 0.0) return INFINITY;
    return -std::log(-rho);
}

FloatGlue glue_metrics_rho(double rho, int leaf, const MetricTree& m1, const MetricTree& m2) {
    double len = log_chart_length(rho);
    Length l = std::isinf(len) ? Length::inf() : Length::finite(rational_from_double(len == 0.0 ? 0.0 : len));
    return {glue_metrics(l, leaf, m1, m2), len};
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

TreeDecomposition fundamental_decomposition(const LabelledTree& t) {
    if (t.shape.is_leaf() || t.shape.leaf_count() + 1 != static_cast<int>(t.labels.size()))
        throw TreeError("label tuple length does not match the number of leaves");
    TreeDecomposition dec;
    dec.reduced = reduce_tuple(t.labels);
    auto flat = flatten(t.shape);
    int n = static_cast<int>(flat.size());

    std::vector<bool> uni(static_cast<size_t>(n));
    for (int e = 0; e < n; ++e) uni[e] = is_unilabelled(t, flat[e]);
    dec.root_unilabelled = uni[0];

    UnionFind uf(n);
    for (int v = 0; v < n; ++v) {
        if (flat[v].leaf) continue;
        std::vector<int> inc{v};
        inc.insert(inc.end(), flat[v].children.begin(), flat[v].children.end());
        for (size_t a = 0; a < inc.size(); ++a)
            for (size_t b = a + 1; b < inc.size(); ++b) {
                int x = inc[a], y = inc[b];
                if (uni[x] != uni[y]) continue;
                if (uni[x] && edge_labels(t, flat[x]).first != edge_labels(t, flat[y]).first) continue;
                uf.unite(x, y);
            }
    }

    std::map<int, TreeComponent> comps;
    for (int e = 0; e < n; ++e) comps[uf.find(e)].edges.push_back(e);
    std::vector<TreeComponent> ordered;
    for (auto& [root, c] : comps) {
        std::vector<int> vs;
        for (int e : c.edges) {
            if (!flat[e].leaf) vs.push_back(e);
            if (flat[e].parent >= 0) vs.push_back(flat[e].parent);
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        c.vertices = vs;
        if (uni[c.edges.front()]) c.label = edge_labels(t, flat[c.edges.front()]).first;
        ordered.push_back(c);
    }
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.edges.front() < b.edges.front(); });

    const auto& F = dec.reduced.fundamental;
    dec.uni_components.resize(F.size());
    for (auto& c : ordered) {
        if (!c.label) {
            dec.reduced_components.push_back(c);
            continue;
        }
        size_t j = static_cast<size_t>(std::find(F.begin(), F.end(), *c.label) - F.begin());
        dec.uni_components.at(j).push_back(c);
    }

    auto mbar = dec.reduced.split_multiplicities();
    int offset = 0;
    for (int i = 0; i < static_cast<int>(mbar.size()); ++i) {
        for (int j = 1; j <= mbar[i] - 1; ++j) dec.exterior_numbering[{i, j}] = offset + j;
        offset += mbar[i];
    }
    return dec;
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

void products(const std::vector<const Forest*>& choices, size_t k, std::vector<PlanarTree>& cur, Forest& out) {
    if (k == choices.size()) {
        out.push_back(PlanarTree::vertex(cur));
        return;
    }
    for (const auto& t : *choices[k]) {
        cur.push_back(t);
        products(choices, k + 1, cur, out);
        cur.pop_back();
    }
}

Forest trees_with_root_arity(int d, int arity, const std::vector<Forest>& memo) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(d, arity, cur, comps);
    Forest out;
    for (const auto& c : comps) {
        std::vector<const Forest*> choices;
        for (int p : c) choices.push_back(&memo[p]);
        std::vector<PlanarTree> kids;
        products(choices, 0, kids, out);
    }
    return out;
}

void canonical_sort(Forest& f) {
    std::vector<std::pair<std::pair<int, std::string>, size_t>> keys;
    for (size_t i = 0; i < f.size(); ++i) keys.push_back({{f[i].vertex_count(), serialize(f[i])}, i});
    std::sort(keys.begin(), keys.end());
    Forest out;
    for (const auto& k : keys) out.push_back(std::move(f[k.second]));
    f = std::move(out);
}

}  // namespace

std::vector<PlanarTree> enumerate_stable_trees(int d, bool parallel) {
    if (d < 2) throw TreeError("stable trees need at least two leaves");
    std::vector<Forest> memo(static_cast<size_t>(d) + 1);
    memo[1] = {PlanarTree::leaf()};
    for (int n = 2; n < d; ++n)
        for (int k = 2; k <= n; ++k) {
            auto part = trees_with_root_arity(n, k, memo);
            memo[n].insert(memo[n].end(), part.begin(), part.end());
        }
    Forest all;
    if (parallel) {
        std::vector<std::future<Forest>> jobs;
        for (int k = 2; k <= d; ++k)
            jobs.push_back(std::async(std::launch::async, [&memo, d, k] { return trees_with_root_arity(d, k, memo); }));
        for (auto& j : jobs) {
            auto part = j.get();
            all.insert(all.end(), part.begin(), part.end());
        }
    } else {
        for (int k = 2; k <= d; ++k) {
            auto part = trees_with_root_arity(d, k, memo);
            all.insert(all.end(), part.begin(), part.end());
        }
    }
    canonical_sort(all);
    return all;
}

}  // namespace wb
