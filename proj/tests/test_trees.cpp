#include "oracles.hpp"
#include "workbench/trees.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace wb;

namespace {

LabelledTree labelled(const char* tuple, const char* tree) {
    return make_labelled(parse_planar_tree(tree), parse_lag_tuple(tuple));
}

std::set<int> non_uni_edges(const LabelledTree& t) {
    std::set<int> s;
    auto flat = flatten(t.shape);
    for (size_t n = 0; n < flat.size(); ++n)
        if (!is_unilabelled(t, flat[n])) s.insert(static_cast<int>(n));
    return s;
}

std::vector<LagTuple> all_tuples(int len, int alphabet) {
    static const char* names[] = {"A", "B", "C", "D"};
    std::vector<LagTuple> out;
    std::vector<int> idx(len, 0);
    while (true) {
        LagTuple t;
        for (int i : idx) t.push_back(Symbol::intern(names[i]));
        out.push_back(t);
        int i = 0;
        while (i < len && ++idx[i] == alphabet) idx[i++] = 0;
        if (i == len) break;
    }
    return out;
}

}  // namespace

TEST_CASE("reduce_tuple examples") {
    auto r = reduce_tuple(parse_lag_tuple("(L0,L0,L2,L3,L2,L1,L0)"));
    CHECK(format_reduced(r) == "((L0,2+1),L2,L3,L2,L1)");
    CHECK(format_fundamental(r) == "(L0,L2,L3,L1)");
    CHECK(r.m0_begin == 2);
    CHECK(r.m0_end == 1);
    CHECK(r.d_red() == 4);

    r = reduce_tuple(parse_lag_tuple("(L0,L0,L1,L2,L3,L2,L0,L0)"));
    CHECK(format_reduced(r) == "((L0,2+2),L1,L2,L3,L2)");
    CHECK(format_fundamental(r) == "(L0,L1,L2,L3)");

    r = reduce_tuple(parse_lag_tuple("(L0,L1)"));
    CHECK(format_reduced(r) == "(L0,L1)");
    CHECK(r.m0_end == 0);
    CHECK(r.entries.size() == 2);

    r = reduce_tuple(parse_lag_tuple("(L,L,L)"));
    CHECK(format_reduced(r) == "((L,3))");
    CHECK(format_fundamental(r) == "(L)");
    CHECK(r.degenerate);
    CHECK(r.d_red() == 0);
}

TEST_CASE("reduction is idempotent and respects multiplicities") {
    for (int len = 2; len <= 7; ++len)
        for (const auto& t : all_tuples(len, 3)) {
            auto r = reduce_tuple(t);
            int total = 0;
            for (const auto& e : r.entries) total += e.multiplicity;
            CHECK(total == len);
            CHECK(r.m0_begin + r.m0_end == r.entries[0].multiplicity);
            // flatten the reduced tuple (one copy per entry) and reduce again
            LagTuple flat;
            for (const auto& e : r.entries) flat.push_back(e.label);
            if (flat.size() == 1) continue;
            auto again = reduce_tuple(flat);
            if (flat.front() == flat.back()) continue;  // merges cyclically; a different tuple class
            REQUIRE(again.entries.size() == r.entries.size());
            for (size_t i = 0; i < r.entries.size(); ++i) {
                CHECK(again.entries[i].label == r.entries[i].label);
                CHECK(again.entries[i].multiplicity == 1);
            }
            CHECK(again.fundamental == r.fundamental);
            std::set<uint32_t> distinct;
            for (auto s : r.fundamental) distinct.insert(s.id());
            CHECK(distinct.size() == r.fundamental.size());
            CHECK(r.fundamental.front() == r.entries.front().label);
        }
}

TEST_CASE("classify_tuple") {
    CHECK(classify_tuple(parse_lag_tuple("(L0,L1,L2)")) == TupleClass::cyclically_different);
    CHECK(classify_tuple(parse_lag_tuple("(L0,L1,L0)")) == TupleClass::almost_cyclically_different);
    CHECK(classify_tuple(parse_lag_tuple("(L0,L0,L1)")) == TupleClass::general_open);
    CHECK(classify_tuple(parse_lag_tuple("(L0,L0,L1,L0)")) == TupleClass::general_closed);
    CHECK(classify_tuple(parse_lag_tuple("(L,L,L)")) == TupleClass::constant);
    for (auto c : {TupleClass::cyclically_different, TupleClass::almost_cyclically_different, TupleClass::general_open,
                   TupleClass::general_closed, TupleClass::constant})
        CHECK(parse_tuple_class(to_string(c)) == c);
}

TEST_CASE("tuple parsing errors") {
    CHECK_THROWS_AS(parse_lag_tuple("(L0)"), ParseError);
    CHECK_THROWS_AS(parse_lag_tuple("L0,L1"), ParseError);
    CHECK_THROWS_AS(parse_lag_tuple("(L0,,L1)"), ParseError);
    CHECK(parse_lag_tuple(" ( L0 , L1 ) ") == make_tuple({"L0", "L1"}));
}

TEST_CASE("tree serialization round trip") {
    for (int d = 2; d <= 5; ++d)
        for (const auto& t : enumerate_stable_trees(d)) CHECK(parse_planar_tree(serialize(t)) == t);
    auto t = labelled("(L0,L1,L2,L3)", "(v (c (leaf 1)) (c (v (leaf 2) (leaf 3))))");
    CHECK(parse_labelled_tree(serialize(t)) == t);
    CHECK_THROWS_AS(parse_planar_tree("(v (leaf 2) (leaf 1))"), ParseError);
    CHECK_THROWS_AS(parse_planar_tree("(v (leaf 1) (leaf 2)"), ParseError);
    CHECK_THROWS_AS(parse_labelled_tree("labels: (L0,L1)\n(v (leaf 1) (leaf 2))\n"), ParseError);
    try {
        parse_planar_tree("(v (leaf 1)\n (x (leaf 2)))");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 0);
    }
}

TEST_CASE("edge and vertex counts") {
    for (int d = 2; d <= 6; ++d)
        for (const auto& t : enumerate_stable_trees(d)) {
            auto flat = flatten(t);
            int edges = static_cast<int>(flat.size());
            CHECK(edges == t.vertex_count() + d);
            CHECK(t.leaf_count() == d);
            CHECK(t.is_stable());
        }
}

TEST_CASE("stable tree counts match bracketings and Catalan numbers") {
    CHECK(enumerate_stable_trees(2).size() == 1);
    CHECK(enumerate_stable_trees(3).size() == 3);
    CHECK(enumerate_stable_trees(4).size() == 11);
    for (int d = 2; d <= 8; ++d) {
        auto trees = enumerate_stable_trees(d, d % 2 == 0);
        CHECK(static_cast<long>(trees.size()) == oracle::schroder(d));
        long binary = 0;
        std::set<std::string> seen;
        for (const auto& t : trees) {
            binary += t.is_binary() ? 1 : 0;
            seen.insert(serialize(t));
        }
        CHECK(binary == oracle::catalan(d - 1));
        CHECK(seen.size() == trees.size());
    }
}

TEST_CASE("parallel enumeration is identical") {
    for (int d = 2; d <= 7; ++d) CHECK(enumerate_stable_trees(d, true) == enumerate_stable_trees(d, false));
}

TEST_CASE("edge regions and unilabelled edges") {
    auto t = labelled("(L0,L1,L0,L2)", "(v (v (leaf 1) (leaf 2)) (leaf 3))");
    auto flat = flatten(t.shape);
    CHECK(edge_regions(flat[0]) == std::pair{0, 3});
    CHECK(edge_regions(flat[1]) == std::pair{0, 2});
    CHECK(is_unilabelled(t, flat[1]));
    CHECK(!is_unilabelled(t, flat[0]));
    CHECK_THROWS_AS(make_labelled(parse_planar_tree("(v (leaf 1) (leaf 2))"), parse_lag_tuple("(A,B)")), TreeError);
}

TEST_CASE("glue_trees") {
    auto t1 = labelled("(L0,L1,L2)", "(v (leaf 1) (leaf 2))");
    auto t2 = labelled("(L0,L2,L3)", "(v (leaf 1) (leaf 2))");
    auto g = glue_trees(t1, 1, t2);
    CHECK(g.tree.labels == parse_lag_tuple("(L0,L1,L2,L3)"));
    CHECK(g.tree.shape.leaf_count() == 3);
    CHECK(serialize(g.tree.shape) == "(v (v (leaf 1) (leaf 2)) (leaf 3))");
    CHECK(g.glued_edge == 1);
    auto t3 = labelled("(L5,L6,L7)", "(v (leaf 1) (leaf 2))");
    CHECK_THROWS_AS(glue_trees(t1, 1, t3), TreeError);
    CHECK_THROWS_AS(glue_trees(t1, 3, t2), TreeError);
}

TEST_CASE("fundamental decomposition examples") {
    auto t = labelled("(L0,L0,L2,L3,L2,L1,L0)", "(v (leaf 1) (v (leaf 2) (v (leaf 3) (leaf 4)) (leaf 5) (leaf 6)))");
    auto dec = fundamental_decomposition(t);
    REQUIRE(dec.reduced_components.size() == 2);
    CHECK(dec.reduced_components[0].vertices == std::vector<int>{2});
    CHECK(dec.reduced_components[0].edges == std::vector<int>{3, 7, 8});
    CHECK(dec.reduced_components[1].vertices == std::vector<int>{4});
    CHECK(dec.reduced_components[1].edges == std::vector<int>{5, 6});
    REQUIRE(dec.uni_components[0].size() == 1);
    const auto& l0 = dec.uni_components[0][0];
    CHECK(l0.label->name() == "L0");
    CHECK(l0.edges == std::vector<int>{0, 1, 2});  // root edge, leaf 1, and the edge above the big vertex
    CHECK(dec.root_unilabelled);
    CHECK(dec.exterior_numbering.at({0, 1}) == 1);

    auto corolla_const = make_labelled(PlanarTree::corolla(3), parse_lag_tuple("(L,L,L,L)"));
    dec = fundamental_decomposition(corolla_const);
    CHECK(dec.reduced_components.empty());
    REQUIRE(dec.uni_components.size() == 1);
    REQUIRE(dec.uni_components[0].size() == 1);
    CHECK(dec.uni_components[0][0].edges == std::vector<int>{0, 1, 2, 3});

    auto corolla_diff = make_labelled(PlanarTree::corolla(3), parse_lag_tuple("(A,B,C,D)"));
    dec = fundamental_decomposition(corolla_diff);
    REQUIRE(dec.reduced_components.size() == 1);
    CHECK(dec.reduced_components[0].edges == std::vector<int>{0, 1, 2, 3});
    for (const auto& u : dec.uni_components) CHECK(u.empty());
    CHECK(!dec.root_unilabelled);
}

TEST_CASE("decomposition partitions the edges") {
    for (int d = 2; d <= 5; ++d)
        for (const auto& shape : enumerate_stable_trees(d))
            for (const auto& labels : all_tuples(d + 1, 3)) {
                auto t = make_labelled(shape, labels);
                auto dec = fundamental_decomposition(t);
                std::multiset<int> seen;
                for (const auto& c : dec.reduced_components) seen.insert(c.edges.begin(), c.edges.end());
                for (const auto& per : dec.uni_components)
                    for (const auto& c : per) seen.insert(c.edges.begin(), c.edges.end());
                CHECK(static_cast<int>(seen.size()) == static_cast<int>(flatten(shape).size()));
                std::set<int> unique(seen.begin(), seen.end());
                CHECK(unique.size() == seen.size());
                std::set<int> reduced;
                for (const auto& c : dec.reduced_components) reduced.insert(c.edges.begin(), c.edges.end());
                CHECK(reduced == non_uni_edges(t));
            }
}

TEST_CASE("gluing and decomposition commute on the reduced part") {
    int glued = 0, uni = 0;
    for (int d1 = 2; d1 <= 3; ++d1)
        for (int d2 = 2; d2 <= 5 - d1; ++d2)
            for (const auto& s1 : enumerate_stable_trees(d1))
                for (const auto& s2 : enumerate_stable_trees(d2))
                    for (const auto& L1 : all_tuples(d1 + 1, 3))
                        for (const auto& L2 : all_tuples(d2 + 1, 3))
                            for (int i = 1; i <= d2; ++i) {
                                if (!(L2[i - 1] == L1.front() && L2[i] == L1.back())) continue;
                                auto t1 = make_labelled(s1, L1), t2 = make_labelled(s2, L2);
                                auto g = glue_trees(t1, i, t2);
                                ++glued;
                                std::set<int> expect;
                                for (int e : non_uni_edges(t1)) expect.insert(g.from_first[e]);
                                for (int e : non_uni_edges(t2)) expect.insert(g.from_second[e]);
                                CHECK(non_uni_edges(g.tree) == expect);
                                auto c1 = fundamental_decomposition(t1).reduced_components.size();
                                auto c2 = fundamental_decomposition(t2).reduced_components.size();
                                auto c = fundamental_decomposition(g.tree).reduced_components.size();
                                bool edge_uni = !expect.count(g.glued_edge);
                                uni += edge_uni ? 1 : 0;
                                CHECK(c == (edge_uni ? c1 + c2 : c1 + c2 - 1));
                            }
    CHECK(glued > 1000);
    CHECK(uni > 0);
}

TEST_CASE("metric trees") {
    auto t = labelled("(L0,L1,L0,L2)", "(v (v (leaf 1) (leaf 2)) (leaf 3))");
    MetricTree m{t, {{1, Length::finite(Rational(3, 2))}}};
    validate_metric(m);
    CHECK(m.broken_count() == 0);
    CHECK(m.is_unilabelled_metric());
    auto round = parse_metric_tree(serialize(m));
    CHECK(round.tree == m.tree);
    CHECK(round.lengths == m.lengths);
    m.lengths[1] = Length::inf();
    CHECK(m.broken_count() == 1);
    CHECK(serialize(m).find("len e1 = inf") != std::string::npos);
    CHECK(parse_metric_tree(serialize(m)).lengths.at(1).infinite);
    MetricTree bad{t, {}};
    CHECK_THROWS_AS(validate_metric(bad), TreeError);
    bad.lengths[1] = Length::finite(-1);
    CHECK_THROWS_AS(validate_metric(bad), TreeError);

    auto f = labelled("(A,B,C,D)", "(v (v (leaf 1) (leaf 2)) (leaf 3))");
    MetricTree mf{f, {{1, Length::finite(1)}}};
    CHECK(!mf.is_unilabelled_metric());
    mf.lengths[1] = Length::finite(0);
    CHECK(mf.is_unilabelled_metric());
}

TEST_CASE("metric gluing") {
    auto t1 = labelled("(L0,L1,L2)", "(v (leaf 1) (leaf 2))");
    auto t2 = labelled("(L0,L2,L3)", "(v (leaf 1) (leaf 2))");
    MetricTree m1{t1, {}}, m2{t2, {}};
    auto g = glue_metrics(Length::finite(Rational(5, 2)), 1, m1, m2);
    CHECK(g.lengths.at(1) == Length::finite(Rational(5, 2)));
    validate_metric(g);

    CHECK(glue_metrics_rho(-1.0, 1, m1, m2).glued_length == 0.0);
    CHECK(glue_metrics_rho(-1.0, 1, m1, m2).metric.lengths.at(1) == Length::finite(0));
    auto broken = glue_metrics_rho(0.0, 1, m1, m2);
    CHECK(std::isinf(broken.glued_length));
    CHECK(broken.metric.lengths.at(1).infinite);
    CHECK(std::abs(glue_metrics_rho(-std::exp(-3.0), 1, m1, m2).glued_length - 3.0) < 1e-12);
    CHECK_THROWS_AS(log_chart_length(0.5), std::domain_error);
    CHECK_THROWS_AS(log_chart_length(-1.5), std::domain_error);

    // restrictions are preserved
    auto t3 = labelled("(L0,L1,L2,L3)", "(v (v (leaf 1) (leaf 2)) (leaf 3))");
    MetricTree m3{t3, {{1, Length::finite(7)}}};
    auto t4 = labelled("(X,L0,L3,Y)", "(v (leaf 1) (v (leaf 2) (leaf 3)))");
    MetricTree m4{t4, {{2, Length::inf()}}};
    auto gr = glue_trees(t3, 2, t4);
    auto gm = glue_metrics(Length::finite(1), 2, m3, m4);
    CHECK(gm.lengths.at(gr.from_first[1]) == Length::finite(7));
    CHECK(gm.lengths.at(gr.from_second[2]).infinite);
    CHECK(gm.lengths.at(gr.glued_edge) == Length::finite(1));
    CHECK(gm.lengths.size() == 3);
}

TEST_CASE("log chart is strictly decreasing with the right limits") {
    double prev = log_chart_length(-1.0);
    CHECK(std::abs(prev) < 1e-9);
    for (int i = 1; i < 1000; ++i) {
        double rho = -1.0 + i / 1000.0;
        double l = log_chart_length(rho);
        CHECK(l > prev);
        prev = l;
    }
    CHECK(log_chart_length(-1e-300) > 600.0);
    CHECK(std::isinf(log_chart_length(0.0)));
}
