#include "fixtures.hpp"
#include "oracles.hpp"
#include "workbench/ainf.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace wb;

namespace {

NovikovElement T(const char* e) { return NovikovElement::monomial(parse_rational(e)); }
const NovikovElement one = NovikovElement::one();

FilteredAInfCategory single_object(const std::vector<std::string>& gens) {
    FilteredAInfCategory c;
    c.add_object("X");
    for (const auto& g : gens) c.add_generator({g, "X", "X", 0, 0});
    return c;
}

Element elem(std::initializer_list<std::pair<std::string, NovikovElement>> terms) {
    Element e;
    for (const auto& [g, c] : terms) add_term(e, g, c);
    return e;
}

// random sparse single-object category with mu_1..mu_3
FilteredAInfCategory random_category(std::mt19937& rng, int gens, int terms) {
    std::vector<std::string> names;
    for (int i = 0; i < gens; ++i) names.push_back("g" + std::to_string(i));
    auto c = single_object(names);
    std::uniform_int_distribution<int> pick(0, gens - 1), arity(1, 3), ex(0, 4);
    for (int t = 0; t < terms; ++t) {
        std::vector<std::string> in(arity(rng));
        for (auto& g : in) g = names[pick(rng)];
        auto out = names[pick(rng)];
        if (c.mu_entry(in) && c.mu_entry(in)->count(out)) continue;
        c.add_mu_term(in, out, NovikovElement::monomial(Rational(ex(rng), 2)));
    }
    return c;
}

}  // namespace

TEST_CASE("category parsing and round trip") {
    auto cat = fixture_category("exterior.cat");
    CHECK(cat.objects().size() == 1);
    CHECK(cat.generators().size() == 4);
    CHECK(serialize(cat) == fixture_text("exterior.cat").substr(fixture_text("exterior.cat").find("\nobject") + 1));
    CHECK(serialize(parse_category(serialize(cat))) == serialize(cat));
    CHECK(parse_category("").objects().empty());
    CHECK(parse_category("# nothing\n\n").generators().empty());
    CHECK_THROWS_AS(parse_category("object X\ngen X X a\ngen X X a\n"), ParseError);
    CHECK_THROWS_AS(parse_category("object X\ngen X Y a\n"), ParseError);
    CHECK_THROWS_AS(parse_category("object X\ngen X X a\nmu 2 X X X in=a out=a coeff=1\n"), ParseError);
    CHECK_THROWS_AS(parse_category("object X\nobject Y\ngen X Y a\nmu 2 X Y X in=a,a out=a\n"), ParseError);
    CHECK_THROWS_AS(parse_category("frobnicate\n"), ParseError);
    try {
        parse_category("object X\ngen X X a\nmu 1 X X in=a out=a coeff=T^{q}\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 1);
    }
    std::mt19937 rng(5);
    for (int it = 0; it < 50; ++it) {
        auto c = random_category(rng, 3, 8);
        CHECK(serialize(parse_category(serialize(c))) == serialize(c));
    }
}

TEST_CASE("type checking") {
    FilteredAInfCategory c;
    c.add_object("X");
    c.add_object("Y");
    c.add_generator({"a", "X", "Y", 0, 0});
    c.add_generator({"b", "Y", "X", 0, 0});
    c.add_generator({"p", "X", "X", 0, 0});
    c.add_mu_term({"a", "b"}, "p", one);
    CHECK_THROWS_AS(c.add_mu_term({"a", "a"}, "p", one), TypeError);
    CHECK_THROWS_AS(c.add_mu_term({"a", "b"}, "a", one), TypeError);
    CHECK_THROWS_AS(c.add_generator({"a", "X", "X", 0, 0}), TypeError);
    CHECK(c.composable_tuples(2).size() == 5);  // ab, ba, pp, pa, bp
}

TEST_CASE("ainf_defect basics") {
    // only mu_1 with mu_1 o mu_1 = 0
    auto c = single_object({"a", "b", "c"});
    c.add_mu_term({"a"}, "b", one);
    CHECK(!find_ainf_violation(c, 4));
    c.add_mu_term({"b"}, "c", one);
    auto v = find_ainf_violation(c, 4);
    REQUIRE(v);
    CHECK(v->inputs == std::vector<std::string>{"a"});
    CHECK(v->defect == basis_element("c"));

    auto ext = fixture_category("exterior.cat");
    for (const auto& t : ext.composable_tuples(3)) CHECK(ainf_defect(ext, t).empty());
    CHECK(!find_ainf_violation(ext, 5));

    ext.mutable_mu()[{"x", "y"}] = elem({{"y", one}});
    v = find_ainf_violation(ext, 5);
    REQUIRE(v);
    CHECK(v->inputs.size() == 3);
    CHECK(!ainf_defect(ext, v->inputs).empty());
}

TEST_CASE("ainf_defect is linear in each slot") {
    std::mt19937 rng(17);
    for (int it = 0; it < 40; ++it) {
        auto c = random_category(rng, 3, 10);
        std::vector<std::string> names = {"g0", "g1", "g2"};
        auto rand_elem = [&] {
            Element e;
            for (const auto& g : names)
                if (rng() % 2) add_term(e, g, NovikovElement::monomial(Rational(static_cast<int>(rng() % 5), 3)));
            return e;
        };
        // defect as a multilinear map on elements, via basis expansion
        auto defect_of = [&](const std::vector<Element>& in) {
            return apply_multilinear(
                [&](const std::vector<std::string>& t) -> const Element* {
                    static thread_local Element store;
                    store = ainf_defect(c, t);
                    return &store;
                },
                in);
        };
        auto a = rand_elem(), b = rand_elem(), x = rand_elem(), y = rand_elem();
        NovikovElement s = T("1/2") + T("2");
        Element ab = a;
        add_into(ab, scaled(b, s));
        auto lhs = defect_of({x, ab, y});
        auto rhs = defect_of({x, a, y});
        add_into(rhs, scaled(defect_of({x, b, y}), s));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("measure_discrepancies") {
    auto areas = fixture_category("areas.cat");
    auto r = measure_discrepancies(areas, {});
    CHECK(r.raw.at(1).is_neg_inf());
    CHECK(r.raw.at(2) == ActionValue(Rational(-1, 2)));
    CHECK(r.raw.at(3) == ActionValue(Rational(-1)));
    for (const auto& [d, e] : r.eps) CHECK(e == 0);
    CHECK(r.is_filtered);

    auto c = single_object({"a", "b"});
    c.add_mu_term({"a", "a"}, "b", T("-0.3"));
    r = measure_discrepancies(c, {});
    CHECK(r.eps.at(2) == Rational(3, 10));
    CHECK(!r.is_filtered);

    r = measure_discrepancies(FilteredAInfCategory{}, {});
    CHECK(r.eps.empty());
    CHECK(r.is_filtered);

    auto ext = fixture_category("exterior.cat");
    r = measure_discrepancies(ext, ext.units());
    CHECK(r.unit_level.at("X") == ActionValue(Rational(0)));
    CHECK(r.is_filtered);
    auto lifted = ext.units();
    lifted["X"] = elem({{"e", T("-1")}});
    CHECK(!measure_discrepancies(ext, lifted).is_filtered);
}

TEST_CASE("raw shifts transform under a common level shift") {
    std::mt19937 rng(23);
    for (int it = 0; it < 50; ++it) {
        auto c = random_category(rng, 3, 12);
        Rational shift(static_cast<int>(rng() % 11) - 5, 4);
        FilteredAInfCategory moved;
        moved.add_object("X");
        for (const auto& g : c.generators()) moved.add_generator({g.name, g.source, g.target, g.level + shift, g.ham});
        for (const auto& [in, out] : c.mu())
            for (const auto& [g, coeff] : out) moved.add_mu_term(in, g, coeff);
        auto r0 = measure_discrepancies(c, {}), r1 = measure_discrepancies(moved, {});
        for (const auto& [d, raw] : r0.raw) {
            if (raw.is_neg_inf())
                CHECK(r1.raw.at(d).is_neg_inf());
            else
                CHECK(r1.raw.at(d) == ActionValue(raw.value() + (1 - d) * shift));
        }
    }
}

TEST_CASE("strict units") {
    auto ext = fixture_category("exterior.cat");
    const auto& e = ext.units().at("X");
    auto v = check_strict_unit(ext, "X", e);
    CHECK(v.ok);
    CHECK(measure_discrepancies(ext, ext.units()).unit_level.at("X") == ext.element_action(e));

    auto bad = ext;
    bad.mutable_mu()[{"e", "x"}] = elem({{"x", one}, {"y", T("1")}});
    v = check_strict_unit(bad, "X", e);
    CHECK(!v.ok);
    CHECK(v.d == 2);
    CHECK(v.slot == 1);
    CHECK(v.inputs == std::vector<std::string>{"e", "x"});

    bad = ext;
    bad.add_mu_term({"x", "y", "e"}, "xy", one);
    v = check_strict_unit(bad, "X", e);
    CHECK(!v.ok);
    CHECK(v.d == 3);
    CHECK(v.slot == 3);

    bad = ext;
    bad.add_mu_term({"e"}, "x", one);
    v = check_strict_unit(bad, "X", e);
    CHECK(!v.ok);
    CHECK(v.d == 1);
}

TEST_CASE("functors") {
    auto A = fixture_category("exterior.cat");
    auto id = parse_functor(fixture_text("identity.fun"), A, A);
    CHECK(!find_functor_violation(A, A, id, 4));
    auto s = functor_shift(A, A, id);
    CHECK(s.raw.at(1) == ActionValue(Rational(0)));
    CHECK(s.rho_star == 0);
    CHECK(serialize(parse_functor(serialize(id, A), A, A), A) == serialize(id, A));

    auto swap = parse_functor(fixture_text("swap.fun"), A, A);
    CHECK(!find_functor_violation(A, A, swap, 4));
    auto broken = parse_functor(fixture_text("broken.fun"), A, A);
    auto v = find_functor_violation(A, A, broken, 4);
    REQUIRE(v);
    CHECK(!v->defect.empty());

    AInfFunctor scaled_f;
    scaled_f.object_map["X"] = "X";
    for (const auto& g : A.generators()) add_functor_term(scaled_f, A, A, {g.name}, g.name, T("0.4"));
    s = functor_shift(A, A, scaled_f);
    CHECK(s.raw.at(1) == ActionValue(Rational(-2, 5)));
    CHECK(s.rho_star == 0);

    AInfFunctor lifted = id;
    FilteredAInfCategory B = A;
    B.add_generator({"z", "X", "X", Rational(3, 5), 0});
    add_functor_term(lifted, A, B, {"x", "y"}, "z", one);
    s = functor_shift(A, B, lifted);
    CHECK(s.raw.at(2) == ActionValue(Rational(3, 5)));
    CHECK(s.rho_star == Rational(3, 10));
    CHECK_THROWS_AS(parse_functor("map X -> Q\n", A, A), ParseError);
}

TEST_CASE("symmetric tables") {
    SymmetricTable t;
    t.add({"a", "b"}, {}, "c", one);
    t.add({"b", "a"}, {}, "c", one);
    t.check_symmetric();
    CHECK(t.lookup({"b", "a"}, {}) != nullptr);
    t.add({"b", "a"}, {}, "d", one);
    CHECK_THROWS_AS(t.check_symmetric(), TypeError);
}

TEST_CASE("L-infinity") {
    auto abelian = parse_ocha(fixture_text("linf_abelian.och")).closed_part();
    CHECK(!find_linf_violation(abelian, 4));
    CHECK(linf_defect(abelian, {"x", "x", "x"}).empty());

    LInfinityAlgebra d;
    d.basis = {"a", "b", "c"};
    d.l.add({"a"}, {}, "b", one);
    d.l.add({"b"}, {}, "c", one);
    auto v = find_linf_violation(d, 3);
    REQUIRE(v);
    CHECK(v->inputs == std::vector<std::string>{"a"});

    LInfinityAlgebra ok;
    ok.basis = {"a", "b"};
    ok.l.add({"a"}, {}, "b", one);
    CHECK(!find_linf_violation(ok, 3));

    // a bracket on three generators with [[a,a],a] != 0
    LInfinityAlgebra jac;
    jac.basis = {"a", "b"};
    jac.l.add({"a", "a"}, {}, "b", one);
    jac.l.add({"a", "b"}, {}, "a", one);
    auto j = find_linf_violation(jac, 3);
    REQUIRE(j);
    CHECK(j->inputs.size() == 3);
}

TEST_CASE("OCHA") {
    auto toy = parse_ocha(fixture_text("ocha_toy.och"));
    CHECK(!find_ocha_violation(toy, 3, 3));
    CHECK(ocha_defect(toy, {"a"}, {}).empty());

    auto broken = toy;
    broken.add_mu_term({"b"}, {}, "w", one);  // cancels mu_{1,0}(b) = w
    auto v = find_ocha_violation(broken, 3, 3);
    REQUIRE(v);
    CHECK(v->relation == "ocha");

    // V_o = 0 reduces to the L-infinity relation
    OCHAStructure closed_only;
    closed_only.closed = {"a", "b", "c"};
    closed_only.add_l_term({"a"}, "b", one);
    closed_only.add_l_term({"b"}, "c", one);
    auto lv = find_ocha_violation(closed_only, 3, 2);
    REQUIRE(lv);
    CHECK(lv->relation == "linf");

    CHECK_THROWS_AS(parse_ocha("closed a\nopen a\n"), ParseError);
    CHECK_THROWS_AS(parse_ocha("closed a\nopen u\nmu 0 0 in=; out=u\n"), ParseError);
}

TEST_CASE("OCHA with no closed part is the A-infinity defect") {
    std::mt19937 rng(31);
    for (int it = 0; it < 200; ++it) {
        OCHAStructure s;
        s.open = {"p", "q", "r"};
        std::uniform_int_distribution<int> pick(0, 2), arity(1, 3), ex(0, 3);
        for (int t = 0; t < 6; ++t) {
            std::vector<std::string> in(arity(rng));
            for (auto& g : in) g = s.open[pick(rng)];
            auto out = s.open[pick(rng)];
            auto e = s.mu.lookup({}, in);
            if (e && e->count(out)) continue;
            s.add_mu_term({}, in, out, NovikovElement::monomial(ex(rng)));
        }
        auto cat = s.open_part();
        for (int d = 1; d <= 4; ++d)
            for (const auto& t : cat.composable_tuples(d)) CHECK(ocha_defect(s, {}, t) == ainf_defect(cat, t));
    }
}

TEST_CASE("perturbations agree with the associativity oracle") {
    auto base = fixture_category("exterior.cat");
    std::vector<std::string> g = {"e", "x", "y", "xy"};
    std::mt19937 rng(99);
    int located = 0, associative = 0;
    for (int it = 0; it < 100; ++it) {
        auto cat = base;
        oracle::DenseAlgebra dense(4);
        for (const auto& [in, out] : cat.mu())
            for (const auto& [o, c] : out) {
                auto idx = [&](const std::string& s) { return static_cast<int>(std::find(g.begin(), g.end(), s) - g.begin()); };
                dense.mu2[idx(in[0])][idx(in[1])][idx(o)] = c;
            }
        int d = 1 + static_cast<int>(rng() % 2);
        std::vector<int> in(d);
        for (auto& i : in) i = static_cast<int>(rng() % 4);
        int out = static_cast<int>(rng() % 4);
        auto c = NovikovElement::monomial(Rational(static_cast<int>(rng() % 4), 2));
        std::vector<std::string> names;
        for (int i : in) names.push_back(g[i]);
        add_term(cat.mutable_mu()[names], g[out], c);
        if (cat.mu().at(names).empty()) cat.mutable_mu().erase(names);
        if (d == 1)
            dense.mu1[in[0]][out] += c;
        else
            dense.mu2[in[0]][in[1]][out] += c;
        auto v = find_ainf_violation(cat, 5);
        auto o = dense.first_failure();
        CHECK(v.has_value() == o.has_value());
        if (v) {
            ++located;
            CHECK(!ainf_defect(cat, v->inputs).empty());
        } else {
            ++associative;
        }
    }
    MESSAGE("located=", located, " still associative=", associative);
    CHECK(located + associative == 100);
}
