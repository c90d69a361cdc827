#include "workbench/ainf.hpp"

#include <algorithm>
#include <set>

namespace wb {

void add_term(Element& acc, const std::string& gen, const NovikovElement& coeff) {
    if (coeff.is_zero()) return;
    auto it = acc.find(gen);
    if (it == acc.end()) {
        acc.emplace(gen, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) acc.erase(it);
}

void add_into(Element& acc, const Element& x) {
    for (const auto& [g, c] : x) add_term(acc, g, c);
}

Element scaled(const Element& x, const NovikovElement& c) {
    Element out;
    for (const auto& [g, a] : x) add_term(out, g, a * c);
    return out;
}

Element basis_element(const std::string& gen) { return {{gen, NovikovElement::one()}}; }

std::string to_string(const Element& x) {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [g, c] : x) {
        if (!s.empty()) s += " + ";
        std::string cs = to_string(c);
        s += (c.size() > 1 ? "(" + cs + ")" : cs) + "*" + g;
    }
    return s;
}

Element apply_multilinear(const std::function<const Element*(const std::vector<std::string>&)>& lookup,
                          const std::vector<Element>& slots) {
    Element out;
    for (const auto& s : slots)
        if (s.empty()) return out;
    std::vector<std::string> key(slots.size());
    std::function<void(size_t, const NovikovElement&)> rec = [&](size_t i, const NovikovElement& c) {
        if (i == slots.size()) {
            if (const Element* e = lookup(key)) add_into(out, scaled(*e, c));
            return;
        }
        for (const auto& [g, coef] : slots[i]) {
            key[i] = g;
            rec(i + 1, c * coef);
        }
    };
    rec(0, NovikovElement::one());
    return out;
}

void FilteredAInfCategory::add_object(const std::string& x) {
    if (has_object(x)) throw TypeError("duplicate object '" + x + "'");
    objects_.push_back(x);
}

bool FilteredAInfCategory::has_object(const std::string& x) const {
    return std::find(objects_.begin(), objects_.end(), x) != objects_.end();
}

void FilteredAInfCategory::add_generator(const Generator& g) {
    if (index_.count(g.name)) throw TypeError("duplicate generator '" + g.name + "'");
    if (!has_object(g.source) || !has_object(g.target))
        throw TypeError("generator '" + g.name + "' uses an undeclared object");
    index_[g.name] = gens_.size();
    gens_.push_back(g);
}

const Generator& FilteredAInfCategory::generator(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw TypeError("unknown generator '" + name + "'");
    return gens_[it->second];
}

std::vector<std::string> FilteredAInfCategory::object_path(const std::vector<std::string>& inputs) const {
    if (inputs.empty()) throw TypeError("empty input tuple");
    std::vector<std::string> path{generator(inputs[0]).source};
    for (size_t i = 0; i < inputs.size(); ++i) {
        const auto& g = generator(inputs[i]);
        if (g.source != path.back())
            throw TypeError("inputs are not composable: '" + inputs[i] + "' starts at " + g.source + ", expected " +
                            path.back());
        path.push_back(g.target);
    }
    return path;
}

void FilteredAInfCategory::check_element_in(const Element& e, const std::string& x, const std::string& y) const {
    for (const auto& [g, c] : e) {
        const auto& gen = generator(g);
        if (gen.source != x || gen.target != y)
            throw TypeError("'" + g + "' lies in hom(" + gen.source + "," + gen.target + "), expected hom(" + x + "," + y + ")");
    }
}

void FilteredAInfCategory::add_mu_term(const std::vector<std::string>& inputs, const std::string& output,
                                       const NovikovElement& coeff) {
    auto path = object_path(inputs);
    check_element_in(basis_element(output), path.front(), path.back());
    add_term(mu_[inputs], output, coeff);
    if (mu_[inputs].empty()) mu_.erase(inputs);
}

void FilteredAInfCategory::set_unit(const std::string& object, const Element& e) {
    if (!has_object(object)) throw TypeError("unit for undeclared object '" + object + "'");
    check_element_in(e, object, object);
    units_[object] = e;
}

const Element* FilteredAInfCategory::mu_entry(const std::vector<std::string>& inputs) const {
    auto it = mu_.find(inputs);
    return it == mu_.end() ? nullptr : &it->second;
}

Element FilteredAInfCategory::mu(const std::vector<Element>& inputs) const {
    return apply_multilinear([this](const auto& k) { return mu_entry(k); }, inputs);
}

std::vector<std::vector<std::string>> FilteredAInfCategory::composable_tuples(int d) const {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> cur;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == d) {
            out.push_back(cur);
            return;
        }
        for (const auto& g : gens_) {
            if (!cur.empty() && generator(cur.back()).target != g.source) continue;
            cur.push_back(g.name);
            rec();
            cur.pop_back();
        }
    };
    if (d >= 1) rec();
    return out;
}

ActionValue FilteredAInfCategory::element_action(const Element& e) const {
    std::vector<std::pair<NovikovElement, Rational>> terms;
    for (const auto& [g, c] : e) terms.emplace_back(c, generator(g).action());
    return action_of_sum(terms);
}

Element ainf_defect(const FilteredAInfCategory& cat, const std::vector<std::string>& inputs) {
    cat.object_path(inputs);
    int d = static_cast<int>(inputs.size());
    Element out;
    for (int k = 1; k <= d; ++k)
        for (int i = 0; i + k <= d; ++i) {
            const Element* inner = cat.mu_entry({inputs.begin() + i, inputs.begin() + i + k});
            if (!inner) continue;
            std::vector<Element> slots;
            for (int a = 0; a < i; ++a) slots.push_back(basis_element(inputs[a]));
            slots.push_back(*inner);
            for (int a = i + k; a < d; ++a) slots.push_back(basis_element(inputs[a]));
            add_into(out, cat.mu(slots));
        }
    return out;
}

std::optional<Violation> find_ainf_violation(const FilteredAInfCategory& cat, int max_d) {
    for (int d = 1; d <= max_d; ++d)
        for (const auto& t : cat.composable_tuples(d)) {
            Element e = ainf_defect(cat, t);
            if (!e.empty()) return Violation{t, e};
        }
    return std::nullopt;
}

DiscrepancyReport measure_discrepancies(const FilteredAInfCategory& cat, const std::map<std::string, Element>& units) {
    DiscrepancyReport r;
    int max_d = 0;
    for (const auto& [in, out] : cat.mu()) max_d = std::max(max_d, static_cast<int>(in.size()));
    for (int d = 1; d <= max_d; ++d) r.raw[d] = ActionValue::neg_inf();
    for (const auto& [in, out] : cat.mu()) {
        Rational sum = 0;
        for (const auto& g : in) sum += cat.generator(g).action();
        ActionValue shift = cat.element_action(out) - sum;
        int d = static_cast<int>(in.size());
        r.raw[d] = max(r.raw[d], shift);
    }
    for (const auto& [d, raw] : r.raw) {
        r.eps[d] = raw.is_neg_inf() || raw.value() < 0 ? Rational(0) : raw.value();
        if (r.eps[d] != 0) r.is_filtered = false;
    }
    for (const auto& [x, e] : units) {
        cat.check_element_in(e, x, x);
        r.unit_level[x] = cat.element_action(e);
        if (r.unit_level[x] > ActionValue(Rational(0))) r.is_filtered = false;
    }
    return r;
}

UnitVerdict check_strict_unit(const FilteredAInfCategory& cat, const std::string& object, const Element& e) {
    cat.check_element_in(e, object, object);
    UnitVerdict v;
    auto fail = [&](int d, int slot, std::vector<std::string> in, const std::string& msg) {
        v.ok = false;
        v.d = d;
        v.slot = slot;
        v.inputs = std::move(in);
        v.message = msg;
        return v;
    };
    Element m1 = cat.mu({e});
    if (!m1.empty()) return fail(1, 1, {"e"}, "mu_1(e) = " + to_string(m1) + ", expected 0");
    for (const auto& g : cat.generators()) {
        if (g.source == object) {
            Element r = cat.mu({e, basis_element(g.name)});
            if (r != basis_element(g.name))
                return fail(2, 1, {"e", g.name}, "mu_2(e, " + g.name + ") = " + to_string(r) + ", expected " + g.name);
        }
        if (g.target == object) {
            Element r = cat.mu({basis_element(g.name), e});
            if (r != basis_element(g.name))
                return fail(2, 2, {g.name, "e"}, "mu_2(" + g.name + ", e) = " + to_string(r) + ", expected " + g.name);
        }
    }
    int max_d = 0;
    for (const auto& [in, out] : cat.mu()) max_d = std::max(max_d, static_cast<int>(in.size()));
    for (int d = 3; d <= max_d; ++d)
        for (int slot = 1; slot <= d; ++slot) {
            std::set<std::vector<std::string>> others;
            for (const auto& [in, out] : cat.mu())
                if (static_cast<int>(in.size()) == d && e.count(in[slot - 1])) {
                    auto rest = in;
                    rest.erase(rest.begin() + slot - 1);
                    others.insert(rest);
                }
            for (const auto& rest : others) {
                std::vector<Element> slots;
                std::vector<std::string> shown;
                for (int a = 0, r = 0; a < d; ++a) {
                    if (a == slot - 1) {
                        slots.push_back(e);
                        shown.push_back("e");
                    } else {
                        slots.push_back(basis_element(rest[r]));
                        shown.push_back(rest[r++]);
                    }
                }
                Element r = cat.mu(slots);
                if (!r.empty()) {
                    std::string args;
                    for (const auto& s : shown) args += (args.empty() ? "" : ", ") + s;
                    return fail(d, slot, shown,
                                "mu_" + std::to_string(d) + "(" + args + ") = " + to_string(r) + ", expected 0");
                }
            }
        }
    return v;
}

void add_functor_term(AInfFunctor& f, const FilteredAInfCategory& A, const FilteredAInfCategory& B,
                      const std::vector<std::string>& inputs, const std::string& output, const NovikovElement& coeff) {
    auto path = A.object_path(inputs);
    auto fx = f.object_map.find(path.front()), fy = f.object_map.find(path.back());
    if (fx == f.object_map.end() || fy == f.object_map.end())
        throw TypeError("functor has no image for objects of this tuple");
    B.check_element_in(basis_element(output), fx->second, fy->second);
    add_term(f.F[inputs], output, coeff);
    if (f.F[inputs].empty()) f.F.erase(inputs);
}

namespace {

const Element* table_entry(const Table& t, const std::vector<std::string>& k) {
    auto it = t.find(k);
    return it == t.end() ? nullptr : &it->second;
}

void compositions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = 1; p <= n; ++p) {
        cur.push_back(p);
        compositions(n - p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

Element functor_defect(const FilteredAInfCategory& A, const FilteredAInfCategory& B, const AInfFunctor& F,
                       const std::vector<std::string>& inputs) {
    A.object_path(inputs);
    int d = static_cast<int>(inputs.size());
    Element out;
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(d, cur, comps);
    for (const auto& c : comps) {
        std::vector<Element> slots;
        int at = 0;
        bool zero = false;
        for (int s : c) {
            const Element* e = table_entry(F.F, {inputs.begin() + at, inputs.begin() + at + s});
            at += s;
            if (!e) {
                zero = true;
                break;
            }
            slots.push_back(*e);
        }
        if (!zero) add_into(out, B.mu(slots));
    }
    auto f_lookup = [&F](const std::vector<std::string>& k) { return table_entry(F.F, k); };
    for (int k = 1; k <= d; ++k)
        for (int i = 0; i + k <= d; ++i) {
            const Element* inner = A.mu_entry({inputs.begin() + i, inputs.begin() + i + k});
            if (!inner) continue;
            std::vector<Element> slots;
            for (int a = 0; a < i; ++a) slots.push_back(basis_element(inputs[a]));
            slots.push_back(*inner);
            for (int a = i + k; a < d; ++a) slots.push_back(basis_element(inputs[a]));
            add_into(out, apply_multilinear(f_lookup, slots));
        }
    return out;
}

std::optional<Violation> find_functor_violation(const FilteredAInfCategory& A, const FilteredAInfCategory& B,
                                                const AInfFunctor& F, int max_d) {
    for (int d = 1; d <= max_d; ++d)
        for (const auto& t : A.composable_tuples(d)) {
            Element e = functor_defect(A, B, F, t);
            if (!e.empty()) return Violation{t, e};
        }
    return std::nullopt;
}

FunctorShift functor_shift(const FilteredAInfCategory& A, const FilteredAInfCategory& B, const AInfFunctor& F) {
    for (const auto& x : A.objects())
        if (!F.object_map.count(x)) throw TypeError("functor has no image for object '" + x + "'");
    FunctorShift s;
    s.rho_star = 0;
    for (const auto& [in, out] : F.F) {
        Rational sum = 0;
        for (const auto& g : in) sum += A.generator(g).action();
        int d = static_cast<int>(in.size());
        auto it = s.raw.try_emplace(d, ActionValue::neg_inf()).first;
        it->second = max(it->second, B.element_action(out) - sum);
    }
    for (const auto& [d, raw] : s.raw)
        if (!raw.is_neg_inf() && raw.value() / d > s.rho_star) s.rho_star = raw.value() / d;
    return s;
}

void SymmetricTable::add(const std::vector<std::string>& closed, const std::vector<std::string>& open,
                         const std::string& output, const NovikovElement& coeff) {
    auto& e = raw_[{closed, open}];
    add_term(e, output, coeff);
}

void SymmetricTable::check_symmetric() const {
    std::map<std::pair<std::vector<std::string>, std::vector<std::string>>,
             std::pair<std::vector<std::string>, const Element*>>
        first;
    for (const auto& [key, e] : raw_) {
        auto sorted = key.first;
        std::sort(sorted.begin(), sorted.end());
        auto [it, inserted] = first.try_emplace({sorted, key.second}, key.first, &e);
        if (!inserted && *it->second.second != e) {
            auto join = [](const std::vector<std::string>& v) {
                std::string s;
                for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
                return s;
            };
            throw TypeError("asymmetric table: inputs (" + join(it->second.first) + ") give " +
                            to_string(*it->second.second) + " but (" + join(key.first) + ") give " + to_string(e));
        }
    }
}

std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, Element> SymmetricTable::entries() const {
    std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, Element> out;
    for (const auto& [key, e] : raw_) {
        auto sorted = key.first;
        std::sort(sorted.begin(), sorted.end());
        if (!e.empty()) out.try_emplace({sorted, key.second}, e);
    }
    return out;
}

const Element* SymmetricTable::lookup(std::vector<std::string> closed, const std::vector<std::string>& open) const {
    std::sort(closed.begin(), closed.end());
    do {
        auto it = raw_.find({closed, open});
        if (it != raw_.end()) return it->second.empty() ? nullptr : &it->second;
    } while (std::next_permutation(closed.begin(), closed.end()));
    return nullptr;
}

namespace {

Element eval_sym(const SymmetricTable& t, const std::vector<Element>& closed, const std::vector<Element>& open) {
    std::vector<Element> slots = closed;
    slots.insert(slots.end(), open.begin(), open.end());
    size_t k = closed.size();
    return apply_multilinear(
        [&t, k](const std::vector<std::string>& key) {
            return t.lookup({key.begin(), key.begin() + static_cast<long>(k)}, {key.begin() + static_cast<long>(k), key.end()});
        },
        slots);
}

std::vector<Element> basis_slots(const std::vector<std::string>& v) {
    std::vector<Element> out;
    for (const auto& g : v) out.push_back(basis_element(g));
    return out;
}

void multisets(const std::vector<std::string>& basis, int n, size_t from, std::vector<std::string>& cur,
               std::vector<std::vector<std::string>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (size_t i = from; i < basis.size(); ++i) {
        cur.push_back(basis[i]);
        multisets(basis, n, i, cur, out);
        cur.pop_back();
    }
}

void sequences(const std::vector<std::string>& basis, int n, std::vector<std::string>& cur,
               std::vector<std::vector<std::string>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (const auto& b : basis) {
        cur.push_back(b);
        sequences(basis, n, cur, out);
        cur.pop_back();
    }
}

}  // namespace

Element linf_defect(const LInfinityAlgebra& alg, const std::vector<std::string>& inputs) {
    alg.l.check_symmetric();
    int n = static_cast<int>(inputs.size());
    Element out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::string> in, rest;
        for (int a = 0; a < n; ++a) ((mask >> a) & 1u ? in : rest).push_back(inputs[a]);
        Element inner = eval_sym(alg.l, basis_slots(in), {});
        if (inner.empty()) continue;
        std::vector<Element> slots{inner};
        for (const auto& r : rest) slots.push_back(basis_element(r));
        add_into(out, eval_sym(alg.l, slots, {}));
    }
    return out;
}

std::optional<Violation> find_linf_violation(const LInfinityAlgebra& alg, int max_n) {
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::vector<std::string>> tuples;
        std::vector<std::string> cur;
        multisets(alg.basis, n, 0, cur, tuples);
        for (const auto& t : tuples) {
            Element e = linf_defect(alg, t);
            if (!e.empty()) return Violation{t, e};
        }
    }
    return std::nullopt;
}

bool OCHAStructure::is_closed(const std::string& g) const {
    return std::find(closed.begin(), closed.end(), g) != closed.end();
}

bool OCHAStructure::is_open(const std::string& g) const { return std::find(open.begin(), open.end(), g) != open.end(); }

void OCHAStructure::add_l_term(const std::vector<std::string>& in, const std::string& out, const NovikovElement& c) {
    if (in.empty()) throw TypeError("l_0 is not part of the structure");
    for (const auto& g : in)
        if (!is_closed(g)) throw TypeError("l takes closed inputs; '" + g + "' is not closed");
    if (!is_closed(out)) throw TypeError("l lands in the closed part; '" + out + "' is not closed");
    l.add(in, {}, out, c);
}

void OCHAStructure::add_mu_term(const std::vector<std::string>& closed_in, const std::vector<std::string>& open_in,
                                const std::string& out, const NovikovElement& c) {
    if (closed_in.empty() && open_in.empty()) throw TypeError("mu_{0,0} must vanish");
    for (const auto& g : closed_in)
        if (!is_closed(g)) throw TypeError("'" + g + "' is not a closed generator");
    for (const auto& g : open_in)
        if (!is_open(g)) throw TypeError("'" + g + "' is not an open generator");
    if (!is_open(out)) throw TypeError("mu lands in the open part; '" + out + "' is not open");
    mu.add(closed_in, open_in, out, c);
}

LInfinityAlgebra OCHAStructure::closed_part() const { return {closed, l}; }

FilteredAInfCategory OCHAStructure::open_part() const {
    FilteredAInfCategory cat;
    cat.add_object("*");
    for (const auto& g : open) cat.add_generator({g, "*", "*", 0, 0});
    for (const auto& [key, e] : mu.entries())
        if (key.first.empty())
            for (const auto& [g, c] : e) cat.add_mu_term(key.second, g, c);
    return cat;
}

Element ocha_defect(const OCHAStructure& s, const std::vector<std::string>& closed_in,
                    const std::vector<std::string>& open_in) {
    int k = static_cast<int>(closed_in.size()), d = static_cast<int>(open_in.size());
    Element out;
    auto ws = basis_slots(open_in);
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<std::string> sub, rest;
        for (int a = 0; a < k; ++a) ((mask >> a) & 1u ? sub : rest).push_back(closed_in[a]);
        // closed inputs collapsed by l first
        if (!sub.empty()) {
            Element inner = eval_sym(s.l, basis_slots(sub), {});
            if (!inner.empty()) {
                std::vector<Element> cs{inner};
                for (const auto& r : rest) cs.push_back(basis_element(r));
                add_into(out, eval_sym(s.mu, cs, ws));
            }
        }
        // sub feeds an inner mu on the open window (i, d-j]
        for (int i = 0; i <= d; ++i)
            for (int j = 0; i + j <= d; ++j) {
                if (sub.empty() && i + j == d) continue;
                std::vector<Element> window(ws.begin() + i, ws.end() - j);
                Element inner = eval_sym(s.mu, basis_slots(sub), window);
                if (inner.empty()) continue;
                std::vector<Element> os(ws.begin(), ws.begin() + i);
                os.push_back(inner);
                os.insert(os.end(), ws.end() - j, ws.end());
                add_into(out, eval_sym(s.mu, basis_slots(rest), os));
            }
    }
    return out;
}

std::optional<OchaViolation> find_ocha_violation(const OCHAStructure& s, int max_k, int max_d) {
    s.l.check_symmetric();
    s.mu.check_symmetric();
    if (auto v = find_linf_violation(s.closed_part(), max_k)) return OchaViolation{"linf", v->inputs, {}, v->defect};
    if (auto v = find_ainf_violation(s.open_part(), max_d)) return OchaViolation{"ainf", {}, v->inputs, v->defect};
    for (int k = 0; k <= max_k; ++k)
        for (int d = 0; d <= max_d; ++d) {
            if (k + d == 0) continue;
            std::vector<std::vector<std::string>> cs, os;
            std::vector<std::string> cur;
            multisets(s.closed, k, 0, cur, cs);
            sequences(s.open, d, cur, os);
            for (const auto& c : cs)
                for (const auto& o : os) {
                    Element e = ocha_defect(s, c, o);
                    if (!e.empty()) return OchaViolation{"ocha", c, o, e};
                }
        }
    return std::nullopt;
}

}  // namespace wb
