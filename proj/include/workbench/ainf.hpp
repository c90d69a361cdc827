#pragma once

#include "workbench/novikov.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wb {

class TypeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sparse Novikov-linear combination of generators; no zero coefficients stored.
using Element = std::map<std::string, NovikovElement>;

void add_into(Element& acc, const Element& x);
void add_term(Element& acc, const std::string& gen, const NovikovElement& coeff);
Element scaled(const Element& x, const NovikovElement& c);
Element basis_element(const std::string& gen);
std::string to_string(const Element& x);

using Table = std::map<std::vector<std::string>, Element>;

// Evaluates a multilinear map given on basis tuples; missing entries are zero.
Element apply_multilinear(const std::function<const Element*(const std::vector<std::string>&)>& lookup,
                          const std::vector<Element>& slots);

struct Generator {
    std::string name;
    std::string source;
    std::string target;
    Rational level;
    Rational ham;

    Rational action() const { return level + ham; }
};

class FilteredAInfCategory {
public:
    void add_object(const std::string& x);
    void add_generator(const Generator& g);
    // Adds coeff * output to mu(inputs); composability and hom types are checked.
    void add_mu_term(const std::vector<std::string>& inputs, const std::string& output, const NovikovElement& coeff);
    void set_unit(const std::string& object, const Element& e);

    bool has_object(const std::string& x) const;
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& generator(const std::string& name) const;
    bool has_generator(const std::string& name) const { return index_.count(name) > 0; }
    const Table& mu() const { return mu_; }
    Table& mutable_mu() { return mu_; }
    const std::map<std::string, Element>& units() const { return units_; }

    const Element* mu_entry(const std::vector<std::string>& inputs) const;
    Element mu(const std::vector<Element>& inputs) const;

    // objects (X0, ..., Xd) of a composable tuple; throws TypeError otherwise
    std::vector<std::string> object_path(const std::vector<std::string>& inputs) const;
    // all composable generator tuples of length d
    std::vector<std::vector<std::string>> composable_tuples(int d) const;
    void check_element_in(const Element& e, const std::string& x, const std::string& y) const;
    ActionValue element_action(const Element& e) const;

private:
    std::vector<std::string> objects_;
    std::vector<Generator> gens_;
    std::map<std::string, size_t> index_;
    Table mu_;
    std::map<std::string, Element> units_;
};

Element ainf_defect(const FilteredAInfCategory& cat, const std::vector<std::string>& inputs);

struct Violation {
    std::vector<std::string> inputs;
    Element defect;
};

std::optional<Violation> find_ainf_violation(const FilteredAInfCategory& cat, int max_d);

struct DiscrepancyReport {
    std::map<int, ActionValue> raw;  // -inf when mu_d has no nonzero term
    std::map<int, Rational> eps;
    std::map<std::string, ActionValue> unit_level;
    bool is_filtered = true;
};

DiscrepancyReport measure_discrepancies(const FilteredAInfCategory& cat, const std::map<std::string, Element>& units);

struct UnitVerdict {
    bool ok = true;
    std::string message;
    int d = 0;
    int slot = 0;  // 1-based slot holding the unit
    std::vector<std::string> inputs;
};

UnitVerdict check_strict_unit(const FilteredAInfCategory& cat, const std::string& object, const Element& e);

struct AInfFunctor {
    std::map<std::string, std::string> object_map;
    Table F;
};

void add_functor_term(AInfFunctor& f, const FilteredAInfCategory& A, const FilteredAInfCategory& B,
                      const std::vector<std::string>& inputs, const std::string& output, const NovikovElement& coeff);
Element functor_defect(const FilteredAInfCategory& A, const FilteredAInfCategory& B, const AInfFunctor& F,
                       const std::vector<std::string>& inputs);
std::optional<Violation> find_functor_violation(const FilteredAInfCategory& A, const FilteredAInfCategory& B,
                                                const AInfFunctor& F, int max_d);

struct FunctorShift {
    std::map<int, ActionValue> raw;
    Rational rho_star;
};

FunctorShift functor_shift(const FilteredAInfCategory& A, const FilteredAInfCategory& B, const AInfFunctor& F);

// Operations symmetric in their "closed" inputs.  Entries may be listed in any
// order of the closed inputs; listings of the same multiset must agree.
class SymmetricTable {
public:
    void add(const std::vector<std::string>& closed, const std::vector<std::string>& open, const std::string& output,
             const NovikovElement& coeff);
    // throws TypeError naming the first disagreement
    void check_symmetric() const;
    const Element* lookup(std::vector<std::string> closed, const std::vector<std::string>& open) const;
    // canonical entries: (sorted closed, open) -> output
    std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, Element> entries() const;

private:
    std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, Element> raw_;
};

struct LInfinityAlgebra {
    std::vector<std::string> basis;
    SymmetricTable l;
};

Element linf_defect(const LInfinityAlgebra& alg, const std::vector<std::string>& inputs);
std::optional<Violation> find_linf_violation(const LInfinityAlgebra& alg, int max_n);

struct OCHAStructure {
    std::vector<std::string> closed;
    std::vector<std::string> open;
    SymmetricTable l;   // V_c^n -> V_c
    SymmetricTable mu;  // V_c^k (x) V_o^d -> V_o

    bool is_closed(const std::string& g) const;
    bool is_open(const std::string& g) const;
    void add_l_term(const std::vector<std::string>& in, const std::string& out, const NovikovElement& c);
    void add_mu_term(const std::vector<std::string>& closed_in, const std::vector<std::string>& open_in,
                     const std::string& out, const NovikovElement& c);
    LInfinityAlgebra closed_part() const;
    // single-object category carrying mu_{0,d}
    FilteredAInfCategory open_part() const;
};

Element ocha_defect(const OCHAStructure& s, const std::vector<std::string>& closed_in,
                    const std::vector<std::string>& open_in);

struct OchaViolation {
    std::string relation;  // "ocha", "ainf" or "linf"
    std::vector<std::string> closed_in;
    std::vector<std::string> open_in;
    Element defect;
};

std::optional<OchaViolation> find_ocha_violation(const OCHAStructure& s, int max_k, int max_d);

// Text formats.
FilteredAInfCategory parse_category(std::string_view text);
std::string serialize(const FilteredAInfCategory& cat);
AInfFunctor parse_functor(std::string_view text, const FilteredAInfCategory& A, const FilteredAInfCategory& B);
std::string serialize(const AInfFunctor& f, const FilteredAInfCategory& A);
OCHAStructure parse_ocha(std::string_view text);

}  // namespace wb
