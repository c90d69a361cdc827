#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wb {

// Interned Lagrangian label; equality is identity of the interned id.
class Symbol {
public:
    Symbol() = default;
    static Symbol intern(std::string_view name);

    const std::string& name() const;
    uint32_t id() const { return id_; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }
    // ordered by name so that sorted output is stable across runs
    friend bool operator<(Symbol a, Symbol b) { return a.name() < b.name(); }

private:
    explicit Symbol(uint32_t id) : id_(id) {}
    uint32_t id_ = 0;
};

using LagTuple = std::vector<Symbol>;

LagTuple make_tuple(std::initializer_list<std::string_view> names);
// "(L0,L1,L2)"; whitespace tolerated
LagTuple parse_lag_tuple(std::string_view text);
std::string to_string(const LagTuple& t);

struct ReducedEntry {
    Symbol label;
    int multiplicity = 1;
    friend bool operator==(const ReducedEntry&, const ReducedEntry&) = default;
};

struct ReducedTuple {
    std::vector<ReducedEntry> entries;
    int m0_begin = 1;
    int m0_end = 0;
    std::vector<Symbol> fundamental;
    // set for the all-equal tuple, whose d^R is reported as 0
    bool degenerate = false;

    int d_red() const { return static_cast<int>(entries.size()) - 1; }
    // multiplicities with entry 0 split as m0_begin ... m0_end at the back
    std::vector<int> split_multiplicities() const;
    friend bool operator==(const ReducedTuple&, const ReducedTuple&) = default;
};

ReducedTuple reduce_tuple(const LagTuple& t);
// "((L0,2+1),L2,L3,L2,L1)"
std::string format_reduced(const ReducedTuple& r);
std::string format_fundamental(const ReducedTuple& r);

enum class TupleClass {
    cyclically_different,
    almost_cyclically_different,
    general_open,
    general_closed,
    constant,
};

TupleClass classify_tuple(const LagTuple& t);
std::string to_string(TupleClass c);
TupleClass parse_tuple_class(std::string_view s);

}  // namespace wb
