#include "workbench/tuples.hpp"

#include "workbench/rational.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace wb {

namespace {

struct SymbolTable {
    std::mutex mu;
    std::unordered_map<std::string, uint32_t> ids;
    // deque keeps references stable while the table grows
    std::deque<std::string> names{""};
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    auto [it, inserted] = t.ids.try_emplace(std::string(name), static_cast<uint32_t>(t.names.size()));
    if (inserted) t.names.emplace_back(name);
    return Symbol(it->second);
}

const std::string& Symbol::name() const {
    auto& t = table();
    std::lock_guard lock(t.mu);
    return t.names[id_];
}

LagTuple make_tuple(std::initializer_list<std::string_view> names) {
    LagTuple t;
    for (auto n : names) t.push_back(Symbol::intern(n));
    return t;
}

LagTuple parse_lag_tuple(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError("label tuple must be written as (L0,L1,...): '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
    LagTuple out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            std::string name = s.substr(start, i - start);
            if (name.empty() || name.find_first_of("()") != std::string::npos)
                throw ParseError("bad label at position " + std::to_string(start + 1) + " in '" +
                                 std::string(text) + "'");
            out.push_back(Symbol::intern(name));
            start = i + 1;
        }
    }
    if (out.size() < 2) throw ParseError("label tuple needs at least two labels");
    return out;
}

std::string to_string(const LagTuple& t) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i].name();
    return s + ")";
}

std::vector<int> ReducedTuple::split_multiplicities() const {
    std::vector<int> m;
    m.push_back(m0_begin);
    for (size_t i = 1; i < entries.size(); ++i) m.push_back(entries[i].multiplicity);
    m.push_back(m0_end);
    return m;
}

ReducedTuple reduce_tuple(const LagTuple& t) {
    if (t.size() < 2) throw std::invalid_argument("label tuple needs at least two labels");
    std::vector<ReducedEntry> runs;
    for (Symbol s : t) {
        if (!runs.empty() && runs.back().label == s)
            ++runs.back().multiplicity;
        else
            runs.push_back({s, 1});
    }
    ReducedTuple r;
    if (runs.size() == 1) {
        r.entries = runs;
        r.m0_begin = runs[0].multiplicity;
        r.m0_end = 0;
        r.degenerate = true;
    } else {
        r.m0_begin = runs.front().multiplicity;
        if (runs.back().label == runs.front().label) {
            r.m0_end = runs.back().multiplicity;
            runs.front().multiplicity += r.m0_end;
            runs.pop_back();
        }
        r.entries = runs;
    }
    for (const auto& e : r.entries) {
        bool seen = false;
        for (Symbol f : r.fundamental) seen = seen || f == e.label;
        if (!seen) r.fundamental.push_back(e.label);
    }
    return r;
}

std::string format_reduced(const ReducedTuple& r) {
    std::string s = "(";
    for (size_t i = 0; i < r.entries.size(); ++i) {
        const auto& e = r.entries[i];
        if (i) s += ",";
        if (i == 0 && r.m0_end > 0)
            s += "(" + e.label.name() + "," + std::to_string(r.m0_begin) + "+" + std::to_string(r.m0_end) + ")";
        else if (e.multiplicity > 1)
            s += "(" + e.label.name() + "," + std::to_string(e.multiplicity) + ")";
        else
            s += e.label.name();
    }
    return s + ")";
}

std::string format_fundamental(const ReducedTuple& r) { return to_string(LagTuple(r.fundamental)); }

TupleClass classify_tuple(const LagTuple& t) {
    ReducedTuple r = reduce_tuple(t);
    if (r.degenerate) return TupleClass::constant;
    bool all_single = r.m0_begin == 1;
    for (size_t i = 1; i < r.entries.size(); ++i) all_single = all_single && r.entries[i].multiplicity == 1;
    if (r.m0_end == 0) return all_single ? TupleClass::cyclically_different : TupleClass::general_open;
    return all_single && r.m0_end == 1 ? TupleClass::almost_cyclically_different : TupleClass::general_closed;
}

std::string to_string(TupleClass c) {
    switch (c) {
        case TupleClass::cyclically_different: return "cyclically_different";
        case TupleClass::almost_cyclically_different: return "almost_cyclically_different";
        case TupleClass::general_open: return "general_open";
        case TupleClass::general_closed: return "general_closed";
        case TupleClass::constant: return "constant";
    }
    return "?";
}

TupleClass parse_tuple_class(std::string_view s) {
    for (auto c : {TupleClass::cyclically_different, TupleClass::almost_cyclically_different,
                   TupleClass::general_open, TupleClass::general_closed, TupleClass::constant})
        if (to_string(c) == s) return c;
    throw ParseError("unknown tuple class '" + std::string(s) + "'");
}

}  // namespace wb
