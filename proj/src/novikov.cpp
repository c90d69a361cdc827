#include "workbench/novikov.hpp"

#include <cctype>

namespace wb {

NovikovElement NovikovElement::monomial(const Rational& exponent) {
    NovikovElement x;
    x.exps_.insert(exponent);
    return x;
}

NovikovElement NovikovElement::from_exponents(const std::vector<Rational>& exps) {
    NovikovElement x;
    for (const auto& e : exps) x += monomial(e);
    return x;
}

std::optional<Rational> NovikovElement::valuation() const {
    if (exps_.empty()) return std::nullopt;
    return *exps_.begin();
}

NovikovElement NovikovElement::shifted(const Rational& by) const {
    NovikovElement x;
    for (const auto& e : exps_) x.exps_.insert(x.exps_.end(), e + by);
    return x;
}

NovikovElement& NovikovElement::operator+=(const NovikovElement& o) {
    for (const auto& e : o.exps_) {
        auto [it, inserted] = exps_.insert(e);
        if (!inserted) exps_.erase(it);
    }
    return *this;
}

NovikovElement operator*(const NovikovElement& a, const NovikovElement& b) {
    NovikovElement out;
    for (const auto& x : a.exps_)
        for (const auto& y : b.exps_) {
            auto [it, inserted] = out.exps_.insert(x + y);
            if (!inserted) out.exps_.erase(it);
        }
    return out;
}

NovikovElement nov_add(const NovikovElement& a, const NovikovElement& b) { return a + b; }
NovikovElement nov_mul(const NovikovElement& a, const NovikovElement& b) { return a * b; }

std::string to_string(const NovikovElement& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& e : x.exponents()) {
        if (!out.empty()) out += "+";
        out += e == 0 ? std::string("1") : "T^{" + to_string(e) + "}";
    }
    return out;
}

namespace {

std::string strip(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

NovikovElement parse_monomial(const std::string& m, std::string_view whole) {
    if (m == "1") return NovikovElement::one();
    if (m == "T") return NovikovElement::monomial(1);
    if (m.size() < 3 || m[0] != 'T' || m[1] != '^')
        throw ParseError("malformed Novikov monomial '" + m + "' in '" + std::string(whole) + "'");
    std::string e = m.substr(2);
    if (!e.empty() && e.front() == '{') {
        if (e.back() != '}') throw ParseError("unbalanced brace in '" + m + "'");
        e = e.substr(1, e.size() - 2);
    }
    return NovikovElement::monomial(parse_rational(strip(e)));
}

}  // namespace

NovikovElement parse_novikov(std::string_view text) {
    std::string t = strip(text);
    if (t.empty()) throw ParseError("empty Novikov element");
    if (t == "0") return {};
    NovikovElement out;
    size_t depth = 0, start = 0;
    for (size_t i = 0; i <= t.size(); ++i) {
        if (i < t.size() && t[i] == '{') ++depth;
        if (i < t.size() && t[i] == '}') --depth;
        if (i == t.size() || (t[i] == '+' && depth == 0 && i > start && t[i - 1] != '^')) {
            out += parse_monomial(strip(std::string_view(t).substr(start, i - start)), text);
            start = i + 1;
        }
    }
    return out;
}

const Rational& ActionValue::value() const {
    if (!v_) throw std::logic_error("value() of -infinity");
    return *v_;
}

std::strong_ordering operator<=>(const ActionValue& a, const ActionValue& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return !a.is_neg_inf() <=> !b.is_neg_inf();
    if (*a.v_ < *b.v_) return std::strong_ordering::less;
    if (*b.v_ < *a.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ActionValue operator+(const ActionValue& a, const ActionValue& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return {};
    return ActionValue(*a.v_ + *b.v_);
}

ActionValue operator-(const ActionValue& a, const Rational& b) {
    if (a.is_neg_inf()) return {};
    return ActionValue(*a.v_ - b);
}

ActionValue max(const ActionValue& a, const ActionValue& b) { return a < b ? b : a; }

std::string to_string(const ActionValue& a) { return a.is_neg_inf() ? "-inf" : to_string(a.value()); }

ActionValue action(const NovikovElement& coeff, const Rational& hamiltonian_term) {
    auto v = coeff.valuation();
    if (!v) return ActionValue::neg_inf();
    return ActionValue(hamiltonian_term - *v);
}

ActionValue action_of_sum(const std::vector<std::pair<NovikovElement, Rational>>& terms) {
    ActionValue best;
    for (const auto& [c, h] : terms) best = max(best, action(c, h));
    return best;
}

}  // namespace wb
