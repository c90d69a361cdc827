#pragma once

#include "workbench/rational.hpp"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wb {

// Finite sum of T^a over Z2, stored as its set of exponents.
class NovikovElement {
public:
    NovikovElement() = default;

    static NovikovElement monomial(const Rational& exponent);
    static NovikovElement one() { return monomial(Rational(0)); }
    static NovikovElement from_exponents(const std::vector<Rational>& exps);

    bool is_zero() const { return exps_.empty(); }
    const std::set<Rational>& exponents() const { return exps_; }
    size_t size() const { return exps_.size(); }

    // nullopt stands for +infinity (the zero element)
    std::optional<Rational> valuation() const;

    NovikovElement shifted(const Rational& by) const;

    NovikovElement& operator+=(const NovikovElement& o);
    friend NovikovElement operator+(NovikovElement a, const NovikovElement& b) { return a += b; }
    friend NovikovElement operator*(const NovikovElement& a, const NovikovElement& b);
    friend bool operator==(const NovikovElement&, const NovikovElement&) = default;
    friend bool operator<(const NovikovElement& a, const NovikovElement& b) { return a.exps_ < b.exps_; }

private:
    std::set<Rational> exps_;
};

NovikovElement nov_add(const NovikovElement& a, const NovikovElement& b);
NovikovElement nov_mul(const NovikovElement& a, const NovikovElement& b);

std::string to_string(const NovikovElement& x);
NovikovElement parse_novikov(std::string_view text);

// Rational or -infinity.
class ActionValue {
public:
    ActionValue() = default;  // -infinity
    ActionValue(Rational v) : v_(std::move(v)) {}

    static ActionValue neg_inf() { return ActionValue(); }

    bool is_neg_inf() const { return !v_.has_value(); }
    const Rational& value() const;

    friend bool operator==(const ActionValue&, const ActionValue&) = default;
    friend std::strong_ordering operator<=>(const ActionValue& a, const ActionValue& b);
    friend ActionValue operator+(const ActionValue& a, const ActionValue& b);
    friend ActionValue operator-(const ActionValue& a, const Rational& b);

private:
    std::optional<Rational> v_;
};

ActionValue max(const ActionValue& a, const ActionValue& b);
std::string to_string(const ActionValue& a);

ActionValue action(const NovikovElement& coeff, const Rational& hamiltonian_term);
ActionValue action_of_sum(const std::vector<std::pair<NovikovElement, Rational>>& terms);

}  // namespace wb
