#include "workbench/rational.hpp"

#include <cmath>

namespace wb {

namespace {

std::string located(const std::string& msg, int line, int column) {
    if (line <= 0) return msg;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    if (s.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
    size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw ParseError("malformed number '" + std::string(whole) + "'");
    Integer v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw ParseError("malformed number '" + std::string(whole) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? Integer(-v) : v;
}

}  // namespace

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(located(msg, line, column)), line_(line), column_(column) {}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        Integer p = parse_integer(text.substr(0, slash), text);
        Integer q = parse_integer(text.substr(slash + 1), text);
        if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(p, q);
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(parse_integer(text, text));
    std::string_view ip = text.substr(0, dot), fp = text.substr(dot + 1);
    if (fp.empty() || fp[0] == '-' || fp[0] == '+')
        throw ParseError("malformed number '" + std::string(text) + "'");
    std::string digits(ip);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    digits += fp;
    Integer num = parse_integer(digits, text);
    Integer den = pow(Integer(10), static_cast<unsigned>(fp.size()));
    // the sign rides on the integer part: "-0.5" reads as "-05"
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite value has no exact rational form");
    int exp = 0;
    double mant = std::frexp(x, &exp);
    // 53 bits of mantissa scaled to an integer
    Integer m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    if (exp >= 0) return Rational(m * pow(Integer(2), static_cast<unsigned>(exp)));
    return Rational(m, pow(Integer(2), static_cast<unsigned>(-exp)));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace wb
