#include "workbench/budget.hpp"

#include <stdexcept>

namespace wb {

void validate(const BudgetParams& p) {
    if (p.epsilon <= 0) throw std::domain_error("epsilon must be positive");
    if (p.delta && (*p.delta <= Rational(1, 2) || *p.delta >= 1)) throw std::domain_error("delta must lie in (1/2, 1)");
    if (p.d < 1) throw std::domain_error("d must be at least 1");
}

bool validate_floer_window(const HamiltonianWindow& w, const BudgetParams& p) {
    validate(p);
    Rational floor = p.delta ? *p.delta * p.epsilon : p.epsilon / 2;
    return w.lo <= w.hi && floor < w.lo && w.hi < p.epsilon;
}

Rational vertex_curvature_budget(const BudgetParams& p, Convention conv) {
    validate(p);
    if (p.d < 2) throw std::domain_error("the vertex budget needs d >= 2");
    const Rational& e = p.epsilon;
    Rational d = p.d;
    Rational half = e / 2;
    switch (p.tuple_class) {
        case TupleClass::constant:
            return 0;
        case TupleClass::cyclically_different:
        case TupleClass::general_open:
            // one exit end, d entry ends, d-2 interior thin parts
            return e - d * half + (d - 2) * (e - half);
        case TupleClass::almost_cyclically_different:
        case TupleClass::general_closed:
            if (conv == Convention::draft) return -d * half + (d - 1) * (e - half);
            return -d * half + (d - 3) * (e - half);
    }
    return 0;
}

EpsDeltaBudget eps_delta_budget(const BudgetParams& p) {
    validate(p);
    if (!p.delta) throw std::domain_error("the (eps, delta) budget needs delta");
    const Rational& e = p.epsilon;
    const Rational& dl = *p.delta;
    Rational cap = e * (2 * dl - 1);
    return {e - 2 * dl * e + cap, cap};
}

double strip_end_bound(const HamiltonianWindow& w, StripEnd end, const std::vector<double>& cutoff) {
    if (cutoff.size() < 2) throw std::invalid_argument("need at least two cutoff samples");
    for (size_t i = 0; i < cutoff.size(); ++i) {
        if (cutoff[i] < 0.0 || cutoff[i] > 1.0) throw std::invalid_argument("cutoff values must lie in [0,1]");
        if (i && cutoff[i] < cutoff[i - 1])
            throw std::invalid_argument("cutoff is not monotone at sample " + std::to_string(i));
    }
    // midpoint rule on the difference quotients of beta; the sum telescopes
    double h = 1.0 / static_cast<double>(cutoff.size() - 1);
    double integral = 0.0;
    for (size_t i = 0; i + 1 < cutoff.size(); ++i) integral += (cutoff[i + 1] - cutoff[i]) / h * h;
    return end == StripEnd::entry ? -integral * to_double(w.lo) : integral * to_double(w.hi);
}

bool energy_action_check(const std::vector<ActionValue>& action_in, const ActionValue& action_out,
                         const Rational& curvature_total) {
    if (action_out.is_neg_inf()) return true;
    ActionValue sum(Rational(0));
    for (const auto& a : action_in) sum = sum + a;
    return action_out <= sum + ActionValue(curvature_total > 0 ? curvature_total : Rational(0));
}

ContinuationShift continuation_shift(const Rational& eps1, const Rational& delta1, const Rational& eps2,
                                     const Rational& delta2, int d) {
    validate({eps1, delta1, d, TupleClass::cyclically_different});
    validate({eps2, delta2, d, TupleClass::cyclically_different});
    ContinuationShift s;
    s.per_d = (d - 1) * eps2 * (1 - 2 * delta2) + d * (eps2 - delta1 * eps1);
    s.overall = eps2 - delta1 * eps1;
    s.theorem_b = eps2 - eps1 / 2;
    s.filtered = s.overall <= 0;
    return s;
}

DimCase parse_dim_case(std::string_view s) {
    for (auto c : {DimCase::open, DimCase::closed, DimCase::pearly, DimCase::pearly_crit, DimCase::quantum,
                   DimCase::strip_moduli, DimCase::stacked, DimCase::sphere_cluster, DimCase::marked_disc})
        if (to_string(c) == s) return c;
    throw ParseError("unknown dimension case '" + std::string(s) + "'");
}

std::string to_string(DimCase c) {
    switch (c) {
        case DimCase::open: return "open";
        case DimCase::closed: return "closed";
        case DimCase::pearly: return "pearly";
        case DimCase::pearly_crit: return "pearly_crit";
        case DimCase::quantum: return "quantum";
        case DimCase::strip_moduli: return "strip_moduli";
        case DimCase::stacked: return "stacked";
        case DimCase::sphere_cluster: return "sphere_cluster";
        case DimCase::marked_disc: return "marked_disc";
    }
    return "?";
}

namespace {

int need(const std::optional<int>& v, const char* name, DimCase c) {
    if (!v) throw std::invalid_argument("case " + to_string(c) + " needs " + name);
    return *v;
}

}  // namespace

int virtual_dimension(const IndexInput& in, DimCase c) {
    if (in.n)
        for (int m : in.morse_indices)
            if (m < 0 || m > *in.n) throw std::invalid_argument("Morse index " + std::to_string(m) + " outside [0, n]");
    int morse = 0;
    for (int m : in.morse_indices) morse += m;
    switch (c) {
        case DimCase::open:
        case DimCase::closed: {
            int n = need(in.n, "n", c), d = need(in.d, "d", c), dR = need(in.d_R, "d_R", c);
            int mu = need(in.maslov, "maslov", c);
            int v = mu + morse - n * (d - dR - 1) + d - 2;
            return c == DimCase::open ? v : v - need(in.out_index, "out_index", c);
        }
        case DimCase::pearly:
            return need(in.n, "n", c) + need(in.maslov, "maslov", c) - 1;
        case DimCase::pearly_crit:
            return need(in.a_index, "a_index", c) - need(in.b_index, "b_index", c) + need(in.maslov, "maslov", c) - 1;
        case DimCase::quantum: {
            int n = need(in.n, "n", c), d = need(in.d, "d", c);
            if (static_cast<int>(in.morse_indices.size()) != d)
                throw std::invalid_argument("case quantum needs one Morse index per input");
            return need(in.maslov, "maslov", c) + morse - d * n - need(in.out_index, "out_index", c) + d - 2;
        }
        case DimCase::strip_moduli:
            return need(in.d, "d", c) - 2;
        case DimCase::stacked:
            return need(in.d, "d", c) - 1;
        case DimCase::sphere_cluster:
            return 2 * need(in.d, "d", c) - 4;
        case DimCase::marked_disc:
            return need(in.boundary_marked, "l", c) + 2 * need(in.interior_marked, "k", c) - 2;
    }
    return 0;
}

}  // namespace wb
