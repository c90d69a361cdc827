#pragma once

#include "workbench/novikov.hpp"
#include "workbench/rational.hpp"
#include "workbench/tuples.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wb {

struct BudgetParams {
    Rational epsilon;
    std::optional<Rational> delta;
    int d = 2;
    TupleClass tuple_class = TupleClass::cyclically_different;
};

// throws std::domain_error unless eps > 0 and delta (if any) lies in (1/2, 1)
void validate(const BudgetParams& p);

struct HamiltonianWindow {
    Rational lo;
    Rational hi;
};

bool validate_floer_window(const HamiltonianWindow& w, const BudgetParams& p);

enum class Convention { main, draft };

// Worst-case total curvature near a vertex of the cluster.
Rational vertex_curvature_budget(const BudgetParams& p, Convention conv = Convention::main);

struct EpsDeltaBudget {
    Rational worst_case;
    Rational interior_cap;
};

EpsDeltaBudget eps_delta_budget(const BudgetParams& p);

enum class StripEnd { entry, exit };

// Cutoff samples are taken on a uniform grid of [0,1], endpoints included, and
// must be non-decreasing with values in [0,1].
double strip_end_bound(const HamiltonianWindow& w, StripEnd end, const std::vector<double>& cutoff);

bool energy_action_check(const std::vector<ActionValue>& action_in, const ActionValue& action_out,
                         const Rational& curvature_total);

struct ContinuationShift {
    Rational per_d;
    Rational overall;
    Rational theorem_b;  // eps2 - eps1/2, the delta1 -> 1/2 specialisation
    bool filtered = false;
};

ContinuationShift continuation_shift(const Rational& eps1, const Rational& delta1, const Rational& eps2,
                                     const Rational& delta2, int d);

enum class DimCase { open, closed, pearly, pearly_crit, quantum, strip_moduli, stacked, sphere_cluster, marked_disc };

DimCase parse_dim_case(std::string_view s);
std::string to_string(DimCase c);

struct IndexInput {
    std::optional<int> n;
    std::optional<int> d;
    std::optional<int> d_R;
    std::optional<int> maslov;
    std::vector<int> morse_indices;
    std::optional<int> out_index;
    std::optional<int> a_index;
    std::optional<int> b_index;
    std::optional<int> boundary_marked;  // l
    std::optional<int> interior_marked;  // k
};

int virtual_dimension(const IndexInput& in, DimCase c);

}  // namespace wb
