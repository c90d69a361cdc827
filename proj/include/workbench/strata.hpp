#pragma once

#include "workbench/rational.hpp"
#include "workbench/trees.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wb {

struct Stratum {
    LabelledTree tree;
    int broken_count = 0;
    int codim = 0;
    int dim = 0;
    std::vector<int> colored;  // preorder ids of colored vertices
    bool generalized_corner = false;
};

std::string format_stratum(const Stratum& s);
// counts by dimension, index = dim
std::vector<int> f_vector(const std::vector<Stratum>& strata);
std::string format_f_vector(const std::vector<int>& f);

// One stratum per stable tree T and number k of broken unilabelled interior
// edges, 0 <= k <= |E_U^int(T)|.
std::vector<Stratum> enumerate_cluster_strata(const LagTuple& labels, bool parallel = false);

struct FacetTerm {
    Stratum facet;
    int i = 0;
    int k = 0;
    int j = 0;
};

// Codimension-one strata carried by two-vertex trees, matched with the term
// mu_{i+1+j}(id^i (x) mu_k (x) id^j).
std::vector<FacetTerm> facet_term_bijection(const LagTuple& labels);

struct ColoredTree {
    LabelledTree tree;  // colored vertices are flagged in the shape
    std::optional<std::map<int, Rational>> witness_metric;
};

struct ColoringCertificate {
    bool valid = false;
    std::string violation;
    std::map<int, Rational> witness;  // interior edge -> length
    int unknowns = 0;
    int rank = 0;
    int corank() const { return unknowns - rank; }
};

ColoringCertificate validate_coloring(const ColoredTree& ct);
int coloring_cone_dim(const ColoredTree& ct);

// Colored trees whose colored vertices are the ones met exactly once on each
// leaf path; stratum dimension sum_uncolored(|v|-3) + sum_colored(|v|-2).
std::vector<Stratum> enumerate_stacked_strata(const LagTuple& labels, bool parallel = false);
// All colored trees one collapse move above t.
std::vector<PlanarTree> colored_collapses(const PlanarTree& t);
int colored_tree_dim(const PlanarTree& t);

struct WidthExpr;
using WidthExprPtr = std::shared_ptr<const WidthExpr>;

// A two-input surface, or inner glued with length `length` into input n of outer.
struct WidthExpr {
    int n = 0;
    Rational length;
    WidthExprPtr outer;
    WidthExprPtr inner;

    bool is_base() const { return !outer; }
    int inputs() const;
};

WidthExprPtr width_base();
WidthExprPtr width_glue(WidthExprPtr outer, int n, WidthExprPtr inner, Rational length);
// "(strip)" and "(glue n length OUTER INNER)"
WidthExprPtr parse_width_expr(std::string_view text);
std::string serialize(const WidthExpr& e);

struct WidthProfile {
    std::vector<Rational> widths;
    friend bool operator==(const WidthProfile&, const WidthProfile&) = default;
};

WidthProfile intrinsic_width(const WidthExpr& e);

// l_i = W - w_{v_i} - w_i with W = exp(-1/rho), rho in (-1, 0).
std::vector<double> stacked_gluing_lengths(double rho, const std::vector<double>& child_widths,
                                           const std::vector<double>& root_widths);
std::vector<double> stacked_gluing_lengths_at(double W, const std::vector<double>& child_widths,
                                              const std::vector<double>& root_widths);

}  // namespace wb
