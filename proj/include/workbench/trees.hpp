#pragma once

#include "workbench/rational.hpp"
#include "workbench/tuples.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wb {

class TreeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rooted planar tree; a node without children is a leaf.  The child order is
// the planar embedding, and leaves are numbered 1..d from left to right.
struct PlanarTree {
    bool colored = false;
    std::vector<PlanarTree> children;

    static PlanarTree leaf() { return {}; }
    static PlanarTree vertex(std::vector<PlanarTree> children, bool colored = false);
    static PlanarTree corolla(int leaves, bool colored = false);

    bool is_leaf() const { return children.empty(); }
    int leaf_count() const;
    int vertex_count() const;
    // every vertex has at least two children
    bool is_stable() const;
    bool is_binary() const;

    friend bool operator==(const PlanarTree&, const PlanarTree&) = default;
};

std::string serialize(const PlanarTree& t);
PlanarTree parse_planar_tree(std::string_view text);

// Preorder view.  Node 0 is the root vertex; the edge above node n has id n, so
// edge 0 is the root edge.
struct FlatNode {
    int parent = -1;
    std::vector<int> children;
    bool leaf = false;
    bool colored = false;
    int leaf_index = 0;  // 1..d for leaves
    int first_leaf = 0;
    int last_leaf = 0;
    int depth = 0;
};

std::vector<FlatNode> flatten(const PlanarTree& t);

struct LabelledTree {
    PlanarTree shape;
    LagTuple labels;

    int d() const { return static_cast<int>(labels.size()) - 1; }
    friend bool operator==(const LabelledTree&, const LabelledTree&) = default;
};

LabelledTree make_labelled(PlanarTree shape, LagTuple labels);

// Regions are numbered 0..d with region i between leaf i and leaf i+1; the
// edge above a node spanning leaves a..b separates regions a-1 and b.
std::pair<int, int> edge_regions(const FlatNode& n);
std::pair<Symbol, Symbol> edge_labels(const LabelledTree& t, const FlatNode& n);
bool is_unilabelled(const LabelledTree& t, const FlatNode& n);

// "labels: (L0,L1,L2)" followed by the tree on the next line.
std::string serialize(const LabelledTree& t);
LabelledTree parse_labelled_tree(std::string_view text);

struct Length {
    bool infinite = false;
    Rational value;

    static Length inf() { return {true, 0}; }
    static Length finite(Rational v) { return {false, std::move(v)}; }
    friend bool operator==(const Length&, const Length&) = default;
};

std::string to_string(const Length& l);

struct MetricTree {
    LabelledTree tree;
    std::map<int, Length> lengths;  // interior edge id -> length

    int broken_count() const;
    bool is_unilabelled_metric() const;
};

// Every interior edge needs a length; lengths must be >= 0.
void validate_metric(const MetricTree& m);
std::string serialize(const MetricTree& m);
MetricTree parse_metric_tree(std::string_view text);

struct GlueResult {
    LabelledTree tree;
    int glued_edge = 0;
    std::vector<int> from_first;   // node of t1 -> node of result
    std::vector<int> from_second;  // node of t2 -> node of result (leaf i maps to glued_edge)
};

// Grafts the root edge of t1 onto leaf i of t2.
GlueResult glue_trees(const LabelledTree& t1, int leaf, const LabelledTree& t2);

MetricTree glue_metrics(const Length& glued_length, int leaf, const MetricTree& m1, const MetricTree& m2);

// -ln(-rho) on [-1, 0); +infinity at rho = 0.
double log_chart_length(double rho);

struct FloatGlue {
    MetricTree metric;  // glued length stored as the exact value of the double
    double glued_length;
};

FloatGlue glue_metrics_rho(double rho, int leaf, const MetricTree& m1, const MetricTree& m2);

struct TreeComponent {
    std::vector<int> edges;
    std::vector<int> vertices;
    std::optional<Symbol> label;  // set for unilabelled components
};

struct TreeDecomposition {
    ReducedTuple reduced;
    std::vector<TreeComponent> reduced_components;
    // indexed by position in the fundamental tuple
    std::vector<std::vector<TreeComponent>> uni_components;
    // (i, j) -> leaf index, for j = 1..mbar_i - 1
    std::map<std::pair<int, int>, int> exterior_numbering;
    bool root_unilabelled = false;
};

TreeDecomposition fundamental_decomposition(const LabelledTree& t);

std::vector<PlanarTree> enumerate_stable_trees(int d, bool parallel = false);

}  // namespace wb
