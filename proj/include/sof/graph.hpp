#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace sof {

/// A directed arc with a strictly positive traversal cost.
struct Arc {
    int tail = 0;
    int head = 0;
    double cost = 0.0;
};

/// Directed weighted graph given as a node count plus an arc list.
/// Absent arcs are simply not listed. Node indices are 0-based here;
/// file formats and CLI output use 1-based indices.
struct CostGraph {
    int n = 0;
    std::vector<Arc> arcs;
};

enum class ViolationKind {
    self_loop,
    nonpositive_cost,
    nan_cost,
    duplicate_arc,
    node_out_of_range,
};

struct Violation {
    ViolationKind kind;
    int arc_index;  // index into CostGraph::arcs
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every CostGraph invariant (no self-loops, positive finite costs,
/// no duplicate (tail, head) pairs, indices within [0, n)) and reports all
/// violations found, with the offending arc indices.
ValidationReport validate(const CostGraph& graph);

/// Dense matrix of arc weights w(k,k') = exp(-theta * c(k,k')), zero where
/// no arc exists. `underflowed_arcs` counts arcs whose weight underflowed
/// to exactly zero (possible for large theta); the computation proceeds as
/// if those arcs were absent.
struct WeightMatrix {
    Eigen::MatrixXd values;
    std::size_t underflowed_arcs = 0;
};

/// Builds the weight matrix for a valid graph. Throws std::invalid_argument
/// on theta <= 0, non-finite theta, or an invalid graph.
WeightMatrix weight_matrix(const CostGraph& graph, double theta);

/// L(W) = Diag(W^T e) - W: diagonal holds the column sums of W.
/// Columns of the result sum to zero.
Eigen::MatrixXd laplacian(const Eigen::MatrixXd& w);

/// Dense affinity matrix with a(k,k') = 1 / c(k,k') per arc, 0 elsewhere
/// (reciprocal cost/affinity convention).
Eigen::MatrixXd affinity_from_costs(const CostGraph& graph);

}  // namespace sof
