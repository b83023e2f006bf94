#pragma once

#include <string>

#include <Eigen/Core>

namespace sof {

/// `total` interprets the graph as undirected (elementwise-max
/// symmetrization) so each neighbour counts once; on symmetric affinity
/// matrices it coincides with `out`.
enum class Direction { in, out, total };

/// A named per-node score vector.
struct NodeIndexVector {
    std::string name;
    Eigen::VectorXd values;
};

/// Number of nonzero affinity entries per node in the chosen direction.
NodeIndexVector degree(const Eigen::MatrixXd& affinity, Direction direction);

/// Sum of affinity weights per node; reduces to the degree on unit weights.
NodeIndexVector strength(const Eigen::MatrixXd& affinity, Direction direction);

/// Watts-Strogatz clustering coefficient (unweighted) or its Barrat et al.
/// weighted extension. The affinity matrix is interpreted as undirected;
/// asymmetric input is symmetrized by elementwise max and, when
/// `symmetrized` is non-null, flagged through it. Nodes of degree < 2 get 0.
NodeIndexVector clustering_coefficient(const Eigen::MatrixXd& affinity, bool weighted,
                                       bool* symmetrized = nullptr);

}  // namespace sof
