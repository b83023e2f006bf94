#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "sof/engine.hpp"
#include "sof/graph.hpp"

namespace sof {

/// A diverging rooted forest, stored as the set of participating arcs:
/// every node has in-degree <= 1 and the arc set contains no directed
/// cycle, so each weakly connected component is a tree whose unique
/// in-degree-0 root reaches all component nodes along directed paths.
struct Forest {
    std::uint32_t arc_mask = 0;      // bit i set <=> graph.arcs[i] included
    std::vector<int> arc_indices;    // ascending
    double total_cost = 0.0;         // sum of member arc costs
};

/// Boltzmann distribution over all forests of a graph:
///   P(forest) = exp(-theta * cost) / Z.
/// The empty forest is always present (cost 0, weight 1), so Z >= 1.
struct ForestDistribution {
    std::vector<Forest> forests;       // lexicographic by arc_mask
    std::vector<double> probability;   // parallel to forests
    double partition_value = 1.0;      // Z, by direct summation
    double theta = 0.0;
};

inline constexpr int kDefaultArcCap = 20;

/// Enumerates every diverging rooted forest by filtering all 2^|arcs|
/// arc subsets, in lexicographic bitmask order (the empty forest first).
/// Refuses graphs with more than `arc_cap` arcs.
std::vector<Forest> enumerate_forests(const CostGraph& graph, int arc_cap = kDefaultArcCap);

ForestDistribution oracle_distribution(const CostGraph& graph, double theta,
                                       int arc_cap = kDefaultArcCap);

/// Expected outdegree per node by direct summation over the distribution.
Eigen::VectorXd oracle_density(const CostGraph& graph, double theta,
                               int arc_cap = kDefaultArcCap);

/// Expected forest membership per arc by direct summation of indicators.
EdgeExpectations oracle_edge_expectation(const CostGraph& graph, double theta,
                                         int arc_cap = kDefaultArcCap);

}  // namespace sof
