#include "sof/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sof/errors.hpp"

namespace sof {

namespace {

// In-degree <= 1 everywhere plus no directed cycle. With in-degree <= 1
// each node has at most one parent (the tail of its unique in-arc), so a
// cycle shows up as a parent-pointer walk returning into the current path.
bool is_diverging_forest(const CostGraph& graph, std::uint32_t mask,
                         std::vector<int>& parent, std::vector<int>& color) {
    parent.assign(graph.n, -1);
    for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
        const int i = std::countr_zero(bits);
        const Arc& a = graph.arcs[i];
        if (parent[a.head] != -1) {
            return false;  // in-degree 2
        }
        parent[a.head] = a.tail;
    }
    color.assign(graph.n, 0);  // 0 new, 1 on path, 2 done
    for (int start = 0; start < graph.n; ++start) {
        if (color[start] != 0) {
            continue;
        }
        int v = start;
        while (v != -1 && color[v] == 0) {
            color[v] = 1;
            v = parent[v];
        }
        if (v != -1 && color[v] == 1) {
            return false;  // walked back into the current path: cycle
        }
        int u = start;
        while (u != -1 && color[u] == 1) {
            color[u] = 2;
            u = parent[u];
        }
    }
    return true;
}

void check_cap(const CostGraph& graph, int arc_cap) {
    if (arc_cap < 0 || arc_cap > 30) {
        throw std::invalid_argument("arc cap must be in [0, 30]");
    }
    if (static_cast<int>(graph.arcs.size()) > arc_cap) {
        throw std::invalid_argument(
            "graph has " + std::to_string(graph.arcs.size()) +
            " arcs; the forest oracle enumerates 2^|arcs| subsets and refuses more than " +
            std::to_string(arc_cap) + " (raise the cap only for small graphs)");
    }
}

}  // namespace

std::vector<Forest> enumerate_forests(const CostGraph& graph, int arc_cap) {
    check_cap(graph, arc_cap);
    const int m = static_cast<int>(graph.arcs.size());
    std::vector<Forest> forests;
    std::vector<int> parent, color;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (!is_diverging_forest(graph, mask, parent, color)) {
            continue;
        }
        Forest f;
        f.arc_mask = mask;
        for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
            const int i = std::countr_zero(bits);
            f.arc_indices.push_back(i);
            f.total_cost += graph.arcs[i].cost;
        }
        forests.push_back(std::move(f));
    }
    return forests;
}

ForestDistribution oracle_distribution(const CostGraph& graph, double theta, int arc_cap) {
    if (!(theta > 0.0)) {
        throw std::invalid_argument("theta must be positive");
    }
    ForestDistribution dist;
    dist.theta = theta;
    dist.forests = enumerate_forests(graph, arc_cap);
    dist.probability.resize(dist.forests.size());
    double z = 0.0;
    for (std::size_t i = 0; i < dist.forests.size(); ++i) {
        const double w = std::exp(-theta * dist.forests[i].total_cost);
        dist.probability[i] = w;
        z += w;
    }
    for (double& p : dist.probability) {
        p /= z;
    }
    dist.partition_value = z;
    return dist;
}

Eigen::VectorXd oracle_density(const CostGraph& graph, double theta, int arc_cap) {
    const ForestDistribution dist = oracle_distribution(graph, theta, arc_cap);
    Eigen::VectorXd dens = Eigen::VectorXd::Zero(graph.n);
    for (std::size_t i = 0; i < dist.forests.size(); ++i) {
        for (int arc : dist.forests[i].arc_indices) {
            dens(graph.arcs[arc].tail) += dist.probability[i];
        }
    }
    return dens;
}

EdgeExpectations oracle_edge_expectation(const CostGraph& graph, double theta, int arc_cap) {
    const ForestDistribution dist = oracle_distribution(graph, theta, arc_cap);
    EdgeExpectations out;
    out.per_arc.assign(graph.arcs.size(), 0.0);
    for (std::size_t i = 0; i < dist.forests.size(); ++i) {
        for (int arc : dist.forests[i].arc_indices) {
            out.per_arc[arc] += dist.probability[i];
        }
    }
    return out;
}

}  // namespace sof
