#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sof/graph.hpp"

namespace sof {

/// One axis-aligned Gaussian mixture component.
struct GaussianComponent {
    double mu_x = 0.0;
    double mu_y = 0.0;
    double sigma_x = 1.0;
    double sigma_y = 1.0;
    int count = 0;
};

/// Labeled 2-D observations, optionally with the mixture that generated
/// them (needed to evaluate the true density later).
struct PointCloud {
    std::vector<std::array<double, 2>> points;
    std::vector<int> labels;                          // empty when unknown
    std::vector<GaussianComponent> generator_params;  // empty when unknown
};

/// Draws `count` points from each component in order, deterministically
/// for a given (spec, seed). Rejects nonpositive sigmas or counts.
PointCloud generate_communities(const std::vector<GaussianComponent>& spec,
                                std::uint64_t seed);

/// Built-in dataset presets: 3comm-0.05, 3comm-0.1, 3comm-0.5 (three
/// isotropic 500-point clusters on an equilateral triangle of unit side)
/// and 10comm-S1, 10comm-S2 (ten 500-point clusters on a fixed jittered
/// 5x2 grid; S1 overlaps slightly, S2 strongly).
const std::vector<GaussianComponent>& preset(const std::string& name);
std::vector<std::string> preset_names();

/// Gaussian kernel affinity a(i,j) = exp(-d(i,j)^2 / s2) with bandwidth s2
/// equal to the population variance of the distances over all unordered
/// distinct pairs. Diagonal is zero. Throws numerical_error when the cloud
/// is degenerate (zero distance variance).
Eigen::MatrixXd pairwise_affinity(const PointCloud& cloud);

struct GraphConstruction {
    std::string method;       // "epsilon" or "knn"
    double percentile = 0.0;  // epsilon only
    int k = 0;                // knn only
    bool weighted = true;
};

/// Symmetric nonnegative affinity matrix with zero diagonal plus a record
/// of how it was built. Unweighted graphs have entries in {0, 1}.
struct AffinityGraph {
    Eigen::MatrixXd affinity;
    bool weighted = true;
    GraphConstruction construction;
};

/// Keeps pairs whose affinity is strictly above the nearest-rank p-th
/// percentile of the off-diagonal upper-triangle affinity values.
AffinityGraph epsilon_graph(const Eigen::MatrixXd& affinity, double percentile,
                            bool weighted);

/// Links each node to its k highest-affinity neighbours (ties broken by
/// lower node index), then symmetrizes with an elementwise max. Rejects
/// k < 1 or k >= n.
AffinityGraph knn_graph(const Eigen::MatrixXd& affinity, int k, bool weighted);

/// Arcs in both directions with cost = 1/affinity for every nonzero entry.
CostGraph to_cost_graph(const AffinityGraph& graph);

/// Point CSV format: `x,y[,label]`, optional header line.
PointCloud read_point_csv(std::istream& in);
PointCloud read_point_csv_file(const std::string& path);
void write_point_csv(std::ostream& out, const PointCloud& cloud);
void write_point_csv_file(const std::string& path, const PointCloud& cloud);

}  // namespace sof
