#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "sof/dataset.hpp"
#include "sof/graph.hpp"

namespace sof {

/// Gaussian-mixture pdf (equal component weights) evaluated at every point.
/// Requires the cloud to carry its generator parameters.
Eigen::VectorXd true_density(const PointCloud& cloud);

/// Spearman rank correlation with average ranks for ties. Throws
/// std::invalid_argument on length mismatch or length < 2 and
/// numerical_error on constant input.
double spearman(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct ThetaGridRow {
    double theta = 0.0;
    double correlation = 0.0;
    bool failed = false;
    std::string error;
};

struct ThetaGridResult {
    double best_theta = 0.0;
    std::vector<ThetaGridRow> table;
};

/// Default grid; contains the two values selected in the evaluation
/// protocol (5 for threshold graphs, 50 for k-NN graphs).
const std::vector<double>& default_theta_grid();

/// Picks the theta maximizing Spearman(SoF(theta), truth); ties go to the
/// smaller theta. Per-theta failures are recorded in the table rather than
/// aborting the search; throws numerical_error only if every theta fails.
ThetaGridResult theta_grid_search(const CostGraph& graph, const Eigen::VectorXd& truth,
                                  const std::vector<double>& grid);

/// Per-node result table plus per-measure Spearman correlations and the
/// provenance needed to re-run the computation. Columns are optional;
/// exports emit only the ones present, in a fixed order.
struct EvalReport {
    int n = 0;
    std::vector<std::array<double, 2>> coords;  // may be empty
    std::optional<Eigen::VectorXd> truth;
    std::optional<Eigen::VectorXd> sof;
    std::optional<Eigen::VectorXd> strength;
    std::optional<Eigen::VectorXd> cc_unweighted;
    std::optional<Eigen::VectorXd> cc_weighted;
    std::optional<Eigen::VectorXd> degree;
    std::map<std::string, double> spearman_by_measure;
    nlohmann::json config;  // full provenance record
};

/// CSV with columns (among) node,x,y,true_density,sof,strength,
/// cc_unweighted,cc_weighted,degree; 1-based node ids; values printed
/// with round-trip precision.
std::string report_to_csv(const EvalReport& report);

/// Parses a CSV produced by report_to_csv back into named columns.
std::map<std::string, std::vector<double>> parse_report_csv(const std::string& csv);

/// JSON mirror of the CSV plus the correlations and the config block.
nlohmann::json report_to_json(const EvalReport& report);

/// One 800x800 scatter plot of the named measure, nodes colored on a
/// blue-to-red linear colormap over the measure's min-max range (constant
/// measures render mid-color). Requires coordinates.
std::string report_to_svg(const EvalReport& report, const std::string& measure);

}  // namespace sof
