#include "sof/graph.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sof {

namespace {

std::string arc_str(const Arc& a) {
    std::ostringstream os;
    os << "(" << a.tail + 1 << " -> " << a.head + 1 << ", cost " << a.cost << ")";
    return os.str();
}

}  // namespace

ValidationReport validate(const CostGraph& graph) {
    ValidationReport report;
    std::map<std::pair<int, int>, int> seen;
    for (int i = 0; i < static_cast<int>(graph.arcs.size()); ++i) {
        const Arc& a = graph.arcs[i];
        if (a.tail < 0 || a.tail >= graph.n || a.head < 0 || a.head >= graph.n) {
            report.violations.push_back({ViolationKind::node_out_of_range, i,
                                         "arc " + std::to_string(i) + " " + arc_str(a) +
                                             ": node index outside [1, " +
                                             std::to_string(graph.n) + "]"});
            continue;
        }
        if (a.tail == a.head) {
            report.violations.push_back({ViolationKind::self_loop, i,
                                         "arc " + std::to_string(i) + ": self-loop at node " +
                                             std::to_string(a.tail + 1)});
        }
        if (std::isnan(a.cost)) {
            report.violations.push_back({ViolationKind::nan_cost, i,
                                         "arc " + std::to_string(i) + " " + arc_str(a) +
                                             ": NaN cost"});
        } else if (!(a.cost > 0.0) || std::isinf(a.cost)) {
            report.violations.push_back({ViolationKind::nonpositive_cost, i,
                                         "arc " + std::to_string(i) + " " + arc_str(a) +
                                             ": cost must be a positive finite number"});
        }
        auto [it, inserted] = seen.emplace(std::make_pair(a.tail, a.head), i);
        if (!inserted) {
            report.violations.push_back({ViolationKind::duplicate_arc, i,
                                         "arc " + std::to_string(i) + " duplicates arc " +
                                             std::to_string(it->second) + " " + arc_str(a)});
        }
    }
    return report;
}

WeightMatrix weight_matrix(const CostGraph& graph, double theta) {
    if (!(theta > 0.0) || std::isinf(theta)) {
        throw std::invalid_argument("theta must be a positive finite number");
    }
    ValidationReport report = validate(graph);
    if (!report.ok()) {
        throw std::invalid_argument("invalid graph: " + report.violations.front().message);
    }
    WeightMatrix out;
    out.values = Eigen::MatrixXd::Zero(graph.n, graph.n);
    for (const Arc& a : graph.arcs) {
        const double w = std::exp(-theta * a.cost);
        if (w == 0.0) {
            ++out.underflowed_arcs;
        }
        out.values(a.tail, a.head) = w;
    }
    return out;
}

Eigen::MatrixXd laplacian(const Eigen::MatrixXd& w) {
    if (w.rows() != w.cols()) {
        throw std::invalid_argument("laplacian requires a square matrix");
    }
    Eigen::MatrixXd l = -w;
    l.diagonal() += w.colwise().sum().transpose();
    return l;
}

Eigen::MatrixXd affinity_from_costs(const CostGraph& graph) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(graph.n, graph.n);
    for (const Arc& arc : graph.arcs) {
        a(arc.tail, arc.head) = 1.0 / arc.cost;
    }
    return a;
}

}  // namespace sof
