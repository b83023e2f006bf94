#include "sof/baselines.hpp"

#include <stdexcept>
#include <vector>

namespace sof {

namespace {

void check_affinity(const Eigen::MatrixXd& affinity) {
    if (affinity.rows() != affinity.cols()) {
        throw std::invalid_argument("affinity matrix must be square");
    }
    if ((affinity.array() < 0.0).any()) {
        throw std::invalid_argument("affinity entries must be nonnegative");
    }
}

// `total` treats the graph as undirected (elementwise-max symmetrization),
// counting each neighbour once; on symmetric input it equals `out`.
Eigen::VectorXd directed_reduce(const Eigen::MatrixXd& m, Direction direction) {
    switch (direction) {
        case Direction::in:
            return m.colwise().sum().transpose();
        case Direction::out:
            return m.rowwise().sum();
        case Direction::total:
            return m.cwiseMax(m.transpose()).rowwise().sum();
    }
    throw std::logic_error("unreachable");
}

}  // namespace

NodeIndexVector degree(const Eigen::MatrixXd& affinity, Direction direction) {
    check_affinity(affinity);
    const Eigen::MatrixXd indicator = (affinity.array() != 0.0).cast<double>();
    return {"degree", directed_reduce(indicator, direction)};
}

NodeIndexVector strength(const Eigen::MatrixXd& affinity, Direction direction) {
    check_affinity(affinity);
    return {"strength", directed_reduce(affinity, direction)};
}

NodeIndexVector clustering_coefficient(const Eigen::MatrixXd& affinity, bool weighted,
                                       bool* symmetrized) {
    check_affinity(affinity);
    Eigen::MatrixXd a = affinity;
    const bool asymmetric = (a.array() != a.transpose().array()).any();
    if (asymmetric) {
        a = affinity.cwiseMax(affinity.transpose());
    }
    if (symmetrized != nullptr) {
        *symmetrized = asymmetric;
    }
    a.diagonal().setZero();

    const int n = static_cast<int>(a.rows());
    NodeIndexVector out{weighted ? "cc_weighted" : "cc_unweighted", Eigen::VectorXd::Zero(n)};
    std::vector<int> neighbours;
    for (int i = 0; i < n; ++i) {
        neighbours.clear();
        for (int j = 0; j < n; ++j) {
            if (a(i, j) != 0.0) {
                neighbours.push_back(j);
            }
        }
        const int d = static_cast<int>(neighbours.size());
        if (d < 2) {
            continue;
        }
        if (weighted) {
            // Barrat et al.: sum over ordered neighbour pairs (j, h) closing
            // a triangle, averaging the two affinities incident to i.
            const double s = a.row(i).sum();
            if (s == 0.0) {
                continue;
            }
            double total = 0.0;
            for (int j : neighbours) {
                for (int h : neighbours) {
                    if (j != h && a(j, h) != 0.0) {
                        total += 0.5 * (a(i, j) + a(i, h));
                    }
                }
            }
            out.values(i) = total / (s * (d - 1));
        } else {
            int triangles2 = 0;  // ordered pairs, twice the triangle count
            for (int j : neighbours) {
                for (int h : neighbours) {
                    if (j != h && a(j, h) != 0.0) {
                        ++triangles2;
                    }
                }
            }
            out.values(i) = static_cast<double>(triangles2) /
                            (static_cast<double>(d) * (d - 1));
        }
    }
    return out;
}

}  // namespace sof
