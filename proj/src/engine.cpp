#include "sof/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "sof/errors.hpp"

namespace sof {

namespace {

constexpr double kBoundSlack = 1e-9;  // rounding tolerance on [0,1] bounds

struct Factorization {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    double log_det = 0.0;
    double rcond = 1.0;
};

// LU of I + L(W) with the log-determinant accumulated from pivot
// log-magnitudes. The determinant is a sum of nonnegative forest weights
// including the empty forest, so it is >= 1; a zero pivot or a negative
// sign means the factorization failed.
Factorization factorize(const WeightMatrix& w) {
    const Eigen::Index n = w.values.rows();
    Eigen::MatrixXd m = laplacian(w.values);
    m.diagonal().array() += 1.0;

    Factorization f{Eigen::PartialPivLU<Eigen::MatrixXd>(m), 0.0, 1.0};
    int sign = f.lu.permutationP().determinant();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double pivot = f.lu.matrixLU()(i, i);
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw numerical_error("singular factorization of I + L(W): pivot " +
                                  std::to_string(i) + " is " + std::to_string(pivot));
        }
        if (pivot < 0.0) {
            sign = -sign;
        }
        f.log_det += std::log(std::abs(pivot));
    }
    if (sign < 0) {
        throw numerical_error("factorization of I + L(W) produced a negative determinant");
    }
    f.rcond = f.lu.rcond();
    return f;
}

}  // namespace

double EdgeExpectations::at(const CostGraph& graph, int tail, int head) const {
    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        if (graph.arcs[i].tail == tail && graph.arcs[i].head == head) {
            return per_arc[i];
        }
    }
    return 0.0;
}

double log_partition_function(const WeightMatrix& w) {
    return factorize(w).log_det;
}

double free_energy(const WeightMatrix& w, double theta) {
    if (!(theta > 0.0)) {
        throw std::invalid_argument("theta must be positive");
    }
    return -log_partition_function(w) / theta;
}

Eigen::MatrixXd solve_z(const WeightMatrix& w, SofDiagnostics* diag, double condition_bound) {
    Factorization f = factorize(w);
    Eigen::MatrixXd z = f.lu.solve(Eigen::MatrixXd::Identity(w.values.rows(), w.values.cols()));
    if (diag != nullptr) {
        diag->underflowed_arcs = w.underflowed_arcs;
        diag->rcond = f.rcond;
        diag->ill_conditioned = !(f.rcond * condition_bound >= 1.0);
    }
    return z;
}

EdgeExpectations edge_expectations(const CostGraph& graph, const WeightMatrix& w,
                                   const Eigen::MatrixXd& z) {
    EdgeExpectations out;
    out.per_arc.reserve(graph.arcs.size());
    for (const Arc& a : graph.arcs) {
        double eta = w.values(a.tail, a.head) * (z(a.head, a.head) - z(a.head, a.tail));
        if (eta < -kBoundSlack || eta > 1.0 + kBoundSlack) {
            throw numerical_error("edge expectation for arc " + std::to_string(a.tail + 1) +
                                  "->" + std::to_string(a.head + 1) + " is " +
                                  std::to_string(eta) + ", outside [0,1]");
        }
        eta = std::min(std::max(eta, 0.0), 1.0);
        out.per_arc.push_back(eta);
    }
    return out;
}

SofResult sof_density(const CostGraph& graph, double theta, double condition_bound) {
    SofResult result;
    result.theta = theta;

    // Step 1: the weight matrix.
    WeightMatrix w = weight_matrix(graph, theta);

    // Step 2: factorize I + L(W) once; reuse it for log Z and Z.
    Factorization f = factorize(w);
    result.log_partition = f.log_det;
    result.free_energy = -f.log_det / theta;
    result.z_matrix =
        f.lu.solve(Eigen::MatrixXd::Identity(w.values.rows(), w.values.cols()));
    result.diagnostics.underflowed_arcs = w.underflowed_arcs;
    result.diagnostics.rcond = f.rcond;
    result.diagnostics.ill_conditioned = !(f.rcond * condition_bound >= 1.0);

    // Step 3: d = W diag(Z) - diag(W Z). The second term only needs the
    // diagonal, i.e. row k of W against column k of Z.
    const Eigen::VectorXd z_diag = result.z_matrix.diagonal();
    const Eigen::VectorXd wz_diag =
        (w.values.array() * result.z_matrix.transpose().array()).rowwise().sum().matrix();
    result.density = w.values * z_diag - wz_diag;

    for (Eigen::Index k = 0; k < result.density.size(); ++k) {
        if (result.density(k) < -kBoundSlack) {
            throw numerical_error("density of node " + std::to_string(k + 1) + " is " +
                                  std::to_string(result.density(k)) + ", below 0");
        }
        if (result.density(k) < 0.0) {
            result.density(k) = 0.0;
        }
    }
    return result;
}

}  // namespace sof
