#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "sof/graph.hpp"

namespace sof {

/// Expected forest membership per arc, parallel to CostGraph::arcs.
/// Entries lie in [0, 1]: an arc appears at most once in a forest.
struct EdgeExpectations {
    std::vector<double> per_arc;

    /// Expectation for the arc tail->head; 0 for non-arcs.
    double at(const CostGraph& graph, int tail, int head) const;
};

struct SofDiagnostics {
    std::size_t underflowed_arcs = 0;
    double rcond = 1.0;           // reciprocal condition estimate of I + L(W)
    bool ill_conditioned = false; // estimated condition number above the bound
};

/// Full output of the density computation: the per-node density vector
/// (expected outdegree under the forest distribution), the log partition
/// function, the free energy F = -log(Z)/theta, and the solver matrix
/// Z = (I + L(W))^-1 kept for downstream queries.
struct SofResult {
    Eigen::VectorXd density;
    double log_partition = 0.0;
    double free_energy = 0.0;
    double theta = 0.0;
    Eigen::MatrixXd z_matrix;
    SofDiagnostics diagnostics;
};

inline constexpr double kDefaultConditionBound = 1e12;

/// log det(I + L(W)), accumulated from the log-magnitudes of the LU pivots
/// so that the determinant itself is never formed. Equals log Z, the log of
/// the sum over all diverging rooted forests of exp(-theta * cost).
/// Throws numerical_error if the factorization produces a zero pivot or a
/// negative determinant sign.
double log_partition_function(const WeightMatrix& w);

/// F = -log(Z)/theta. Throws std::invalid_argument on theta <= 0.
double free_energy(const WeightMatrix& w, double theta);

/// Z = (I + L(W))^-1 via one LU factorization and n right-hand-side solves.
/// When the condition estimate exceeds `condition_bound` the result is still
/// returned and diag->ill_conditioned is set.
Eigen::MatrixXd solve_z(const WeightMatrix& w, SofDiagnostics* diag = nullptr,
                        double condition_bound = kDefaultConditionBound);

/// Expected forest membership of each arc k->k':
///   eta(k,k') = w(k,k') * (z(k',k') - z(k',k)).
/// Values within 1e-9 of [0,1] are clamped to the bound; larger violations
/// throw numerical_error.
EdgeExpectations edge_expectations(const CostGraph& graph, const WeightMatrix& w,
                                   const Eigen::MatrixXd& z);

/// The SoF density index: d = W diag(Z) - diag(W Z), the expected outdegree
/// of every node under the Boltzmann distribution over diverging forests.
/// Runs the three-step procedure: build W, solve for Z, reduce to d.
SofResult sof_density(const CostGraph& graph, double theta,
                      double condition_bound = kDefaultConditionBound);

}  // namespace sof
