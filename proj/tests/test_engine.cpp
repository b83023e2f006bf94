#include <cmath>
#include <random>

#include <doctest.h>

#include "sof/engine.hpp"
#include "sof/errors.hpp"
#include "sof/oracle.hpp"
#include "test_util.hpp"

using namespace sof;

namespace {

WeightMatrix zero_weights(int n) {
    WeightMatrix w;
    w.values = Eigen::MatrixXd::Zero(n, n);
    return w;
}

}  // namespace

TEST_CASE("empty weight matrix: Z = 1, Z matrix = I") {
    const auto w = zero_weights(3);
    CHECK(log_partition_function(w) == 0.0);
    CHECK(solve_z(w).isIdentity(1e-15));
    CHECK(free_energy(w, 2.0) == 0.0);
}

TEST_CASE("two-node single arc closed forms") {
    const double c = 1.0;
    for (double theta : {0.5, 1.0, 5.0}) {
        CostGraph g{2, {{0, 1, c}}};
        const double w = std::exp(-theta * c);
        const auto wm = weight_matrix(g, theta);

        CHECK(log_partition_function(wm) ==
              doctest::Approx(std::log1p(w)).epsilon(1e-14));
        CHECK(free_energy(wm, theta) ==
              doctest::Approx(-std::log1p(w) / theta).epsilon(1e-14));

        const Eigen::MatrixXd z = solve_z(wm);
        CHECK(z(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(z(0, 1) == doctest::Approx(w / (1.0 + w)).epsilon(1e-14));
        CHECK(z(1, 0) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(z(1, 1) == doctest::Approx(1.0 / (1.0 + w)).epsilon(1e-14));

        const auto eta = edge_expectations(g, wm, z);
        CHECK(eta.per_arc[0] == doctest::Approx(w / (1.0 + w)).epsilon(1e-12));

        const SofResult r = sof_density(g, theta);
        CHECK(r.density(0) == doctest::Approx(w / (1.0 + w)).epsilon(1e-12));
        CHECK(r.density(1) == 0.0);
    }
}

TEST_CASE("two-node symmetric closed forms") {
    const double c = 1.0;
    for (double theta : {0.5, 1.0, 5.0}) {
        CostGraph g{2, {{0, 1, c}, {1, 0, c}}};
        const double w = std::exp(-theta * c);
        const auto wm = weight_matrix(g, theta);

        CHECK(log_partition_function(wm) ==
              doctest::Approx(std::log1p(2.0 * w)).epsilon(1e-14));

        const Eigen::MatrixXd z = solve_z(wm);
        const double s = 1.0 / (1.0 + 2.0 * w);
        CHECK(z(0, 0) == doctest::Approx((1.0 + w) * s).epsilon(1e-14));
        CHECK(z(0, 1) == doctest::Approx(w * s).epsilon(1e-14));
        CHECK(z(1, 0) == doctest::Approx(w * s).epsilon(1e-14));
        CHECK(z(1, 1) == doctest::Approx((1.0 + w) * s).epsilon(1e-14));

        const auto eta = edge_expectations(g, wm, z);
        CHECK(eta.per_arc[0] == doctest::Approx(w * s).epsilon(1e-12));
        CHECK(eta.per_arc[1] == doctest::Approx(w * s).epsilon(1e-12));

        const SofResult r = sof_density(g, theta);
        CHECK(r.density(0) == doctest::Approx(w * s).epsilon(1e-12));
        CHECK(r.density(1) == doctest::Approx(w * s).epsilon(1e-12));
    }
}

TEST_CASE("free energy limits") {
    // Large theta: the empty forest dominates, F -> 0 from below.
    CostGraph g{3, {{0, 1, 1.0}, {1, 2, 0.5}, {2, 0, 2.0}}};
    double prev = -1e300;
    for (double theta : {1.0, 10.0, 100.0, 1000.0}) {
        const double f = free_energy(weight_matrix(g, theta), theta);
        CHECK(f <= 0.0);
        CHECK(f >= prev);
        prev = f;
    }
    CHECK(std::abs(prev) < 1e-3);
}

TEST_CASE("engine matches the forest oracle on random small graphs") {
    std::mt19937_64 rng(101);
    int checked = 0;
    double worst_z = 0.0, worst_d = 0.0;
    while (checked < 200) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const CostGraph g = testutil::random_graph(rng, n, 0.5, 0.1, 3.0);
        if (g.arcs.size() > 10) {
            continue;
        }
        ++checked;
        for (double theta : {0.1, 1.0, 5.0}) {
            const auto dist = oracle_distribution(g, theta);
            const double logz = log_partition_function(weight_matrix(g, theta));
            worst_z = std::max(worst_z,
                               std::abs(std::exp(logz) - dist.partition_value) /
                                   dist.partition_value);

            const SofResult r = sof_density(g, theta);
            const Eigen::VectorXd od = oracle_density(g, theta);
            worst_d = std::max(worst_d, (r.density - od).cwiseAbs().maxCoeff());

            const auto engine_eta = edge_expectations(g, weight_matrix(g, theta), r.z_matrix);
            const auto oracle_eta = oracle_edge_expectation(g, theta);
            for (std::size_t i = 0; i < g.arcs.size(); ++i) {
                CHECK(std::abs(engine_eta.per_arc[i] - oracle_eta.per_arc[i]) < 1e-10);
            }
        }
    }
    CHECK(worst_z < 1e-10);
    CHECK(worst_d < 1e-10);
}

TEST_CASE("density row-sum identity: Eq-13 route equals Eq-14 route") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const CostGraph g = testutil::random_graph(rng, n, 0.5, 0.1, 3.0);
        const SofResult r = sof_density(g, 1.0);
        const auto eta = edge_expectations(g, weight_matrix(g, 1.0), r.z_matrix);
        Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(g.n);
        for (std::size_t i = 0; i < g.arcs.size(); ++i) {
            row_sum(g.arcs[i].tail) += eta.per_arc[i];
        }
        CHECK((row_sum - r.density).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("edge expectations are the cost gradient of the free energy") {
    std::mt19937_64 rng(107);
    const double h = 1e-6;
    int checked = 0;
    while (checked < 20) {
        const int n = 3 + static_cast<int>(rng() % 3);
        CostGraph g = testutil::random_graph(rng, n, 0.5, 0.3, 2.0);
        if (g.arcs.empty()) {
            continue;
        }
        ++checked;
        const double theta = 1.0;
        const SofResult r = sof_density(g, theta);
        const auto eta = edge_expectations(g, weight_matrix(g, theta), r.z_matrix);
        for (std::size_t i = 0; i < g.arcs.size(); ++i) {
            CostGraph plus = g, minus = g;
            plus.arcs[i].cost += h;
            minus.arcs[i].cost -= h;
            const double fd = (free_energy(weight_matrix(plus, theta), theta) -
                               free_energy(weight_matrix(minus, theta), theta)) /
                              (2.0 * h);
            CHECK(std::abs(fd - eta.per_arc[i]) / std::max(1e-12, eta.per_arc[i]) < 1e-4);
        }
    }
}

TEST_CASE("eta and density bounds hold") {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const CostGraph g = testutil::random_graph(rng, n, 0.6, 0.1, 3.0);
        const SofResult r = sof_density(g, 1.0);
        const auto eta = edge_expectations(g, weight_matrix(g, 1.0), r.z_matrix);
        std::vector<int> outdeg(g.n, 0);
        for (const Arc& a : g.arcs) {
            ++outdeg[a.tail];
        }
        for (double e : eta.per_arc) {
            CHECK(e >= 0.0);
            CHECK(e <= 1.0);
        }
        for (int k = 0; k < g.n; ++k) {
            CHECK(r.density(k) >= 0.0);
            CHECK(r.density(k) <= static_cast<double>(outdeg[k]) + 1e-12);
        }
    }
}

TEST_CASE("large theta: partition tends to 1 and densities vanish") {
    CostGraph g{4, {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 1, 1.0}}};
    const SofResult r = sof_density(g, 1000.0);
    CHECK(r.log_partition >= 0.0);
    CHECK(std::exp(r.log_partition) <= 1.0 + 1e-6);
    CHECK(r.density.maxCoeff() < 1e-6);
    // exp(-1000) underflows; the diagnostics record that.
    CHECK(r.diagnostics.underflowed_arcs == g.arcs.size());
}

TEST_CASE("isolated nodes have exactly zero density") {
    CostGraph g{5, {{0, 1, 1.0}, {1, 0, 0.5}}};  // nodes 2..4 isolated
    const SofResult r = sof_density(g, 1.0);
    CHECK(r.density(2) == 0.0);
    CHECK(r.density(3) == 0.0);
    CHECK(r.density(4) == 0.0);
}

TEST_CASE("vertex-transitive graphs get equal densities") {
    // Directed 5-cycle with uniform costs.
    CostGraph cycle{5, {}};
    for (int i = 0; i < 5; ++i) {
        cycle.arcs.push_back({i, (i + 1) % 5, 0.7});
    }
    const SofResult rc = sof_density(cycle, 1.0);
    CHECK(rc.density.maxCoeff() - rc.density.minCoeff() < 1e-12);

    // Complete symmetric graph on 4 nodes.
    CostGraph complete{4, {}};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i != j) {
                complete.arcs.push_back({i, j, 1.3});
            }
        }
    }
    const SofResult rk = sof_density(complete, 1.0);
    CHECK(rk.density.maxCoeff() - rk.density.minCoeff() < 1e-12);
}

TEST_CASE("log partition is nonnegative and densities sum to total eta") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 20; ++trial) {
        const CostGraph g = testutil::random_graph(rng, 5, 0.5, 0.1, 3.0);
        const SofResult r = sof_density(g, 0.8);
        CHECK(r.log_partition >= 0.0);
        const auto eta = edge_expectations(g, weight_matrix(g, 0.8), r.z_matrix);
        double eta_total = 0.0;
        for (double e : eta.per_arc) {
            eta_total += e;
        }
        CHECK(r.density.sum() == doctest::Approx(eta_total).epsilon(1e-10));
    }
}

TEST_CASE("ill-conditioning is reported but the result is still returned") {
    CostGraph g{2, {{0, 1, 1.0}}};
    const SofResult r = sof_density(g, 1.0, /*condition_bound=*/1.0);
    CHECK(r.diagnostics.ill_conditioned);
    CHECK(r.density(0) > 0.0);

    const SofResult ok = sof_density(g, 1.0);
    CHECK_FALSE(ok.diagnostics.ill_conditioned);
    CHECK(ok.diagnostics.rcond > 0.0);
}

TEST_CASE("free energy rejects nonpositive theta") {
    CHECK_THROWS_AS(free_energy(zero_weights(2), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(free_energy(zero_weights(2), -1.0), std::invalid_argument);
}
