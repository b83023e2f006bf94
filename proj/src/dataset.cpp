#include "sof/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sof/errors.hpp"

namespace sof {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<GaussianComponent> make_3comm(double sigma) {
    // Unit-side equilateral triangle; sigma controls the overlap.
    const double h = std::sqrt(3.0) / 2.0;
    return {
        {0.0, 0.0, sigma, sigma, 500},
        {1.0, 0.0, sigma, sigma, 500},
        {0.5, h, sigma, sigma, 500},
    };
}

std::vector<GaussianComponent> make_10comm(const double (&sx)[10], const double (&sy)[10]) {
    // Fixed jittered 5x2 grid, spacing 3; recorded explicitly so the
    // datasets are reproducible.
    static constexpr double means[10][2] = {
        {-0.572594, -0.384807}, {3.624467, 0.370135},  {5.771330, -0.351091},
        {9.206448, -0.657858},  {12.362788, 0.927786}, {-0.528684, 3.942650},
        {3.351199, 2.151386},   {5.877863, 3.811608},  {9.414652, 2.635593},
        {12.491249, 2.412283},
    };
    std::vector<GaussianComponent> spec;
    for (int i = 0; i < 10; ++i) {
        spec.push_back({means[i][0], means[i][1], sx[i], sy[i], 500});
    }
    return spec;
}

}  // namespace

PointCloud generate_communities(const std::vector<GaussianComponent>& spec,
                                std::uint64_t seed) {
    for (const GaussianComponent& c : spec) {
        if (!(c.sigma_x > 0.0) || !(c.sigma_y > 0.0)) {
            throw std::invalid_argument("component sigmas must be positive");
        }
        if (c.count <= 0) {
            throw std::invalid_argument("component counts must be positive");
        }
    }
    PointCloud cloud;
    cloud.generator_params = spec;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    for (std::size_t c = 0; c < spec.size(); ++c) {
        for (int i = 0; i < spec[c].count; ++i) {
            const double x = spec[c].mu_x + spec[c].sigma_x * unit(rng);
            const double y = spec[c].mu_y + spec[c].sigma_y * unit(rng);
            cloud.points.push_back({x, y});
            cloud.labels.push_back(static_cast<int>(c));
        }
    }
    return cloud;
}

const std::vector<GaussianComponent>& preset(const std::string& name) {
    static const double s1x[10] = {0.8, 0.5, 0.5, 0.8, 1, 1, 0.5, 0.5, 0.5, 1};
    static const double s1y[10] = {0.8, 0.5, 0.5, 0.5, 1, 0.5, 1, 1, 1, 0.5};
    static const double s2x[10] = {1.8, 1.5, 1, 1.8, 2, 1, 2.5, 1.5, 1, 3};
    static const double s2y[10] = {1.6, 1, 2.5, 3, 2, 1, 2, 2, 3, 1.5};
    static const std::vector<GaussianComponent> p005 = make_3comm(0.05);
    static const std::vector<GaussianComponent> p01 = make_3comm(0.1);
    static const std::vector<GaussianComponent> p05 = make_3comm(0.5);
    static const std::vector<GaussianComponent> s1 = make_10comm(s1x, s1y);
    static const std::vector<GaussianComponent> s2 = make_10comm(s2x, s2y);

    if (name == "3comm-0.05") return p005;
    if (name == "3comm-0.1") return p01;
    if (name == "3comm-0.5") return p05;
    if (name == "10comm-S1") return s1;
    if (name == "10comm-S2") return s2;

    std::string known;
    for (const std::string& p : preset_names()) {
        known += (known.empty() ? "" : ", ") + p;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (available: " + known + ")");
}

std::vector<std::string> preset_names() {
    return {"3comm-0.05", "3comm-0.1", "3comm-0.5", "10comm-S1", "10comm-S2"};
}

Eigen::MatrixXd pairwise_affinity(const PointCloud& cloud) {
    const int n = static_cast<int>(cloud.points.size());
    if (n < 2) {
        throw std::invalid_argument("affinity needs at least two points");
    }
    Eigen::MatrixXd dist(n, n);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        dist(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double dx = cloud.points[i][0] - cloud.points[j][0];
            const double dy = cloud.points[i][1] - cloud.points[j][1];
            const double d = std::sqrt(dx * dx + dy * dy);
            dist(i, j) = d;
            dist(j, i) = d;
            sum += d;
            sumsq += d * d;
        }
    }
    // Population variance over the n(n-1)/2 distinct-pair distances.
    const double pairs = 0.5 * n * (n - 1.0);
    const double mean = sum / pairs;
    const double variance = sumsq / pairs - mean * mean;
    if (!(variance > 0.0)) {
        throw numerical_error("degenerate point cloud: zero distance variance");
    }
    Eigen::MatrixXd a = (-dist.array().square() / variance).exp();
    a.diagonal().setZero();
    return a;
}

AffinityGraph epsilon_graph(const Eigen::MatrixXd& affinity, double percentile,
                            bool weighted) {
    if (affinity.rows() != affinity.cols()) {
        throw std::invalid_argument("affinity matrix must be square");
    }
    if (!(percentile > 0.0 && percentile < 100.0)) {
        throw std::invalid_argument("percentile must lie in (0, 100)");
    }
    const Eigen::Index n = affinity.rows();
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            values.push_back(affinity(i, j));
        }
    }
    if (values.empty()) {
        throw std::invalid_argument("affinity matrix has no off-diagonal pairs");
    }
    std::sort(values.begin(), values.end());
    // Nearest-rank percentile (1-based).
    const std::size_t rank =
        static_cast<std::size_t>(std::ceil(percentile / 100.0 * values.size()));
    const double threshold = values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];

    AffinityGraph out;
    out.weighted = weighted;
    out.construction = {"epsilon", percentile, 0, weighted};
    out.affinity = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (affinity(i, j) > threshold) {
                const double v = weighted ? affinity(i, j) : 1.0;
                out.affinity(i, j) = v;
                out.affinity(j, i) = v;
            }
        }
    }
    return out;
}

AffinityGraph knn_graph(const Eigen::MatrixXd& affinity, int k, bool weighted) {
    if (affinity.rows() != affinity.cols()) {
        throw std::invalid_argument("affinity matrix must be square");
    }
    const int n = static_cast<int>(affinity.rows());
    if (k < 1 || k >= n) {
        throw std::invalid_argument("k must satisfy 1 <= k < n");
    }
    AffinityGraph out;
    out.weighted = weighted;
    out.construction = {"knn", 0.0, k, weighted};
    out.affinity = Eigen::MatrixXd::Zero(n, n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        std::iota(order.begin(), order.end(), 0);
        // Highest affinity first; ties broken by lower node index.
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (affinity(i, a) != affinity(i, b)) {
                return affinity(i, a) > affinity(i, b);
            }
            return a < b;
        });
        int linked = 0;
        for (int j : order) {
            if (j == i || affinity(i, j) <= 0.0) {
                continue;
            }
            out.affinity(i, j) = weighted ? affinity(i, j) : 1.0;
            if (++linked == k) {
                break;
            }
        }
    }
    // Undirected graph via elementwise max.
    out.affinity = out.affinity.cwiseMax(out.affinity.transpose()).eval();
    return out;
}

CostGraph to_cost_graph(const AffinityGraph& graph) {
    CostGraph out;
    out.n = static_cast<int>(graph.affinity.rows());
    for (int i = 0; i < out.n; ++i) {
        for (int j = 0; j < out.n; ++j) {
            if (i != j && graph.affinity(i, j) != 0.0) {
                out.arcs.push_back({i, j, 1.0 / graph.affinity(i, j)});
            }
        }
    }
    return out;
}

PointCloud read_point_csv(std::istream& in) {
    PointCloud cloud;
    std::string line;
    int line_no = 0;
    bool labels_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::string xs, ys, lab;
        std::getline(ls, xs, ',');
        std::getline(ls, ys, ',');
        const bool has_label = static_cast<bool>(std::getline(ls, lab, ','));
        char* end = nullptr;
        const double x = std::strtod(xs.c_str(), &end);
        if (end == xs.c_str()) {
            if (line_no == 1) {
                continue;  // header line
            }
            throw std::runtime_error("point CSV, line " + std::to_string(line_no) +
                                     ": expected `x,y[,label]`");
        }
        end = nullptr;
        const double y = std::strtod(ys.c_str(), &end);
        if (end == ys.c_str()) {
            throw std::runtime_error("point CSV, line " + std::to_string(line_no) +
                                     ": bad y value '" + ys + "'");
        }
        cloud.points.push_back({x, y});
        if (has_label && !lab.empty()) {
            labels_seen = true;
            cloud.labels.push_back(std::atoi(lab.c_str()));
        } else {
            cloud.labels.push_back(0);
        }
    }
    if (!labels_seen) {
        cloud.labels.clear();
    }
    return cloud;
}

PointCloud read_point_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_point_csv(in);
}

void write_point_csv(std::ostream& out, const PointCloud& cloud) {
    const bool labels = !cloud.labels.empty();
    out << (labels ? "x,y,label\n" : "x,y\n");
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        out << fmt_double(cloud.points[i][0]) << "," << fmt_double(cloud.points[i][1]);
        if (labels) {
            out << "," << cloud.labels[i];
        }
        out << "\n";
    }
}

void write_point_csv_file(const std::string& path, const PointCloud& cloud) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    write_point_csv(out, cloud);
}

}  // namespace sof
