#include "sof/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sof/engine.hpp"
#include "sof/errors.hpp"

namespace sof {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Average fractional ranks (1-based); `ties` reports whether any value
// repeats.
Eigen::VectorXd average_ranks(const Eigen::VectorXd& x, bool* ties) {
    const Eigen::Index n = x.size();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return x(a) < x(b); });
    Eigen::VectorXd ranks(n);
    *ties = false;
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i;
        while (j + 1 < n && x(order[j + 1]) == x(order[i])) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (Eigen::Index k = i; k <= j; ++k) {
            ranks(order[k]) = avg;
        }
        if (j > i) {
            *ties = true;
        }
        i = j + 1;
    }
    return ranks;
}

struct Column {
    const char* name;
    const std::optional<Eigen::VectorXd>* values;
};

std::vector<Column> report_columns(const EvalReport& r) {
    return {
        {"true_density", &r.truth},     {"sof", &r.sof},
        {"strength", &r.strength},      {"cc_unweighted", &r.cc_unweighted},
        {"cc_weighted", &r.cc_weighted}, {"degree", &r.degree},
    };
}

}  // namespace

Eigen::VectorXd true_density(const PointCloud& cloud) {
    if (cloud.generator_params.empty()) {
        throw std::invalid_argument(
            "true density needs the cloud's generator parameters");
    }
    const int n = static_cast<int>(cloud.points.size());
    const double weight = 1.0 / static_cast<double>(cloud.generator_params.size());
    Eigen::VectorXd dens = Eigen::VectorXd::Zero(n);
    for (const GaussianComponent& c : cloud.generator_params) {
        const double norm = 1.0 / (2.0 * std::numbers::pi * c.sigma_x * c.sigma_y);
        for (int i = 0; i < n; ++i) {
            const double zx = (cloud.points[i][0] - c.mu_x) / c.sigma_x;
            const double zy = (cloud.points[i][1] - c.mu_y) / c.sigma_y;
            dens(i) += weight * norm * std::exp(-0.5 * (zx * zx + zy * zy));
        }
    }
    return dens;
}

double spearman(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("spearman: length mismatch");
    }
    const Eigen::Index n = x.size();
    if (n < 2) {
        throw std::invalid_argument("spearman: need at least two observations");
    }
    if (x.minCoeff() == x.maxCoeff() || y.minCoeff() == y.maxCoeff()) {
        throw numerical_error("spearman: constant input has no rank correlation");
    }
    bool ties_x = false, ties_y = false;
    const Eigen::VectorXd rx = average_ranks(x, &ties_x);
    const Eigen::VectorXd ry = average_ranks(y, &ties_y);
    if (!ties_x && !ties_y) {
        // Tie-free ranks are permutations of 1..n: the classic formula is
        // exact (integer arithmetic up to ~2^53).
        double d2 = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = rx(i) - ry(i);
            d2 += d * d;
        }
        const double nn = static_cast<double>(n);
        return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
    }
    const Eigen::VectorXd dx = (rx.array() - rx.mean()).matrix();
    const Eigen::VectorXd dy = (ry.array() - ry.mean()).matrix();
    const double r = dx.dot(dy) / std::sqrt(dx.squaredNorm() * dy.squaredNorm());
    return std::clamp(r, -1.0, 1.0);
}

const std::vector<double>& default_theta_grid() {
    static const std::vector<double> grid = {0.5, 1, 2, 5, 10, 20, 50, 100};
    return grid;
}

ThetaGridResult theta_grid_search(const CostGraph& graph, const Eigen::VectorXd& truth,
                                  const std::vector<double>& grid) {
    if (grid.empty()) {
        throw std::invalid_argument("theta grid must be nonempty");
    }
    ThetaGridResult result;
    bool found = false;
    double best_corr = 0.0;
    for (double theta : grid) {
        ThetaGridRow row{theta, 0.0, false, ""};
        try {
            const SofResult sof = sof_density(graph, theta);
            row.correlation = spearman(sof.density, truth);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        if (!row.failed &&
            (!found || row.correlation > best_corr ||
             (row.correlation == best_corr && theta < result.best_theta))) {
            found = true;
            best_corr = row.correlation;
            result.best_theta = theta;
        }
        result.table.push_back(std::move(row));
    }
    if (!found) {
        throw numerical_error("theta grid search failed at every grid value");
    }
    return result;
}

std::string report_to_csv(const EvalReport& report) {
    std::ostringstream out;
    const bool coords = !report.coords.empty();
    out << "node";
    if (coords) {
        out << ",x,y";
    }
    for (const Column& c : report_columns(report)) {
        if (c.values->has_value()) {
            out << "," << c.name;
        }
    }
    out << "\n";
    for (int i = 0; i < report.n; ++i) {
        out << i + 1;
        if (coords) {
            out << "," << fmt_double(report.coords[i][0]) << ","
                << fmt_double(report.coords[i][1]);
        }
        for (const Column& c : report_columns(report)) {
            if (c.values->has_value()) {
                out << "," << fmt_double((**c.values)(i));
            }
        }
        out << "\n";
    }
    return out.str();
}

std::map<std::string, std::vector<double>> parse_report_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty CSV");
    }
    std::vector<std::string> names;
    {
        std::istringstream hs(line);
        std::string name;
        while (std::getline(hs, name, ',')) {
            names.push_back(name);
        }
    }
    std::map<std::string, std::vector<double>> columns;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::string cell;
        std::size_t idx = 0;
        while (std::getline(ls, cell, ',')) {
            if (idx >= names.size()) {
                throw std::runtime_error("CSV row wider than header");
            }
            columns[names[idx]].push_back(std::strtod(cell.c_str(), nullptr));
            ++idx;
        }
    }
    return columns;
}

nlohmann::json report_to_json(const EvalReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    if (!report.coords.empty()) {
        nlohmann::json xs = nlohmann::json::array(), ys = nlohmann::json::array();
        for (const auto& p : report.coords) {
            xs.push_back(p[0]);
            ys.push_back(p[1]);
        }
        j["x"] = std::move(xs);
        j["y"] = std::move(ys);
    }
    for (const Column& c : report_columns(report)) {
        if (c.values->has_value()) {
            nlohmann::json col = nlohmann::json::array();
            for (Eigen::Index i = 0; i < (**c.values).size(); ++i) {
                col.push_back((**c.values)(i));
            }
            j[c.name] = std::move(col);
        }
    }
    if (!report.spearman_by_measure.empty()) {
        j["spearman"] = report.spearman_by_measure;
    }
    if (!report.config.is_null()) {
        j["config"] = report.config;
    }
    return j;
}

std::string report_to_svg(const EvalReport& report, const std::string& measure) {
    const Eigen::VectorXd* values = nullptr;
    for (const Column& c : report_columns(report)) {
        if (measure == c.name && c.values->has_value()) {
            values = &**c.values;
        }
    }
    if (values == nullptr) {
        throw std::invalid_argument("report has no measure '" + measure + "'");
    }
    if (report.coords.empty()) {
        throw std::invalid_argument("svg scatter needs point coordinates");
    }

    constexpr double view = 800.0, margin = 40.0, radius = 3.0;
    double xmin = report.coords[0][0], xmax = xmin;
    double ymin = report.coords[0][1], ymax = ymin;
    for (const auto& p : report.coords) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
    }
    const double xspan = xmax > xmin ? xmax - xmin : 1.0;
    const double yspan = ymax > ymin ? ymax - ymin : 1.0;
    const double vmin = values->minCoeff(), vmax = values->maxCoeff();

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    out << "<title>" << measure << "</title>\n";
    out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    for (int i = 0; i < report.n; ++i) {
        const double px =
            margin + (report.coords[i][0] - xmin) / xspan * (view - 2 * margin);
        // SVG y axis points down.
        const double py =
            view - margin - (report.coords[i][1] - ymin) / yspan * (view - 2 * margin);
        // Linear dark-blue -> dark-red map; constant measures sit mid-scale.
        const double t = vmax > vmin ? ((*values)(i) - vmin) / (vmax - vmin) : 0.5;
        const int red = static_cast<int>(std::lround(139.0 * t));
        const int blue = static_cast<int>(std::lround(139.0 * (1.0 - t)));
        char color[8];
        std::snprintf(color, sizeof(color), "#%02x00%02x", red, blue);
        char pt[160];
        std::snprintf(pt, sizeof(pt),
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.1f\" fill=\"%s\"/>\n", px, py,
                      radius, color);
        out << pt;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace sof
