#include "sof/graph_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sof {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
    throw std::runtime_error("edge list, line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

CostGraph read_edge_list(std::istream& in) {
    CostGraph graph;
    bool have_header = false;
    int max_index = 0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) {
            continue;  // blank or comment-only line
        }
        if (first == "n") {
            long long count = 0;
            if (!(ls >> count) || count < 0) {
                parse_fail(line_no, "malformed node-count header");
            }
            if (have_header) {
                parse_fail(line_no, "repeated node-count header");
            }
            have_header = true;
            graph.n = static_cast<int>(count);
            continue;
        }
        long long tail = 0, head = 0;
        double cost = 0.0;
        std::istringstream as(line);
        if (!(as >> tail >> head >> cost)) {
            parse_fail(line_no, "expected `tail head cost`");
        }
        std::string extra;
        if (as >> extra) {
            parse_fail(line_no, "trailing token '" + extra + "'");
        }
        if (tail < 1 || head < 1) {
            parse_fail(line_no, "node indices are 1-based");
        }
        if (have_header && (tail > graph.n || head > graph.n)) {
            parse_fail(line_no, "node index exceeds declared count " + std::to_string(graph.n));
        }
        max_index = std::max(max_index, static_cast<int>(std::max(tail, head)));
        graph.arcs.push_back({static_cast<int>(tail - 1), static_cast<int>(head - 1), cost});
    }
    if (!have_header) {
        graph.n = max_index;
    }
    ValidationReport report = validate(graph);
    if (!report.ok()) {
        std::string msg = "invalid edge list:";
        for (const Violation& v : report.violations) {
            msg += "\n  " + v.message;
        }
        throw std::runtime_error(msg);
    }
    return graph;
}

CostGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const CostGraph& graph,
                     const std::vector<std::string>& comments) {
    for (const std::string& c : comments) {
        out << "# " << c << "\n";
    }
    out << "n " << graph.n << "\n";
    for (const Arc& a : graph.arcs) {
        out << a.tail + 1 << " " << a.head + 1 << " " << fmt_double(a.cost) << "\n";
    }
}

void write_edge_list_file(const std::string& path, const CostGraph& graph,
                          const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    write_edge_list(out, graph, comments);
}

void write_affinity_triplets(std::ostream& out, const Eigen::MatrixXd& affinity,
                             const std::vector<std::string>& comments) {
    for (const std::string& c : comments) {
        out << "# " << c << "\n";
    }
    out << "n " << affinity.rows() << "\n";
    for (Eigen::Index i = 0; i < affinity.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < affinity.cols(); ++j) {
            if (affinity(i, j) != 0.0) {
                out << i + 1 << " " << j + 1 << " " << fmt_double(affinity(i, j)) << "\n";
            }
        }
    }
}

}  // namespace sof
