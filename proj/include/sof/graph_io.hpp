#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sof/graph.hpp"

namespace sof {

/// Edge-list text format: one arc per line as `tail head cost` with 1-based
/// node indices, `#` starting a comment, and an optional `n <count>` header
/// line fixing the node count (otherwise it is inferred as the max index).
CostGraph read_edge_list(std::istream& in);
CostGraph read_edge_list_file(const std::string& path);

/// Writes the `n` header, the given `#` comment lines, then one arc per line.
/// Costs are printed with enough digits to round-trip exactly.
void write_edge_list(std::ostream& out, const CostGraph& graph,
                     const std::vector<std::string>& comments = {});
void write_edge_list_file(const std::string& path, const CostGraph& graph,
                          const std::vector<std::string>& comments = {});

/// Symmetric affinity matrices export as `i j affinity` triplets over the
/// upper triangle (i < j), 1-based.
void write_affinity_triplets(std::ostream& out, const Eigen::MatrixXd& affinity,
                             const std::vector<std::string>& comments = {});

}  // namespace sof
