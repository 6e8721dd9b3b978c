#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adgt {

enum class TopologyKind { Star, Cycle, Line, Ladder, Random };

std::string to_string(TopologyKind kind);
TopologyKind topology_kind_from_string(const std::string& name);

// Simple undirected connected graph on vertices 0..n-1.
// Edges are stored with i < j, sorted lexicographically, no duplicates.
struct Topology {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  TopologyKind kind = TopologyKind::Random;

  // Neighbor count per vertex (self excluded).
  std::vector<int> degrees() const;
  bool connected() const;
};

// Deterministic builders.  Star puts vertex 0 at the center; Cycle and Line
// connect consecutive indices; Ladder (n even) is two rails 0..n/2-1 and
// n/2..n-1 joined by rungs.  Random draws round(ratio * n*(n-1)/2) edges
// uniformly without replacement from all vertex pairs and resamples with an
// incremented sub-seed until the graph is connected; `seed` pins the result.
Topology build_topology(TopologyKind kind, int n,
                        std::optional<double> connectivity_ratio = std::nullopt,
                        std::uint64_t seed = 0);

// Text format: first line "n m", then one "i j" line per edge.
void write_edge_list(std::ostream& out, const Topology& topo);

// Validates vertex ranges, duplicate edges, self loops, edge count and
// connectivity; throws std::runtime_error with a line reference otherwise.
// The format does not carry the generator kind, so loaded graphs report
// TopologyKind::Random.
Topology read_edge_list(std::istream& in);

Topology load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Topology& topo);

}  // namespace adgt
