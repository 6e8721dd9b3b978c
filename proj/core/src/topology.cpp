#include "adgt/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "adgt/rng.hpp"

namespace adgt {

std::string to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Star: return "star";
    case TopologyKind::Cycle: return "cycle";
    case TopologyKind::Line: return "line";
    case TopologyKind::Ladder: return "ladder";
    case TopologyKind::Random: return "random";
  }
  throw std::logic_error("unknown TopologyKind");
}

TopologyKind topology_kind_from_string(const std::string& name) {
  if (name == "star") return TopologyKind::Star;
  if (name == "cycle") return TopologyKind::Cycle;
  if (name == "line") return TopologyKind::Line;
  if (name == "ladder") return TopologyKind::Ladder;
  if (name == "random") return TopologyKind::Random;
  throw std::invalid_argument("unknown topology kind: " + name);
}

std::vector<int> Topology::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& [i, j] : edges) {
    ++deg[static_cast<std::size_t>(i)];
    ++deg[static_cast<std::size_t>(j)];
  }
  return deg;
}

bool Topology::connected() const {
  if (n <= 0) return false;
  if (n == 1) return true;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [i, j] : edges) {
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const int u : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

namespace {

void sort_edges(Topology& topo) {
  for (auto& [i, j] : topo.edges)
    if (i > j) std::swap(i, j);
  std::sort(topo.edges.begin(), topo.edges.end());
}

Topology build_random(int n, double ratio, std::uint64_t seed) {
  const std::size_t total = static_cast<std::size_t>(n) * (n - 1) / 2;
  const auto m = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(total)));
  if (m < static_cast<std::size_t>(n - 1) || m > total)
    throw std::invalid_argument(
        "random topology: connectivity ratio gives " + std::to_string(m) +
        " edges, outside [n-1, n*(n-1)/2]");

  // Vertex pairs in lexicographic order so edge index -> pair is stable.
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(total);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  constexpr std::uint64_t kMaxAttempts = 10000;
  for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(seed, streams::kTopology + attempt);
    Topology topo;
    topo.n = n;
    topo.kind = TopologyKind::Random;
    for (const std::size_t idx : sample_without_replacement(total, m, rng))
      topo.edges.push_back(pairs[idx]);
    sort_edges(topo);
    if (topo.connected()) return topo;
  }
  throw std::runtime_error("random topology: no connected sample found");
}

}  // namespace

Topology build_topology(TopologyKind kind, int n,
                        std::optional<double> connectivity_ratio, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("topology requires n >= 2");
  Topology topo;
  topo.n = n;
  topo.kind = kind;
  switch (kind) {
    case TopologyKind::Star:
      for (int i = 1; i < n; ++i) topo.edges.emplace_back(0, i);
      break;
    case TopologyKind::Cycle:
      if (n < 3) throw std::invalid_argument("cycle requires n >= 3");
      for (int i = 0; i + 1 < n; ++i) topo.edges.emplace_back(i, i + 1);
      topo.edges.emplace_back(0, n - 1);
      break;
    case TopologyKind::Line:
      for (int i = 0; i + 1 < n; ++i) topo.edges.emplace_back(i, i + 1);
      break;
    case TopologyKind::Ladder: {
      if (n % 2 != 0) throw std::invalid_argument("ladder requires even n");
      const int half = n / 2;
      for (int i = 0; i + 1 < half; ++i) {
        topo.edges.emplace_back(i, i + 1);
        topo.edges.emplace_back(half + i, half + i + 1);
      }
      for (int i = 0; i < half; ++i) topo.edges.emplace_back(i, half + i);
      break;
    }
    case TopologyKind::Random: {
      if (!connectivity_ratio)
        throw std::invalid_argument("random topology requires a connectivity ratio");
      const double r = *connectivity_ratio;
      if (!(r > 0.0) || r > 1.0)
        throw std::invalid_argument("connectivity ratio must lie in (0, 1]");
      return build_random(n, r, seed);
    }
  }
  sort_edges(topo);
  return topo;
}

void write_edge_list(std::ostream& out, const Topology& topo) {
  out << topo.n << ' ' << topo.edges.size() << '\n';
  for (const auto& [i, j] : topo.edges) out << i << ' ' << j << '\n';
}

Topology read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("edge list: empty input");
  std::istringstream header(line);
  int n = 0;
  std::size_t m = 0;
  if (!(header >> n >> m)) throw std::runtime_error("edge list: malformed header line");
  if (n < 2) throw std::runtime_error("edge list: n must be >= 2");

  Topology topo;
  topo.n = n;
  topo.kind = TopologyKind::Random;
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < m; ++e) {
    if (!std::getline(in, line))
      throw std::runtime_error("edge list: expected " + std::to_string(m) +
                               " edges, got " + std::to_string(e));
    std::istringstream row(line);
    int i = 0, j = 0;
    if (!(row >> i >> j))
      throw std::runtime_error("edge list: malformed edge at line " + std::to_string(e + 2));
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw std::runtime_error("edge list: vertex out of range at line " +
                               std::to_string(e + 2));
    if (i == j)
      throw std::runtime_error("edge list: self loop at line " + std::to_string(e + 2));
    if (i > j) std::swap(i, j);
    if (!seen.emplace(i, j).second)
      throw std::runtime_error("edge list: duplicate edge at line " + std::to_string(e + 2));
    topo.edges.emplace_back(i, j);
  }
  sort_edges(topo);
  if (!topo.connected()) throw std::runtime_error("edge list: graph is not connected");
  return topo;
}

Topology load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return read_edge_list(in);
}

void save_edge_list(const std::string& path, const Topology& topo) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  write_edge_list(out, topo);
}

}  // namespace adgt
