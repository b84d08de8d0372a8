#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <span>
#include <vector>

#include "graph.hpp"

namespace signcover {

/// Unit-weight distances between terminals and one breadth-first path per
/// pair; paths[i][j] runs from terminals[i] to terminals[j].
struct DistanceTable {
  std::vector<VertexId> terminals;
  std::vector<std::vector<int>> distance;
  std::vector<std::vector<std::vector<EdgeId>>> paths;
};

/// Breadth-first search from each terminal; neighbors are scanned in
/// increasing vertex id (then edge id), so ties go toward smaller ids.
inline DistanceTable pairwise_distances(const SignedMultigraph& g, std::span<const VertexId> terminals) {
  DistanceTable table;
  table.terminals.assign(terminals.begin(), terminals.end());
  const std::size_t k = terminals.size();
  table.distance.assign(k, std::vector<int>(k, 0));
  table.paths.assign(k, std::vector<std::vector<EdgeId>>(k));
  const auto n = static_cast<std::size_t>(g.vertex_count());
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> dist(n, -1);
    std::vector<EdgeId> via(n, -1);
    std::queue<VertexId> queue;
    dist[terminals[i]] = 0;
    queue.push(terminals[i]);
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop();
      for (const Incidence& inc : g.incident(v)) {
        if (dist[inc.neighbor] != -1) continue;
        dist[inc.neighbor] = dist[v] + 1;
        via[inc.neighbor] = inc.edge;
        queue.push(inc.neighbor);
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (dist[terminals[j]] < 0) {
        throw Error(ErrorCode::InvalidArgument, "terminals " + std::to_string(terminals[i]) + " and " +
                                                    std::to_string(terminals[j]) + " are disconnected");
      }
      table.distance[i][j] = dist[terminals[j]];
      if (j <= i) continue;
      std::vector<EdgeId> back;
      for (VertexId v = terminals[j]; v != terminals[i]; v = g.edge(via[v]).other(v)) back.push_back(via[v]);
      table.paths[j][i] = back;
      std::reverse(back.begin(), back.end());
      table.paths[i][j] = std::move(back);
    }
  }
  return table;
}

/// Weight marking a pair that must not be matched.
inline constexpr std::int64_t kForbiddenPair = std::numeric_limits<std::int64_t>::max() / 4;
inline constexpr std::size_t kMaxMatchingSize = 20;

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (i, j) with i < j, sorted by i
  std::int64_t cost = 0;
};

/// Exact minimum-weight perfect matching by dynamic programming over
/// subsets: the lowest unmatched index is always paired next. Among optimal
/// pairings the lexicographically least is returned.
inline Matching min_weight_perfect_matching(const std::vector<std::vector<std::int64_t>>& weight) {
  const std::size_t k = weight.size();
  if (k % 2 != 0) throw Error(ErrorCode::InvalidArgument, "perfect matching needs an even vertex count");
  if (k > kMaxMatchingSize) {
    throw Error(ErrorCode::LimitExceeded, "exact matching supports at most " + std::to_string(kMaxMatchingSize) +
                                              " vertices, got " + std::to_string(k));
  }
  const std::size_t full = (std::size_t{1} << k) - 1;
  // best[mask] = cost of matching the vertices in mask; partner[mask] = mate
  // of the lowest vertex in mask.
  std::vector<std::int64_t> best(full + 1, kForbiddenPair);
  std::vector<std::int8_t> partner(full + 1, -1);
  best[0] = 0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::size_t rest = mask & ~(std::size_t{1} << low);
    for (std::size_t j = low + 1; j < k; ++j) {
      if (!(rest >> j & 1)) continue;
      const std::size_t remaining = rest & ~(std::size_t{1} << j);
      if (weight[low][j] >= kForbiddenPair || best[remaining] >= kForbiddenPair) continue;
      const std::int64_t cost = weight[low][j] + best[remaining];
      if (cost < best[mask]) {
        best[mask] = cost;
        partner[mask] = static_cast<std::int8_t>(j);
      }
    }
  }
  if (best[full] >= kForbiddenPair) throw Error(ErrorCode::InvalidArgument, "no admissible perfect matching");
  Matching out;
  out.cost = best[full];
  for (std::size_t mask = full; mask != 0;) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const auto j = static_cast<std::size_t>(partner[mask]);
    out.pairs.emplace_back(low, j);
    mask &= ~((std::size_t{1} << low) | (std::size_t{1} << j));
  }
  return out;
}

struct TJoinResult {
  std::vector<EdgeId> edges;  // sorted
  std::vector<VertexId> terminals;
  std::size_t size() const { return edges.size(); }
};

namespace detail {

/// Deletes circuits from an edge set until it is a forest. Each deletion
/// keeps every vertex's degree parity.
inline std::vector<EdgeId> strip_cycles(const SignedMultigraph& g, std::vector<EdgeId> edges) {
  while (true) {
    std::sort(edges.begin(), edges.end());
    std::vector<VertexId> parent(static_cast<std::size_t>(g.vertex_count()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](VertexId v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    EdgeId closing = -1;
    std::vector<EdgeId> forest;
    for (EdgeId e : edges) {
      const VertexId a = find(g.edge(e).u);
      const VertexId b = find(g.edge(e).v);
      if (a == b) {
        closing = e;
        break;
      }
      parent[a] = b;
      forest.push_back(e);
    }
    if (closing == -1) return edges;
    // Path between the closing edge's ends inside the forest built so far.
    const VertexId src = g.edge(closing).u;
    const VertexId dst = g.edge(closing).v;
    std::set<EdgeId> cycle{closing};
    if (src != dst) {
      std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(static_cast<std::size_t>(g.vertex_count()));
      for (EdgeId e : forest) {
        adj[g.edge(e).u].emplace_back(g.edge(e).v, e);
        adj[g.edge(e).v].emplace_back(g.edge(e).u, e);
      }
      std::vector<EdgeId> via(static_cast<std::size_t>(g.vertex_count()), -1);
      std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
      std::queue<VertexId> queue;
      queue.push(src);
      seen[src] = true;
      while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop();
        for (auto [w, e] : adj[v]) {
          if (seen[w]) continue;
          seen[w] = true;
          via[w] = e;
          queue.push(w);
        }
      }
      for (VertexId v = dst; v != src; v = g.edge(via[v]).other(v)) cycle.insert(via[v]);
    }
    std::erase_if(edges, [&](EdgeId e) { return cycle.count(e) > 0; });
  }
}

}  // namespace detail

/// Minimum-cardinality T-join: terminals matched by exact minimum-weight
/// perfect matching over breadth-first distances, matched paths combined by
/// symmetric difference, leftover circuits deleted.
inline TJoinResult minimum_tjoin(const SignedMultigraph& g, std::span<const VertexId> terminals) {
  TJoinResult out;
  out.terminals.assign(terminals.begin(), terminals.end());
  std::sort(out.terminals.begin(), out.terminals.end());
  if (std::adjacent_find(out.terminals.begin(), out.terminals.end()) != out.terminals.end()) {
    throw Error(ErrorCode::InvalidArgument, "terminal set has repeated vertices");
  }
  if (out.terminals.size() % 2 != 0) throw Error(ErrorCode::InvalidArgument, "terminal set has odd size");
  if (out.terminals.empty()) return out;

  const DistanceTable table = pairwise_distances(g, out.terminals);
  const std::size_t k = out.terminals.size();
  std::vector<std::vector<std::int64_t>> weight(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) weight[i][j] = table.distance[i][j];
  }
  const Matching matching = min_weight_perfect_matching(weight);
  std::vector<int> parity(static_cast<std::size_t>(g.edge_count()), 0);
  for (auto [i, j] : matching.pairs) {
    for (EdgeId e : table.paths[i][j]) parity[e] ^= 1;
  }
  std::vector<EdgeId> join;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (parity[e]) join.push_back(e);
  }
  out.edges = detail::strip_cycles(g, std::move(join));
  return out;
}

}  // namespace signcover
