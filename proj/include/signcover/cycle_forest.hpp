#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "balance.hpp"
#include "circuit.hpp"
#include "graph.hpp"
#include "structure.hpp"

namespace signcover {

/// Vertex-disjoint circuits (blocks) tied together by bridge edges whose
/// contraction of the blocks leaves a forest.
struct CycleForest {
  std::vector<Circuit> blocks;
  std::vector<EdgeId> bridges;  // sorted

  std::vector<EdgeId> block_edges() const {
    std::vector<EdgeId> out;
    for (const auto& c : blocks) out.insert(out.end(), c.edges.begin(), c.edges.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out = block_edges();
    out.insert(out.end(), bridges.begin(), bridges.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t edge_count() const {
    std::size_t total = bridges.size();
    for (const auto& c : blocks) total += c.length();
    return total;
  }
};

/// Decomposes an edge set whose bridgeless-blocks are circuits.
inline CycleForest make_cycle_forest(const SignedMultigraph& g, std::span<const EdgeId> edge_set) {
  const EdgeSubgraph sub = edge_subgraph(g, edge_set);
  CycleForest forest;
  for (EdgeId b : bridges(sub.graph)) forest.bridges.push_back(sub.original_edge[b]);
  std::sort(forest.bridges.begin(), forest.bridges.end());
  for (const Subgraph& block : bridgeless_blocks(sub.graph)) {
    if (block.edges.empty()) continue;
    std::vector<EdgeId> edges;
    for (EdgeId e : block.edges) edges.push_back(sub.original_edge[e]);
    auto c = make_circuit(g, edges);
    if (!c) {
      throw Error(ErrorCode::PreconditionViolated,
                  "bridgeless-block at vertex " + std::to_string(block.vertices.front()) + " is not a circuit");
    }
    forest.blocks.push_back(*std::move(c));
  }
  return forest;
}

/// Blocks and junction vertices as nodes, bridges as tree edges.
class BlockTree {
 public:
  BlockTree(const SignedMultigraph& g, const CycleForest& forest) : g_(&g), forest_(&forest) {
    node_of_.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    position_.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < forest.blocks.size(); ++i) {
      const Circuit& c = forest.blocks[i];
      for (std::size_t p = 0; p < c.vertices.size(); ++p) {
        const VertexId v = c.vertices[p];
        if (node_of_[v] != -1) {
          throw Error(ErrorCode::PreconditionViolated, "blocks share vertex " + std::to_string(v));
        }
        node_of_[v] = static_cast<int>(i);
        position_[v] = static_cast<int>(p);
      }
    }
    int next = static_cast<int>(forest.blocks.size());
    for (EdgeId b : forest.bridges) {
      for (VertexId v : {g.edge(b).u, g.edge(b).v}) {
        if (node_of_[v] == -1) node_of_[v] = next++;
      }
    }
    adjacency_.resize(static_cast<std::size_t>(next));
    std::vector<int> parent(static_cast<std::size_t>(next));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (EdgeId b : forest.bridges) {
      const int x = node_of_[g.edge(b).u];
      const int y = node_of_[g.edge(b).v];
      if (find(x) == find(y)) {
        throw Error(ErrorCode::PreconditionViolated, "bridge " + std::to_string(b) + " closes a cycle of blocks");
      }
      parent[find(x)] = find(y);
      adjacency_[x].push_back(b);
      adjacency_[y].push_back(b);
    }
    component_.resize(static_cast<std::size_t>(next));
    std::vector<int> label(static_cast<std::size_t>(next), -1);
    int count = 0;
    for (int x = 0; x < next; ++x) {
      if (label[find(x)] == -1) label[find(x)] = count++;
      component_[x] = label[find(x)];
    }
    component_count_ = count;
  }

  std::size_t node_count() const { return adjacency_.size(); }
  int component_of_block(std::size_t block) const { return component_[block]; }
  int component_count() const { return component_count_; }
  int node_of(VertexId v) const { return node_of_[v]; }

  /// Bridges incident to a block (or junction) node.
  std::span<const EdgeId> bridges_at(int node) const { return adjacency_[node]; }

  /// Path from block a to block b: the bridges between them plus, through
  /// every intermediate block, the shorter arc between entry and exit
  /// (equal arcs: smaller sorted edge ids). nullopt if not in one tree.
  std::optional<Path> connector(std::size_t a, std::size_t b) const {
    const int from = static_cast<int>(a);
    const int to = static_cast<int>(b);
    if (from == to || component_[from] != component_[to]) return std::nullopt;
    std::vector<EdgeId> via(adjacency_.size(), -1);
    std::vector<bool> seen(adjacency_.size(), false);
    std::queue<int> queue;
    queue.push(from);
    seen[from] = true;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop();
      for (EdgeId e : adjacency_[x]) {
        const int y = other_node(e, x);
        if (seen[y]) continue;
        seen[y] = true;
        via[y] = e;
        queue.push(y);
      }
    }
    std::vector<EdgeId> route;
    for (int x = to; x != from; x = other_node(via[x], x)) route.push_back(via[x]);
    std::reverse(route.begin(), route.end());

    const SignedMultigraph& g = *g_;
    auto end_in = [&](EdgeId e, int node) { return node_of_[g.edge(e).u] == node ? g.edge(e).u : g.edge(e).v; };
    Path p;
    int node = from;
    VertexId at = end_in(route.front(), from);
    p.vertices.push_back(at);
    for (std::size_t i = 0; i < route.size(); ++i) {
      const EdgeId bridge = route[i];
      at = g.edge(bridge).other(at);
      node = node_of_[at];
      p.edges.push_back(bridge);
      p.vertices.push_back(at);
      if (i + 1 == route.size()) break;
      const VertexId exit = end_in(route[i + 1], node);
      if (node < static_cast<int>(forest_->blocks.size()) && exit != at) {
        append_arc(forest_->blocks[node], at, exit, p);
        at = exit;
      }
    }
    return p;
  }

 private:
  int other_node(EdgeId bridge, int node) const {
    const int x = node_of_[g_->edge(bridge).u];
    return x == node ? node_of_[g_->edge(bridge).v] : x;
  }

  void append_arc(const Circuit& c, VertexId from, VertexId to, Path& p) const {
    const int k = static_cast<int>(c.length());
    const int i = position_[from];
    const int j = position_[to];
    std::vector<EdgeId> fwd, bwd;
    std::vector<VertexId> fwd_v, bwd_v;
    for (int s = i; s != j; s = (s + 1) % k) {
      fwd.push_back(c.edges[s]);
      fwd_v.push_back(c.vertices[(s + 1) % k]);
    }
    for (int s = i; s != j; s = (s + k - 1) % k) {
      bwd.push_back(c.edges[(s + k - 1) % k]);
      bwd_v.push_back(c.vertices[(s + k - 1) % k]);
    }
    bool forward = fwd.size() < bwd.size();
    if (fwd.size() == bwd.size()) {
      auto a = fwd, b = bwd;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      forward = a < b;
    }
    const auto& edges = forward ? fwd : bwd;
    const auto& verts = forward ? fwd_v : bwd_v;
    p.edges.insert(p.edges.end(), edges.begin(), edges.end());
    p.vertices.insert(p.vertices.end(), verts.begin(), verts.end());
  }

  const SignedMultigraph* g_;
  const CycleForest* forest_;
  std::vector<int> node_of_;
  std::vector<int> position_;
  std::vector<std::vector<EdgeId>> adjacency_;
  std::vector<int> component_;
  int component_count_ = 0;
};

/// Circuits of a 2-factor plus a breadth-first spanning tree of the graph
/// obtained by contracting them (rooted at the first circuit, incident
/// edges scanned by increasing id), lifted back to g.
inline CycleForest build_cycle_tree(const SignedMultigraph& g, std::span<const Circuit> circuits) {
  const Contraction con = contract_circuits(g, circuits);
  const SignedMultigraph& star = con.graph;
  CycleForest forest;
  forest.blocks.assign(circuits.begin(), circuits.end());
  if (star.vertex_count() == 0) return forest;
  std::vector<bool> seen(static_cast<std::size_t>(star.vertex_count()), false);
  std::queue<VertexId> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop();
    std::vector<Incidence> inc(star.incident(v).begin(), star.incident(v).end());
    std::sort(inc.begin(), inc.end(), [](const Incidence& a, const Incidence& b) { return a.edge < b.edge; });
    for (const Incidence& step : inc) {
      if (seen[step.neighbor]) continue;
      seen[step.neighbor] = true;
      forest.bridges.push_back(con.original_edge[step.edge]);
      queue.push(step.neighbor);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorCode::NotConnected, "contracted graph is disconnected");
  }
  std::sort(forest.bridges.begin(), forest.bridges.end());
  return forest;
}

struct StrippedForest {
  CycleForest kept;
  std::vector<Circuit> stripped;       // balanced circuits cut away
  std::vector<EdgeId> removed_bridges;  // bad bridges and bridges inside cut parts
};

/// Repeatedly deletes a bridge (smallest id first) one of whose sides is
/// balanced, together with that side, until no such bridge is left.
inline StrippedForest strip_balanced_bridge_components(const SignedMultigraph& g, const CycleForest& h) {
  StrippedForest out;
  out.kept = h;
  while (true) {
    const std::vector<EdgeId> current = out.kept.edges();
    EdgeMask allowed(static_cast<std::size_t>(g.edge_count()), 0);
    for (EdgeId e : current) allowed[e] = 1;
    bool changed = false;
    for (EdgeId b : out.kept.bridges) {
      allowed[b] = 0;
      std::vector<int> label;
      const auto balanced = detail::balanced_components(g, allowed, &label);
      allowed[b] = 1;
      const int side_u = label[g.edge(b).u];
      const int side_v = label[g.edge(b).v];
      if (balanced[side_u] && balanced[side_v]) {
        throw Error(ErrorCode::PreconditionViolated, "cycle-tree has no unbalanced circuit left");
      }
      if (!balanced[side_u] && !balanced[side_v]) continue;
      const int cut = balanced[side_u] ? side_u : side_v;
      CycleForest next;
      for (const Circuit& c : out.kept.blocks) {
        if (label[c.vertices.front()] == cut) {
          out.stripped.push_back(c);
        } else {
          next.blocks.push_back(c);
        }
      }
      for (EdgeId e : out.kept.bridges) {
        if (e == b || label[g.edge(e).u] == cut) {
          out.removed_bridges.push_back(e);
        } else {
          next.bridges.push_back(e);
        }
      }
      out.kept = std::move(next);
      changed = true;
      break;
    }
    if (!changed) break;
  }
  std::sort(out.removed_bridges.begin(), out.removed_bridges.end());
  return out;
}

}  // namespace signcover
