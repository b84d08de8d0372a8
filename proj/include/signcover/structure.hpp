#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "circuit.hpp"
#include "graph.hpp"

namespace signcover {

/// A vertex set together with the edges it carries.
struct Subgraph {
  std::vector<VertexId> vertices;  // sorted
  std::vector<EdgeId> edges;       // sorted
};

/// Component label per vertex over the edges with allowed[e] set (all edges
/// when `allowed` is empty). Labels are numbered by smallest vertex.
inline std::vector<int> component_labels(const SignedMultigraph& g, const EdgeMask& allowed = {}) {
  std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    if (label[root] != -1) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.incident(v)) {
        if (!allowed.empty() && !allowed[inc.edge]) continue;
        if (label[inc.neighbor] == -1) {
          label[inc.neighbor] = next;
          stack.push_back(inc.neighbor);
        }
      }
    }
    ++next;
  }
  return label;
}

inline std::vector<Subgraph> group_by_label(const SignedMultigraph& g, const std::vector<int>& label,
                                            const EdgeMask& allowed = {}) {
  const int count = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<Subgraph> parts(static_cast<std::size_t>(count));
  for (VertexId v = 0; v < g.vertex_count(); ++v) parts[label[v]].vertices.push_back(v);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!allowed.empty() && !allowed[e]) continue;
    parts[label[g.edge(e).u]].edges.push_back(e);
  }
  return parts;
}

inline std::vector<Subgraph> connected_components(const SignedMultigraph& g) {
  return group_by_label(g, component_labels(g));
}

inline bool is_connected(const SignedMultigraph& g) {
  const auto label = component_labels(g);
  return std::all_of(label.begin(), label.end(), [](int l) { return l == 0; });
}

/// Edges whose removal increases the number of components. Iterative
/// lowpoint search that skips the parent edge by id, so parallel edges are
/// never bridges and loops never are either.
inline std::vector<EdgeId> bridges(const SignedMultigraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeId> out;
  struct Frame {
    VertexId v;
    EdgeId via;
    std::size_t next;
  };
  std::vector<Frame> stack;
  int timer = 0;
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    if (disc[root] != -1) continue;
    disc[root] = low[root] = timer++;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto inc = g.incident(top.v);
      if (top.next < inc.size()) {
        const Incidence step = inc[top.next++];
        if (step.edge == top.via || step.neighbor == top.v) continue;
        if (disc[step.neighbor] == -1) {
          disc[step.neighbor] = low[step.neighbor] = timer++;
          stack.push_back({step.neighbor, step.edge, 0});
        } else {
          low[top.v] = std::min(low[top.v], disc[step.neighbor]);
        }
        continue;
      }
      const Frame done = top;
      stack.pop_back();
      if (!stack.empty()) {
        const VertexId parent = stack.back().v;
        low[parent] = std::min(low[parent], low[done.v]);
        if (low[done.v] > disc[parent]) out.push_back(done.via);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Components of g after deleting every bridge; isolated vertices of the
/// bridge-deleted graph are singleton blocks.
inline std::vector<Subgraph> bridgeless_blocks(const SignedMultigraph& g) {
  EdgeMask allowed(static_cast<std::size_t>(g.edge_count()), 1);
  for (EdgeId b : bridges(g)) allowed[b] = 0;
  return group_by_label(g, component_labels(g, allowed), allowed);
}

/// Edge-induced subgraph. With `compact` set only the endpoints of the
/// chosen edges are kept and renumbered in increasing order; otherwise the
/// vertex set of g is kept.
struct EdgeSubgraph {
  SignedMultigraph graph;
  std::vector<EdgeId> original_edge;      // sub edge -> g edge
  std::vector<VertexId> original_vertex;  // sub vertex -> g vertex
  std::vector<VertexId> local_vertex;     // g vertex -> sub vertex or -1
};

inline EdgeSubgraph edge_subgraph(const SignedMultigraph& g, std::span<const EdgeId> edge_ids,
                                  bool compact = false) {
  EdgeSubgraph sub;
  const auto ids = sorted_unique(std::vector<EdgeId>(edge_ids.begin(), edge_ids.end()));
  sub.local_vertex.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  if (compact) {
    std::vector<VertexId> used;
    for (EdgeId e : ids) {
      used.push_back(g.edge(e).u);
      used.push_back(g.edge(e).v);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    sub.original_vertex = used;
  } else {
    sub.original_vertex.resize(static_cast<std::size_t>(g.vertex_count()));
    std::iota(sub.original_vertex.begin(), sub.original_vertex.end(), 0);
  }
  for (std::size_t i = 0; i < sub.original_vertex.size(); ++i) {
    sub.local_vertex[sub.original_vertex[i]] = static_cast<VertexId>(i);
  }
  std::vector<Edge> edges;
  for (EdgeId e : ids) {
    const Edge& src = g.edge(e);
    edges.push_back({sub.local_vertex[src.u], sub.local_vertex[src.v], src.sign});
    sub.original_edge.push_back(e);
  }
  sub.graph = SignedMultigraph(static_cast<int>(sub.original_vertex.size()), std::move(edges));
  return sub;
}

/// Result of contracting vertex-disjoint circuits to single vertices.
struct Contraction {
  SignedMultigraph graph;
  std::vector<VertexId> vertex_of;         // g vertex -> contracted vertex
  std::vector<VertexId> circuit_vertex;    // circuit index -> contracted vertex
  std::vector<EdgeId> original_edge;       // contracted edge -> g edge
  std::vector<EdgeId> contracted_edge;     // g edge -> contracted edge or -1
};

/// Circuit i becomes contracted vertex i; vertices outside every circuit
/// follow in increasing order. Circuit edges disappear; every other edge keeps
/// its sign and is remembered by original id (chords become loops).
inline Contraction contract_circuits(const SignedMultigraph& g, std::span<const Circuit> circuits) {
  Contraction out;
  out.vertex_of.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  out.contracted_edge.assign(static_cast<std::size_t>(g.edge_count()), -1);
  std::vector<bool> internal(static_cast<std::size_t>(g.edge_count()), false);
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    for (VertexId v : circuits[i].vertices) {
      if (out.vertex_of[v] != -1) {
        throw Error(ErrorCode::InvalidArgument, "circuits to contract overlap at vertex " + std::to_string(v));
      }
      out.vertex_of[v] = static_cast<VertexId>(i);
    }
    for (EdgeId e : circuits[i].edges) internal[e] = true;
    out.circuit_vertex.push_back(static_cast<VertexId>(i));
  }
  auto next = static_cast<VertexId>(circuits.size());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (out.vertex_of[v] == -1) out.vertex_of[v] = next++;
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (internal[e]) continue;
    const Edge& src = g.edge(e);
    out.contracted_edge[e] = static_cast<EdgeId>(edges.size());
    out.original_edge.push_back(e);
    edges.push_back({out.vertex_of[src.u], out.vertex_of[src.v], src.sign});
  }
  out.graph = SignedMultigraph(next, std::move(edges));
  return out;
}

}  // namespace signcover
