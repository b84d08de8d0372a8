#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "graph.hpp"

namespace signcover {

/// Closed walk through distinct edges. vertices[i] is the tail of edges[i]
/// and the walk returns to vertices[0]; a loop is a circuit of length 1.
struct Circuit {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Open walk; vertices.size() == edges.size() + 1 unless the path is empty,
/// in which case vertices holds the single vertex it sits on.
struct Path {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
  bool trivial() const { return edges.empty(); }
  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
  friend bool operator==(const Path&, const Path&) = default;
};

enum class SignCircuitKind { BalancedCircuit, ShortBarbell, LongBarbell };

inline const char* to_string(SignCircuitKind kind) {
  switch (kind) {
    case SignCircuitKind::BalancedCircuit: return "balanced-circuit";
    case SignCircuitKind::ShortBarbell: return "short-barbell";
    case SignCircuitKind::LongBarbell: return "long-barbell";
  }
  return "?";
}

/// Balanced circuit (uses `circuit` only) or barbell (`circuit`, `path`,
/// `other`). For a short barbell `path` is the trivial path at the shared
/// vertex; for a long barbell it runs from `circuit` to `other`.
struct SignCircuit {
  SignCircuitKind kind = SignCircuitKind::BalancedCircuit;
  Circuit circuit;
  Path path;
  Circuit other;

  static SignCircuit balanced(Circuit c) {
    return {SignCircuitKind::BalancedCircuit, std::move(c), {}, {}};
  }

  static SignCircuit barbell(Circuit first, Path connector, Circuit second) {
    const auto kind = connector.trivial() ? SignCircuitKind::ShortBarbell : SignCircuitKind::LongBarbell;
    return {kind, std::move(first), std::move(connector), std::move(second)};
  }

  bool is_barbell() const { return kind != SignCircuitKind::BalancedCircuit; }

  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out = circuit.edges;
    if (is_barbell()) {
      out.insert(out.end(), path.edges.begin(), path.edges.end());
      out.insert(out.end(), other.edges.begin(), other.edges.end());
    }
    return out;
  }

  std::size_t length() const {
    return is_barbell() ? circuit.length() + path.length() + other.length() : circuit.length();
  }

  friend bool operator==(const SignCircuit&, const SignCircuit&) = default;
};

/// Multiset of sign-circuits together with the edges they are meant to cover.
struct Cover {
  std::vector<SignCircuit> members;
  std::vector<EdgeId> target;  // sorted, distinct

  friend bool operator==(const Cover&, const Cover&) = default;
};

inline std::int64_t cover_length(const Cover& cover) {
  std::int64_t total = 0;
  for (const SignCircuit& m : cover.members) total += static_cast<std::int64_t>(m.length());
  return total;
}

inline std::vector<EdgeId> all_edges(const SignedMultigraph& g) {
  std::vector<EdgeId> out(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) out[e] = e;
  return out;
}

inline std::vector<EdgeId> sorted_unique(std::vector<EdgeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

/// Orders an edge set into a circuit in canonical form: start at the smallest
/// vertex, leave toward the smaller neighbor (smaller edge id between
/// parallels). Returns nullopt unless the edges form a connected 2-regular
/// subgraph of g.
inline std::optional<Circuit> make_circuit(const SignedMultigraph& g, std::span<const EdgeId> edge_ids) {
  if (edge_ids.empty()) return std::nullopt;
  std::map<VertexId, std::vector<EdgeId>> touching;
  std::set<EdgeId> seen;
  for (EdgeId e : edge_ids) {
    if (e < 0 || e >= g.edge_count() || !seen.insert(e).second) return std::nullopt;
    const Edge& edge = g.edge(e);
    touching[edge.u].push_back(e);
    touching[edge.v].push_back(e);  // a loop lands twice on its vertex
  }
  for (const auto& [v, list] : touching) {
    if (list.size() != 2) return std::nullopt;
  }

  const VertexId start = touching.begin()->first;
  const auto& first_pair = touching.begin()->second;
  Circuit c;
  if (edge_ids.size() == 1) {
    if (!g.edge(first_pair[0]).is_loop()) return std::nullopt;
    c.vertices = {start};
    c.edges = {first_pair[0]};
    return c;
  }

  auto leave_key = [&](EdgeId e) { return std::pair{g.edge(e).other(start), e}; };
  EdgeId next = std::min(first_pair[0], first_pair[1],
                         [&](EdgeId a, EdgeId b) { return leave_key(a) < leave_key(b); });
  VertexId at = start;
  while (true) {
    c.vertices.push_back(at);
    c.edges.push_back(next);
    const VertexId to = g.edge(next).other(at);
    if (g.edge(next).is_loop()) return std::nullopt;  // a loop inside a longer walk
    if (to == start) break;
    const auto& pair = touching.at(to);
    const EdgeId following = pair[0] == next ? pair[1] : pair[0];
    at = to;
    next = following;
    if (c.edges.size() > edge_ids.size()) return std::nullopt;
  }
  if (c.edges.size() != edge_ids.size()) return std::nullopt;  // disconnected
  return c;
}

/// Orders an edge set into a simple path starting at `start`. An empty edge
/// set yields the trivial path at `start`.
inline std::optional<Path> make_path(const SignedMultigraph& g, std::span<const EdgeId> edge_ids,
                                     VertexId start) {
  Path p;
  p.vertices.push_back(start);
  std::vector<bool> used(edge_ids.size(), false);
  std::set<VertexId> visited{start};
  VertexId at = start;
  for (std::size_t step = 0; step < edge_ids.size(); ++step) {
    bool advanced = false;
    for (std::size_t i = 0; i < edge_ids.size(); ++i) {
      const EdgeId e = edge_ids[i];
      if (used[i] || e < 0 || e >= g.edge_count()) continue;
      const Edge& edge = g.edge(e);
      if (edge.is_loop() || (edge.u != at && edge.v != at)) continue;
      const VertexId to = edge.other(at);
      if (!visited.insert(to).second) return std::nullopt;
      used[i] = true;
      p.edges.push_back(e);
      p.vertices.push_back(to);
      at = to;
      advanced = true;
      break;
    }
    if (!advanced) return std::nullopt;
  }
  return p;
}

/// Reverse direction of a path.
inline Path reversed(Path p) {
  std::reverse(p.vertices.begin(), p.vertices.end());
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

}  // namespace signcover
