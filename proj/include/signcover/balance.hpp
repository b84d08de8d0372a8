#pragma once

#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "circuit.hpp"
#include "graph.hpp"
#include "structure.hpp"

namespace signcover {

/// Either a switching potential proving balance or an unbalanced circuit
/// proving the opposite.
struct BalanceCertificate {
  std::vector<Sign> potential;  // empty when a witness is present
  std::optional<Circuit> witness;

  bool balanced() const { return !witness.has_value(); }
};

inline Sign circuit_sign(const SignedMultigraph& g, const Circuit& c) {
  Sign s = Sign::Positive;
  for (EdgeId e : c.edges) s = s * g.sign(e);
  return s;
}

inline Sign edge_set_sign(const SignedMultigraph& g, std::span<const EdgeId> edges) {
  Sign s = Sign::Positive;
  for (EdgeId e : edges) s = s * g.sign(e);
  return s;
}

namespace detail {

/// Spanning forest over the allowed edges with tentative potentials.
struct SpanningForest {
  std::vector<int> component;
  std::vector<Sign> potential;
  std::vector<EdgeId> parent_edge;  // -1 at roots
  std::vector<int> depth;
  EdgeMask tree;
};

inline SpanningForest spanning_forest(const SignedMultigraph& g, const EdgeMask& allowed) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  SpanningForest f;
  f.component.assign(n, -1);
  f.potential.assign(n, Sign::Positive);
  f.parent_edge.assign(n, -1);
  f.depth.assign(n, 0);
  f.tree.assign(static_cast<std::size_t>(g.edge_count()), 0);
  int label = 0;
  std::queue<VertexId> queue;
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    if (f.component[root] != -1) continue;
    f.component[root] = label;
    queue.push(root);
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop();
      for (const Incidence& inc : g.incident(v)) {
        if (!allowed.empty() && !allowed[inc.edge]) continue;
        if (f.component[inc.neighbor] != -1) continue;
        f.component[inc.neighbor] = label;
        f.potential[inc.neighbor] = f.potential[v] * g.sign(inc.edge);
        f.parent_edge[inc.neighbor] = inc.edge;
        f.depth[inc.neighbor] = f.depth[v] + 1;
        f.tree[inc.edge] = 1;
        queue.push(inc.neighbor);
      }
    }
    ++label;
  }
  return f;
}

/// Tree path from u to v plus the closing edge.
inline Circuit fundamental_circuit(const SignedMultigraph& g, const SpanningForest& f, EdgeId closing) {
  VertexId a = g.edge(closing).u;
  VertexId b = g.edge(closing).v;
  std::vector<EdgeId> edges{closing};
  while (a != b) {
    if (f.depth[a] >= f.depth[b]) {
      edges.push_back(f.parent_edge[a]);
      a = g.edge(f.parent_edge[a]).other(a);
    } else {
      edges.push_back(f.parent_edge[b]);
      b = g.edge(f.parent_edge[b]).other(b);
    }
  }
  auto c = make_circuit(g, edges);
  if (!c) throw Error(ErrorCode::InvariantViolated, "fundamental circuit is not a circuit");
  return *std::move(c);
}

/// Smallest-id non-tree edge violating the potential in each component
/// (-1 where the component is balanced).
inline std::vector<EdgeId> failing_edges(const SignedMultigraph& g, const SpanningForest& f,
                                         const EdgeMask& allowed) {
  int count = 0;
  for (int c : f.component) count = std::max(count, c + 1);
  std::vector<EdgeId> fail(static_cast<std::size_t>(count), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if ((!allowed.empty() && !allowed[e]) || f.tree[e]) continue;
    const Edge& edge = g.edge(e);
    const bool ok = edge.sign == f.potential[edge.u] * f.potential[edge.v];
    // A loop has potential product +1, so a negative loop fails here.
    auto& slot = fail[f.component[edge.u]];
    if (!ok && slot == -1) slot = e;
  }
  return fail;
}

inline BalanceCertificate certify(const SignedMultigraph& g, const EdgeMask& allowed) {
  const SpanningForest f = spanning_forest(g, allowed);
  const auto fail = failing_edges(g, f, allowed);
  EdgeId first = -1;
  for (EdgeId e : fail) {
    if (e != -1 && (first == -1 || e < first)) first = e;
  }
  BalanceCertificate cert;
  if (first == -1) {
    // flip components where negative vertices are the strict majority
    std::vector<int> excess;
    for (std::size_t v = 0; v < f.component.size(); ++v) {
      const auto c = static_cast<std::size_t>(f.component[v]);
      if (excess.size() <= c) excess.resize(c + 1, 0);
      excess[c] += f.potential[v] == Sign::Negative ? 1 : -1;
    }
    cert.potential = f.potential;
    for (std::size_t v = 0; v < f.component.size(); ++v) {
      if (excess[static_cast<std::size_t>(f.component[v])] > 0) cert.potential[v] = flip(cert.potential[v]);
    }
  } else {
    cert.witness = fundamental_circuit(g, f, first);
  }
  return cert;
}

/// Per-component balance over the allowed edges, indexed by component label.
inline std::vector<bool> balanced_components(const SignedMultigraph& g, const EdgeMask& allowed,
                                             std::vector<int>* labels = nullptr) {
  const SpanningForest f = spanning_forest(g, allowed);
  const auto fail = failing_edges(g, f, allowed);
  if (labels) *labels = f.component;
  std::vector<bool> out(fail.size());
  for (std::size_t i = 0; i < fail.size(); ++i) out[i] = fail[i] == -1;
  return out;
}

}  // namespace detail

/// Potential propagation over a breadth-first spanning forest. The witness,
/// when present, is the fundamental circuit of the smallest failing
/// non-tree edge. Each component's potential has at most half its vertices
/// negative.
inline BalanceCertificate is_balanced(const SignedMultigraph& g) { return detail::certify(g, {}); }

/// Reverses the sign of every non-loop edge with exactly one end in the set.
inline SignedMultigraph apply_switching(const SignedMultigraph& g, std::span<const VertexId> vertex_set) {
  std::vector<bool> in(static_cast<std::size_t>(g.vertex_count()), false);
  for (VertexId v : vertex_set) in.at(static_cast<std::size_t>(v)) = true;
  std::vector<Sign> signs;
  signs.reserve(static_cast<std::size_t>(g.edge_count()));
  for (const Edge& e : g.edges()) signs.push_back(in[e.u] != in[e.v] ? flip(e.sign) : e.sign);
  return g.with_signs(signs);
}

/// Unbalanced circuit of g minus the forbidden edges, if one exists.
inline std::optional<Circuit> find_unbalanced_circuit(const SignedMultigraph& g,
                                                      std::span<const EdgeId> forbidden = {}) {
  EdgeMask allowed(static_cast<std::size_t>(g.edge_count()), 1);
  for (EdgeId e : forbidden) allowed.at(static_cast<std::size_t>(e)) = 0;
  return detail::certify(g, allowed).witness;
}

/// An edge e with g unbalanced and g - e balanced; exactly the edges that can
/// be the sole negative edge of a switching-equivalent signature.
inline std::optional<EdgeId> equivalent_to_single_negative_edge(const SignedMultigraph& g) {
  if (!is_connected(g)) throw Error(ErrorCode::NotConnected, "graph is disconnected");
  const BalanceCertificate cert = is_balanced(g);
  if (cert.balanced()) return std::nullopt;
  // Any such edge lies on every unbalanced circuit, in particular on the witness.
  std::vector<EdgeId> candidates = sorted_unique(cert.witness->edges);
  EdgeMask allowed(static_cast<std::size_t>(g.edge_count()), 1);
  for (EdgeId e : candidates) {
    allowed[e] = 0;
    const bool balanced = detail::certify(g, allowed).balanced();
    allowed[e] = 1;
    if (balanced) return e;
  }
  return std::nullopt;
}

enum class FlowObstruction { None, SingleNegativeEdge, BadBridge };

struct FlowAdmissibility {
  bool admissible = true;
  FlowObstruction obstruction = FlowObstruction::None;
  EdgeId edge = -1;  // the lone negative edge or the offending bridge

  explicit operator bool() const { return admissible; }
};

inline const char* to_string(FlowObstruction o) {
  switch (o) {
    case FlowObstruction::None: return "none";
    case FlowObstruction::SingleNegativeEdge: return "single-negative-edge";
    case FlowObstruction::BadBridge: return "bridge-with-balanced-side";
  }
  return "?";
}

/// Bouchet's characterization, applied to every component separately.
/// Edge-free components are admissible.
inline FlowAdmissibility is_flow_admissible(const SignedMultigraph& g) {
  for (const Subgraph& comp : connected_components(g)) {
    if (comp.edges.empty()) continue;
    const EdgeSubgraph sub = edge_subgraph(g, comp.edges, /*compact=*/true);
    const SignedMultigraph& h = sub.graph;
    if (auto e = equivalent_to_single_negative_edge(h)) {
      return {false, FlowObstruction::SingleNegativeEdge, sub.original_edge[*e]};
    }
    EdgeMask allowed(static_cast<std::size_t>(h.edge_count()), 1);
    for (EdgeId b : bridges(h)) {
      allowed[b] = 0;
      const auto balanced = detail::balanced_components(h, allowed);
      allowed[b] = 1;
      for (bool side_balanced : balanced) {
        if (side_balanced) return {false, FlowObstruction::BadBridge, sub.original_edge[b]};
      }
    }
  }
  return {};
}

}  // namespace signcover
