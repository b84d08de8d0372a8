#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"

namespace signcover {

using VertexId = int;
using EdgeId = int;

/// Per-edge flag indexed by edge id; an empty mask means "every edge".
using EdgeMask = std::vector<std::uint8_t>;

enum class Sign : std::int8_t { Positive = 1, Negative = -1 };

constexpr Sign operator*(Sign a, Sign b) {
  return a == b ? Sign::Positive : Sign::Negative;
}

constexpr Sign flip(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Sign sign = Sign::Positive;

  bool is_loop() const { return u == v; }
  bool negative() const { return sign == Sign::Negative; }
  VertexId other(VertexId x) const { return x == u ? v : u; }
};

/// One entry of a vertex's incidence list. A loop appears once in the list
/// of its vertex, with neighbor equal to the vertex itself.
struct Incidence {
  EdgeId edge;
  VertexId neighbor;
};

/// Undirected signed multigraph. Loops and parallel edges are allowed and
/// edge ids are the dense range [0, edge_count()) in insertion order.
/// Incidence lists are sorted by (neighbor, edge id), which every traversal
/// in the library relies on for deterministic tie-breaking.
class SignedMultigraph {
 public:
  SignedMultigraph() = default;

  SignedMultigraph(int vertex_count, std::vector<Edge> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 0) {
      throw Error(ErrorCode::InvalidArgument, "negative vertex count");
    }
    incidence_.resize(static_cast<std::size_t>(vertex_count_));
    for (std::size_t id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_) {
        throw Error(ErrorCode::InvalidArgument,
                    "edge " + std::to_string(id) + " has an endpoint out of range");
      }
      if (e.sign != Sign::Positive && e.sign != Sign::Negative) {
        throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(id) + " has a bad sign");
      }
      const auto eid = static_cast<EdgeId>(id);
      incidence_[e.u].push_back({eid, e.v});
      if (!e.is_loop()) incidence_[e.v].push_back({eid, e.u});
    }
    for (auto& list : incidence_) {
      std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) {
        return std::tie(a.neighbor, a.edge) < std::tie(b.neighbor, b.edge);
      });
    }
  }

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId id) const { return edges_.at(static_cast<std::size_t>(id)); }
  std::span<const Edge> edges() const { return edges_; }
  Sign sign(EdgeId id) const { return edge(id).sign; }

  std::span<const Incidence> incident(VertexId v) const {
    return incidence_.at(static_cast<std::size_t>(v));
  }

  /// Loops count twice.
  int degree(VertexId v) const {
    int d = 0;
    for (const Incidence& inc : incident(v)) d += inc.neighbor == v ? 2 : 1;
    return d;
  }

  bool is_cubic() const {
    for (VertexId v = 0; v < vertex_count_; ++v) {
      if (degree(v) != 3) return false;
    }
    return true;
  }

  bool has_loops() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
  }

  std::vector<EdgeId> negative_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < edge_count(); ++id) {
      if (edges_[id].negative()) out.push_back(id);
    }
    return out;
  }

  /// Same structure with a replacement signature.
  SignedMultigraph with_signs(std::span<const Sign> signs) const {
    if (signs.size() != edges_.size()) {
      throw Error(ErrorCode::InvalidArgument, "signature size does not match edge count");
    }
    std::vector<Edge> edges = edges_;
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i].sign = signs[i];
    return SignedMultigraph(vertex_count_, std::move(edges));
  }

  friend bool operator==(const SignedMultigraph& a, const SignedMultigraph& b) {
    if (a.vertex_count_ != b.vertex_count_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const Edge& x = a.edges_[i];
      const Edge& y = b.edges_[i];
      if (x.u != y.u || x.v != y.v || x.sign != y.sign) return false;
    }
    return true;
  }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> incidence_;
};

/// (u, v, sign) with sign given as +1 or -1.
using EdgeSpec = std::tuple<VertexId, VertexId, int>;

inline SignedMultigraph build_graph(int vertex_count, std::span<const EdgeSpec> edge_list) {
  std::vector<Edge> edges;
  edges.reserve(edge_list.size());
  for (const auto& [u, v, s] : edge_list) {
    if (s != 1 && s != -1) {
      throw Error(ErrorCode::InvalidArgument, "sign must be +1 or -1, got " + std::to_string(s));
    }
    edges.push_back({u, v, s == 1 ? Sign::Positive : Sign::Negative});
  }
  return SignedMultigraph(vertex_count, std::move(edges));
}

inline SignedMultigraph build_graph(int vertex_count, std::initializer_list<EdgeSpec> edge_list) {
  return build_graph(vertex_count, std::span<const EdgeSpec>(edge_list.begin(), edge_list.size()));
}

/// Edge id of the first edge joining u and v (either orientation), or -1.
inline EdgeId find_edge(const SignedMultigraph& g, VertexId u, VertexId v) {
  for (const Incidence& inc : g.incident(u)) {
    if (inc.neighbor == v) return inc.edge;
  }
  return -1;
}

}  // namespace signcover
