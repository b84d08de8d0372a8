#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "balance.hpp"
#include "barbell_cover.hpp"
#include "circuit.hpp"
#include "graph.hpp"
#include "structure.hpp"
#include "trace.hpp"

namespace signcover {

/// Clockwise arc of a circuit between two walk positions.
struct Segment {
  std::size_t begin = 0;  // position of the first vertex on the circuit walk
  std::size_t end = 0;
  Path arc;
  bool negative = false;
};

/// The circuit cut at the attachments of one component of g - E(C).
struct SegmentDecomposition {
  int component = 0;
  std::vector<VertexId> attachments;  // clockwise from the circuit's start
  std::vector<Segment> segments;      // segments[i] starts at attachments[i]

  std::size_t negative_count() const {
    return static_cast<std::size_t>(
        std::count_if(segments.begin(), segments.end(), [](const Segment& s) { return s.negative; }));
  }
};

/// Clockwise arc from position i to position j; i == j gives the whole circuit.
inline Path circuit_arc(const Circuit& c, std::size_t i, std::size_t j) {
  const std::size_t k = c.length();
  Path p;
  p.vertices.push_back(c.vertices[i]);
  std::size_t s = i;
  do {
    p.edges.push_back(c.edges[s]);
    s = (s + 1) % k;
    p.vertices.push_back(c.vertices[s]);
  } while (s != j);
  if (i == j) p.vertices.pop_back();
  return p;
}

/// Segments cut out of c by the vertices of one component; g is expected to
/// be switched so that every edge off c is positive.
inline SegmentDecomposition segment_decomposition(const SignedMultigraph& g, const Circuit& c,
                                                  std::span<const VertexId> component, int component_id = 0) {
  std::vector<bool> in(static_cast<std::size_t>(g.vertex_count()), false);
  for (VertexId v : component) in[v] = true;
  SegmentDecomposition d;
  d.component = component_id;
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    if (in[c.vertices[i]]) {
      positions.push_back(i);
      d.attachments.push_back(c.vertices[i]);
    }
  }
  if (positions.empty()) throw Error(ErrorCode::PreconditionViolated, "component has no attachment on the circuit");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    Segment s;
    s.begin = positions[i];
    s.end = positions[(i + 1) % positions.size()];
    s.arc = circuit_arc(c, s.begin, s.end);
    s.negative = edge_set_sign(g, s.arc.edges) == Sign::Negative;
    d.segments.push_back(std::move(s));
  }
  if (d.negative_count() % 2 == 0) {
    throw Error(ErrorCode::InvariantViolated,
                "component " + std::to_string(component_id) + " determines an even number of negative segments");
  }
  return d;
}

/// Complement of a component's single negative segment: the arc from its
/// end x clockwise to its start y.
struct Cosegment {
  int component = 0;
  VertexId x = -1;
  VertexId y = -1;
  std::size_t x_pos = 0;
  std::size_t y_pos = 0;
  std::vector<EdgeId> edges;  // clockwise from x
};

struct CosegmentCover {
  std::vector<Cosegment> cosegments;  // clockwise by x
  bool minimal = false;
};

/// Cosegments of all components, pruned greedily (lowest component first)
/// to an inclusion-minimal family still covering c.
inline CosegmentCover minimal_cosegment_cover(const Circuit& c, std::span<const SegmentDecomposition> parts) {
  const std::size_t k = c.length();
  std::vector<Cosegment> all;
  for (const SegmentDecomposition& d : parts) {
    if (d.negative_count() != 1) {
      throw Error(ErrorCode::PreconditionViolated,
                  "component " + std::to_string(d.component) + " determines more than one negative segment");
    }
    const Segment& neg = *std::find_if(d.segments.begin(), d.segments.end(), [](const Segment& s) { return s.negative; });
    Cosegment cs;
    cs.component = d.component;
    cs.x_pos = neg.end;
    cs.y_pos = neg.begin;
    cs.x = c.vertices[cs.x_pos];
    cs.y = c.vertices[cs.y_pos];
    if (cs.x_pos != cs.y_pos) {
      for (std::size_t s = cs.x_pos; s != cs.y_pos; s = (s + 1) % k) cs.edges.push_back(c.edges[s]);
    }
    all.push_back(std::move(cs));
  }

  std::vector<int> count(k, 0);
  auto edge_slots = [&](const Cosegment& cs) {
    std::vector<std::size_t> slots;
    if (cs.x_pos == cs.y_pos) return slots;
    for (std::size_t s = cs.x_pos; s != cs.y_pos; s = (s + 1) % k) slots.push_back(s);
    return slots;
  };
  for (const Cosegment& cs : all) {
    for (std::size_t s : edge_slots(cs)) ++count[s];
  }
  if (all.size() < 2 || std::find(count.begin(), count.end(), 0) != count.end()) {
    throw Error(ErrorCode::PreconditionViolated, "cosegments do not cover the circuit");
  }

  std::vector<Cosegment> sorted_by_component = all;
  std::sort(sorted_by_component.begin(), sorted_by_component.end(),
            [](const Cosegment& a, const Cosegment& b) { return a.component < b.component; });
  std::vector<Cosegment> kept;
  for (Cosegment& cs : sorted_by_component) {
    const auto slots = edge_slots(cs);
    const bool removable = std::all_of(slots.begin(), slots.end(), [&](std::size_t s) { return count[s] >= 2; });
    if (removable) {
      for (std::size_t s : slots) --count[s];
    } else {
      kept.push_back(std::move(cs));
    }
  }
  for (int n : count) {
    if (n > 2) throw Error(ErrorCode::InvariantViolated, "an edge of the circuit lies in three cosegments");
  }
  std::sort(kept.begin(), kept.end(), [](const Cosegment& a, const Cosegment& b) { return a.x_pos < b.x_pos; });

  // Clockwise from x_1 the endpoints must read x_1, y_t, x_2, y_1, ..., x_t, y_{t-1}.
  const std::size_t t = kept.size();
  if (t < 2) throw Error(ErrorCode::InvariantViolated, "minimal cosegment cover has fewer than two members");
  std::vector<std::pair<std::size_t, int>> marks;  // (offset from x_1, +i for x_i, -(i) for y_i), 1-based
  for (std::size_t i = 0; i < t; ++i) {
    marks.emplace_back((kept[i].x_pos + k - kept[0].x_pos) % k, static_cast<int>(i + 1));
    marks.emplace_back((kept[i].y_pos + k - kept[0].x_pos) % k, -static_cast<int>(i + 1));
  }
  std::sort(marks.begin(), marks.end());
  for (std::size_t i = 0; i < t; ++i) {
    const int y_before = -static_cast<int>((i + t - 1) % t + 1);
    if (marks[2 * i].second != static_cast<int>(i + 1) || marks[2 * i + 1].second != y_before ||
        (i > 0 && marks[2 * i].first == marks[2 * i - 1].first)) {
      throw Error(ErrorCode::InvariantViolated, "cosegment endpoints do not interleave");
    }
  }
  return {std::move(kept), true};
}

namespace detail {

/// Breadth-first path over allowed edges from `source` to the first vertex
/// with target[v] set.
inline std::optional<Path> bfs_path(const SignedMultigraph& g, const EdgeMask& allowed, VertexId source,
                                    const std::vector<bool>& target) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<EdgeId> via(n, -1);
  std::vector<bool> seen(n, false);
  std::queue<VertexId> queue;
  queue.push(source);
  seen[source] = true;
  VertexId hit = -1;
  while (!queue.empty() && hit == -1) {
    const VertexId v = queue.front();
    queue.pop();
    if (target[v]) {
      hit = v;
      break;
    }
    for (const Incidence& inc : g.incident(v)) {
      if (!allowed[inc.edge] || seen[inc.neighbor]) continue;
      seen[inc.neighbor] = true;
      via[inc.neighbor] = inc.edge;
      queue.push(inc.neighbor);
    }
  }
  if (hit == -1) return std::nullopt;
  Path p;
  for (VertexId v = hit; v != source; v = g.edge(via[v]).other(v)) {
    p.vertices.push_back(v);
    p.edges.push_back(via[v]);
  }
  p.vertices.push_back(source);
  std::reverse(p.vertices.begin(), p.vertices.end());
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

inline Circuit circuit_from(const SignedMultigraph& g, std::vector<EdgeId> edges, const char* what) {
  auto c = make_circuit(g, edges);
  if (!c) throw Error(ErrorCode::InvariantViolated, std::string(what) + " is not a circuit");
  if (circuit_sign(g, *c) != Sign::Positive) throw Error(ErrorCode::InvariantViolated, std::string(what) + " is unbalanced");
  return *std::move(c);
}

}  // namespace detail

/// Everything the cover of an unbalanced circuit is built from.
struct CircuitCoverSetup {
  SignedMultigraph switched;  // every edge off the circuit positive
  std::vector<SegmentDecomposition> parts;  // by first attachment along the circuit
  EdgeMask off_circuit;
  std::vector<int> label;  // component label of each vertex in g - E(C)
  std::vector<int> part_of_label;
};

inline CircuitCoverSetup prepare_circuit_cover(const SignedMultigraph& g, const Circuit& c) {
  if (!g.is_cubic()) throw Error(ErrorCode::NotCubic, "circuit cover needs a cubic graph");
  if (!make_circuit(g, c.edges)) throw Error(ErrorCode::InvalidArgument, "edge list is not a circuit");
  if (circuit_sign(g, c) != Sign::Negative) throw Error(ErrorCode::PreconditionViolated, "circuit is balanced");
  CircuitCoverSetup s;
  s.off_circuit.assign(static_cast<std::size_t>(g.edge_count()), 1);
  for (EdgeId e : c.edges) s.off_circuit[e] = 0;
  const BalanceCertificate cert = detail::certify(g, s.off_circuit);
  if (!cert.balanced()) {
    throw Error(ErrorCode::PreconditionViolated, "graph minus the circuit is unbalanced");
  }
  std::vector<Sign> signs;
  for (const Edge& e : g.edges()) signs.push_back(e.sign * cert.potential[e.u] * cert.potential[e.v]);
  s.switched = g.with_signs(signs);

  s.label = component_labels(g, s.off_circuit);
  const auto groups = group_by_label(g, s.label, s.off_circuit);
  s.part_of_label.assign(groups.size(), -1);
  int next = 0;
  for (VertexId v : c.vertices) {
    const int l = s.label[v];
    if (s.part_of_label[l] != -1) continue;
    s.part_of_label[l] = next;
    s.parts.push_back(segment_decomposition(s.switched, c, groups[l].vertices, next));
    ++next;
  }
  return s;
}

/// Three balanced circuits, any two of which cover the circuit, built from
/// a component with at least three negative segments.
inline std::array<Circuit, 3> three_circuit_family(const SignedMultigraph& g, const Circuit& c,
                                                   const CircuitCoverSetup& s, const SegmentDecomposition& d) {
  std::vector<const Segment*> neg;
  for (const Segment& seg : d.segments) {
    if (seg.negative) neg.push_back(&seg);
  }
  const std::size_t p1 = neg[0]->begin, p2 = neg[1]->begin, p3 = neg[2]->begin;
  const VertexId u1 = c.vertices[p1], u2 = c.vertices[p2], u3 = c.vertices[p3];

  EdgeMask inside(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    inside[e] = s.off_circuit[e] && s.part_of_label[s.label[g.edge(e).u]] == d.component;
  }
  std::vector<bool> target(static_cast<std::size_t>(g.vertex_count()), false);
  target[u2] = true;
  const auto path1 = detail::bfs_path(g, inside, u1, target);
  if (!path1) throw Error(ErrorCode::InvariantViolated, "attachments are not joined inside their component");
  target.assign(target.size(), false);
  for (VertexId v : path1->vertices) target[v] = true;
  const auto path2 = detail::bfs_path(g, inside, u3, target);
  if (!path2) throw Error(ErrorCode::InvariantViolated, "attachments are not joined inside their component");
  const VertexId meet = path2->back();
  const auto cut = static_cast<std::size_t>(std::find(path1->vertices.begin(), path1->vertices.end(), meet) -
                                            path1->vertices.begin());
  const std::vector<EdgeId> p11(path1->edges.begin(), path1->edges.begin() + static_cast<std::ptrdiff_t>(cut));
  const std::vector<EdgeId> p12(path1->edges.begin() + static_cast<std::ptrdiff_t>(cut), path1->edges.end());

  auto unite = [](std::initializer_list<std::span<const EdgeId>> pieces) {
    std::vector<EdgeId> out;
    for (auto piece : pieces) out.insert(out.end(), piece.begin(), piece.end());
    return out;
  };
  const Path a21 = circuit_arc(c, p2, p1);
  const Path a13 = circuit_arc(c, p1, p3);
  const Path a32 = circuit_arc(c, p3, p2);
  return {detail::circuit_from(g, unite({p11, p12, a21.edges}), "first family circuit"),
          detail::circuit_from(g, unite({path2->edges, p11, a13.edges}), "second family circuit"),
          detail::circuit_from(g, unite({p12, path2->edges, a32.edges}), "third family circuit")};
}

/// Balanced circuits covering an unbalanced circuit c of a cubic
/// flow-admissible graph in which g - E(c) is balanced; asserts
/// 9L <= 8|E(g)| + 9|E(c)|.
inline Cover cover_unbalanced_circuit(const SignedMultigraph& g, const Circuit& c, BuildTrace* trace = nullptr) {
  BuildTrace local;
  BuildTrace& t = detail::trace_or(trace, local);
  const CircuitCoverSetup s = prepare_circuit_cover(g, c);
  if (!is_flow_admissible(g)) throw Error(ErrorCode::NotFlowAdmissible, "graph is not flow-admissible");

  Cover cover;
  cover.target = sorted_unique(c.edges);
  const auto rich = std::find_if(s.parts.begin(), s.parts.end(),
                                 [](const SegmentDecomposition& d) { return d.negative_count() >= 3; });
  if (rich != s.parts.end()) {
    const auto family = three_circuit_family(g, c, s, *rich);
    const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {1, 2}, {2, 0}}};
    std::size_t best = 0;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      const auto len = [&](std::size_t p) { return family[pairs[p].first].length() + family[pairs[p].second].length(); };
      if (len(i) < len(best)) best = i;
    }
    cover.members = {SignCircuit::balanced(family[pairs[best].first]),
                     SignCircuit::balanced(family[pairs[best].second])};
    t.note("circuit cover case 1: component " + std::to_string(rich->component) + ", pair " +
           std::to_string(pairs[best].first + 1) + "," + std::to_string(pairs[best].second + 1));
  } else {
    const CosegmentCover cosegments = minimal_cosegment_cover(c, s.parts);
    std::vector<bool> target(static_cast<std::size_t>(g.vertex_count()), false);
    for (const Cosegment& cs : cosegments.cosegments) {
      EdgeMask inside(static_cast<std::size_t>(g.edge_count()), 0);
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        inside[e] = s.off_circuit[e] && s.part_of_label[s.label[g.edge(e).u]] == cs.component;
      }
      target.assign(target.size(), false);
      target[cs.x] = true;
      const auto path = detail::bfs_path(g, inside, cs.y, target);
      if (!path) throw Error(ErrorCode::InvariantViolated, "cosegment ends are not joined inside their component");
      std::vector<EdgeId> edges = cs.edges;
      edges.insert(edges.end(), path->edges.begin(), path->edges.end());
      cover.members.push_back(SignCircuit::balanced(detail::circuit_from(g, edges, "cosegment circuit")));
    }
    t.note("circuit cover case 2: " + std::to_string(cosegments.cosegments.size()) + " cosegments");
  }
  assert_bound(t, "circuit_cover", cover_length(cover),
               Fraction::of(8 * std::int64_t{g.edge_count()} + 9 * static_cast<std::int64_t>(c.length()), 9));
  return cover;
}

}  // namespace signcover
