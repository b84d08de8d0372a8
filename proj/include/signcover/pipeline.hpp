#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "balance.hpp"
#include "barbell_cover.hpp"
#include "circuit_cover.hpp"
#include "coloring.hpp"
#include "cycle_forest.hpp"
#include "trace.hpp"
#include "two_factor_cover.hpp"
#include "validate.hpp"

namespace signcover {

/// Long barbell made of c1, an unbalanced circuit of g - E(c1), and a
/// shortest path between them that meets neither circuit inside.
inline std::optional<SignCircuit> find_disjoint_unbalanced_barbell(const SignedMultigraph& g, const Circuit& c1) {
  if (!g.is_cubic()) throw Error(ErrorCode::NotCubic, "barbell search needs a cubic graph");
  const auto other = find_unbalanced_circuit(g, c1.edges);
  if (!other) return std::nullopt;

  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<bool> on_first(n, false), on_second(n, false);
  for (VertexId v : c1.vertices) on_first[v] = true;
  for (VertexId v : other->vertices) on_second[v] = true;
  std::vector<EdgeId> via(n, -1);
  std::vector<bool> seen = on_first;
  std::vector<VertexId> sources = c1.vertices;
  std::sort(sources.begin(), sources.end());
  std::queue<VertexId> queue;
  for (VertexId s : sources) queue.push(s);
  VertexId hit = -1;
  while (!queue.empty() && hit == -1) {
    const VertexId v = queue.front();
    queue.pop();
    for (const Incidence& inc : g.incident(v)) {
      if (seen[inc.neighbor]) continue;
      seen[inc.neighbor] = true;
      via[inc.neighbor] = inc.edge;
      if (on_second[inc.neighbor]) {
        hit = inc.neighbor;
        break;
      }
      queue.push(inc.neighbor);
    }
  }
  if (hit == -1) return std::nullopt;
  Path p;
  VertexId v = hit;
  p.vertices.push_back(v);
  while (!on_first[v]) {
    p.edges.push_back(via[v]);
    v = g.edge(via[v]).other(v);
    p.vertices.push_back(v);
  }
  std::reverse(p.vertices.begin(), p.vertices.end());
  std::reverse(p.edges.begin(), p.edges.end());
  return SignCircuit::barbell(c1, std::move(p), *other);
}

struct PipelineResult {
  Cover cover;
  BuildTrace trace;
};

namespace detail {

inline void append(Cover& into, const Cover& from) {
  into.members.insert(into.members.end(), from.members.begin(), from.members.end());
}

inline std::size_t count_unbalanced(const SignedMultigraph& g, const std::vector<Circuit>& circuits) {
  return static_cast<std::size_t>(std::count_if(circuits.begin(), circuits.end(), [&](const Circuit& c) {
    return circuit_sign(g, c) == Sign::Negative;
  }));
}

inline std::string pair_name(EdgeClass a, EdgeClass b) { return std::string{to_char(a), to_char(b)}; }

}  // namespace detail

/// Sign-circuit cover of a connected, cubic, flow-admissible graph with
/// 9L <= 20|E|, built from a 3-edge coloring (supplied or searched for).
inline PipelineResult cover_3ec_cubic(const SignedMultigraph& g, std::optional<EdgeColoring> coloring = std::nullopt,
                                      std::uint64_t coloring_budget = 10'000'000) {
  if (!g.is_cubic()) throw Error(ErrorCode::NotCubic, "graph is not cubic");
  if (!is_connected(g)) throw Error(ErrorCode::NotConnected, "graph is disconnected");
  if (const auto fa = is_flow_admissible(g); !fa) {
    throw Error(ErrorCode::NotFlowAdmissible, std::string("graph is not flow-admissible: ") + to_string(fa.obstruction) +
                                                  " at edge " + std::to_string(fa.edge));
  }
  if (coloring) {
    if (!validate_coloring(g, *coloring).ok()) throw Error(ErrorCode::InvalidArgument, "supplied coloring is not proper");
  } else {
    coloring = find_coloring(g, coloring_budget);
    if (!coloring) throw Error(ErrorCode::NotColorable, "graph has no 3-edge coloring");
  }

  using enum EdgeClass;
  PipelineResult out;
  BuildTrace& t = out.trace;
  Cover& cover = out.cover;
  const EdgeColoring f = relabel_for_parity(g, *coloring);
  t.coloring = f;
  const auto m = std::int64_t{g.edge_count()};

  const std::vector<Circuit> rb = two_factor(g, f, R, B);
  if (detail::count_unbalanced(g, rb) > 0) {
    t.case_label = "1";
    detail::append(cover, two_factor_cover(g, f, R, B, &t));
    if (class_negativity(g, f, Y) == class_negativity(g, f, R)) {
      detail::append(cover, two_factor_cover(g, f, R, Y, &t));
    } else {
      const Circuit& c = *std::find_if(rb.begin(), rb.end(),
                                       [&](const Circuit& x) { return circuit_sign(g, x) == Sign::Negative; });
      const EdgeColoring swapped = swap_on_circuit(f, c, R, B);
      t.note("swap R and B on circuit {" + detail::join_ids(sorted_unique(c.edges)) + "}");
      detail::append(cover, two_factor_cover(g, swapped, R, Y, &t));
    }
  } else {
    for (const Circuit& c : rb) cover.members.push_back(SignCircuit::balanced(c));
    const std::vector<Circuit> ry = two_factor(g, f, R, Y);
    const std::vector<Circuit> by = two_factor(g, f, B, Y);
    const std::size_t odd_ry = detail::count_unbalanced(g, ry);
    const std::size_t odd_by = detail::count_unbalanced(g, by);
    t.note("unbalanced circuits: RY " + std::to_string(odd_ry) + ", BY " + std::to_string(odd_by));
    if (odd_ry % 2 == 0 || odd_by % 2 == 0) {
      t.case_label = "2.1";
      const EdgeClass a = odd_ry % 2 == 0 ? R : B;
      detail::append(cover, two_factor_cover(g, f, a, Y, &t));
    } else if (odd_ry == 1 || odd_by == 1) {
      const EdgeClass a = odd_ry == 1 ? R : B;
      const std::vector<Circuit>& factor = a == R ? ry : by;
      const Circuit* lone = nullptr;
      for (const Circuit& c : factor) {
        if (circuit_sign(g, c) == Sign::Positive) {
          cover.members.push_back(SignCircuit::balanced(c));
        } else {
          lone = &c;
        }
      }
      t.note("lone unbalanced circuit in " + detail::pair_name(a, Y) + ": {" +
             detail::join_ids(sorted_unique(lone->edges)) + "}");
      if (auto q = find_disjoint_unbalanced_barbell(g, *lone)) {
        t.case_label = "2.2a";
        t.note("barbell of length " + std::to_string(q->length()));
        cover.members.push_back(*std::move(q));
        assert_bound(t, "subcase_2_2", cover_length(cover), Fraction::of(2 * m - 1, 1));
      } else {
        t.case_label = "2.2b";
        detail::append(cover, cover_unbalanced_circuit(g, *lone, &t));
      }
    } else {
      t.case_label = "2.3";
      const CycleForest h = build_cycle_tree(g, ry);
      const StrippedForest stripped = strip_balanced_bridge_components(g, h);
      t.note("cycle-tree: " + std::to_string(h.blocks.size()) + " circuits, " + std::to_string(stripped.stripped.size()) +
             " stripped, bad bridges {" + detail::join_ids(stripped.removed_bridges) + "}");
      const Cover part = cycle_tree_cover(g, stripped.kept, &t);
      std::int64_t ry_length = cover_length(part);
      detail::append(cover, part);
      for (const Circuit& c : stripped.stripped) {
        cover.members.push_back(SignCircuit::balanced(c));
        ry_length += static_cast<std::int64_t>(c.length());
      }
      assert_bound(t, "subcase_2_3", ry_length, Fraction::of(3 * static_cast<std::int64_t>(h.edge_count()), 2));
    }
  }

  cover.target = all_edges(g);
  t.length = cover_length(cover);
  assert_bound(t, "theorem", t.length, Fraction::of(20 * m, 9));
  const CoverReport report = validate_cover(g, cover);
  if (!report.ok()) {
    throw Error(ErrorCode::InvariantViolated,
                "pipeline cover failed verification (" + std::to_string(report.invalid_members.size()) +
                    " invalid members, " + std::to_string(report.uncovered.size()) + " uncovered edges)");
  }
  return out;
}

}  // namespace signcover
