#pragma once

#include <cstdint>
#include <vector>

#include "barbell_cover.hpp"
#include "coloring.hpp"
#include "structure.hpp"
#include "tjoin.hpp"
#include "trace.hpp"

namespace signcover {

/// Cover of the 2-factor formed by classes a and b, which must carry an even
/// number of negative edges. Unbalanced circuits are joined by a minimum
/// T-join in the graph with the circuits contracted; asserts 9L <= 10|E(g)|.
inline Cover two_factor_cover(const SignedMultigraph& g, const EdgeColoring& f, EdgeClass a, EdgeClass b,
                              BuildTrace* trace = nullptr) {
  BuildTrace local;
  BuildTrace& t = detail::trace_or(trace, local);
  const std::vector<Circuit> circuits = two_factor(g, f, a, b);
  std::vector<EdgeId> factor;
  for (const Circuit& c : circuits) factor.insert(factor.end(), c.edges.begin(), c.edges.end());
  factor = sorted_unique(std::move(factor));
  if (edge_set_sign(g, factor) != Sign::Positive) {
    throw Error(ErrorCode::PreconditionViolated,
                std::string("2-factor ") + to_char(a) + to_char(b) + " has an odd number of negative edges");
  }

  const Contraction con = contract_circuits(g, circuits);
  std::vector<VertexId> terminals;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    if (circuit_sign(g, circuits[i]) == Sign::Negative) terminals.push_back(con.circuit_vertex[i]);
  }
  const TJoinResult join = minimum_tjoin(con.graph, terminals);
  if (bridges(con.graph).empty()) {
    assert_bound(t, "tjoin", static_cast<std::int64_t>(join.size()), Fraction::of(con.graph.edge_count(), 2));
  }

  std::vector<EdgeId> lifted;
  for (EdgeId e : join.edges) lifted.push_back(con.original_edge[e]);
  t.note(std::string("factor ") + to_char(a) + to_char(b) + ": " + std::to_string(circuits.size()) + " circuits, " +
         std::to_string(terminals.size()) + " unbalanced, T-join {" + detail::join_ids(sorted_unique(lifted)) + "}");
  std::vector<EdgeId> combined = factor;
  combined.insert(combined.end(), lifted.begin(), lifted.end());

  Cover cover = positive_blocks_cover(g, combined, &t);
  cover.target = factor;
  assert_bound(t, "two_factor_cover", cover_length(cover), Fraction::of(10 * std::int64_t{g.edge_count()}, 9));
  return cover;
}

}  // namespace signcover
