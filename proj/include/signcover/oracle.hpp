#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "balance.hpp"
#include "circuit.hpp"
#include "graph.hpp"

namespace signcover {

struct OracleLimits {
  int max_edges = 24;
  int path_cap = -1;  // longest barbell path enumerated; -1 means |V|
  std::uint64_t node_budget = 50'000'000;
};

namespace detail {

inline std::uint64_t edge_mask(std::span<const EdgeId> edges) {
  std::uint64_t m = 0;
  for (EdgeId e : edges) m |= std::uint64_t{1} << e;
  return m;
}

inline std::vector<EdgeId> mask_edges(std::uint64_t m) {
  std::vector<EdgeId> out;
  for (; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

inline void check_limit(const SignedMultigraph& g, int max_edges) {
  if (g.edge_count() > max_edges || g.edge_count() > 64) {
    throw Error(ErrorCode::LimitExceeded, "oracle handles at most " + std::to_string(std::min(max_edges, 64)) +
                                              " edges, got " + std::to_string(g.edge_count()));
  }
}

}  // namespace detail

/// Every circuit of g once, in canonical form, ordered by length and then
/// by sorted edge ids.
inline std::vector<Circuit> enumerate_circuits(const SignedMultigraph& g, int max_edges = 24) {
  detail::check_limit(g, max_edges);
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::uint64_t> found;
  std::vector<bool> on_path(n, false);
  std::vector<EdgeId> path;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    // Depth-first over simple paths from s through larger vertices only.
    auto extend = [&](auto&& self, VertexId v) -> void {
      for (const Incidence& inc : g.incident(v)) {
        const VertexId w = inc.neighbor;
        if (w == s) {
          // Closing back along the edge just used is not a circuit.
          if (path.size() == 1 && inc.edge == path.front()) continue;
          path.push_back(inc.edge);
          found.push_back(detail::edge_mask(path));
          path.pop_back();
          continue;
        }
        if (w < s || on_path[w]) continue;
        on_path[w] = true;
        path.push_back(inc.edge);
        self(self, w);
        path.pop_back();
        on_path[w] = false;
      }
    };
    on_path[s] = true;
    extend(extend, s);
    on_path[s] = false;
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<Circuit> out;
  out.reserve(found.size());
  for (std::uint64_t m : found) out.push_back(*make_circuit(g, detail::mask_edges(m)));
  std::sort(out.begin(), out.end(), [](const Circuit& a, const Circuit& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return sorted_unique(a.edges) < sorted_unique(b.edges);
  });
  return out;
}

/// All sign-circuits of g: balanced circuits first, then barbells.
struct SignCircuitCatalog {
  std::vector<SignCircuit> members;
  std::vector<std::uint64_t> masks;
  std::size_t balanced_count = 0;
  std::vector<std::vector<std::size_t>> by_edge;  // members through each edge
  bool capped = false;                            // some barbell path was cut off by the cap
};

inline SignCircuitCatalog enumerate_sign_circuits(const SignedMultigraph& g, const OracleLimits& limits = {}) {
  const std::vector<Circuit> circuits = enumerate_circuits(g, limits.max_edges);
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const std::size_t cap = limits.path_cap < 0 ? n : static_cast<std::size_t>(limits.path_cap);
  SignCircuitCatalog cat;
  auto add = [&](SignCircuit sc) {
    cat.masks.push_back(detail::edge_mask(sc.edges()));
    cat.members.push_back(std::move(sc));
  };

  std::vector<const Circuit*> unbalanced;
  std::vector<std::uint64_t> vertex_sets;
  for (const Circuit& c : circuits) {
    if (circuit_sign(g, c) == Sign::Positive) {
      add(SignCircuit::balanced(c));
    } else {
      unbalanced.push_back(&c);
      std::uint64_t vs = 0;
      for (VertexId v : c.vertices) vs |= std::uint64_t{1} << v;
      vertex_sets.push_back(vs);
    }
  }
  cat.balanced_count = cat.members.size();
  if (n > 64 && unbalanced.size() > 1) throw Error(ErrorCode::LimitExceeded, "oracle handles at most 64 vertices");

  std::vector<bool> on_path(n, false);
  for (std::size_t i = 0; i < unbalanced.size(); ++i) {
    for (std::size_t j = i + 1; j < unbalanced.size(); ++j) {
      const Circuit& a = *unbalanced[i];
      const Circuit& b = *unbalanced[j];
      const std::uint64_t shared = vertex_sets[i] & vertex_sets[j];
      if ((detail::edge_mask(a.edges) & detail::edge_mask(b.edges)) != 0) continue;
      if (std::popcount(shared) == 1) {
        add(SignCircuit::barbell(a, Path{{static_cast<VertexId>(std::countr_zero(shared))}, {}}, b));
        continue;
      }
      if (shared != 0) continue;
      Path p;
      auto walk = [&](auto&& self, VertexId v) -> void {
        for (const Incidence& inc : g.incident(v)) {
          const VertexId w = inc.neighbor;
          if (on_path[w] || (vertex_sets[i] >> w & 1)) continue;
          if (p.edges.size() + 1 > cap) {
            cat.capped = true;
            continue;
          }
          p.edges.push_back(inc.edge);
          p.vertices.push_back(w);
          if (vertex_sets[j] >> w & 1) {
            add(SignCircuit::barbell(a, p, b));
          } else {
            on_path[w] = true;
            self(self, w);
            on_path[w] = false;
          }
          p.edges.pop_back();
          p.vertices.pop_back();
        }
      };
      for (VertexId start : a.vertices) {
        p = Path{{start}, {}};
        walk(walk, start);
      }
    }
  }

  cat.by_edge.assign(static_cast<std::size_t>(g.edge_count()), {});
  for (std::size_t k = 0; k < cat.masks.size(); ++k) {
    for (EdgeId e : detail::mask_edges(cat.masks[k])) cat.by_edge[e].push_back(k);
  }
  return cat;
}

/// True iff every edge lies in some sign-circuit.
inline bool flow_admissible_by_definition(const SignedMultigraph& g, const OracleLimits& limits = {}) {
  const SignCircuitCatalog cat = enumerate_sign_circuits(g, limits);
  return std::none_of(cat.by_edge.begin(), cat.by_edge.end(), [](const auto& list) { return list.empty(); });
}

struct OracleResult {
  std::int64_t length = 0;
  Cover cover;
  bool optimal = false;  // false when the node budget or the path cap bound
  std::uint64_t nodes = 0;
  std::size_t catalog_size = 0;
};

/// Shortest sign-circuit cover by branch and bound over the catalog.
inline OracleResult exact_scc(const SignedMultigraph& g, const OracleLimits& limits = {}) {
  const SignCircuitCatalog cat = enumerate_sign_circuits(g, limits);
  const auto m = static_cast<std::size_t>(g.edge_count());
  for (std::size_t e = 0; e < m; ++e) {
    if (cat.by_edge[e].empty()) {
      throw Error(ErrorCode::NotFlowAdmissible, "edge " + std::to_string(e) + " lies in no sign-circuit");
    }
  }
  OracleResult out;
  out.catalog_size = cat.members.size();
  out.cover.target = all_edges(g);
  if (m == 0) {
    out.optimal = true;
    return out;
  }

  // One representative per distinct edge set.
  std::vector<std::uint64_t> masks;
  std::vector<std::size_t> origin;
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t k = 0; k < cat.masks.size(); ++k) {
    if (index.emplace(cat.masks[k], masks.size()).second) {
      masks.push_back(cat.masks[k]);
      origin.push_back(k);
    }
  }
  std::vector<std::vector<std::size_t>> through(m);
  for (std::size_t k = 0; k < masks.size(); ++k) {
    for (EdgeId e : detail::mask_edges(masks[k])) through[e].push_back(k);
  }
  const std::uint64_t full = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;

  // Greedy start: repeatedly take the member with the best length per new edge.
  std::vector<std::size_t> best_pick;
  std::int64_t best = 0;
  for (std::uint64_t covered = 0; covered != full;) {
    std::size_t pick = 0;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < masks.size(); ++k) {
      const int fresh = std::popcount(masks[k] & ~covered);
      if (fresh == 0) continue;
      const double r = static_cast<double>(std::popcount(masks[k])) / fresh;
      if (r < ratio) {
        ratio = r;
        pick = k;
      }
    }
    best_pick.push_back(pick);
    best += std::popcount(masks[pick]);
    covered |= masks[pick];
  }

  // Every uncovered edge costs at least the best length-per-uncovered-edge
  // ratio among members through it.
  std::vector<double> cheapest(m);
  auto lower_bound = [&](std::uint64_t covered) {
    const std::uint64_t open = full & ~covered;
    double total = 0;
    for (std::uint64_t rest = open; rest != 0; rest &= rest - 1) {
      const auto e = static_cast<std::size_t>(std::countr_zero(rest));
      double low = std::numeric_limits<double>::infinity();
      for (std::size_t k : through[e]) {
        low = std::min(low, static_cast<double>(std::popcount(masks[k])) / std::popcount(masks[k] & open));
      }
      total += low;
    }
    return static_cast<std::int64_t>(std::ceil(total - 1e-9));
  };

  std::vector<std::size_t> pick;
  bool exhausted = false;
  auto search = [&](auto&& self, std::uint64_t covered, std::int64_t length) -> void {
    if (exhausted) return;
    if (++out.nodes > limits.node_budget) {
      exhausted = true;
      return;
    }
    if (covered == full) {
      if (length < best) {
        best = length;
        best_pick = pick;
      }
      return;
    }
    if (length + lower_bound(covered) >= best) return;
    const std::uint64_t open = full & ~covered;
    std::size_t branch_edge = 0;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::uint64_t rest = open; rest != 0; rest &= rest - 1) {
      const auto e = static_cast<std::size_t>(std::countr_zero(rest));
      if (through[e].size() < fewest) {
        fewest = through[e].size();
        branch_edge = e;
      }
    }
    std::vector<std::size_t> options = through[branch_edge];
    std::stable_sort(options.begin(), options.end(), [&](std::size_t a, std::size_t b) {
      // length / fresh edges, compared by cross-multiplication
      return std::popcount(masks[a]) * std::popcount(masks[b] & open) <
             std::popcount(masks[b]) * std::popcount(masks[a] & open);
    });
    for (std::size_t k : options) {
      pick.push_back(k);
      self(self, covered | masks[k], length + std::popcount(masks[k]));
      pick.pop_back();
    }
  };
  search(search, 0, 0);

  out.length = best;
  out.optimal = !exhausted && !cat.capped;
  std::sort(best_pick.begin(), best_pick.end());
  for (std::size_t k : best_pick) out.cover.members.push_back(cat.members[origin[k]]);
  return out;
}

}  // namespace signcover
