#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "signcover/signcover.hpp"

namespace support {

using namespace signcover;

inline GraphFile load(const std::string& name) {
  std::ifstream in(std::string(SIGNCOVER_FIXTURES) + "/" + name + ".sg");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

inline SignedMultigraph fixture(const std::string& name) { return load(name).graph; }

/// Number of components over the edges in `mask` (bit e = edge e).
inline int count_components(const SignedMultigraph& g, std::uint64_t mask) {
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int count = g.vertex_count();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!(mask >> e & 1)) continue;
    const int a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a != b) {
      parent[a] = b;
      --count;
    }
  }
  return count;
}

inline std::uint64_t full_mask(const SignedMultigraph& g) {
  return g.edge_count() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.edge_count()) - 1;
}

/// Edge subsets forming a connected 2-regular subgraph, found by testing
/// every subset.
inline std::vector<std::uint64_t> brute_circuits(const SignedMultigraph& g) {
  std::vector<std::uint64_t> out;
  const auto n = static_cast<std::size_t>(g.vertex_count());
  for (std::uint64_t s = 1; s <= full_mask(g); ++s) {
    std::vector<int> deg(n, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (s >> e & 1) {
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
      }
    }
    bool regular = true;
    int touched = 0;
    for (int d : deg) {
      if (d != 0 && d != 2) regular = false;
      touched += d != 0;
    }
    if (!regular) continue;
    // connected on its touched vertices
    if (count_components(g, s) - (g.vertex_count() - touched) == 1) out.push_back(s);
  }
  return out;
}

inline int mask_negatives(const SignedMultigraph& g, std::uint64_t s) {
  int neg = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) neg += (s >> e & 1) && g.edge(e).negative();
  return neg;
}

/// Brute force: every circuit has an even number of negative edges.
inline bool brute_balanced(const SignedMultigraph& g) {
  for (std::uint64_t c : brute_circuits(g)) {
    if (mask_negatives(g, c) % 2) return false;
  }
  return true;
}

inline std::uint64_t mask_vertices(const SignedMultigraph& g, std::uint64_t s) {
  std::uint64_t vs = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (s >> e & 1) vs |= (std::uint64_t{1} << g.edge(e).u) | (std::uint64_t{1} << g.edge(e).v);
  }
  return vs;
}

/// True when the edges of p form a simple path from a vertex of `from` to
/// a vertex of `to` whose other vertices avoid both sets.
inline bool is_connecting_path(const SignedMultigraph& g, std::uint64_t p, std::uint64_t from, std::uint64_t to) {
  if (p == 0) return false;
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!(p >> e & 1)) continue;
    if (g.edge(e).is_loop()) return false;
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  const std::uint64_t vs = mask_vertices(g, p);
  if (std::popcount(vs) != std::popcount(p) + 1) return false;
  if (count_components(g, p) - (g.vertex_count() - std::popcount(vs)) != 1) return false;
  int ends_from = 0, ends_to = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!(vs >> v & 1)) continue;
    if (deg[v] > 2) return false;
    const bool in_from = from >> v & 1, in_to = to >> v & 1;
    if (deg[v] == 2 && (in_from || in_to)) return false;
    if (deg[v] == 1) {
      ends_from += in_from;
      ends_to += in_to;
      if (!in_from && !in_to) return false;
    }
  }
  return ends_from == 1 && ends_to == 1;
}

/// Distinct edge sets of all sign-circuits, from subset enumeration: balanced
/// circuits, pairs of unbalanced circuits sharing one vertex, and pairs of
/// vertex-disjoint unbalanced circuits joined by a connecting path.
inline std::vector<std::uint64_t> brute_sign_circuits(const SignedMultigraph& g) {
  std::vector<std::uint64_t> out, odd;
  for (std::uint64_t c : brute_circuits(g)) (mask_negatives(g, c) % 2 ? odd : out).push_back(c);
  const std::uint64_t full = full_mask(g);
  for (std::size_t i = 0; i < odd.size(); ++i) {
    for (std::size_t j = i + 1; j < odd.size(); ++j) {
      if (odd[i] & odd[j]) continue;
      const std::uint64_t vi = mask_vertices(g, odd[i]), vj = mask_vertices(g, odd[j]);
      const int shared = std::popcount(vi & vj);
      if (shared == 1) out.push_back(odd[i] | odd[j]);
      if (shared != 0) continue;
      const std::uint64_t rest = full & ~(odd[i] | odd[j]);
      for (std::uint64_t p = rest; p != 0; p = (p - 1) & rest) {
        if (is_connecting_path(g, p, vi, vj)) out.push_back(odd[i] | odd[j] | p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Smallest T-join by scanning every edge subset.
inline int brute_tjoin_size(const SignedMultigraph& g, const std::vector<VertexId>& terminals) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> want(n, 0);
  for (VertexId t : terminals) want[t] ^= 1;
  int best = -1;
  for (std::uint64_t s = 0; s <= full_mask(g); ++s) {
    const int size = std::popcount(s);
    if (best >= 0 && size >= best) continue;
    std::vector<int> parity(n, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!(s >> e & 1) || g.edge(e).is_loop()) continue;
      parity[g.edge(e).u] ^= 1;
      parity[g.edge(e).v] ^= 1;
    }
    if (parity == want) best = size;
  }
  return best;
}

/// True when the edge set has odd degree exactly at the terminals.
inline bool is_tjoin(const SignedMultigraph& g, const std::vector<EdgeId>& edges, const std::vector<VertexId>& terminals) {
  std::vector<int> parity(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e : edges) {
    if (g.edge(e).is_loop()) continue;
    parity[g.edge(e).u] ^= 1;
    parity[g.edge(e).v] ^= 1;
  }
  std::vector<int> want(parity.size(), 0);
  for (VertexId t : terminals) want[t] ^= 1;
  return parity == want;
}

/// Cheapest perfect matching by enumerating every pairing.
inline std::int64_t brute_matching_cost(const std::vector<std::vector<std::int64_t>>& w) {
  std::vector<bool> used(w.size(), false);
  std::function<std::int64_t()> go = [&]() -> std::int64_t {
    std::size_t i = 0;
    while (i < w.size() && used[i]) ++i;
    if (i == w.size()) return 0;
    used[i] = true;
    std::int64_t best = -1;
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      const std::int64_t rest = go();
      used[j] = false;
      if (best < 0 || w[i][j] + rest < best) best = w[i][j] + rest;
    }
    used[i] = false;
    return best;
  };
  return go();
}

/// Does a proper 3-edge coloring exist? Plain 3^m scan with pruning.
inline bool brute_colorable(const SignedMultigraph& g) {
  if (g.has_loops()) return false;
  std::vector<int> color(static_cast<std::size_t>(g.edge_count()), -1);
  std::function<bool(EdgeId)> go = [&](EdgeId e) {
    if (e == g.edge_count()) return true;
    for (int c = 0; c < 3; ++c) {
      bool clash = false;
      for (EdgeId f = 0; f < e && !clash; ++f) {
        const Edge &a = g.edge(e), &b = g.edge(f);
        const bool adjacent = a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
        clash = adjacent && color[f] == c;
      }
      if (clash) continue;
      color[e] = c;
      if (go(e + 1)) return true;
    }
    color[e] = -1;
    return false;
  };
  return go(0);
}

/// Random multigraph with loops and parallel edges allowed.
inline SignedMultigraph random_multigraph(std::mt19937_64& rng, int n, int m, double p_negative,
                                          bool allow_loops = true) {
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::bernoulli_distribution negative(p_negative);
  std::vector<Edge> edges;
  while (static_cast<int>(edges.size()) < m) {
    const VertexId a = vertex(rng), b = vertex(rng);
    if (a == b && !allow_loops) continue;
    edges.push_back({a, b, negative(rng) ? Sign::Negative : Sign::Positive});
  }
  return SignedMultigraph(n, std::move(edges));
}

inline SignedMultigraph random_switching(const SignedMultigraph& g, std::mt19937_64& rng,
                                         std::vector<VertexId>* chosen = nullptr) {
  std::bernoulli_distribution coin(0.5);
  std::vector<VertexId> set;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (coin(rng)) set.push_back(v);
  }
  if (chosen) *chosen = set;
  return apply_switching(g, set);
}

/// Flow-admissible, colorable generated instance for (n, p, seed).
inline GeneratedInstance instance(int n, double p, std::uint64_t seed) {
  GeneratorOptions opt;
  opt.n = n;
  opt.negative_probability = p;
  opt.seed = seed;
  opt.require_flow_admissible = true;
  opt.require_colorable = true;
  return generate_instance(opt);
}

/// Cubic flow-admissible graph with an unbalanced circuit C such that
/// g - E(C) is balanced: every edge off C is positive, C carries an odd
/// number of negatives, then a random switching hides the structure.
struct CircuitInstance {
  SignedMultigraph graph;
  Circuit circuit;
};

inline std::optional<CircuitInstance> circuit_instance(int n, std::uint64_t seed) {
  GeneratorOptions opt;
  opt.n = n;
  opt.seed = seed;
  const SignedMultigraph skeleton = generate_instance(opt).graph;
  std::mt19937_64 rng(seed * 7919 + static_cast<std::uint64_t>(n));
  const std::vector<Circuit> circuits = enumerate_circuits(skeleton, 64);
  std::vector<const Circuit*> long_ones;
  for (const Circuit& c : circuits) {
    if (c.length() >= 3) long_ones.push_back(&c);
  }
  for (int attempt = 0; attempt < 20 && !long_ones.empty(); ++attempt) {
    const Circuit& c = *long_ones[rng() % long_ones.size()];
    std::vector<Sign> signs(static_cast<std::size_t>(skeleton.edge_count()), Sign::Positive);
    std::vector<EdgeId> order = c.edges;
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t negatives = 1 + 2 * (rng() % ((c.length() + 1) / 2));
    for (std::size_t i = 0; i < negatives && i < order.size(); ++i) signs[order[i]] = Sign::Negative;
    const SignedMultigraph g = random_switching(skeleton.with_signs(signs), rng);
    if (circuit_sign(g, c) != Sign::Negative || !is_flow_admissible(g)) continue;
    return CircuitInstance{g, c};
  }
  return std::nullopt;
}

/// Random 3-edge-colored cubic graph on 2 * pairs vertices whose RY and BY
/// factors have `ry` and `by` circuits. The Y matching is split into groups
/// twice; each group is closed into a circuit alternating with R (first
/// split) or B (second split). Parallel edges or disconnection give nullopt.
inline std::optional<GeneratedInstance> colored_cubic(int pairs, int ry, int by, std::mt19937_64& rng) {
  using enum EdgeClass;
  std::vector<EdgeSpec> edges;
  EdgeColoring f;
  for (int i = 0; i < pairs; ++i) {
    edges.emplace_back(2 * i, 2 * i + 1, +1);
    f.classes.push_back(Y);
  }
  auto close_groups = [&](int groups, EdgeClass cls) {
    std::vector<int> order(static_cast<std::size_t>(pairs));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    // group sizes at least 2, extra edges spread at random
    std::vector<int> size(static_cast<std::size_t>(groups), 2);
    for (int extra = pairs - 2 * groups; extra > 0; --extra) ++size[rng() % size.size()];
    std::size_t at = 0;
    for (int k : size) {
      std::vector<std::pair<int, int>> ends;
      for (int j = 0; j < k; ++j, ++at) {
        const int y = order[at];
        ends.push_back(rng() % 2 ? std::pair{2 * y, 2 * y + 1} : std::pair{2 * y + 1, 2 * y});
      }
      for (int j = 0; j < k; ++j) {
        edges.emplace_back(ends[j].second, ends[(j + 1) % k].first, +1);
        f.classes.push_back(cls);
      }
    }
  };
  if (pairs < 2 * std::max(ry, by)) throw Error(ErrorCode::InvalidArgument, "too few Y edges for the groups");
  close_groups(ry, R);
  close_groups(by, B);
  std::vector<std::pair<int, int>> seen;
  for (const auto& [u, v, sign] : edges) seen.push_back(std::minmax(u, v));
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return std::nullopt;
  SignedMultigraph g = build_graph(2 * pairs, edges);
  if (!is_connected(g)) return std::nullopt;
  return GeneratedInstance{std::move(g), std::move(f), 0};
}

/// Colored cubic graph signed so that the RB factor is balanced while the
/// RY and BY factors each have exactly three unbalanced circuits. Every edge
/// lies on one circuit of each of two factors, so the wanted parities are a
/// T-join in the graph on factor circuits, solved along a spanning tree.
inline std::optional<GeneratedInstance> three_odd_factors_instance(int pairs, std::uint64_t seed) {
  using enum EdgeClass;
  std::mt19937_64 rng(seed * 104729 + static_cast<std::uint64_t>(pairs));
  for (int tries = 0; tries < 50; ++tries) {
    const int ry = 3 + static_cast<int>(rng() % (pairs / 2 - 2));
    const int by = 3 + static_cast<int>(rng() % (pairs / 2 - 2));
    const auto colored = colored_cubic(pairs, ry, by, rng);
    if (!colored) continue;
    const SignedMultigraph& g = colored->graph;
    const EdgeColoring& f = *colored->coloring;
    const auto m = static_cast<std::size_t>(g.edge_count());
    const std::array<std::vector<Circuit>, 3> factors{two_factor(g, f, R, Y), two_factor(g, f, B, Y),
                                                      two_factor(g, f, R, B)};

    std::vector<std::array<int, 2>> owner(m, {-1, -1});
    std::vector<int> want;
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<int> odd(factors[k].size(), 0);
      if (k < 2) std::fill(odd.begin(), odd.begin() + 3, 1);
      std::shuffle(odd.begin(), odd.end(), rng);
      for (std::size_t i = 0; i < factors[k].size(); ++i) {
        const int node = static_cast<int>(want.size());
        want.push_back(odd[i]);
        for (EdgeId e : factors[k][i].edges) owner[e][owner[e][0] == -1 ? 0 : 1] = node;
      }
    }
    const int nodes = static_cast<int>(want.size());
    std::vector<std::vector<std::pair<int, EdgeId>>> adj(static_cast<std::size_t>(nodes));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      adj[owner[e][0]].push_back({owner[e][1], e});
      adj[owner[e][1]].push_back({owner[e][0], e});
    }
    std::vector<int> order{0}, parent(static_cast<std::size_t>(nodes), -2);
    std::vector<EdgeId> via(static_cast<std::size_t>(nodes), -1);
    parent[0] = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto [w, e] : adj[order[i]]) {
        if (parent[w] != -2) continue;
        parent[w] = order[i];
        via[w] = e;
        order.push_back(w);
      }
    }

    std::vector<Sign> signs(m, Sign::Positive);
    std::vector<int> mismatch = want;
    for (std::size_t e = 0; e < m; ++e) {
      if (rng() % 3 != 0) continue;
      signs[e] = Sign::Negative;
      mismatch[owner[e][0]] ^= 1;
      mismatch[owner[e][1]] ^= 1;
    }
    for (std::size_t i = order.size(); i-- > 1;) {
      const int v = order[i];
      if (!mismatch[v]) continue;
      signs[via[v]] = flip(signs[via[v]]);
      mismatch[v] = 0;
      mismatch[parent[v]] ^= 1;
    }
    SignedMultigraph signed_g = g.with_signs(signs);
    if (is_flow_admissible(signed_g)) return GeneratedInstance{std::move(signed_g), f, 0};
  }
  return std::nullopt;
}

}  // namespace support
