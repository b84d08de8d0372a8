#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "graph.hpp"
#include "structure.hpp"

namespace signcover {

enum class EdgeClass : std::uint8_t { R = 0, B = 1, Y = 2 };

inline constexpr std::array<EdgeClass, 3> kEdgeClasses{EdgeClass::R, EdgeClass::B, EdgeClass::Y};

inline char to_char(EdgeClass c) { return "RBY"[static_cast<int>(c)]; }

inline std::optional<EdgeClass> class_from_char(char ch) {
  switch (ch) {
    case 'R': return EdgeClass::R;
    case 'B': return EdgeClass::B;
    case 'Y': return EdgeClass::Y;
    default: return std::nullopt;
  }
}

/// Class of every edge, indexed by edge id.
struct EdgeColoring {
  std::vector<EdgeClass> classes;

  EdgeClass operator[](EdgeId e) const { return classes.at(static_cast<std::size_t>(e)); }
  std::size_t size() const { return classes.size(); }
  friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;
};

struct ColoringReport {
  bool size_mismatch = false;
  std::vector<VertexId> conflicts;  // vertices whose incident edges repeat a class

  bool ok() const { return !size_mismatch && conflicts.empty(); }
};

inline ColoringReport validate_coloring(const SignedMultigraph& g, const EdgeColoring& f) {
  if (!g.is_cubic()) throw Error(ErrorCode::NotCubic, "coloring check needs a cubic graph");
  ColoringReport report;
  if (f.size() != static_cast<std::size_t>(g.edge_count())) {
    report.size_mismatch = true;
    return report;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    unsigned used = 0;
    bool clash = false;
    for (const Incidence& inc : g.incident(v)) {
      const unsigned bit = 1u << static_cast<int>(f[inc.edge]);
      // A loop occupies two slots of the same class.
      if ((used & bit) || inc.neighbor == v) clash = true;
      used |= bit;
    }
    if (clash) report.conflicts.push_back(v);
  }
  return report;
}

/// Backtracking over edges in id order, classes tried R < B < Y, with the
/// edges at vertex 0 pinned to R, B, Y. Returns nullopt when no coloring
/// exists and throws BudgetExceeded when the node budget runs out first.
inline std::optional<EdgeColoring> find_coloring(const SignedMultigraph& g,
                                                 std::uint64_t node_budget = 10'000'000) {
  if (!g.is_cubic()) throw Error(ErrorCode::NotCubic, "edge coloring search needs a cubic graph");
  if (g.has_loops()) return std::nullopt;
  const auto m = static_cast<std::size_t>(g.edge_count());
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (m == 0) return EdgeColoring{};

  std::vector<int> assigned(m, -1);
  std::vector<unsigned> used(n, 0);
  auto place = [&](EdgeId e, int c) {
    assigned[e] = c;
    used[g.edge(e).u] |= 1u << c;
    used[g.edge(e).v] |= 1u << c;
  };
  auto unplace = [&](EdgeId e) {
    const int c = assigned[e];
    used[g.edge(e).u] &= ~(1u << c);
    used[g.edge(e).v] &= ~(1u << c);
    assigned[e] = -1;
  };

  if (n > 0) {
    std::vector<EdgeId> pinned;
    for (const Incidence& inc : g.incident(0)) pinned.push_back(inc.edge);
    std::sort(pinned.begin(), pinned.end());
    for (std::size_t i = 0; i < pinned.size(); ++i) place(pinned[i], static_cast<int>(i));
  }

  std::uint64_t nodes = 0;
  // Explicit stack of (edge index, next class to try).
  std::vector<std::pair<std::size_t, int>> stack;
  auto next_free = [&](std::size_t i) {
    while (i < m && assigned[i] != -1) ++i;
    return i;
  };
  std::size_t index = next_free(0);
  int start_class = 0;
  while (true) {
    if (index == m) {
      EdgeColoring f;
      f.classes.reserve(m);
      for (int c : assigned) f.classes.push_back(static_cast<EdgeClass>(c));
      return f;
    }
    const Edge& e = g.edge(static_cast<EdgeId>(index));
    bool placed = false;
    for (int c = start_class; c < 3; ++c) {
      if (++nodes > node_budget) {
        throw Error(ErrorCode::BudgetExceeded, "edge coloring search exceeded its node budget");
      }
      if ((used[e.u] | used[e.v]) & (1u << c)) continue;
      place(static_cast<EdgeId>(index), c);
      stack.emplace_back(index, c + 1);
      placed = true;
      break;
    }
    if (placed) {
      index = next_free(index + 1);
      start_class = 0;
      continue;
    }
    if (stack.empty()) return std::nullopt;
    const auto [prev, resume] = stack.back();
    stack.pop_back();
    unplace(static_cast<EdgeId>(prev));
    index = prev;
    start_class = resume;
  }
}

/// Parity of the number of negative edges in one class.
inline int class_negativity(const SignedMultigraph& g, const EdgeColoring& f, EdgeClass c) {
  int parity = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (f[e] == c && g.edge(e).negative()) parity ^= 1;
  }
  return parity;
}

/// Renames classes so that R and B carry the same negativity parity.
/// Permutations are tried identity first, then in lexicographic order of
/// (old class now called R, ... called B, ... called Y).
inline EdgeColoring relabel_for_parity(const SignedMultigraph& g, const EdgeColoring& f) {
  const std::array<int, 3> parity{class_negativity(g, f, EdgeClass::R), class_negativity(g, f, EdgeClass::B),
                                  class_negativity(g, f, EdgeClass::Y)};
  std::array<int, 3> perm{0, 1, 2};  // perm[new] = old
  do {
    if (parity[perm[0]] == parity[perm[1]]) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::array<EdgeClass, 3> renamed{};
  for (int fresh = 0; fresh < 3; ++fresh) renamed[perm[fresh]] = static_cast<EdgeClass>(fresh);
  EdgeColoring out = f;
  for (auto& c : out.classes) c = renamed[static_cast<int>(c)];
  return out;
}

/// Circuits of the 2-factor formed by two classes, each in canonical form,
/// listed by smallest vertex.
inline std::vector<Circuit> two_factor(const SignedMultigraph& g, const EdgeColoring& f, EdgeClass a, EdgeClass b) {
  if (a == b) throw Error(ErrorCode::InvalidArgument, "two_factor needs two distinct classes");
  EdgeMask keep(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) keep[e] = f[e] == a || f[e] == b;
  std::vector<Circuit> out;
  for (const Subgraph& part : group_by_label(g, component_labels(g, keep), keep)) {
    if (part.edges.empty()) {
      throw Error(ErrorCode::InvalidArgument, "two classes do not span vertex " + std::to_string(part.vertices[0]));
    }
    auto c = make_circuit(g, part.edges);
    if (!c) throw Error(ErrorCode::InvalidArgument, "two classes do not induce a 2-factor");
    out.push_back(*std::move(c));
  }
  return out;
}

/// Exchanges classes a and b on the edges of a circuit that alternates
/// between them.
inline EdgeColoring swap_on_circuit(const EdgeColoring& f, const Circuit& c, EdgeClass a, EdgeClass b) {
  const std::size_t k = c.edges.size();
  for (std::size_t i = 0; i < k; ++i) {
    const EdgeClass here = f[c.edges[i]];
    const EdgeClass next = f[c.edges[(i + 1) % k]];
    if ((here != a && here != b) || (k > 1 && here == next)) {
      throw Error(ErrorCode::InvalidArgument, "circuit does not alternate between the two classes");
    }
  }
  EdgeColoring out = f;
  for (EdgeId e : c.edges) out.classes[e] = f[e] == a ? b : a;
  return out;
}

}  // namespace signcover
