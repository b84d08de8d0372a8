#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "balance.hpp"
#include "circuit.hpp"
#include "graph.hpp"

namespace signcover {

enum class Clause {
  UnknownEdge,
  RepeatedEdge,
  NotTwoRegular,
  Disconnected,
  BrokenWalk,
  WrongParity,
  CircuitsShareEdge,
  SharedVertexCount,
  TrivialPath,
  NontrivialPath,
  BrokenPath,
  PathTouchesCircuit,
  PathEndpoint,
};

inline const char* to_string(Clause c) {
  switch (c) {
    case Clause::UnknownEdge: return "unknown-edge";
    case Clause::RepeatedEdge: return "repeated-edge";
    case Clause::NotTwoRegular: return "not-2-regular";
    case Clause::Disconnected: return "disconnected";
    case Clause::BrokenWalk: return "broken-walk";
    case Clause::WrongParity: return "wrong-parity";
    case Clause::CircuitsShareEdge: return "circuits-share-edge";
    case Clause::SharedVertexCount: return "shared-vertex-count";
    case Clause::TrivialPath: return "trivial-path";
    case Clause::NontrivialPath: return "nontrivial-path";
    case Clause::BrokenPath: return "broken-path";
    case Clause::PathTouchesCircuit: return "path-touches-circuit";
    case Clause::PathEndpoint: return "path-endpoint";
  }
  return "?";
}

struct Violation {
  Clause clause;
  std::string detail;
};

struct ValidityReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(Clause c) const {
    return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.clause == c; });
  }
  void add(Clause c, std::string detail) { violations.push_back({c, std::move(detail)}); }
};

namespace detail {

inline bool check_edges_exist(const SignedMultigraph& g, std::span<const EdgeId> edges, const std::string& what,
                              ValidityReport& report) {
  bool fine = true;
  std::set<EdgeId> seen;
  for (EdgeId e : edges) {
    if (e < 0 || e >= g.edge_count()) {
      report.add(Clause::UnknownEdge, what + ": edge " + std::to_string(e));
      fine = false;
    } else if (!seen.insert(e).second) {
      report.add(Clause::RepeatedEdge, what + ": edge " + std::to_string(e));
      fine = false;
    }
  }
  return fine;
}

/// Checks the circuit structure (not its sign). Returns true when the
/// structure is sound enough for sign and incidence checks.
inline bool check_circuit(const SignedMultigraph& g, const Circuit& c, const std::string& what,
                          ValidityReport& report) {
  if (c.edges.empty()) {
    report.add(Clause::NotTwoRegular, what + ": no edges");
    return false;
  }
  if (!check_edges_exist(g, c.edges, what, report)) return false;
  std::map<VertexId, int> degree;
  for (EdgeId e : c.edges) {
    ++degree[g.edge(e).u];
    ++degree[g.edge(e).v];
  }
  bool fine = true;
  for (const auto& [v, d] : degree) {
    if (d != 2) {
      report.add(Clause::NotTwoRegular, what + ": vertex " + std::to_string(v) + " has degree " + std::to_string(d));
      fine = false;
    }
  }
  if (fine && !make_circuit(g, c.edges)) {
    report.add(Clause::Disconnected, what);
    fine = false;
  }
  if (c.vertices.size() != c.edges.size()) {
    report.add(Clause::BrokenWalk, what + ": vertex and edge counts differ");
    return false;
  }
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const Edge& e = g.edge(c.edges[i]);
    const VertexId from = c.vertices[i];
    const VertexId to = c.vertices[(i + 1) % c.vertices.size()];
    if (!((e.u == from && e.v == to) || (e.v == from && e.u == to))) {
      report.add(Clause::BrokenWalk, what + ": edge " + std::to_string(c.edges[i]) + " does not join the walk");
      fine = false;
    }
  }
  return fine;
}

inline bool check_path(const SignedMultigraph& g, const Path& p, ValidityReport& report) {
  if (!check_edges_exist(g, p.edges, "path", report)) return false;
  if (p.vertices.size() != p.edges.size() + 1) {
    report.add(Clause::BrokenPath, "vertex and edge counts differ");
    return false;
  }
  bool fine = true;
  std::set<VertexId> seen;
  for (VertexId v : p.vertices) {
    if (!seen.insert(v).second) {
      report.add(Clause::BrokenPath, "vertex " + std::to_string(v) + " repeats");
      fine = false;
    }
  }
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const Edge& e = g.edge(p.edges[i]);
    const VertexId a = p.vertices[i];
    const VertexId b = p.vertices[i + 1];
    if (!((e.u == a && e.v == b) || (e.v == a && e.u == b))) {
      report.add(Clause::BrokenPath, "edge " + std::to_string(p.edges[i]) + " does not join the walk");
      fine = false;
    }
  }
  return fine;
}

}  // namespace detail

inline ValidityReport validate_sign_circuit(const SignedMultigraph& g, const SignCircuit& sc) {
  ValidityReport report;
  if (!sc.is_barbell()) {
    if (detail::check_circuit(g, sc.circuit, "circuit", report) &&
        circuit_sign(g, sc.circuit) != Sign::Positive) {
      report.add(Clause::WrongParity, "balanced circuit has an odd number of negative edges");
    }
    return report;
  }

  const bool first_ok = detail::check_circuit(g, sc.circuit, "first circuit", report);
  const bool second_ok = detail::check_circuit(g, sc.other, "second circuit", report);
  if (first_ok && circuit_sign(g, sc.circuit) != Sign::Negative) {
    report.add(Clause::WrongParity, "first circuit of a barbell is balanced");
  }
  if (second_ok && circuit_sign(g, sc.other) != Sign::Negative) {
    report.add(Clause::WrongParity, "second circuit of a barbell is balanced");
  }
  if (!first_ok || !second_ok) return report;

  const std::set<EdgeId> e1(sc.circuit.edges.begin(), sc.circuit.edges.end());
  const std::set<EdgeId> e2(sc.other.edges.begin(), sc.other.edges.end());
  for (EdgeId e : e1) {
    if (e2.count(e)) report.add(Clause::CircuitsShareEdge, "edge " + std::to_string(e));
  }
  const std::set<VertexId> v1(sc.circuit.vertices.begin(), sc.circuit.vertices.end());
  const std::set<VertexId> v2(sc.other.vertices.begin(), sc.other.vertices.end());
  std::vector<VertexId> shared;
  std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(shared));

  if (sc.kind == SignCircuitKind::ShortBarbell) {
    if (!sc.path.trivial()) report.add(Clause::NontrivialPath, "short barbell carries path edges");
    if (shared.size() != 1) {
      report.add(Clause::SharedVertexCount,
                 "short barbell circuits share " + std::to_string(shared.size()) + " vertices");
    } else if (sc.path.vertices.size() == 1 && sc.path.vertices.front() != shared.front()) {
      report.add(Clause::PathEndpoint, "trivial path is not at the shared vertex");
    }
    return report;
  }

  if (!shared.empty()) {
    report.add(Clause::SharedVertexCount,
               "long barbell circuits share " + std::to_string(shared.size()) + " vertices");
  }
  if (sc.path.trivial()) {
    report.add(Clause::TrivialPath, "long barbell has an empty path");
    return report;
  }
  if (!detail::check_path(g, sc.path, report)) return report;
  if (!v1.count(sc.path.front())) report.add(Clause::PathEndpoint, "path does not start on the first circuit");
  if (!v2.count(sc.path.back())) report.add(Clause::PathEndpoint, "path does not end on the second circuit");
  for (std::size_t i = 1; i + 1 < sc.path.vertices.size(); ++i) {
    const VertexId v = sc.path.vertices[i];
    if (v1.count(v) || v2.count(v)) {
      report.add(Clause::PathTouchesCircuit, "inner path vertex " + std::to_string(v) + " lies on a circuit");
    }
  }
  for (EdgeId e : sc.path.edges) {
    if (e1.count(e) || e2.count(e)) {
      report.add(Clause::PathTouchesCircuit, "path edge " + std::to_string(e) + " lies on a circuit");
    }
  }
  return report;
}

struct CoverReport {
  std::vector<std::pair<std::size_t, ValidityReport>> invalid_members;
  std::vector<EdgeId> uncovered;
  std::vector<int> multiplicity;  // per edge id of the host graph

  bool ok() const { return invalid_members.empty() && uncovered.empty(); }
};

inline CoverReport validate_cover(const SignedMultigraph& g, const Cover& cover) {
  CoverReport report;
  report.multiplicity.assign(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    ValidityReport member = validate_sign_circuit(g, cover.members[i]);
    if (!member.ok()) report.invalid_members.emplace_back(i, std::move(member));
    for (EdgeId e : cover.members[i].edges()) {
      if (e >= 0 && e < g.edge_count()) ++report.multiplicity[e];
    }
  }
  for (EdgeId e : cover.target) {
    if (e < 0 || e >= g.edge_count() || report.multiplicity[e] == 0) report.uncovered.push_back(e);
  }
  return report;
}

}  // namespace signcover
