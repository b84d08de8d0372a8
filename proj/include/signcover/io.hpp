#pragma once

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "coloring.hpp"
#include "graph.hpp"

namespace signcover {

struct GraphFile {
  SignedMultigraph graph;
  std::optional<EdgeColoring> coloring;
};

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

/// Whitespace-separated tokens of every non-blank line, comments removed,
/// each with its 1-based line number.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> tokenize(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (!tokens.empty()) out.emplace_back(number, std::move(tokens));
  }
  return out;
}

inline long long parse_int(const std::string& token, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    const long long value = std::stoll(token, &used);
    if (used != token.size()) parse_fail(line, std::string("bad ") + what + " '" + token + "'");
    return value;
  } catch (const std::logic_error&) {
    parse_fail(line, std::string("bad ") + what + " '" + token + "'");
  }
}

}  // namespace detail

/// Reads the `n m` header and m lines `u v s [c]` (s is + or -, c one of
/// R, B, Y). Edge ids follow line order.
inline GraphFile parse_graph(std::string_view text) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) detail::parse_fail(1, "missing header 'n m'");
  const auto& [header_line, header] = lines.front();
  if (header.size() != 2) detail::parse_fail(header_line, "header must be 'n m'");
  const long long n = detail::parse_int(header[0], header_line, "vertex count");
  const long long m = detail::parse_int(header[1], header_line, "edge count");
  if (n < 0 || m < 0) detail::parse_fail(header_line, "counts must be non-negative");
  if (lines.size() - 1 != static_cast<std::size_t>(m)) {
    const std::size_t at = lines.size() - 1 < static_cast<std::size_t>(m) ? lines.back().first + 1
                                                                            : lines[static_cast<std::size_t>(m) + 1].first;
    detail::parse_fail(at, "header declares " + std::to_string(m) + " edges, found " + std::to_string(lines.size() - 1));
  }

  std::vector<Edge> edges;
  std::vector<EdgeClass> classes;
  std::optional<bool> colored;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [number, tokens] = lines[i];
    if (tokens.size() != 3 && tokens.size() != 4) detail::parse_fail(number, "edge line must be 'u v s [c]'");
    const long long u = detail::parse_int(tokens[0], number, "endpoint");
    const long long v = detail::parse_int(tokens[1], number, "endpoint");
    if (u < 0 || u >= n || v < 0 || v >= n) detail::parse_fail(number, "endpoint out of range");
    if (tokens[2] != "+" && tokens[2] != "-") detail::parse_fail(number, "sign must be + or -");
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v),
                     tokens[2] == "+" ? Sign::Positive : Sign::Negative});
    const bool has_color = tokens.size() == 4;
    if (colored && *colored != has_color) detail::parse_fail(number, "colors must be given on all edges or none");
    colored = has_color;
    if (has_color) {
      const auto c = tokens[3].size() == 1 ? class_from_char(tokens[3][0]) : std::nullopt;
      if (!c) detail::parse_fail(number, "color must be R, B or Y");
      classes.push_back(*c);
    }
  }
  GraphFile file{SignedMultigraph(static_cast<int>(n), std::move(edges)), std::nullopt};
  if (colored.value_or(false)) {
    EdgeColoring f{std::move(classes)};
    if (!file.graph.is_cubic() || !validate_coloring(file.graph, f).ok()) {
      throw Error(ErrorCode::ParseError, "coloring in file is not a proper 3-edge coloring");
    }
    file.coloring = std::move(f);
  }
  return file;
}

inline std::string write_graph(const SignedMultigraph& g, const std::optional<EdgeColoring>& coloring = std::nullopt) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    out << edge.u << ' ' << edge.v << ' ' << (edge.negative() ? '-' : '+');
    if (coloring) out << ' ' << to_char((*coloring)[e]);
    out << '\n';
  }
  return out.str();
}

namespace detail {

inline void write_ids(std::ostream& out, std::span<const EdgeId> ids) {
  for (EdgeId e : ids) out << ' ' << e;
}

}  // namespace detail

/// One member per line (`circuit e...` or `barbell e... | e... | e...`),
/// then `length L of M target all|e...`.
inline std::string write_cover(const SignedMultigraph& g, const Cover& cover) {
  std::ostringstream out;
  for (const SignCircuit& sc : cover.members) {
    if (!sc.is_barbell()) {
      out << "circuit";
      detail::write_ids(out, sc.circuit.edges);
    } else {
      out << "barbell";
      detail::write_ids(out, sc.circuit.edges);
      out << " |";
      detail::write_ids(out, sc.path.edges);
      out << " |";
      detail::write_ids(out, sc.other.edges);
    }
    out << '\n';
  }
  out << "length " << cover_length(cover) << " of " << g.edge_count() << " target";
  if (cover.target == all_edges(g)) {
    out << " all";
  } else {
    detail::write_ids(out, cover.target);
  }
  out << '\n';
  return out.str();
}

struct CoverFile {
  Cover cover;
  std::optional<std::int64_t> declared_length;
  std::optional<std::int64_t> declared_edges;
};

namespace detail {

/// Canonical circuit, or the raw edge list when the edges do not form a
/// circuit (left for the verifier to reject).
inline Circuit read_circuit(const SignedMultigraph& g, const std::vector<EdgeId>& edges) {
  if (auto c = make_circuit(g, edges)) return *std::move(c);
  return Circuit{{}, edges};
}

inline Path read_path(const SignedMultigraph& g, const std::vector<EdgeId>& edges, const Circuit& first,
                      const Circuit& second) {
  const std::set<VertexId> on_first(first.vertices.begin(), first.vertices.end());
  if (edges.empty()) {
    std::vector<VertexId> shared;
    for (VertexId v : second.vertices) {
      if (on_first.count(v)) shared.push_back(v);
    }
    if (shared.size() == 1) return Path{{shared.front()}, {}};
    return Path{{first.vertices.empty() ? VertexId{0} : first.vertices.front()}, {}};
  }
  const EdgeId head = edges.front();
  if (head >= 0 && head < g.edge_count()) {
    const VertexId start = on_first.count(g.edge(head).u) ? g.edge(head).u : g.edge(head).v;
    if (auto p = make_path(g, edges, start)) return *std::move(p);
  }
  return Path{{}, edges};
}

}  // namespace detail

inline CoverFile parse_cover(std::string_view text, const SignedMultigraph& g) {
  CoverFile file;
  bool summary_seen = false;
  for (const auto& [number, tokens] : detail::tokenize(text)) {
    if (summary_seen) detail::parse_fail(number, "content after the summary line");
    const std::string& kind = tokens.front();
    if (kind == "circuit") {
      std::vector<EdgeId> edges;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        edges.push_back(static_cast<EdgeId>(detail::parse_int(tokens[i], number, "edge id")));
      }
      file.cover.members.push_back(SignCircuit::balanced(detail::read_circuit(g, edges)));
    } else if (kind == "barbell") {
      std::vector<std::vector<EdgeId>> parts(1);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i] == "|") {
          parts.emplace_back();
        } else {
          parts.back().push_back(static_cast<EdgeId>(detail::parse_int(tokens[i], number, "edge id")));
        }
      }
      if (parts.size() != 3) detail::parse_fail(number, "barbell needs exactly two '|' separators");
      Circuit first = detail::read_circuit(g, parts[0]);
      Circuit second = detail::read_circuit(g, parts[2]);
      Path path = detail::read_path(g, parts[1], first, second);
      file.cover.members.push_back(SignCircuit::barbell(std::move(first), std::move(path), std::move(second)));
    } else if (kind == "length") {
      if (tokens.size() < 5 || tokens[2] != "of" || tokens[4] != "target") {
        detail::parse_fail(number, "summary must be 'length L of M target all|ids'");
      }
      file.declared_length = detail::parse_int(tokens[1], number, "length");
      file.declared_edges = detail::parse_int(tokens[3], number, "edge count");
      if (tokens.size() == 6 && tokens[5] == "all") {
        file.cover.target = all_edges(g);
      } else {
        std::vector<EdgeId> target;
        for (std::size_t i = 5; i < tokens.size(); ++i) {
          target.push_back(static_cast<EdgeId>(detail::parse_int(tokens[i], number, "edge id")));
        }
        file.cover.target = sorted_unique(std::move(target));
      }
      summary_seen = true;
    } else {
      detail::parse_fail(number, "unknown line kind '" + kind + "'");
    }
  }
  if (!summary_seen) throw Error(ErrorCode::ParseError, "cover file has no summary line");
  return file;
}

}  // namespace signcover
