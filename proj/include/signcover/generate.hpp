#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "balance.hpp"
#include "coloring.hpp"
#include "graph.hpp"
#include "structure.hpp"

namespace signcover {

struct GeneratorOptions {
  int n = 4;
  double negative_probability = 0.0;
  std::uint64_t seed = 0;
  bool require_flow_admissible = false;
  bool require_colorable = false;
  int max_attempts = 1000;     // sub-seeds tried before giving up
  int pairing_retries = 1000;  // pairings per sub-seed before a new sub-seed
  std::uint64_t coloring_budget = 10'000'000;
};

struct GeneratedInstance {
  SignedMultigraph graph;
  std::optional<EdgeColoring> coloring;  // present when colorability was required
  int sub_seed = 0;
};

namespace detail {

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

/// Simple connected cubic graph from the pairing model, or nullopt when
/// every retry produced a loop, a parallel edge or a disconnected graph.
inline std::optional<std::vector<std::pair<VertexId, VertexId>>> random_cubic(std::mt19937_64& rng, int n,
                                                                              int retries) {
  std::vector<VertexId> points(static_cast<std::size_t>(3 * n));
  for (int attempt = 0; attempt < retries; ++attempt) {
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<VertexId>(i / 3);
    for (std::size_t i = points.size(); i > 1; --i) std::swap(points[i - 1], points[uniform_below(rng, i)]);
    std::vector<std::pair<VertexId, VertexId>> edges;
    bool simple = true;
    for (std::size_t i = 0; i < points.size() && simple; i += 2) {
      const VertexId a = std::min(points[i], points[i + 1]);
      const VertexId b = std::max(points[i], points[i + 1]);
      simple = a != b;
      edges.emplace_back(a, b);
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    std::vector<Edge> plain;
    for (auto [a, b] : edges) plain.push_back({a, b, Sign::Positive});
    if (!is_connected(SignedMultigraph(n, plain))) continue;
    return edges;
  }
  return std::nullopt;
}

}  // namespace detail

/// Random connected simple cubic signed graph. Each sub-seed k seeds its own
/// generator from (seed, k); the first sub-seed passing the filters wins.
inline GeneratedInstance generate_instance(const GeneratorOptions& options) {
  if (options.n < 4 || options.n % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "cubic instances need an even n >= 4");
  }
  if (!(options.negative_probability >= 0.0 && options.negative_probability <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "negative probability must lie in [0, 1]");
  }
  for (int k = 0; k < options.max_attempts; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    const auto skeleton = detail::random_cubic(rng, options.n, options.pairing_retries);
    if (!skeleton) continue;
    std::vector<Edge> edges;
    for (auto [a, b] : *skeleton) {
      edges.push_back({a, b, detail::bernoulli(rng, options.negative_probability) ? Sign::Negative : Sign::Positive});
    }
    GeneratedInstance out{SignedMultigraph(options.n, std::move(edges)), std::nullopt, k};
    if (options.require_flow_admissible && !is_flow_admissible(out.graph)) continue;
    if (options.require_colorable) {
      out.coloring = find_coloring(out.graph, options.coloring_budget);
      if (!out.coloring) continue;
    }
    return out;
  }
  throw Error(ErrorCode::LimitExceeded, "no instance passed the filters within the retry budget");
}

}  // namespace signcover
