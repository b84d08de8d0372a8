#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "balance.hpp"
#include "circuit.hpp"
#include "cycle_forest.hpp"
#include "graph.hpp"
#include "tjoin.hpp"
#include "trace.hpp"

namespace signcover {

struct PairingOptions {
  /// Accept an odd number (at least 3) of unbalanced blocks in a tree by
  /// using one block in two barbells.
  bool allow_odd = false;
};

namespace detail {

inline BuildTrace& trace_or(BuildTrace* trace, BuildTrace& local) { return trace ? *trace : local; }

inline std::string join_ids(std::span<const EdgeId> ids) {
  std::string out;
  for (EdgeId e : ids) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

}  // namespace detail

/// Balanced blocks become members as they are; unbalanced blocks in each
/// tree of the forest are paired by exact minimum-weight matching on
/// connector length, each pair giving one barbell.
inline Cover paired_barbell_cover(const SignedMultigraph& g, const CycleForest& forest,
                                  std::span<const EdgeId> must_cover, PairingOptions options = {},
                                  BuildTrace* trace = nullptr) {
  BuildTrace local;
  BuildTrace& t = detail::trace_or(trace, local);
  const BlockTree tree(g, forest);

  Cover cover;
  cover.target = sorted_unique(std::vector<EdgeId>(must_cover.begin(), must_cover.end()));
  std::map<int, std::vector<std::size_t>> unbalanced;
  for (std::size_t i = 0; i < forest.blocks.size(); ++i) {
    if (circuit_sign(g, forest.blocks[i]) == Sign::Positive) {
      cover.members.push_back(SignCircuit::balanced(forest.blocks[i]));
    } else {
      unbalanced[tree.component_of_block(i)].push_back(i);
    }
  }

  for (const auto& [component, blocks] : unbalanced) {
    const std::size_t k = blocks.size();
    if (k % 2 != 0 && (!options.allow_odd || k == 1)) {
      throw Error(ErrorCode::PreconditionViolated, "tree of blocks at block " + std::to_string(blocks.front()) +
                                                       " has " + std::to_string(k) + " unbalanced blocks");
    }
    std::vector<std::vector<std::optional<Path>>> link(k, std::vector<std::optional<Path>>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        link[i][j] = tree.connector(blocks[i], blocks[j]);
        if (!link[i][j]) {
          throw Error(ErrorCode::PreconditionViolated, "blocks " + std::to_string(blocks[i]) + " and " +
                                                           std::to_string(blocks[j]) + " have no connector");
        }
      }
    }
    // slots index into `blocks`; an odd tree repeats one block.
    auto solve = [&](const std::vector<std::size_t>& slots) {
      const std::size_t s = slots.size();
      std::vector<std::vector<std::int64_t>> w(s, std::vector<std::int64_t>(s, kForbiddenPair));
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
          const std::size_t a = std::min(slots[i], slots[j]);
          const std::size_t b = std::max(slots[i], slots[j]);
          if (a != b) w[i][j] = static_cast<std::int64_t>(link[a][b]->length());
        }
      }
      return min_weight_perfect_matching(w);
    };
    std::vector<std::size_t> slots(k);
    for (std::size_t i = 0; i < k; ++i) slots[i] = i;
    Matching best;
    std::vector<std::size_t> best_slots = slots;
    if (k % 2 == 0) {
      best = solve(slots);
    } else {
      std::int64_t best_total = -1;
      for (std::size_t d = 0; d < k; ++d) {
        std::vector<std::size_t> trial = slots;
        trial.push_back(d);
        const Matching m = solve(trial);
        const std::int64_t total = m.cost + static_cast<std::int64_t>(forest.blocks[blocks[d]].length());
        if (best_total < 0 || total < best_total) {
          best_total = total;
          best = m;
          best_slots = trial;
        }
      }
      t.note("odd tree: block " + std::to_string(blocks[best_slots.back()]) + " used twice");
    }
    for (auto [i, j] : best.pairs) {
      const std::size_t a = std::min(best_slots[i], best_slots[j]);
      const std::size_t b = std::max(best_slots[i], best_slots[j]);
      const Path& p = *link[a][b];
      cover.members.push_back(SignCircuit::barbell(forest.blocks[blocks[a]], p, forest.blocks[blocks[b]]));
      t.note("barbell blocks " + std::to_string(blocks[a]) + "," + std::to_string(blocks[b]) + " connector " +
             std::to_string(p.length()));
    }
  }

  const std::vector<EdgeId> covered = forest.block_edges();
  for (EdgeId e : cover.target) {
    if (!std::binary_search(covered.begin(), covered.end(), e)) {
      throw Error(ErrorCode::PreconditionViolated, "edge " + std::to_string(e) + " is not on a block");
    }
  }
  return cover;
}

/// Cover of the blocks of an edge set whose bridgeless-blocks are circuits
/// and whose total sign is positive; asserts 3L <= 4|edges|.
inline Cover positive_blocks_cover(const SignedMultigraph& g, std::span<const EdgeId> edge_set,
                                   BuildTrace* trace = nullptr) {
  BuildTrace local;
  BuildTrace& t = detail::trace_or(trace, local);
  const auto edges = sorted_unique(std::vector<EdgeId>(edge_set.begin(), edge_set.end()));
  const CycleForest forest = make_cycle_forest(g, edges);
  const auto block_edges = forest.block_edges();
  if (edge_set_sign(g, block_edges) != Sign::Positive) {
    throw Error(ErrorCode::PreconditionViolated, "blocks carry an odd number of negative edges");
  }
  Cover cover = paired_barbell_cover(g, forest, block_edges, {}, &t);
  assert_bound(t, "positive_blocks_cover", cover_length(cover),
               Fraction::of(4 * static_cast<std::int64_t>(edges.size()), 3));
  return cover;
}

/// Cover of the circuits of a connected flow-admissible cycle-tree;
/// asserts 2L <= 3|E(H')|.
inline Cover cycle_tree_cover(const SignedMultigraph& g, const CycleForest& h, BuildTrace* trace = nullptr) {
  BuildTrace local;
  BuildTrace& t = detail::trace_or(trace, local);
  const BlockTree tree(g, h);
  if (tree.component_count() != 1) throw Error(ErrorCode::PreconditionViolated, "cycle-tree is not connected");
  const auto edges = h.edges();
  if (!is_flow_admissible(edge_subgraph(g, edges, /*compact=*/true).graph)) {
    throw Error(ErrorCode::PreconditionViolated, "cycle-tree is not flow-admissible");
  }
  PairingOptions options;
  options.allow_odd = true;
  Cover cover = paired_barbell_cover(g, h, h.block_edges(), options, &t);
  assert_bound(t, "cycle_tree_cover", cover_length(cover), Fraction::of(3 * static_cast<std::int64_t>(edges.size()), 2));
  return cover;
}

}  // namespace signcover
