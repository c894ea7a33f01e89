#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "fuzzybisim/crisp_engine.hpp"
#include "fuzzybisim/engine_config.hpp"
#include "fuzzybisim/flg.hpp"
#include "fuzzybisim/oracle.hpp"
#include "fuzzybisim/partition.hpp"
#include "fuzzybisim/refinement.hpp"

namespace fuzzybisim {

namespace detail {

/*
 * Under Gödel semantics the t-cuts of the greatest fuzzy bisimulation form a
 * refining chain. Z(x,x') >= t holds exactly when x, x' share a block of the
 * cut just below t and are related by the greatest crisp relation in which
 *   - labels agree after truncating every degree at t, and
 *   - every edge of degree >= t is answered by an edge of degree >= t
 *     whose target is again related.
 * Edges below t only constrain the coarser cuts, which the initial partition
 * already encodes. The chain over all degrees in use is the compact fuzzy
 * partition.
 */
class LevelwiseFuzzyRefiner {
public:
  explicit LevelwiseFuzzyRefiner(const Flg &g, std::ostream *trace)
      : g_(g), pool_(g.degrees_used()), trace_(trace) {}

  CompactFuzzyPartition run() {
    using Node = CompactFuzzyPartition::Node;
    const std::size_t n = g_.vertex_count();
    std::vector<std::uint32_t> prev(n, 0);
    std::size_t prev_count = 1;
    nodes_.assign(1, Node{});
    std::vector<std::uint32_t> pending{0}; // open tree node per block of prev
    Degree prev_level = Degree::zero();

    for (std::uint32_t rank = 1; rank < pool_.size() && prev_count < n; ++rank) {
      const Degree level = pool_.value(rank);
      auto next = refine_at(rank, prev);

      // block ids of `next` inside each block of `prev`, in vertex order
      std::vector<std::vector<std::uint32_t>> kids(prev_count);
      std::map<std::uint32_t, std::uint32_t> dense;
      for (std::uint32_t v = 0; v < n; ++v) {
        auto [it, fresh] = dense.try_emplace(next[v], static_cast<std::uint32_t>(dense.size()));
        if (fresh)
          kids[prev[v]].push_back(it->second);
        next[v] = it->second;
      }
      std::vector<std::uint32_t> open(dense.size());
      for (std::size_t b = 0; b < prev_count; ++b) {
        if (kids[b].size() == 1) {
          open[kids[b][0]] = pending[b];
          continue;
        }
        const auto parent = pending[b];
        nodes_[parent].degree = prev_level;
        for (auto k : kids[b]) {
          const auto child = static_cast<std::uint32_t>(nodes_.size());
          Node c;
          c.parent = static_cast<std::int32_t>(parent);
          nodes_.push_back(std::move(c));
          nodes_[parent].children.push_back(child);
          open[k] = child;
        }
      }
      if (trace_) {
        *trace_ << "  level " << level.to_string() << ": "
                << CrispPartition::from_block_ids(next).to_text(&g_.vertex_names()) << "\n";
      }
      prev = std::move(next);
      prev_count = dense.size();
      pending = std::move(open);
      prev_level = level;
    }

    // blocks that survive to the top level are crisp blocks
    for (std::uint32_t v = 0; v < n; ++v)
      nodes_[pending[prev[v]]].elements.push_back(v);
    for (auto id : pending)
      nodes_[id].degree = Degree::one();
    return CompactFuzzyPartition(std::move(nodes_));
  }

private:
  std::vector<std::uint32_t> refine_at(std::uint32_t rank, const std::vector<std::uint32_t> &prev) {
    constexpr std::uint32_t top = UINT32_MAX;
    const std::size_t n = g_.vertex_count();
    std::map<std::pair<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>,
             std::uint32_t>
        ids;
    std::vector<std::uint32_t> initial(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> key;
      for (const auto &[p, d] : g_.label(v)) {
        auto r = pool_.rank(d);
        key.emplace_back(p, r >= rank ? top : r);
      }
      initial[v] = ids.try_emplace({prev[v], std::move(key)}, static_cast<std::uint32_t>(ids.size()))
                       .first->second;
    }
    std::vector<RankedEdge> edges;
    edges.reserve(g_.edges().size());
    for (const auto &e : g_.edges())
      if (pool_.rank(e.degree) >= rank)
        edges.push_back({e.src, e.label, e.dst, 1});
    return refine_max_signature(n, initial, edges);
  }

  const Flg &g_;
  DegreePool pool_;
  std::ostream *trace_;
  std::vector<CompactFuzzyPartition::Node> nodes_;
};

} // namespace detail

/// Compact fuzzy partition of the greatest fuzzy bisimulation of `g`.
inline CompactFuzzyPartition greatest_fuzzy_bisim_cfp_flg(const Flg &g,
                                                          const FuzzyEngineConfig &cfg = {}) {
  if (g.vertex_count() == 0)
    throw PartitionError("graph without vertices");
  CompactFuzzyPartition result;
  if (cfg.strategy == Strategy::baseline_fixpoint)
    result = cfp_from_relation(oracle::gfp_fuzzy_bisim_flg(g));
  else
    result = detail::LevelwiseFuzzyRefiner(g, cfg.trace()).run();
  if (auto *log = cfg.trace())
    *log << "FLG fuzzy partition (" << to_string(cfg.strategy)
         << "): " << result.to_text(&g.vertex_names()) << "\n";
  return result;
}

/// Greatest fuzzy bisimulation of a transition system, as a compact fuzzy
/// partition of S.
inline CompactFuzzyPartition fuzzy_partition_system(const Nflts &m,
                                                    const FuzzyEngineConfig &cfg = {}) {
  const Flg g = nflts_to_flg(m);
  auto b = greatest_fuzzy_bisim_cfp_flg(g, cfg);
  if (m.base().transitions().empty())
    return b;
  std::vector<CompactFuzzyPartition> keep;
  for (std::uint32_t c : b.root().children)
    if (b.any_element(c) < m.state_count())
      keep.push_back(b.subtree(c));
  if (keep.size() == 1)
    return std::move(keep.front());
  return CompactFuzzyPartition::fuzzy_block(Degree::zero(), std::move(keep));
}

inline CompactFuzzyPartition fuzzy_partition_system(const Nfts &m,
                                                    const FuzzyEngineConfig &cfg = {}) {
  return fuzzy_partition_system(Nflts(m), cfg);
}

} // namespace fuzzybisim
