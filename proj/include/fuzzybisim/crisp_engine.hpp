#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fuzzybisim/engine_config.hpp"
#include "fuzzybisim/flg.hpp"
#include "fuzzybisim/oracle.hpp"
#include "fuzzybisim/partition.hpp"
#include "fuzzybisim/refinement.hpp"

namespace fuzzybisim {

namespace detail {

// Vertices with equal label fuzzy sets share an id.
inline std::vector<std::uint32_t> label_classes(const Flg &g) {
  std::map<LabelSet, std::uint32_t> ids;
  std::vector<std::uint32_t> out(g.vertex_count());
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    out[v] = ids.try_emplace(g.label(v), static_cast<std::uint32_t>(ids.size())).first->second;
  return out;
}

inline std::vector<RankedEdge> ranked_edges(const Flg &g, const DegreePool &pool) {
  std::vector<RankedEdge> out;
  out.reserve(g.edges().size());
  for (const auto &e : g.edges())
    out.push_back({e.src, e.label, e.dst, pool.rank(e.degree)});
  return out;
}

} // namespace detail

/// Partition of V induced by the greatest crisp bisimulation of `g`.
inline CrispPartition greatest_crisp_bisim_partition_flg(const Flg &g,
                                                         const CrispEngineConfig &cfg = {}) {
  CrispPartition result;
  if (g.vertex_count() == 0)
    return result;
  if (cfg.strategy == Strategy::baseline_fixpoint) {
    result = CrispPartition::from_equivalence(oracle::gfp_crisp_bisim_flg(g));
  } else {
    const DegreePool pool(g.degrees_used());
    auto initial = detail::label_classes(g);
    auto edges = detail::ranked_edges(g, pool);
    result = CrispPartition::from_block_ids(refine_max_signature(g.vertex_count(), initial, edges));
  }
  if (auto *log = cfg.trace())
    *log << "FLG partition (" << to_string(cfg.strategy)
         << "): " << result.to_text(&g.vertex_names()) << "\n";
  return result;
}

/// Greatest crisp bisimulation of a transition system, as a partition of S.
inline CrispPartition crisp_partition_system(const Nflts &m, const CrispEngineConfig &cfg = {}) {
  const Flg g = nflts_to_flg(m);
  const auto all = greatest_crisp_bisim_partition_flg(g, cfg);
  std::vector<std::vector<std::uint32_t>> keep;
  for (const auto &b : all.blocks())
    if (b.front() < m.state_count())
      keep.push_back(b);
  return CrispPartition(std::move(keep));
}

inline CrispPartition crisp_partition_system(const Nfts &m, const CrispEngineConfig &cfg = {}) {
  return crisp_partition_system(Nflts(m), cfg);
}

} // namespace fuzzybisim
