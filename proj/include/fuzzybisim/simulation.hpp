#pragma once

#include <cstdint>
#include <deque>
#include <variant>
#include <vector>

#include "fuzzybisim/crisp_engine.hpp"
#include "fuzzybisim/engine_config.hpp"
#include "fuzzybisim/flg.hpp"
#include "fuzzybisim/fuzzy_engine.hpp"
#include "fuzzybisim/oracle.hpp"
#include "fuzzybisim/relation.hpp"

namespace fuzzybisim {

namespace detail {

// Decreasing fixpoint over V × V′ driven by a worklist of pairs whose value
// may have to drop. `lower(x, x2)` returns true if it lowered the pair; the
// pairs (p, p2) with edges p -r-> x and p2 -r-> x2 are then re-queued.
template <typename Lower>
void simulation_worklist(const Flg &g, const Flg &g2, Lower &&lower) {
  const std::size_t n2 = g2.vertex_count();
  std::vector<char> queued(g.vertex_count() * n2, 1);
  std::deque<std::pair<std::uint32_t, std::uint32_t>> work;
  for (std::uint32_t x = 0; x < g.vertex_count(); ++x)
    for (std::uint32_t x2 = 0; x2 < n2; ++x2)
      work.emplace_back(x, x2);
  while (!work.empty()) {
    auto [y, y2] = work.front();
    work.pop_front();
    queued[y * n2 + y2] = 0;
    if (!lower(y, y2))
      continue;
    for (auto i : g.in_edges(y)) {
      const auto &e = g.edges()[i];
      for (auto j : g2.in_edges(y2)) {
        const auto &e2 = g2.edges()[j];
        if (e2.label != e.label)
          continue;
        char &q = queued[e.src * n2 + e2.src];
        if (!q) {
          q = 1;
          work.emplace_back(e.src, e2.src);
        }
      }
    }
  }
}

} // namespace detail

/// Greatest crisp simulation between two FLGs over the same alphabets.
/// May be empty.
inline CrispRelation greatest_crisp_simulation_flg(const Flg &g, const Flg &g2_in,
                                                   const EngineConfig &cfg = {}) {
  const Flg g2 = align_flg(g2_in, g);
  if (cfg.strategy == Strategy::baseline_fixpoint)
    return oracle::gfp_crisp_sim_flg(g, g2);
  CrispRelation z(g.vertex_count(), g2.vertex_count());
  for (std::uint32_t x = 0; x < g.vertex_count(); ++x)
    for (std::uint32_t x2 = 0; x2 < g2.vertex_count(); ++x2)
      if (g.label(x).leq(g2.label(x2)))
        z.insert(x, x2);
  detail::simulation_worklist(g, g2, [&](std::uint32_t x, std::uint32_t x2) {
    if (!z.contains(x, x2) ||
        oracle::detail::crisp_forward_ok(oracle::detail::contains(z), g, g2, x, x2, nullptr))
      return false;
    z.erase(x, x2);
    return true;
  });
  return z;
}

/// Greatest fuzzy simulation (Gödel) between two FLGs over the same alphabets.
inline FuzzyRelation greatest_fuzzy_simulation_flg(const Flg &g, const Flg &g2_in,
                                                   const EngineConfig &cfg = {}) {
  const Flg g2 = align_flg(g2_in, g);
  if (cfg.strategy == Strategy::baseline_fixpoint)
    return oracle::gfp_fuzzy_sim_flg(g, g2);
  FuzzyRelation z(g.vertex_count(), g2.vertex_count());
  for (std::uint32_t x = 0; x < g.vertex_count(); ++x)
    for (std::uint32_t x2 = 0; x2 < g2.vertex_count(); ++x2)
      z.set(x, x2, oracle::detail::label_residuum(g.label(x), g2.label(x2)));
  detail::simulation_worklist(g, g2, [&](std::uint32_t x, std::uint32_t x2) {
    const Degree d = z(x, x2);
    if (d.is_zero())
      return false;
    const Degree next = std::min(d, oracle::detail::fuzzy_forward_cap(z, g, g2, x, x2));
    if (next == d)
      return false;
    z.set(x, x2, next);
    return true;
  });
  return z;
}

/// Greatest crisp simulation between two NFLTSs, restricted to S × S′.
inline CrispRelation crisp_simulation_nflts(const Nflts &a, const Nflts &b,
                                            const EngineConfig &cfg = {}) {
  auto z = greatest_crisp_simulation_flg(nflts_to_flg(a), nflts_to_flg(b), cfg);
  return oracle::restrict(z, a.state_count(), b.state_count());
}

/// Greatest fuzzy simulation between two NFLTSs, restricted to S × S′.
inline FuzzyRelation fuzzy_simulation_nflts(const Nflts &a, const Nflts &b,
                                            const EngineConfig &cfg = {}) {
  auto z = greatest_fuzzy_simulation_flg(nflts_to_flg(a), nflts_to_flg(b), cfg);
  return oracle::restrict(z, a.state_count(), b.state_count());
}

enum class BisimMode { crisp, fuzzy };

/// Greatest crisp bisimulation between the states of `a` and those of `b`.
inline CrispRelation crisp_bisimulation_between(const Nflts &a, const Nflts &b,
                                                const EngineConfig &cfg = {}) {
  const auto u = disjoint_union(a, b);
  const auto p = crisp_partition_system(u.model, cfg);
  std::vector<std::uint32_t> block(u.model.state_count());
  for (std::uint32_t k = 0; k < p.blocks().size(); ++k)
    for (auto x : p.blocks()[k])
      block[x] = k;
  CrispRelation r(a.state_count(), b.state_count());
  for (std::uint32_t s = 0; s < a.state_count(); ++s)
    for (std::uint32_t s2 = 0; s2 < b.state_count(); ++s2)
      if (block[u.left[s]] == block[u.right[s2]])
        r.insert(s, s2);
  return r;
}

/// Greatest fuzzy bisimulation between the states of `a` and those of `b`.
inline FuzzyRelation fuzzy_bisimulation_between(const Nflts &a, const Nflts &b,
                                                const EngineConfig &cfg = {}) {
  const auto u = disjoint_union(a, b);
  const auto cfp = fuzzy_partition_system(u.model, cfg);
  FuzzyRelation r(a.state_count(), b.state_count());
  for (std::uint32_t s = 0; s < a.state_count(); ++s)
    for (std::uint32_t s2 = 0; s2 < b.state_count(); ++s2)
      r.set(s, s2, cfp.degree(u.left[s], u.right[s2]));
  return r;
}

inline std::variant<CrispRelation, FuzzyRelation>
bisimulation_between_nflts(const Nflts &a, const Nflts &b, BisimMode mode,
                           const EngineConfig &cfg = {}) {
  if (mode == BisimMode::crisp)
    return crisp_bisimulation_between(a, b, cfg);
  return fuzzy_bisimulation_between(a, b, cfg);
}

} // namespace fuzzybisim
