#pragma once

// Direct transcriptions of the lifting, bisimulation and simulation
// definitions. Deliberately naive: these are the reference everything else
// is tested against. Fixpoints sweep pairs in lexicographic order.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fuzzybisim/flg.hpp"
#include "fuzzybisim/model.hpp"
#include "fuzzybisim/relation.hpp"

namespace fuzzybisim::oracle {

struct WitnessReport {
  bool holds = true;
  std::string clause;                // which clause failed, empty when it holds
  std::vector<std::uint32_t> witness; // offending pair, then a transition or vertex index

  static WitnessReport ok() { return {}; }
  static WitnessReport fail(std::string clause, std::vector<std::uint32_t> witness) {
    return {false, std::move(clause), std::move(witness)};
  }

  std::string describe(const std::vector<std::string> *names = nullptr) const {
    if (holds)
      return "holds";
    std::string out = "fails clause " + clause + " at (";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i)
        out += ", ";
      // the pair is named; further entries are transition or vertex indices
      out += i < 2 && names && witness[i] < names->size() ? (*names)[witness[i]]
                                                          : std::to_string(witness[i]);
    }
    return out + ")";
  }
};

// ---------------------------------------------------------------------------
// Lifted relations

/// µ R† µ′ via the characterization: µ(s) ≤ µ′(→R_s) and µ′(s′) ≤ µ(←R_s′).
inline bool lifted_crisp(const CrispRelation &r, const Distribution &mu,
                         const Distribution &nu) {
  for (const auto &[s, d] : mu)
    if (d > nu.max_over([&](StateId t) { return r.contains(s, t); }))
      return false;
  for (const auto &[t, d] : nu)
    if (d > mu.max_over([&](StateId s) { return r.contains(s, t); }))
      return false;
  return true;
}

/// R‡(µ, µ′) under Gödel semantics.
inline Degree lifted_fuzzy(const FuzzyRelation &r, const Distribution &mu,
                           const Distribution &nu) {
  Degree result = Degree::one();
  for (const auto &[s, d] : mu) {
    Degree best;
    for (const auto &[t, e] : nu)
      best = std::max(best, tnorm(r(s, t), e));
    result = std::min(result, residuum(d, best));
  }
  for (const auto &[t, e] : nu) {
    Degree best;
    for (const auto &[s, d] : mu)
      best = std::max(best, tnorm(r(s, t), d));
    result = std::min(result, residuum(e, best));
  }
  return result;
}

/// The function e(s,s′) = min(µ(s), µ′(s′)) if s R s′, else 0.
inline FuzzyRelation lifting_witness(const CrispRelation &r, const Distribution &mu,
                                     const Distribution &nu) {
  FuzzyRelation e(r.rows(), r.cols());
  for (const auto &[s, d] : mu)
    for (const auto &[t, f] : nu)
      if (r.contains(s, t))
        e.set(s, t, tnorm(d, f));
  return e;
}

/// Checks the three conditions of the lifting definition for a given e.
inline bool realizes_lifting(const FuzzyRelation &e, const CrispRelation &r,
                             const Distribution &mu, const Distribution &nu) {
  for (std::size_t s = 0; s < e.rows(); ++s) {
    Degree row;
    for (std::size_t t = 0; t < e.cols(); ++t) {
      row = std::max(row, e(s, t));
      if (!r.contains(s, t) && !e(s, t).is_zero())
        return false;
    }
    if (row != mu(static_cast<StateId>(s)))
      return false;
  }
  for (std::size_t t = 0; t < e.cols(); ++t) {
    Degree col;
    for (std::size_t s = 0; s < e.rows(); ++s)
      col = std::max(col, e(s, t));
    if (col != nu(static_cast<StateId>(t)))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bisimulations of a transition system (state level)

namespace detail {

inline Degree label_biresiduum(const LabelSet &a, const LabelSet &b) {
  Degree d = Degree::one();
  for (const auto &[p, v] : a)
    d = std::min(d, biresiduum(v, b(p)));
  for (const auto &[p, v] : b)
    d = std::min(d, biresiduum(a(p), v));
  return d;
}

inline Degree label_residuum(const LabelSet &a, const LabelSet &b) {
  Degree d = Degree::one();
  for (const auto &[p, v] : a)
    d = std::min(d, residuum(v, b(p)));
  return d;
}

// Index of a transition ⟨s', a, µ'⟩ that answers ⟨s, a, µ⟩, or -1.
template <typename Match>
long find_answer(const Nfts &m, StateId answerer, ActionId a, Match &&match) {
  auto [lo, hi] = m.outgoing(answerer);
  for (auto k = lo; k < hi; ++k) {
    const auto &t = m.transitions()[k];
    if (t.action == a && match(t.dist))
      return static_cast<long>(k);
  }
  return -1;
}

} // namespace detail

/// Clause check for a crisp bisimulation of an NFTS / NFLTS.
inline WitnessReport is_crisp_bisim_nfts(const CrispRelation &r, const Nflts &m) {
  const Nfts &base = m.base();
  const std::size_t n = base.state_count();
  for (StateId s = 0; s < n; ++s)
    for (StateId s2 = 0; s2 < n; ++s2) {
      if (!r.contains(s, s2))
        continue;
      if (m.label(s) != m.label(s2))
        return WitnessReport::fail("label", {s, s2});
      auto [lo, hi] = base.outgoing(s);
      for (auto k = lo; k < hi; ++k) {
        const auto &t = base.transitions()[k];
        auto ans = detail::find_answer(base, s2, t.action, [&](DistId d2) {
          return lifted_crisp(r, base.distribution(t.dist), base.distribution(d2));
        });
        if (ans < 0)
          return WitnessReport::fail("(a)", {s, s2, static_cast<std::uint32_t>(k)});
      }
      auto [lo2, hi2] = base.outgoing(s2);
      for (auto k = lo2; k < hi2; ++k) {
        const auto &t = base.transitions()[k];
        auto ans = detail::find_answer(base, s, t.action, [&](DistId d1) {
          return lifted_crisp(r, base.distribution(d1), base.distribution(t.dist));
        });
        if (ans < 0)
          return WitnessReport::fail("(b)", {s, s2, static_cast<std::uint32_t>(k)});
      }
    }
  return WitnessReport::ok();
}

/// Clause check for a fuzzy bisimulation (only pairs with R(s,s′) > 0 are constrained).
inline WitnessReport is_fuzzy_bisim_nfts(const FuzzyRelation &r, const Nflts &m) {
  const Nfts &base = m.base();
  const std::size_t n = base.state_count();
  for (StateId s = 0; s < n; ++s)
    for (StateId s2 = 0; s2 < n; ++s2) {
      const Degree z = r(s, s2);
      if (z.is_zero())
        continue;
      if (z > detail::label_biresiduum(m.label(s), m.label(s2)))
        return WitnessReport::fail("label", {s, s2});
      auto [lo, hi] = base.outgoing(s);
      for (auto k = lo; k < hi; ++k) {
        const auto &t = base.transitions()[k];
        auto ans = detail::find_answer(base, s2, t.action, [&](DistId d2) {
          return z <= lifted_fuzzy(r, base.distribution(t.dist), base.distribution(d2));
        });
        if (ans < 0)
          return WitnessReport::fail("(a)", {s, s2, static_cast<std::uint32_t>(k)});
      }
      auto [lo2, hi2] = base.outgoing(s2);
      for (auto k = lo2; k < hi2; ++k) {
        const auto &t = base.transitions()[k];
        auto ans = detail::find_answer(base, s, t.action, [&](DistId d1) {
          return z <= lifted_fuzzy(r, base.distribution(d1), base.distribution(t.dist));
        });
        if (ans < 0)
          return WitnessReport::fail("(b)", {s, s2, static_cast<std::uint32_t>(k)});
      }
    }
  return WitnessReport::ok();
}

/// Greatest crisp bisimulation by removing violating pairs from the
/// label-respecting part of S×S until nothing changes.
inline CrispRelation gfp_crisp_bisim_nfts(const Nflts &m, std::ostream *trace = nullptr) {
  const Nfts &base = m.base();
  const std::size_t n = base.state_count();
  CrispRelation r(n, n);
  for (StateId s = 0; s < n; ++s)
    for (StateId s2 = 0; s2 < n; ++s2)
      if (m.label(s) == m.label(s2))
        r.insert(s, s2);

  auto answered = [&](StateId x, StateId x2, bool forward) {
    auto [lo, hi] = base.outgoing(x);
    for (auto k = lo; k < hi; ++k) {
      const auto &t = base.transitions()[k];
      auto ans = detail::find_answer(base, x2, t.action, [&](DistId d2) {
        return forward ? lifted_crisp(r, base.distribution(t.dist), base.distribution(d2))
                       : lifted_crisp(r, base.distribution(d2), base.distribution(t.dist));
      });
      if (ans < 0)
        return false;
    }
    return true;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < n; ++s)
      for (StateId s2 = 0; s2 < n; ++s2)
        if (r.contains(s, s2) && !(answered(s, s2, true) && answered(s2, s, false))) {
          r.erase(s, s2);
          changed = true;
          if (trace)
            *trace << "  drop (" << base.state_names()[s] << ", " << base.state_names()[s2]
                   << ")\n";
        }
  }
  return r;
}

/// Greatest fuzzy bisimulation by decreasing iteration from the label bound.
inline FuzzyRelation gfp_fuzzy_bisim_nfts(const Nflts &m, std::ostream *trace = nullptr) {
  const Nfts &base = m.base();
  const std::size_t n = base.state_count();
  FuzzyRelation r(n, n);
  for (StateId s = 0; s < n; ++s)
    for (StateId s2 = 0; s2 < n; ++s2)
      r.set(s, s2, detail::label_biresiduum(m.label(s), m.label(s2)));

  // min over transitions of x of the best lifted degree among answers of x2
  auto cap = [&](StateId x, StateId x2, bool forward) {
    Degree result = Degree::one();
    auto [lo, hi] = base.outgoing(x);
    auto [lo2, hi2] = base.outgoing(x2);
    for (auto k = lo; k < hi; ++k) {
      const auto &t = base.transitions()[k];
      Degree best;
      for (auto k2 = lo2; k2 < hi2; ++k2) {
        const auto &t2 = base.transitions()[k2];
        if (t2.action != t.action)
          continue;
        Degree lifted =
            forward ? lifted_fuzzy(r, base.distribution(t.dist), base.distribution(t2.dist))
                    : lifted_fuzzy(r, base.distribution(t2.dist), base.distribution(t.dist));
        best = std::max(best, lifted);
      }
      result = std::min(result, best);
    }
    return result;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < n; ++s)
      for (StateId s2 = 0; s2 < n; ++s2) {
        Degree z = r(s, s2);
        if (z.is_zero())
          continue;
        Degree next = std::min({z, cap(s, s2, true), cap(s2, s, false)});
        if (next != z) {
          r.set(s, s2, next);
          changed = true;
          if (trace)
            *trace << "  lower (" << base.state_names()[s] << ", " << base.state_names()[s2]
                   << ") to " << next.to_string() << "\n";
        }
      }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Fuzzy labeled graphs

/// Z restricted to the leading `n` × `n2` vertices (the states).
inline CrispRelation restrict(const CrispRelation &z, std::size_t n, std::size_t n2) {
  CrispRelation r(n, n2);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n2; ++y)
      if (z.contains(x, y))
        r.insert(x, y);
  return r;
}

inline FuzzyRelation restrict(const FuzzyRelation &z, std::size_t n, std::size_t n2) {
  FuzzyRelation r(n, n2);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n2; ++y)
      r.set(x, y, z(x, y));
  return r;
}

namespace detail {

// Does every r-edge of x have an answer from x2 with degree ≥ and target in Z?
template <typename Related>
bool crisp_forward_ok(Related &&related, const Flg &g, const Flg &g2, std::uint32_t x,
                      std::uint32_t x2, std::uint32_t *bad_edge) {
  for (const auto &e : g.out_edges(x)) {
    bool found = false;
    for (const auto &e2 : g2.out_edges(x2))
      if (e2.label == e.label && e.degree <= e2.degree && related(e.dst, e2.dst)) {
        found = true;
        break;
      }
    if (!found) {
      if (bad_edge)
        *bad_edge = e.dst;
      return false;
    }
  }
  return true;
}

// Largest value z may take at (x, x2) for the forward edge clause under Gödel.
template <typename Degrees>
Degree fuzzy_forward_cap(Degrees &&z, const Flg &g, const Flg &g2, std::uint32_t x,
                         std::uint32_t x2) {
  Degree result = Degree::one();
  for (const auto &e : g.out_edges(x)) {
    Degree best;
    for (const auto &e2 : g2.out_edges(x2))
      if (e2.label == e.label)
        best = std::max(best, residuum(e.degree, tnorm(e2.degree, z(e.dst, e2.dst))));
    result = std::min(result, best);
  }
  return result;
}

inline auto contains(const CrispRelation &z) {
  return [&z](std::uint32_t a, std::uint32_t b) { return z.contains(a, b); };
}

} // namespace detail

inline WitnessReport is_crisp_sim_flg(const CrispRelation &z, const Flg &g, const Flg &g2_in) {
  const Flg g2 = align_flg(g2_in, g);
  for (std::uint32_t x = 0; x < g.vertex_count(); ++x)
    for (std::uint32_t x2 = 0; x2 < g2.vertex_count(); ++x2) {
      if (!z.contains(x, x2))
        continue;
      if (!g.label(x).leq(g2.label(x2)))
        return WitnessReport::fail("label", {x, x2});
      std::uint32_t y = 0;
      if (!detail::crisp_forward_ok(detail::contains(z), g, g2, x, x2, &y))
        return WitnessReport::fail("edge", {x, x2, y});
    }
  return WitnessReport::ok();
}

inline WitnessReport is_fuzzy_sim_flg(const FuzzyRelation &z, const Flg &g, const Flg &g2_in) {
  const Flg g2 = align_flg(g2_in, g);
  for (std::uint32_t x = 0; x < g.vertex_count(); ++x)
    for (std::uint32_t x2 = 0; x2 < g2.vertex_count(); ++x2) {
      const Degree d = z(x, x2);
      if (d.is_zero())
        continue;
      if (d > detail::label_residuum(g.label(x), g2.label(x2)))
        return WitnessReport::fail("label", {x, x2});
      if (d > detail::fuzzy_forward_cap(z, g, g2, x, x2))
        return WitnessReport::fail("edge", {x, x2});
    }
  return WitnessReport::ok();
}

inline WitnessReport is_crisp_bisim_flg(const CrispRelation &z, const Flg &g) {
  auto fwd = is_crisp_sim_flg(z, g, g);
  if (!fwd.holds)
    return fwd;
  auto bwd = is_crisp_sim_flg(z.converse(), g, g);
  if (!bwd.holds)
    bwd.clause += " (converse)";
  // equal labels follow from label dominance both ways
  return bwd;
}

inline WitnessReport is_fuzzy_bisim_flg(const FuzzyRelation &z, const Flg &g) {
  auto fwd = is_fuzzy_sim_flg(z, g, g);
  if (!fwd.holds)
    return fwd;
  auto bwd = is_fuzzy_sim_flg(z.converse(), g, g);
  if (!bwd.holds)
    bwd.clause += " (converse)";
  return bwd;
}

inline CrispRelation gfp_crisp_sim_flg(const Flg &g, const Flg &g2_in) {
  const Flg g2 = align_flg(g2_in, g);
  const std::size_t n = g.vertex_count(), n2 = g2.vertex_count();
  CrispRelation z(n, n2);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t x2 = 0; x2 < n2; ++x2)
      if (g.label(x).leq(g2.label(x2)))
        z.insert(x, x2);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t x2 = 0; x2 < n2; ++x2)
        if (z.contains(x, x2) && !detail::crisp_forward_ok(detail::contains(z), g, g2, x, x2, nullptr)) {
          z.erase(x, x2);
          changed = true;
        }
  }
  return z;
}

inline FuzzyRelation gfp_fuzzy_sim_flg(const Flg &g, const Flg &g2_in) {
  const Flg g2 = align_flg(g2_in, g);
  const std::size_t n = g.vertex_count(), n2 = g2.vertex_count();
  FuzzyRelation z(n, n2);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t x2 = 0; x2 < n2; ++x2)
      z.set(x, x2, detail::label_residuum(g.label(x), g2.label(x2)));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t x2 = 0; x2 < n2; ++x2) {
        Degree d = z(x, x2);
        if (d.is_zero())
          continue;
        Degree next = std::min(d, detail::fuzzy_forward_cap(z, g, g2, x, x2));
        if (next != d) {
          z.set(x, x2, next);
          changed = true;
        }
      }
  }
  return z;
}

inline CrispRelation gfp_crisp_bisim_flg(const Flg &g) {
  const std::size_t n = g.vertex_count();
  CrispRelation z(n, n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t x2 = 0; x2 < n; ++x2)
      if (g.label(x) == g.label(x2))
        z.insert(x, x2);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t x2 = 0; x2 < n; ++x2) {
        if (!z.contains(x, x2))
          continue;
        // clause (c) is clause (b) read from x2 with the converse pairs
        bool ok = detail::crisp_forward_ok(detail::contains(z), g, g, x, x2, nullptr) &&
                  detail::crisp_forward_ok(
                      [&](std::uint32_t a, std::uint32_t b) { return z.contains(b, a); }, g, g,
                      x2, x, nullptr);
        if (!ok) {
          z.erase(x, x2);
          changed = true;
        }
      }
  }
  return z;
}

inline FuzzyRelation gfp_fuzzy_bisim_flg(const Flg &g) {
  const std::size_t n = g.vertex_count();
  FuzzyRelation z(n, n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t x2 = 0; x2 < n; ++x2)
      z.set(x, x2, detail::label_biresiduum(g.label(x), g.label(x2)));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t x2 = 0; x2 < n; ++x2) {
        Degree d = z(x, x2);
        if (d.is_zero())
          continue;
        Degree next = std::min({d, detail::fuzzy_forward_cap(z, g, g, x, x2),
                                detail::fuzzy_forward_cap(
                                    [&](std::uint32_t a, std::uint32_t b) { return z(b, a); },
                                    g, g, x2, x)});
        if (next != d) {
          z.set(x, x2, next);
          changed = true;
        }
      }
  }
  return z;
}

} // namespace fuzzybisim::oracle
