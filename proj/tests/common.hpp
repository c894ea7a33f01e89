#pragma once

#include <string>
#include <vector>

#include "fuzzybisim/fuzzybisim.hpp"

namespace testing_support {

using namespace fuzzybisim;

inline Degree D(const char *text) { return Degree::parse(text); }

// Five states s1..s5, actions a and b, distributions mu1..mu3.
inline Nfts example_nfts() {
  NftsBuilder b;
  for (auto s : {"s1", "s2", "s3", "s4", "s5"})
    b.add_state(s);
  b.add_action("a");
  b.add_action("b");
  auto mu = [&](std::initializer_list<std::pair<const char *, const char *>> xs) {
    std::vector<Distribution::Entry> e;
    for (auto [s, d] : xs)
      e.emplace_back(b.state(s), D(d));
    return Distribution(std::move(e));
  };
  auto m1 = b.intern_distribution(mu({{"s2", "0.5"}, {"s3", "0.8"}}), "mu1");
  auto m2 = b.intern_distribution(mu({{"s3", "0.6"}, {"s5", "0.4"}}), "mu2");
  auto m3 = b.intern_distribution(mu({{"s4", "0.7"}, {"s5", "0.9"}}), "mu3");
  b.add_transition(b.state("s1"), b.action("a"), m1);
  b.add_transition(b.state("s1"), b.action("a"), m2);
  b.add_transition(b.state("s2"), b.action("a"), m3);
  b.add_transition(b.state("s3"), b.action("b"), m1);
  b.add_transition(b.state("s4"), b.action("b"), m1);
  b.add_transition(b.state("s5"), b.action("a"), m3);
  return std::move(b).build();
}

// Expected greatest fuzzy bisimulation of example_nfts().
inline FuzzyRelation example_fuzzy_table() {
  const char *rows[5][5] = {{"1", "0.4", "0", "0", "0.4"},
                            {"0.4", "1", "0", "0", "1"},
                            {"0", "0", "1", "1", "0"},
                            {"0", "0", "1", "1", "0"},
                            {"0.4", "1", "0", "0", "1"}};
  FuzzyRelation r(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      r.set(i, j, D(rows[i][j]));
  return r;
}

// States named by the given list, one action "a", no transitions.
inline Nfts states_only(std::vector<std::string> names) {
  NftsBuilder b;
  for (auto &n : names)
    b.add_state(n);
  b.add_action("a");
  return std::move(b).build();
}

inline Nflts labelled(const Nfts &base, std::vector<std::string> label_names,
                      std::vector<LabelSet> labels) {
  return Nflts(base, std::move(label_names), std::move(labels));
}

// Small random models in the ranges used by the differential tests.
inline bench::GenSpec small_spec(std::uint64_t seed, std::size_t max_states,
                                 std::size_t max_actions = 2, std::size_t max_l = 7) {
  bench::GenSpec s;
  s.seed = seed;
  s.states = 1 + seed % max_states;
  s.actions = 1 + (seed / 7) % max_actions;
  s.dists_min = 0;
  s.dists_max = 1 + (seed / 3) % 2;
  s.support_min = 1;
  s.support_max = std::min<std::size_t>(s.states, 1 + (seed / 5) % 3);
  s.l = 3 + (seed / 11) % (max_l - 2);
  s.labels = (seed / 13) % 3;
  s.label_density = 0.35;
  return s;
}

inline std::vector<std::string> names_of(std::size_t n, const std::string &prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i)
    out.push_back(prefix + std::to_string(i));
  return out;
}

} // namespace testing_support
