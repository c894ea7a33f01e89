#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fuzzybisim/degree.hpp"
#include "fuzzybisim/fuzzy_set.hpp"

namespace fuzzybisim {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
using DistId = std::uint32_t;
using LabelId = std::uint32_t;

using Distribution = FuzzySet<StateId>;
using LabelSet = FuzzySet<LabelId>;

class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Transition {
  StateId from;
  ActionId action;
  DistId dist;

  friend auto operator<=>(const Transition &, const Transition &) = default;
};

/// Nondeterministic fuzzy transition system ⟨S, A, δ⟩. Distributions are
/// interned: `distributions()` is δ◦ without duplicates and each transition
/// refers to one of them by index.
class Nfts {
public:
  Nfts() = default;

  std::size_t state_count() const { return state_names_.size(); }
  std::size_t action_count() const { return action_names_.size(); }
  const std::vector<std::string> &state_names() const { return state_names_; }
  const std::vector<std::string> &action_names() const { return action_names_; }
  const std::vector<std::string> &distribution_names() const { return dist_names_; }
  const std::vector<Distribution> &distributions() const { return dists_; }
  const Distribution &distribution(DistId id) const { return dists_.at(id); }
  const std::vector<Transition> &transitions() const { return transitions_; }

  std::optional<StateId> find_state(const std::string &name) const {
    auto it = state_index_.find(name);
    if (it == state_index_.end())
      return std::nullopt;
    return it->second;
  }

  std::optional<ActionId> find_action(const std::string &name) const {
    for (std::size_t i = 0; i < action_names_.size(); ++i)
      if (action_names_[i] == name)
        return static_cast<ActionId>(i);
    return std::nullopt;
  }

  /// size(δ) = |δ| + Σ_{µ∈δ◦} |support(µ)|.
  std::size_t size_of_delta() const {
    std::size_t total = transitions_.size();
    for (const auto &mu : dists_)
      total += mu.support_size();
    return total;
  }

  /// Transitions sorted by (from, action, dist); this gives the outgoing range of s.
  std::pair<std::size_t, std::size_t> outgoing(StateId s) const {
    auto lo = std::lower_bound(transitions_.begin(), transitions_.end(),
                               Transition{s, 0, 0});
    auto hi = std::lower_bound(transitions_.begin(), transitions_.end(),
                               Transition{s + 1, 0, 0});
    return {static_cast<std::size_t>(lo - transitions_.begin()),
            static_cast<std::size_t>(hi - transitions_.begin())};
  }

  friend bool operator==(const Nfts &a, const Nfts &b) {
    return a.state_names_ == b.state_names_ && a.action_names_ == b.action_names_ &&
           a.dists_ == b.dists_ && a.transitions_ == b.transitions_;
  }

private:
  friend class NftsBuilder;

  std::vector<std::string> state_names_;
  std::vector<std::string> action_names_;
  std::vector<std::string> dist_names_;
  std::vector<Distribution> dists_;
  std::vector<Transition> transitions_;
  std::unordered_map<std::string, StateId> state_index_;
};

class NftsBuilder {
public:
  StateId add_state(const std::string &name) {
    if (name.empty())
      throw ModelError("state name must not be empty");
    if (m_.state_index_.count(name))
      throw ModelError("duplicate state \"" + name + "\"");
    auto id = static_cast<StateId>(m_.state_names_.size());
    m_.state_names_.push_back(name);
    m_.state_index_.emplace(name, id);
    return id;
  }

  ActionId add_action(const std::string &name) {
    if (name.empty())
      throw ModelError("action name must not be empty");
    if (m_.find_action(name))
      throw ModelError("duplicate action \"" + name + "\"");
    m_.action_names_.push_back(name);
    return static_cast<ActionId>(m_.action_names_.size() - 1);
  }

  std::optional<StateId> find_state(const std::string &name) const { return m_.find_state(name); }
  std::optional<ActionId> find_action(const std::string &name) const {
    return m_.find_action(name);
  }

  StateId state(const std::string &name) const {
    auto id = m_.find_state(name);
    if (!id)
      throw ModelError("unknown state \"" + name + "\"");
    return *id;
  }

  ActionId action(const std::string &name) const {
    auto id = m_.find_action(name);
    if (!id)
      throw ModelError("unknown action \"" + name + "\"");
    return *id;
  }

  /// Returns the canonical id of µ; structurally equal support maps share an id.
  /// `name` is only used for display when µ is new and defaults to mu<k>.
  DistId intern_distribution(const Distribution &mu, const std::string &name = {}) {
    for (const auto &[s, d] : mu)
      if (s >= m_.state_names_.size())
        throw ModelError("distribution refers to unknown state id " + std::to_string(s));
    auto [it, inserted] =
        intern_.try_emplace(mu, static_cast<DistId>(m_.dists_.size()));
    if (inserted) {
      m_.dists_.push_back(mu);
      m_.dist_names_.push_back(name.empty() ? "mu" + std::to_string(m_.dists_.size())
                                            : name);
    }
    return it->second;
  }

  void add_transition(StateId from, ActionId action, DistId dist) {
    if (from >= m_.state_names_.size())
      throw ModelError("transition from unknown state id " + std::to_string(from));
    if (action >= m_.action_names_.size())
      throw ModelError("transition with unknown action id " + std::to_string(action));
    if (dist >= m_.dists_.size())
      throw ModelError("transition to unknown distribution id " + std::to_string(dist));
    m_.transitions_.push_back({from, action, dist});
  }

  void add_transition(StateId from, ActionId action, const Distribution &mu) {
    add_transition(from, action, intern_distribution(mu));
  }

  /// δ is a set: literally repeated transitions collapse.
  Nfts build() && {
    if (m_.state_names_.empty())
      throw ModelError("a model needs at least one state");
    if (m_.action_names_.empty())
      throw ModelError("a model needs at least one action");
    std::sort(m_.transitions_.begin(), m_.transitions_.end());
    m_.transitions_.erase(std::unique(m_.transitions_.begin(), m_.transitions_.end()),
                          m_.transitions_.end());
    return std::move(m_);
  }

private:
  Nfts m_;
  std::map<Distribution, DistId> intern_;
};

/// NFTS with fuzzy state labels L: S → F(Σ).
class Nflts {
public:
  Nflts() = default;

  /// An NFTS is an NFLTS over the empty label alphabet.
  Nflts(Nfts base) : base_(std::move(base)), labels_(base_.state_count()) {}

  Nflts(Nfts base, std::vector<std::string> label_names, std::vector<LabelSet> labels)
      : base_(std::move(base)), label_names_(std::move(label_names)),
        labels_(std::move(labels)) {
    if (labels_.size() != base_.state_count())
      throw ModelError("state label table does not match the number of states");
    for (std::size_t i = 0; i < label_names_.size(); ++i) {
      if (label_names_[i].empty())
        throw ModelError("label name must not be empty");
      for (std::size_t j = 0; j < i; ++j)
        if (label_names_[i] == label_names_[j])
          throw ModelError("duplicate label \"" + label_names_[i] + "\"");
    }
    for (const auto &set : labels_)
      for (const auto &[p, d] : set)
        if (p >= label_names_.size())
          throw ModelError("state label refers to unknown label id " + std::to_string(p));
  }

  const Nfts &base() const { return base_; }
  const std::vector<std::string> &label_names() const { return label_names_; }
  const std::vector<LabelSet> &labels() const { return labels_; }
  const LabelSet &label(StateId s) const { return labels_.at(s); }
  std::size_t state_count() const { return base_.state_count(); }

  std::optional<LabelId> find_label(const std::string &name) const {
    for (std::size_t i = 0; i < label_names_.size(); ++i)
      if (label_names_[i] == name)
        return static_cast<LabelId>(i);
    return std::nullopt;
  }

  friend bool operator==(const Nflts &, const Nflts &) = default;

private:
  Nfts base_;
  std::vector<std::string> label_names_;
  std::vector<LabelSet> labels_;
};

} // namespace fuzzybisim
